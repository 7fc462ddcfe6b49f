// Episode loop: propose, score, ask or execute, recover from failures.

#include "sage/agent.hpp"

#include <sstream>

#include "sage/errors.hpp"

namespace sage::agent {

namespace {

json constraints_to_json(const std::map<AspectId, Constraint>& constraints) {
    json out = json::object();
    for (const auto& [aspect, c] : constraints) out[aspect.str()] = c.to_json();
    return out;
}

json scored_to_json(const voi::ScoredQuestion& sq) {
    return json{{"question", sq.question.to_json()},
                {"evpi", sq.evpi},
                {"cost", sq.cost},
                {"score", sq.score}};
}

struct EventToJson {
    json operator()(const CandidateSetEvent& e) const {
        json calls = json::array();
        for (const auto& c : e.candidates) calls.push_back(c.to_json());
        return json{{"event", "candidate_set"}, {"candidates", calls}};
    }
    json operator()(const QuestionScoredEvent& e) const {
        json scores = json::array();
        for (const auto& s : e.scores) scores.push_back(scored_to_json(s));
        return json{{"event", "question_scored"}, {"round", e.round}, {"scores", scores}};
    }
    json operator()(const AskedEvent& e) const {
        return json{{"event", "asked"}, {"question", e.question.to_json()}};
    }
    json operator()(const AnsweredEvent& e) const {
        return json{{"event", "answered"},
                    {"question_id", e.question_id},
                    {"response", e.response},
                    {"constraints", constraints_to_json(e.constraints)}};
    }
    json operator()(const BeliefSnapshotEvent& e) const {
        return json{{"event", "belief"}, {"state", e.snapshot}};
    }
    json operator()(const ExecutedEvent& e) const {
        return json{{"event", "executed"},
                    {"call", e.call.to_json()},
                    {"result", e.result.to_json()}};
    }
    json operator()(const ErrorRecoveryEvent& e) const {
        return json{{"event", "error_recovery"},
                    {"error", e.error.to_json()},
                    {"question_id", e.question_id},
                    {"attempt", e.attempt}};
    }
    json operator()(const TerminatedEvent& e) const {
        return json{{"event", "terminated"}, {"reason", e.reason}};
    }
};

} // namespace

json event_to_json(const TraceEvent& event) { return std::visit(EventToJson{}, event); }

int EpisodeTrace::asked_count() const {
    int n = 0;
    for (const auto& e : events)
        if (std::holds_alternative<AskedEvent>(e)) ++n;
    return n;
}

std::vector<const ExecutedEvent*> EpisodeTrace::executed() const {
    std::vector<const ExecutedEvent*> out;
    for (const auto& e : events)
        if (const auto* exec = std::get_if<ExecutedEvent>(&e)) out.push_back(exec);
    return out;
}

const ExecutedEvent* EpisodeTrace::final_execution() const {
    auto all = executed();
    return all.empty() ? nullptr : all.back();
}

std::string EpisodeTrace::terminated_reason() const {
    for (const auto& e : events)
        if (const auto* term = std::get_if<TerminatedEvent>(&e)) return term->reason;
    return "";
}

std::string EpisodeTrace::to_jsonl() const {
    std::ostringstream out;
    for (const auto& e : events) out << event_to_json(e).dump() << "\n";
    return out.str();
}

namespace {

// The argmax candidate with unspecified optional params dropped, ready for the
// environment. Returns the first unspecified required param, if any.
std::pair<CandidateCall, std::string> executable_call(const CandidateCall& candidate,
                                                      const Toolkit& toolkit) {
    CandidateCall call = candidate;
    std::string missing_required;
    const ToolSchema* tool = toolkit.find_tool(candidate.tool);
    if (tool != nullptr) {
        for (const auto& spec : tool->params) {
            auto it = call.arguments.find(spec.name);
            bool unspecified = it == call.arguments.end() || !it->second.has_value();
            if (!unspecified) continue;
            if (spec.required && missing_required.empty()) missing_required = spec.name;
            if (!spec.required && it != call.arguments.end()) call.arguments.erase(it);
        }
    }
    return {std::move(call), std::move(missing_required)};
}

} // namespace

EpisodeTrace run_episode(const std::string& query, const OracleSuite& oracles,
                         envs::Environment& env, const EngineConfig& config,
                         const Responder& responder, const EventObserver& observer) {
    config.validate();
    if (!oracles.propose_candidates || !oracles.propose_questions || !oracles.interpret_response ||
        !oracles.error_question)
        throw UsageError("run_episode: oracle suite is incomplete");

    EpisodeTrace trace;
    auto emit = [&trace, &observer](TraceEvent event) {
        trace.events.push_back(std::move(event));
        if (observer) observer(trace.events.back());
    };
    auto terminate = [&emit](const std::string& reason) {
        emit(TerminatedEvent{reason});
    };

    std::vector<CandidateCall> candidates =
        oracles.propose_candidates(query, {}, env.toolkit());
    emit(CandidateSetEvent{candidates});
    if (candidates.empty()) {
        terminate("abort");
        return trace;
    }

    belief::BeliefState state;
    try {
        state = belief::init_belief(
            std::move(candidates), env.toolkit(), config,
            [&env](const std::string& tool, const std::string& param) {
                return env.current_domain(tool, param);
            });
    } catch (const DegenerateBelief&) {
        terminate("abort");
        return trace;
    }
    emit(BeliefSnapshotEvent{state.to_json()});

    int asked = 0;
    int round = 0;
    int recovery_attempts = 0;

    // Asks one question and folds the answer into the belief. False means the
    // episode must abort (user quit, or a contradiction exhausted recovery).
    auto ask_and_apply = [&](const ClarifyingQuestion& question) -> bool {
        emit(AskedEvent{question});
        std::string response;
        try {
            response = responder(question);
        } catch (const UserAbort&) {
            terminate("abort");
            return false;
        }
        ++asked;
        ++round;
        auto constraints = oracles.interpret_response(response, question.aspects);
        try {
            state = belief::apply_response(state, question, constraints, config, response);
        } catch (const ContradictoryResponse& e) {
            emit(AnsweredEvent{question.id, response, constraints});
            ++recovery_attempts;
            emit(ErrorRecoveryEvent{
                envs::ExecutionResult::failure(envs::ErrorKind::MissingEntity, e.what()), "",
                recovery_attempts});
            if (recovery_attempts > kMaxRecoveryAttempts) {
                terminate("abort");
                return false;
            }
            return true;
        }
        emit(AnsweredEvent{question.id, response, constraints});
        emit(BeliefSnapshotEvent{state.to_json()});
        return true;
    };

    while (true) {
        if (state.live_candidates().empty()) {
            terminate("abort");
            return trace;
        }

        std::vector<ClarifyingQuestion> questions = oracles.propose_questions(query, state);
        if (questions.size() > 5) questions.resize(5);
        std::erase_if(questions,
                      [](const ClarifyingQuestion& q) { return q.aspects.empty(); });
        std::vector<voi::ScoredQuestion> scored = voi::score_questions(questions, state, config);
        emit(QuestionScoredEvent{round, scored});
        std::optional<voi::ScoredQuestion> best = voi::select_question(questions, state, config);

        voi::Decision decision = voi::decide(state, best, config);
        if (decision.action == voi::Action::Ask && asked >= config.max_questions) {
            decision.action = voi::Action::Execute;
            decision.question_id.clear();
            decision.candidate_id = state.argmax_candidate()->id;
            decision.reason = "budget";
        }

        if (decision.action == voi::Action::Abort) {
            terminate("abort");
            return trace;
        }

        if (decision.action == voi::Action::Ask) {
            if (!ask_and_apply(best->question)) return trace;
            continue;
        }

        // Execute the argmax candidate.
        const CandidateCall* chosen = state.find_candidate(decision.candidate_id);
        if (chosen == nullptr) {
            terminate("abort");
            return trace;
        }
        auto [call, missing_required] = executable_call(*chosen, env.toolkit());
        envs::ExecutionResult result =
            missing_required.empty()
                ? env.execute(call)
                : envs::ExecutionResult::failure(envs::ErrorKind::MissingEntity,
                                                 "required parameter unspecified: " +
                                                     missing_required,
                                                 missing_required);
        emit(ExecutedEvent{call, result});
        if (result.ok) {
            terminate(decision.reason);
            return trace;
        }

        // Error recovery: re-open the blamed parameter and ask about it.
        ++recovery_attempts;
        if (recovery_attempts > kMaxRecoveryAttempts || result.param.empty() ||
            asked >= config.max_questions) {
            terminate("abort");
            return trace;
        }
        const ToolSchema* tool = env.toolkit().find_tool(chosen->tool);
        if (tool == nullptr || tool->find_param(result.param) == nullptr) {
            terminate("abort");
            return trace;
        }
        ClarifyingQuestion error_question =
            oracles.error_question(result, *chosen, recovery_attempts);
        try {
            belief::reopen_parameter(state, chosen->id, result.param,
                                     env.current_domain(chosen->tool, result.param), config);
        } catch (const DegenerateBelief&) {
            terminate("abort");
            return trace;
        }
        emit(ErrorRecoveryEvent{result, error_question.id, recovery_attempts});
        emit(BeliefSnapshotEvent{state.to_json()});

        std::vector<voi::ScoredQuestion> error_scored =
            voi::score_questions({error_question}, state, config);
        emit(QuestionScoredEvent{round, error_scored});
        if (!ask_and_apply(error_question)) return trace;
    }
}

} // namespace sage::agent
