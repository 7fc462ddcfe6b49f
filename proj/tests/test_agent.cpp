#include <doctest.h>

#include "sage/agent.hpp"
#include "sage/envs.hpp"
#include "sage/errors.hpp"

using namespace sage;
using namespace sage::agent;

namespace {

Value T(const char* s) { return Value::text(s); }

CandidateCall call(const char* id, const char* tool,
                   std::vector<std::pair<std::string, std::optional<Value>>> args) {
    CandidateCall c;
    c.id = id;
    c.tool = tool;
    for (auto& [k, v] : args) c.arguments[k] = std::move(v);
    return c;
}

// Proposes the given candidates, asks one fixed question per uncertain
// aspect, and parses responses of the form "tool.param=value" (text values).
OracleSuite fixed_oracles(std::vector<CandidateCall> candidates) {
    OracleSuite oracles;
    oracles.propose_candidates =
        [candidates](const std::string&, const std::vector<belief::ObservationRecord>&,
                     const Toolkit&) { return candidates; };
    oracles.propose_questions = [](const std::string&, const belief::BeliefState& state) {
        std::vector<belief::ClarifyingQuestion> out;
        std::set<AspectId> seen;
        for (const auto* c : state.live_candidates()) {
            for (const auto& [param, value] : c->arguments) {
                AspectId aspect{c->tool, param};
                if (!value && !seen.count(aspect)) {
                    seen.insert(aspect);
                    belief::ClarifyingQuestion q;
                    q.id = "q" + std::to_string(out.size());
                    q.text = "value for " + aspect.str() + "?";
                    q.aspects = {aspect};
                    out.push_back(std::move(q));
                }
            }
        }
        // Ask about disagreements even when every candidate is specified.
        if (out.empty() && state.live_candidates().size() > 1) {
            const auto* first = state.live_candidates().front();
            for (const auto& [param, value] : first->arguments) {
                belief::ClarifyingQuestion q;
                q.id = "q0";
                q.text = "value for " + first->tool + "." + param + "?";
                q.aspects = {AspectId{first->tool, param}};
                out.push_back(std::move(q));
                break;
            }
        }
        return out;
    };
    oracles.interpret_response = [](const std::string& response,
                                    const std::set<AspectId>& targets) {
        std::map<AspectId, Constraint> out;
        auto eq = response.find('=');
        if (eq == std::string::npos) return out;
        AspectId aspect = AspectId::parse(response.substr(0, eq));
        if (targets.count(aspect))
            out[aspect] = Constraint::equal_to(T(response.substr(eq + 1).c_str()));
        return out;
    };
    oracles.error_question = [](const envs::ExecutionResult& error, const CandidateCall& failed,
                                int attempt) {
        belief::ClarifyingQuestion q;
        q.id = "qe" + std::to_string(attempt);
        q.text = "fix " + failed.tool + "." + error.param + "?";
        q.aspects = {AspectId{failed.tool, error.param}};
        return q;
    };
    return oracles;
}

int count_asked(const EpisodeTrace& trace) { return trace.asked_count(); }

template <typename E>
int count_events(const EpisodeTrace& trace) {
    int n = 0;
    for (const auto& event : trace.events)
        if (std::holds_alternative<E>(event)) ++n;
    return n;
}

} // namespace

TEST_CASE("a fully specified candidate executes without questions") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("readme.txt")}})});
    int observed = 0;
    auto trace = run_episode("show the readme", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) -> std::string {
                                 throw UserAbort();
                             },
                             [&observed](const TraceEvent&) { ++observed; });

    CHECK(count_asked(trace) == 0);
    CHECK(trace.terminated_reason() == "threshold");
    REQUIRE(trace.final_execution() != nullptr);
    CHECK(trace.final_execution()->result.ok);
    CHECK(observed == static_cast<int>(trace.events.size()));
    // The first event is the candidate set, the last is the termination.
    CHECK(std::holds_alternative<CandidateSetEvent>(trace.events.front()));
    CHECK(std::holds_alternative<TerminatedEvent>(trace.events.back()));
}

TEST_CASE("disagreeing candidates trigger one question then execution") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("data.csv")}}),
                                  call("c1", "cat", {{"file_name", T("readme.txt")}})});
    auto trace = run_episode("show a file", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("cat.file_name=readme.txt");
                             });

    CHECK(count_asked(trace) == 1);
    CHECK(count_events<AnsweredEvent>(trace) == 1);
    CHECK(count_events<ErrorRecoveryEvent>(trace) == 0);
    REQUIRE(trace.final_execution() != nullptr);
    CHECK(trace.final_execution()->result.ok);
    CHECK(trace.final_execution()->call.id == "c1");
    CHECK(trace.terminated_reason() == "threshold");
}

TEST_CASE("a lone half-specified candidate executes at the threshold and recovers") {
    // One candidate normalizes to certainty, so execution precedes any
    // clarification; the missing required argument surfaces as a synthetic
    // failure and the error question fills it in.
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", std::nullopt}})});
    auto trace = run_episode("show a file", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("cat.file_name=readme.txt");
                             });

    CHECK(count_asked(trace) == 1);
    CHECK(count_events<ErrorRecoveryEvent>(trace) == 1);
    auto executions = trace.executed();
    REQUIRE(executions.size() == 2);
    CHECK(!executions[0]->result.ok);
    CHECK(executions[1]->result.ok);
    CHECK(*executions[1]->call.arguments.at("file_name") == T("readme.txt"));
}

TEST_CASE("stonewalled questions stop at the cost floor") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("data.csv")}}),
                                  call("c1", "cat", {{"file_name", T("readme.txt")}})});
    auto trace = run_episode("show a file", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("no idea");
                             });

    // EVPI stays 1 while cost climbs by lambda each round: two asks, then stop.
    CHECK(count_asked(trace) == 2);
    CHECK(trace.terminated_reason() == "low-score");
    REQUIRE(trace.final_execution() != nullptr);
    CHECK(trace.final_execution()->call.id == "c0");
}

TEST_CASE("the question budget caps stonewalled episodes") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("data.csv")}}),
                                  call("c1", "cat", {{"file_name", T("readme.txt")}})});
    belief::EngineConfig config;
    config.lambda = 0.0; // no cost pressure; only the budget stops the loop
    auto trace = run_episode("show a file", oracles, *env, config,
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("no idea");
                             });

    CHECK(count_asked(trace) == config.max_questions);
    CHECK(trace.terminated_reason() == "budget");
    REQUIRE(trace.final_execution() != nullptr);
    CHECK(trace.final_execution()->result.ok);
}

TEST_CASE("a user abort ends the episode without executing") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("data.csv")}}),
                                  call("c1", "cat", {{"file_name", T("readme.txt")}})});
    auto trace = run_episode("show a file", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) -> std::string {
                                 throw UserAbort();
                             });
    CHECK(trace.terminated_reason() == "abort");
    CHECK(trace.final_execution() == nullptr);
}

TEST_CASE("an empty candidate set aborts immediately") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({});
    auto trace = run_episode("do nothing", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) { return std::string(); });
    CHECK(trace.terminated_reason() == "abort");
    CHECK(trace.events.size() == 2); // candidate set, then termination
}

TEST_CASE("execution errors reopen the blamed parameter and recover") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("ghost.txt")}})});
    auto trace = run_episode("show ghost.txt", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("cat.file_name=readme.txt");
                             });

    CHECK(count_events<ErrorRecoveryEvent>(trace) == 1);
    CHECK(count_asked(trace) == 1);
    auto executions = trace.executed();
    REQUIRE(executions.size() == 2);
    CHECK(!executions[0]->result.ok);
    CHECK(executions[0]->result.kind == envs::ErrorKind::MissingEntity);
    CHECK(executions[1]->result.ok);
    CHECK(*executions[1]->call.arguments.at("file_name") == T("readme.txt"));
}

TEST_CASE("persistent execution errors exhaust the recovery attempts") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("ghost.txt")}})});
    // The responder keeps naming another missing file.
    auto trace = run_episode("show ghost.txt", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("cat.file_name=phantom.txt");
                             });

    CHECK(trace.terminated_reason() == "abort");
    CHECK(count_events<ErrorRecoveryEvent>(trace) <= kMaxRecoveryAttempts + 1);
    for (const auto* e : trace.executed()) CHECK(!e->result.ok);
}

TEST_CASE("a contradictory answer is recorded and the episode survives or aborts cleanly") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "cat", {{"file_name", T("data.csv")}}),
                                  call("c1", "cat", {{"file_name", T("readme.txt")}})});
    // Every answer names a file outside both candidates.
    auto trace = run_episode("show a file", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) {
                                 return std::string("cat.file_name=other.txt");
                             });

    CHECK(count_events<ErrorRecoveryEvent>(trace) >= 1);
    CHECK(std::holds_alternative<TerminatedEvent>(trace.events.back()));
}

TEST_CASE("traces serialize one event per line") {
    auto env = envs::make_environment("filesystem", envs::default_fixture("filesystem"));
    auto oracles = fixed_oracles({call("c0", "pwd", {})});
    auto trace = run_episode("where am I", oracles, *env, {},
                             [](const belief::ClarifyingQuestion&) { return std::string(); });
    std::string jsonl = trace.to_jsonl();
    std::size_t lines = std::count(jsonl.begin(), jsonl.end(), '\n');
    CHECK(lines == trace.events.size());
    // Every line parses as a JSON object with an event tag and no timestamps.
    std::istringstream in(jsonl);
    std::string line;
    while (std::getline(in, line)) {
        json j = json::parse(line);
        CHECK(j.is_object());
        CHECK(j.contains("event"));
        CHECK(!j.contains("timestamp"));
    }
}
