#pragma once
// Clarification agent loop: maintain a belief state over candidate calls,
// score proposed questions by expected value of perfect information minus
// redundancy cost, ask or execute per the decision rule, and recover from
// execution errors by re-opening the blamed parameter.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sage/belief.hpp"
#include "sage/envs.hpp"
#include "sage/schema.hpp"
#include "sage/voi.hpp"

namespace sage::agent {

using belief::AspectId;
using belief::BeliefState;
using belief::ClarifyingQuestion;
using belief::EngineConfig;

// Pluggable proposers and interpreters. Scripted versions live in the
// simulator; a model-backed deployment swaps these functions out.
struct OracleSuite {
    // Candidate partial calls for a user query.
    std::function<std::vector<CandidateCall>(
        const std::string& query, const std::vector<belief::ObservationRecord>& observations,
        const Toolkit& toolkit)>
        propose_candidates;

    // At most five candidate clarifying questions for the current belief.
    std::function<std::vector<ClarifyingQuestion>(const std::string& query,
                                                  const BeliefState& state)>
        propose_questions;

    // Constraints extracted from a response, restricted to the targeted aspects.
    std::function<std::map<AspectId, Constraint>(const std::string& response,
                                                 const std::set<AspectId>& targets)>
        interpret_response;

    // A direct question about the parameter blamed by a failed execution.
    std::function<ClarifyingQuestion(const envs::ExecutionResult& error,
                                     const CandidateCall& call, int attempt)>
        error_question;
};

// Produces the user's reply to a question.
using Responder = std::function<std::string(const ClarifyingQuestion&)>;

// Thrown by a responder to end the episode without executing.
class UserAbort : public std::runtime_error {
public:
    UserAbort() : std::runtime_error("user aborted the episode") {}
};

// --- trace events, one JSON line each ---

struct CandidateSetEvent {
    std::vector<CandidateCall> candidates;
};
struct QuestionScoredEvent {
    int round = 0;
    std::vector<voi::ScoredQuestion> scores;
};
struct AskedEvent {
    ClarifyingQuestion question;
};
struct AnsweredEvent {
    std::string question_id;
    std::string response;
    std::map<AspectId, Constraint> constraints;
};
struct BeliefSnapshotEvent {
    json snapshot;
};
struct ExecutedEvent {
    CandidateCall call;
    envs::ExecutionResult result;
};
struct ErrorRecoveryEvent {
    envs::ExecutionResult error;
    std::string question_id;
    int attempt = 0;
};
struct TerminatedEvent {
    std::string reason;
};

using TraceEvent = std::variant<CandidateSetEvent, QuestionScoredEvent, AskedEvent, AnsweredEvent,
                                BeliefSnapshotEvent, ExecutedEvent, ErrorRecoveryEvent,
                                TerminatedEvent>;

json event_to_json(const TraceEvent& event);

struct EpisodeTrace {
    std::vector<TraceEvent> events;

    int asked_count() const;
    std::vector<const ExecutedEvent*> executed() const;
    // The last executed call, whether or not it succeeded.
    const ExecutedEvent* final_execution() const;
    std::string terminated_reason() const;

    // One JSON object per line, no timestamps.
    std::string to_jsonl() const;
};

// Maximum error-recovery rounds per episode.
inline constexpr int kMaxRecoveryAttempts = 2;

// Watches events as the episode appends them; the REPL prints from here.
using EventObserver = std::function<void(const TraceEvent&)>;

// Runs one query to termination. The toolkit is the environment's; the
// responder answers clarifying questions. Termination reasons: "threshold",
// "low-score", "budget", "no-questions", "abort".
EpisodeTrace run_episode(const std::string& query, const OracleSuite& oracles,
                         envs::Environment& env, const EngineConfig& config,
                         const Responder& responder, const EventObserver& observer = {});

} // namespace sage::agent
