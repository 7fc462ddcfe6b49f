#pragma once
// Scenario-driven simulation: scripted users answer from a hidden value
// table, scripted oracles enumerate candidates over masked aspects, and a
// scorer reports coverage, tool match rate, parameter match rate and question
// counts against ground truth.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sage/agent.hpp"
#include "sage/belief.hpp"
#include "sage/envs.hpp"
#include "sage/schema.hpp"

namespace sage::sim {

using belief::AspectId;
using belief::BeliefState;
using belief::ClarifyingQuestion;
using belief::EngineConfig;

struct Request {
    std::string query;
    std::string intent;
    std::vector<CandidateCall> ground_truth;
    // Pre-built candidates (used by infeasible scenarios); when empty the
    // proposer enumerates over the masked aspects of the ground truth.
    std::vector<CandidateCall> proposed;
};

struct Scenario {
    std::string id;
    std::string domain;
    std::string query_type; // "explicit", "ambiguous" or "infeasible"
    std::vector<Request> requests;
    std::map<AspectId, Value> hidden; // what the scripted user can answer
    std::vector<AspectId> masked;     // aspects the proposer enumerates
    int max_clarifications = 5;
};

// Scenario files are single JSON objects.
Scenario parse_scenario(const std::string& text, const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

// Constraints the scripted user reveals for one question: an equality for
// every targeted aspect in the hidden table, no information otherwise.
std::map<AspectId, Constraint> scripted_answer(const Scenario& scenario,
                                               const ClarifyingQuestion& question);

// Oracles for one request of a scenario. The environment reference must stay
// valid while the oracles are used; candidate enumeration reads its current
// domains at proposal time.
agent::OracleSuite make_scripted_oracles(const Scenario& scenario, std::size_t request_index,
                                         const envs::Environment& env);

// Answers with the scripted constraints, serialized to the JSON wire format.
agent::Responder make_scripted_responder(const Scenario& scenario);

// Declines to answer anything; for budget and stopping-rule tests.
agent::Responder make_noinfo_responder();

struct ScenarioRun {
    std::string scenario_id;
    std::vector<agent::EpisodeTrace> traces; // one per request
};

// Runs every request of the scenario against the environment, which carries
// state across requests. The responder override replaces the scripted user.
ScenarioRun simulate(const Scenario& scenario, envs::Environment& env, const EngineConfig& config,
                     const agent::Responder* responder_override = nullptr);

struct ScenarioMetrics {
    std::string scenario_id;
    std::string query_type;
    double coverage = 0.0;
    double tool_match_rate = 0.0;
    double param_match_rate = 0.0;
    int questions = 0;
    int ground_truth_calls = 0;
};

struct MetricsReport {
    double coverage = 0.0;
    double tool_match_rate = 0.0;
    double param_match_rate = 0.0;
    double avg_questions = 0.0;
    int scenarios = 0;
    int ground_truth_calls = 0;
    std::vector<ScenarioMetrics> per_scenario;

    json to_json() const;
};

// Scores committed calls (the last execution of each episode) against ground
// truth. Runs and scenarios are matched by id; a run without a scenario is a
// UsageError. Numeric values compare at 1e-9 relative tolerance.
MetricsReport score(const std::vector<ScenarioRun>& runs, const std::vector<Scenario>& scenarios);

// True when two values match: exact for text, booleans and list shapes,
// 1e-9 relative tolerance for numbers.
bool values_match(const Value& a, const Value& b);

} // namespace sage::sim
