#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sage/errors.hpp"
#include "sage/simulator.hpp"

using namespace sage;
using namespace sage::sim;

namespace {

Value T(const char* s) { return Value::text(s); }
Value N(double n) { return Value::number(n); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scenario_path(const char* id) {
    return std::string(SAGE_DATA_DIR) + "/scenarios/" + id + ".json";
}

Scenario load(const char* id) {
    return parse_scenario(read_file(scenario_path(id)), id);
}

CandidateCall call(const char* tool, std::vector<std::pair<std::string, Value>> args) {
    CandidateCall c;
    c.tool = tool;
    for (auto& [k, v] : args) c.arguments[k] = std::move(v);
    return c;
}

} // namespace

TEST_CASE("scenario files round trip byte for byte") {
    for (const char* id : {"fs-amb-001", "doc-inf-004", "trav-amb-006", "veh-exp-007"}) {
        std::string text = read_file(scenario_path(id));
        Scenario s = parse_scenario(text, id);
        CHECK(serialize_scenario(s) == text);
    }
}

TEST_CASE("scenario parsing validates structure") {
    CHECK_THROWS_AS(parse_scenario("[]", "t"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"scenario_id":"x"})", "t"), ParseError);
    json good = json::parse(read_file(scenario_path("fs-amb-001")));
    json bad = good;
    bad["domain"] = "atlantis";
    CHECK_THROWS_AS(parse_scenario(bad.dump(), "t"), ParseError);
    bad = good;
    bad["query_type"] = "vague";
    CHECK_THROWS_AS(parse_scenario(bad.dump(), "t"), ParseError);
    bad = good;
    bad["requests"] = json::array();
    CHECK_THROWS_AS(parse_scenario(bad.dump(), "t"), ParseError);
}

TEST_CASE("scripted answers reveal hidden values and nothing else") {
    Scenario s = load("fs-amb-001");
    belief::ClarifyingQuestion q;
    q.id = "q0";
    q.aspects = {belief::AspectId{"cat", "file_name"}};
    auto constraints = scripted_answer(s, q);
    REQUIRE(constraints.size() == 1);
    auto* eq = constraints.begin()->second.get_if<EqualTo>();
    REQUIRE(eq != nullptr);
    CHECK(eq->value == T("readme.txt"));

    q.aspects = {belief::AspectId{"cat", "elsewhere"}};
    auto blank = scripted_answer(s, q);
    REQUIRE(blank.size() == 1);
    CHECK(blank.begin()->second.is_no_information());
}

TEST_CASE("the scripted proposer enumerates masked aspects over current domains") {
    Scenario s = load("fs-amb-001");
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto oracles = make_scripted_oracles(s, 0, *env);
    auto candidates = oracles.propose_candidates(s.requests[0].query, {}, env->toolkit());
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].id == "c000");
    CHECK(candidates[1].id == "c001");
    CHECK(*candidates[0].arguments.at("file_name") == T("data.csv"));
    CHECK(*candidates[1].arguments.at("file_name") == T("readme.txt"));
}

TEST_CASE("the scripted proposer uses pre-built candidates verbatim") {
    Scenario s = load("trd-inf-001");
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto oracles = make_scripted_oracles(s, 0, *env);
    auto candidates = oracles.propose_candidates(s.requests[0].query, {}, env->toolkit());
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].tool == "get_stock_info");
    CHECK(*candidates[0].arguments.at("symbol") == T("ZZZZ"));
}

TEST_CASE("masking an aspect with an infinite domain is a usage error") {
    Scenario s = load("fs-amb-001");
    s.masked = {belief::AspectId{"mkdir", "dir_name"}};
    s.requests[0].ground_truth = {call("mkdir", {{"dir_name", T("projects")}})};
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto oracles = make_scripted_oracles(s, 0, *env);
    CHECK_THROWS_AS(oracles.propose_candidates(s.requests[0].query, {}, env->toolkit()),
                    UsageError);
}

TEST_CASE("simulated ambiguous scenarios ask once per masked aspect and match") {
    Scenario s = load("trav-amb-006"); // three masked aspects on one tool
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto run = simulate(s, *env, {});
    REQUIRE(run.traces.size() == 1);
    CHECK(run.traces[0].asked_count() == 3);
    REQUIRE(run.traces[0].final_execution() != nullptr);
    CHECK(run.traces[0].final_execution()->result.ok);

    auto metrics = score({run}, {s});
    CHECK(metrics.coverage == 1.0);
    CHECK(metrics.tool_match_rate == 1.0);
    CHECK(metrics.param_match_rate == 1.0);
    CHECK(metrics.avg_questions == 3.0);
}

TEST_CASE("simulated infeasible scenarios recover through the error question") {
    Scenario s = load("fs-inf-002");
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto run = simulate(s, *env, {});
    REQUIRE(run.traces.size() == 1);
    const auto& trace = run.traces[0];
    CHECK(trace.asked_count() == 1);
    auto executions = trace.executed();
    REQUIRE(executions.size() == 2);
    CHECK(!executions[0]->result.ok);
    CHECK(executions[0]->result.kind == envs::ErrorKind::MissingEntity);
    CHECK(executions[1]->result.ok);
    auto metrics = score({run}, {s});
    CHECK(metrics.coverage == 1.0);
}

TEST_CASE("environment state persists across a scenario's requests") {
    Scenario s = load("fs-exp-007"); // mkdir projects, then cd projects
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto run = simulate(s, *env, {});
    REQUIRE(run.traces.size() == 2);
    for (const auto& trace : run.traces) {
        REQUIRE(trace.final_execution() != nullptr);
        CHECK(trace.final_execution()->result.ok);
        CHECK(trace.asked_count() == 0);
    }
    CHECK(env->state_snapshot().at("cwd") == json("/projects"));
}

TEST_CASE("the no-information responder forces the cost-based stop") {
    Scenario s = load("fs-amb-001");
    auto env = envs::make_environment(s.domain, envs::default_fixture(s.domain));
    auto responder = make_noinfo_responder();
    auto run = simulate(s, *env, {}, &responder);
    REQUIRE(run.traces.size() == 1);
    CHECK(run.traces[0].asked_count() == 2);
    CHECK(run.traces[0].terminated_reason() == "low-score");
    REQUIRE(run.traces[0].final_execution() != nullptr);
    CHECK(run.traces[0].final_execution()->result.ok);
}

TEST_CASE("numeric matching uses a relative tolerance") {
    CHECK(values_match(N(1.0), N(1.0 + 1e-12)));
    CHECK(!values_match(N(1.0), N(1.0 + 1e-6)));
    CHECK(values_match(N(1e9), N(1e9 + 0.5)));
    CHECK(!values_match(T("a"), N(1)));
    CHECK(values_match(Value::list({N(1), N(2)}), Value::list({N(1), N(2)})));
}

TEST_CASE("scoring pairs committed calls greedily against ground truth") {
    Scenario s;
    s.id = "hand";
    s.domain = "filesystem";
    s.query_type = "explicit";
    Request r;
    r.query = "q";
    r.intent = "i";
    r.ground_truth = {call("wc", {{"file_name", T("data.csv")}, {"mode", T("w")}})};
    s.requests.push_back(r);

    ScenarioRun run;
    run.scenario_id = "hand";
    agent::EpisodeTrace trace;
    CandidateCall committed = call("wc", {{"file_name", T("data.csv")}, {"mode", T("c")}});
    committed.id = "c000";
    trace.events.push_back(agent::ExecutedEvent{
        committed, envs::ExecutionResult::success("2", json(2))});
    trace.events.push_back(agent::TerminatedEvent{"threshold"});
    run.traces.push_back(std::move(trace));

    auto metrics = score({run}, {s});
    CHECK(metrics.coverage == 0.0);          // one argument differs
    CHECK(metrics.tool_match_rate == 1.0);   // tool name matches
    CHECK(metrics.param_match_rate == 0.5);  // one of two specified arguments
    CHECK(metrics.avg_questions == 0.0);
}

TEST_CASE("a ground-truth call with no arguments matches on the tool alone") {
    Scenario s;
    s.id = "hand";
    s.domain = "filesystem";
    s.query_type = "explicit";
    Request r;
    r.query = "q";
    r.intent = "i";
    r.ground_truth = {call("pwd", {})};
    s.requests.push_back(r);

    ScenarioRun run;
    run.scenario_id = "hand";
    agent::EpisodeTrace trace;
    CandidateCall committed = call("pwd", {});
    trace.events.push_back(agent::ExecutedEvent{
        committed, envs::ExecutionResult::success("/", json("/"))});
    trace.events.push_back(agent::TerminatedEvent{"threshold"});
    run.traces.push_back(std::move(trace));

    auto metrics = score({run}, {s});
    CHECK(metrics.coverage == 1.0);
    CHECK(metrics.param_match_rate == 1.0);
}
