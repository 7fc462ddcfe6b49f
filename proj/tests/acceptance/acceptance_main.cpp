// Acceptance gate for the clarification engine: nine checks, one pass/fail
// line each, nonzero exit when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sage/agent.hpp"
#include "sage/belief.hpp"
#include "sage/cli.hpp"
#include "sage/envs.hpp"
#include "sage/errors.hpp"
#include "sage/reward.hpp"
#include "sage/schema.hpp"
#include "sage/simulator.hpp"
#include "sage/voi.hpp"

using namespace sage;
using belief::AspectId;
using belief::BeliefState;
using belief::ClarifyingQuestion;
using belief::EngineConfig;
namespace fs = std::filesystem;

namespace {

constexpr double kExact = 1e-12;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x, int places = 3) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", places, x);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<sim::Scenario> load_suite() {
    fs::path dir = fs::path(SAGE_DATA_DIR) / "scenarios";
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<sim::Scenario> scenarios;
    for (const auto& file : files)
        scenarios.push_back(sim::parse_scenario(read_file(file), file.string()));
    return scenarios;
}

std::unique_ptr<envs::Environment> fresh_env(const sim::Scenario& scenario) {
    return envs::make_environment(scenario.domain, envs::default_fixture(scenario.domain));
}

// ---------------------------------------------------------------------------
// 1. Randomized belief-update sequences: viability of surviving candidates
//    never drops, stays within [0, 1], and hits 1 exactly when every counted
//    parameter is specified.
// ---------------------------------------------------------------------------

Value random_member(const ParamDomain& domain, std::mt19937_64& rng) {
    if (const auto* finite = domain.get_if<FiniteDomain>()) {
        if (finite->values.empty()) return Value::text("z");
        std::uniform_int_distribution<std::size_t> pick(0, finite->values.size() - 1);
        return finite->values[pick(rng)];
    }
    if (domain.is<BooleanDomain>()) return Value::boolean(rng() % 2 == 0);
    if (const auto* range = domain.get_if<NumericRangeDomain>()) {
        if (range->integer_valued) {
            std::uniform_int_distribution<long> pick(static_cast<long>(range->lo),
                                                     static_cast<long>(range->hi));
            return Value::number(static_cast<double>(pick(rng)));
        }
        std::uniform_real_distribution<double> pick(range->lo, range->hi);
        return Value::number(pick(rng));
    }
    return Value::text("w" + std::to_string(rng() % 3));
}

ParamDomain random_domain(std::mt19937_64& rng) {
    switch (rng() % 6) {
    case 0: {
        std::vector<Value> values;
        std::size_t n = 2 + rng() % 4;
        for (std::size_t i = 0; i < n; ++i) values.push_back(Value::text("v" + std::to_string(i)));
        return ParamDomain::finite(std::move(values));
    }
    case 1: {
        std::vector<Value> values;
        std::size_t n = 2 + rng() % 3;
        for (std::size_t i = 0; i < n; ++i) values.push_back(Value::number(double(i + 1)));
        return ParamDomain::finite(std::move(values));
    }
    case 2: return ParamDomain::boolean();
    case 3: return ParamDomain::numeric_range(0, double(2 + rng() % 8), true);
    case 4: return ParamDomain::numeric_range(0.0, 5.0, false);
    default: return ParamDomain::text();
    }
}

Toolkit random_toolkit(std::mt19937_64& rng) {
    Toolkit toolkit;
    std::size_t tools = 1 + rng() % 2;
    for (std::size_t t = 0; t < tools; ++t) {
        ToolSchema tool;
        tool.name = "t" + std::to_string(t);
        std::size_t params = 1 + rng() % 4;
        for (std::size_t p = 0; p < params; ++p) {
            ParamSpec spec;
            spec.name = "p" + std::to_string(p);
            spec.domain = random_domain(rng);
            spec.required = rng() % 10 < 7;
            if (!spec.required && rng() % 2 == 0) {
                spec.default_value = spec.domain.is<TextDomain>() ? Value::text("d")
                                                                  : random_member(spec.domain, rng);
            }
            tool.params.push_back(std::move(spec));
        }
        toolkit.tools.push_back(std::move(tool));
    }
    return toolkit;
}

std::vector<CandidateCall> random_candidates(const Toolkit& toolkit, std::mt19937_64& rng) {
    std::vector<CandidateCall> candidates;
    std::size_t n = 2 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
        const ToolSchema& tool = toolkit.tools[rng() % toolkit.tools.size()];
        CandidateCall call;
        call.id = "c" + std::to_string(i);
        call.tool = tool.name;
        for (const auto& spec : tool.params) {
            if (!spec.required && rng() % 10 >= 6) continue;
            if (rng() % 2 == 0)
                call.arguments[spec.name] = std::nullopt;
            else
                call.arguments[spec.name] = random_member(spec.domain, rng);
        }
        candidates.push_back(std::move(call));
    }
    return candidates;
}

// True when every required or default-free optional parameter carries a value.
bool counted_params_specified(const CandidateCall& call, const Toolkit& toolkit) {
    const ToolSchema* tool = toolkit.find_tool(call.tool);
    for (const auto& spec : tool->params) {
        if (!spec.required && spec.default_value) continue;
        auto it = call.arguments.find(spec.name);
        if (it == call.arguments.end() || !it->second.has_value()) return false;
    }
    return true;
}

Constraint random_constraint(const ParamDomain& domain, std::mt19937_64& rng) {
    bool numeric = domain.is<NumericRangeDomain>() ||
                   (domain.get_if<FiniteDomain>() &&
                    domain.get_if<FiniteDomain>()->values.front().is_number());
    switch (rng() % 4) {
    case 0: return Constraint::equal_to(random_member(domain, rng));
    case 1: return Constraint::not_in({random_member(domain, rng)});
    case 2:
        if (numeric) {
            double a = double(rng() % 6), b = double(rng() % 6);
            return Constraint::range(std::min(a, b), std::max(a, b));
        }
        // A numeric interval over a non-numeric aspect eliminates; still legal.
        if (rng() % 8 == 0) return Constraint::range(0, 3);
        return Constraint::equal_to(random_member(domain, rng));
    default: return Constraint::no_information();
    }
}

Outcome criterion_monotone_beliefs() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(11);
    EngineConfig config;
    int sequences = 0;
    int updates = 0;
    std::string failure;

    while (sequences < 1200 && failure.empty()) {
        Toolkit toolkit = random_toolkit(rng);
        BeliefState state = belief::init_belief(random_candidates(toolkit, rng), toolkit, config);
        ++sequences;

        std::vector<AspectId> pool;
        for (const auto& candidate : state.candidates) {
            const ToolSchema* tool = toolkit.find_tool(candidate.tool);
            for (const auto& spec : tool->params) pool.push_back({tool->name, spec.name});
        }

        int steps = 1 + int(rng() % 6);
        for (int s = 0; s < steps && failure.empty(); ++s) {
            ClarifyingQuestion question;
            question.id = "q" + std::to_string(s);
            question.text = "?";
            std::size_t aspect_count = 1 + rng() % 2;
            for (std::size_t a = 0; a < aspect_count; ++a)
                question.aspects.insert(pool[rng() % pool.size()]);

            std::map<AspectId, Constraint> constraints;
            for (const auto& aspect : question.aspects) {
                if (rng() % 5 == 0) continue; // absent answers count as no information
                const ParamDomain& domain =
                    toolkit.find_tool(aspect.tool)->find_param(aspect.param)->domain;
                constraints.emplace(aspect, random_constraint(domain, rng));
            }

            std::map<std::string, double> before = state.weights;
            try {
                state = belief::apply_response(state, question, constraints, config);
            } catch (const ContradictoryResponse&) {
                break; // every candidate eliminated ends the sequence cleanly
            }
            ++updates;

            for (const auto& [id, weight] : state.weights) {
                if (weight < 0.0 || weight > 1.0) {
                    failure = "weight out of bounds for " + id;
                    break;
                }
                if (weight > 0.0 && weight + kExact < before.at(id)) {
                    failure = "viability of surviving " + id + " dropped";
                    break;
                }
                if (weight > 0.0) {
                    bool complete = counted_params_specified(*state.find_candidate(id), toolkit);
                    if (complete != (std::abs(weight - 1.0) <= kExact)) {
                        failure = "completeness mismatch for " + id;
                        break;
                    }
                }
            }
        }
    }

    double secs = elapsed_seconds(start);
    Outcome out;
    out.pass = failure.empty() && sequences >= 1000 && secs < 10.0;
    out.detail = std::to_string(sequences) + " sequences, " + std::to_string(updates) +
                 " updates, " + fmt(secs, 2) + "s" + (failure.empty() ? "" : "; " + failure);
    return out;
}

// ---------------------------------------------------------------------------
// 2. Every partition of every small belief state: the closed form equals an
//    independent best-cell-max oracle exactly, is non-negative, and never
//    decreases under refinement.
// ---------------------------------------------------------------------------

void enumerate_partitions(std::size_t n, std::vector<std::vector<std::size_t>>& cells,
                          std::size_t next, const std::function<void()>& emit) {
    if (next == n) {
        emit();
        return;
    }
    for (auto& cell : cells) {
        cell.push_back(next);
        enumerate_partitions(n, cells, next + 1, emit);
        cell.pop_back();
    }
    cells.push_back({next});
    enumerate_partitions(n, cells, next + 1, emit);
    cells.pop_back();
}

BeliefState weighted_state(const std::vector<double>& weights) {
    BeliefState state;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        CandidateCall call;
        call.id = "c" + std::to_string(i);
        call.tool = "t";
        state.candidates.push_back(call);
        state.weights[call.id] = weights[i];
    }
    state.normalized = belief::normalize(state.weights);
    return state;
}

voi::Partition to_partition(const std::vector<std::vector<std::size_t>>& cells) {
    voi::Partition partition;
    for (const auto& cell : cells) {
        voi::PartitionCell pc;
        for (std::size_t index : cell) pc.candidate_ids.push_back("c" + std::to_string(index));
        partition.cells.push_back(std::move(pc));
    }
    return partition;
}

// The same gap formula, written independently: in-order sum of cell maxima
// minus the running global maximum.
double oracle_evpi(const voi::Partition& partition, const BeliefState& state) {
    double cell_sum = 0.0;
    double global_max = 0.0;
    for (const auto& cell : partition.cells) {
        double cell_max = 0.0;
        for (const auto& id : cell.candidate_ids) cell_max = std::max(cell_max, state.weights.at(id));
        cell_sum += cell_max;
        global_max = std::max(global_max, cell_max);
    }
    return cell_sum - global_max;
}

Outcome criterion_partition_oracle() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    long cases = 0;
    std::string failure;

    auto run_states = [&](std::size_t size, int count) {
        for (int i = 0; i < count && failure.empty(); ++i) {
            std::vector<double> weights;
            for (std::size_t w = 0; w < size; ++w) weights.push_back(weight(rng));
            BeliefState state = weighted_state(weights);

            std::vector<std::vector<std::size_t>> cells;
            enumerate_partitions(size, cells, 0, [&] {
                if (!failure.empty()) return;
                voi::Partition partition = to_partition(cells);
                double closed = voi::evpi_of_partition(partition, state);
                double oracle = oracle_evpi(partition, state);
                ++cases;
                if (closed != oracle) {
                    failure = "closed form diverged from the oracle";
                    return;
                }
                if (closed < 0.0) {
                    failure = "negative information value";
                    return;
                }
                // Splitting any element out of any cell refines the partition.
                for (std::size_t c = 0; c < partition.cells.size(); ++c) {
                    if (partition.cells[c].candidate_ids.size() < 2) continue;
                    voi::Partition refined = partition;
                    voi::PartitionCell single;
                    single.candidate_ids = {refined.cells[c].candidate_ids.back()};
                    refined.cells[c].candidate_ids.pop_back();
                    refined.cells.push_back(std::move(single));
                    if (voi::evpi_of_partition(refined, state) + kExact < closed) {
                        failure = "refinement decreased the information value";
                        return;
                    }
                }
            });
        }
    };

    run_states(1, 40);
    run_states(2, 60);
    run_states(3, 60);
    run_states(4, 60);
    run_states(5, 220);

    double secs = elapsed_seconds(start);
    Outcome out;
    out.pass = failure.empty() && cases >= 10000 && secs < 30.0;
    out.detail = std::to_string(cases) + " partition cases, " + fmt(secs, 2) + "s" +
                 (failure.empty() ? "" : "; " + failure);
    return out;
}

// ---------------------------------------------------------------------------
// 3. Worked values, exact to 1e-12.
// ---------------------------------------------------------------------------

Outcome criterion_worked_values() {
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& label) {
        if (!ok) failures.push_back(label);
    };

    BeliefState state = weighted_state({0.6, 0.3, 0.1});
    voi::Partition partition = to_partition({{0}, {1, 2}});
    expect(std::abs(voi::evpi_of_partition(partition, state) - 0.3) <= kExact,
           "partition value 0.3");

    EngineConfig config;
    BeliefState counted = weighted_state({1.0});
    counted.aspect_counts[{"t", "a"}] = 1;
    counted.aspect_counts[{"t", "b"}] = 2;
    ClarifyingQuestion question;
    question.id = "q";
    question.aspects = {{"t", "a"}, {"t", "b"}};
    expect(std::abs(voi::cost(question, counted, config) - 1.5) <= kExact, "question cost 1.5");

    Toolkit toolkit;
    ToolSchema tool;
    tool.name = "t";
    tool.params.push_back({"a", ParamDomain::finite({Value::text("x"), Value::text("y")}), true,
                           false, std::nullopt});
    tool.params.push_back({"b",
                           ParamDomain::finite({Value::number(1), Value::number(2), Value::number(3),
                                                Value::number(4)}),
                           true, false, std::nullopt});
    toolkit.tools.push_back(tool);
    CandidateCall call;
    call.id = "c0";
    call.tool = "t";
    call.arguments["a"] = std::nullopt;
    call.arguments["b"] = std::nullopt;
    BeliefState two_by_four = belief::init_belief({call}, toolkit, config);
    expect(std::abs(two_by_four.weights.at("c0") - 0.125) <= kExact, "viability 0.125");

    std::ifstream fixtures(std::string(SAGE_DATA_DIR) + "/rewards/fixtures.jsonl");
    std::string line;
    std::getline(fixtures, line);
    std::getline(fixtures, line); // the structured-question record
    json record = json::parse(line);
    reward::ParsedCompletion parsed =
        reward::parse_completion(record.at("completion").get<std::string>());
    reward::GoldRecord gold;
    gold.action = reward::ActionType::Ask;
    reward::RewardBreakdown b = reward::total_reward(
        parsed, gold, reward::RewardMode::Certainty, envs::builtin_toolkit("trading"));
    expect(std::abs(b.r_cls_final - 1.0) <= kExact, "weighted question reward 1.0");

    Outcome out;
    out.pass = failures.empty();
    out.detail = failures.empty() ? "4 worked values exact to 1e-12"
                                  : "failed: " + failures.front();
    return out;
}

// ---------------------------------------------------------------------------
// 4. Question budget under a responder that never answers.
// ---------------------------------------------------------------------------

Outcome criterion_budget(const std::vector<sim::Scenario>& suite) {
    agent::Responder stonewall = sim::make_noinfo_responder();
    int scenarios = 0;
    int over_budget = 0;
    for (const auto& scenario : suite) {
        auto env = fresh_env(scenario);
        sim::ScenarioRun run = sim::simulate(scenario, *env, {}, &stonewall);
        ++scenarios;
        for (const auto& trace : run.traces)
            if (trace.asked_count() > 5) ++over_budget;
    }
    Outcome out;
    out.pass = scenarios >= 90 && over_budget == 0;
    out.detail = std::to_string(scenarios) + " scenarios, " + std::to_string(over_budget) +
                 " over the five-question budget";
    return out;
}

// ---------------------------------------------------------------------------
// 5. Charging for repeat questions lowers the question count at equal coverage.
// ---------------------------------------------------------------------------

Outcome criterion_cost_contrast(const std::vector<sim::Scenario>& suite) {
    std::vector<sim::Scenario> ambiguous;
    for (const auto& scenario : suite)
        if (scenario.query_type == "ambiguous") ambiguous.push_back(scenario);

    auto run_suite = [&](double lambda) {
        EngineConfig config;
        config.lambda = lambda;
        std::vector<sim::ScenarioRun> runs;
        for (const auto& scenario : ambiguous) {
            auto env = fresh_env(scenario);
            runs.push_back(sim::simulate(scenario, *env, config));
        }
        return sim::score(runs, ambiguous);
    };

    sim::MetricsReport charged = run_suite(0.5);
    sim::MetricsReport free_questions = run_suite(0.0);
    double coverage_gap = std::abs(charged.coverage - free_questions.coverage);

    Outcome out;
    out.pass = charged.avg_questions < free_questions.avg_questions && coverage_gap < 0.03;
    out.detail = "avg questions " + fmt(charged.avg_questions) + " charged vs " +
                 fmt(free_questions.avg_questions) + " free, coverage gap " + fmt(coverage_gap);
    return out;
}

// ---------------------------------------------------------------------------
// 6. Scenarios hiding k answerable aspects resolve in at most k questions at
//    full coverage; explicit scenarios ask nothing.
// ---------------------------------------------------------------------------

Outcome criterion_hidden_aspects(const std::vector<sim::Scenario>& suite) {
    std::set<std::size_t> seen_k;
    int hidden_checked = 0;
    int explicit_checked = 0;
    std::string failure;

    for (const auto& scenario : suite) {
        if (!failure.empty()) break;
        if (scenario.query_type == "explicit") {
            auto env = fresh_env(scenario);
            sim::ScenarioRun run = sim::simulate(scenario, *env, {});
            ++explicit_checked;
            for (const auto& trace : run.traces)
                if (trace.asked_count() != 0) failure = scenario.id + " asked on an explicit query";
            continue;
        }
        if (scenario.query_type != "ambiguous" || scenario.hidden.empty()) continue;

        std::size_t k = scenario.hidden.size();
        if (k < 1 || k > 3) {
            failure = scenario.id + " hides an unexpected aspect count";
            continue;
        }
        seen_k.insert(k);
        ++hidden_checked;

        auto env = fresh_env(scenario);
        sim::ScenarioRun run = sim::simulate(scenario, *env, {});
        std::size_t asked = 0;
        for (const auto& trace : run.traces) asked += std::size_t(trace.asked_count());
        if (asked > k) {
            failure = scenario.id + " asked " + std::to_string(asked) + " for k=" +
                      std::to_string(k);
            continue;
        }
        sim::MetricsReport metrics = sim::score({run}, {scenario});
        if (metrics.coverage != 1.0) failure = scenario.id + " missed full coverage";
    }

    Outcome out;
    out.pass = failure.empty() && seen_k == std::set<std::size_t>{1, 2, 3} &&
               hidden_checked > 0 && explicit_checked > 0;
    out.detail = std::to_string(hidden_checked) + " hidden-aspect scenarios (k up to 3), " +
                 std::to_string(explicit_checked) + " explicit scenarios" +
                 (failure.empty() ? "" : "; " + failure);
    return out;
}

// ---------------------------------------------------------------------------
// 7. Corrupting any feasible recorded call yields its declared error kind on
//    a cloned environment, across ten seeds.
// ---------------------------------------------------------------------------

Outcome criterion_corruption(const std::vector<sim::Scenario>& suite) {
    long checks = 0;
    long mismatches = 0;
    long replay_failures = 0;
    for (const auto& scenario : suite) {
        auto env = fresh_env(scenario);
        for (const auto& request : scenario.requests) {
            for (const auto& call : request.ground_truth) {
                for (std::uint64_t seed = 0; seed < 10; ++seed) {
                    auto corrupted = envs::corrupt_call(call, *env, seed);
                    if (!corrupted) continue;
                    ++checks;
                    auto probe = env->clone();
                    envs::ExecutionResult result = probe->execute(corrupted->call);
                    if (result.ok || result.kind != corrupted->expected_kind) ++mismatches;
                }
                if (!env->execute(call).ok) ++replay_failures;
            }
        }
    }
    Outcome out;
    out.pass = checks > 0 && mismatches == 0 && replay_failures == 0;
    out.detail = std::to_string(checks) + " corrupted executions, " + std::to_string(mismatches) +
                 " kind mismatches, " + std::to_string(replay_failures) + " replay failures";
    return out;
}

// ---------------------------------------------------------------------------
// 8. Reward fixtures hit the constant tables; the certainty mode scales the
//    classification term multiplicatively on randomized completions.
// ---------------------------------------------------------------------------

Outcome criterion_reward_constants() {
    struct Expected {
        double r_fmt, r_tool, r_cls;
    };
    // Covers the full constant tables: tool 1.0/0.75/0.5/0.0, class 2.0/1.5/0.0.
    const std::vector<Expected> expected = {
        {1.5, 1.0, 2.0}, {1.5, 0.5, 2.0},  {1.5, 0.5, 1.5},
        {1.5, 0.0, 0.0}, {0.998, 0.75, 2.0}, {0.0, 0.5, 0.0},
    };

    std::string failure;
    std::ifstream in(std::string(SAGE_DATA_DIR) + "/rewards/fixtures.jsonl");
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json record = json::parse(line);
        reward::ParsedCompletion parsed =
            reward::parse_completion(record.at("completion").get<std::string>());
        reward::GoldRecord gold;
        gold.action = reward::action_from_string(record.at("gold_action").get<std::string>());
        if (record.contains("gold_call"))
            gold.call = CandidateCall::from_json(record.at("gold_call"), "fixture");
        Toolkit toolkit = envs::builtin_toolkit(record.at("toolkit").get<std::string>());
        reward::RewardBreakdown b =
            reward::total_reward(parsed, gold, reward::RewardMode::Baseline, toolkit);
        if (i >= expected.size() || std::abs(b.r_fmt - expected[i].r_fmt) > kExact ||
            std::abs(b.r_tool - expected[i].r_tool) > kExact ||
            std::abs(b.r_cls_base - expected[i].r_cls) > kExact) {
            failure = "fixture " + std::to_string(i + 1) + " missed its constants";
            break;
        }
        ++i;
    }
    if (failure.empty() && i != expected.size()) failure = "fixture count changed";

    std::mt19937_64 rng(31);
    int randomized = 0;
    if (failure.empty()) {
        const auto& domains = envs::environment_names();
        for (int n = 0; n < 1000 && failure.empty(); ++n) {
            Toolkit toolkit = envs::builtin_toolkit(domains[rng() % domains.size()]);
            reward::ParsedCompletion seed;
            switch (rng() % 4) {
            case 0: seed.action = reward::ActionType::ToolCall; break;
            case 1: seed.action = reward::ActionType::Ask; break;
            case 2: seed.action = reward::ActionType::Refuse; break;
            default: seed.action = reward::ActionType::Directly; break;
            }
            seed.action_content = rng() % 2 ? "a reply comfortably longer than thirty characters"
                                            : "brief";
            seed.question = "which value should this be?";
            if (seed.action == reward::ActionType::ToolCall ||
                (seed.action == reward::ActionType::Ask && rng() % 3 != 0)) {
                const ToolSchema& tool = toolkit.tools[rng() % toolkit.tools.size()];
                CandidateCall call;
                call.tool = tool.name;
                for (const auto& spec : tool.params) {
                    if (rng() % 10 >= 7) continue;
                    if (spec.domain.is<ListOfDomain>() || rng() % 5 < 2)
                        call.arguments[spec.name] = std::nullopt;
                    else
                        call.arguments[spec.name] = random_member(spec.domain, rng);
                }
                seed.calls = {call};
            }
            std::string text = reward::serialize_completion(seed);
            if (rng() % 4 == 0) text += "trailing junk";
            if (rng() % 4 == 0) text = "preamble " + text;

            reward::ParsedCompletion parsed = reward::parse_completion(text);
            reward::GoldRecord gold;
            switch (rng() % 4) {
            case 0: gold.action = reward::ActionType::ToolCall; break;
            case 1: gold.action = reward::ActionType::Ask; break;
            case 2: gold.action = reward::ActionType::Refuse; break;
            default: gold.action = reward::ActionType::Directly; break;
            }
            if (!seed.calls.empty() && rng() % 2 == 0) gold.call = seed.calls.front();

            reward::RewardBreakdown b =
                reward::total_reward(parsed, gold, reward::RewardMode::Certainty, toolkit);
            if (std::abs(b.r_cls_final - b.cert * b.r_cls_base) > kExact ||
                std::abs(b.total - (b.r_fmt + b.r_tool + b.r_cls_final)) > kExact)
                failure = "certainty scaling identity broke on a randomized completion";
            else
                ++randomized;
        }
    }

    Outcome out;
    out.pass = failure.empty() && randomized == 1000;
    out.detail = "6 fixtures, " + std::to_string(randomized) + " randomized completions" +
                 (failure.empty() ? "" : "; " + failure);
    return out;
}

// ---------------------------------------------------------------------------
// 9. Two identical batch runs produce byte-identical traces and reports.
// ---------------------------------------------------------------------------

Outcome criterion_replay_determinism() {
    fs::path base = fs::temp_directory_path() / "sage-acceptance-replay";
    fs::remove_all(base);

    for (const char* name : {"a", "b"}) {
        cli::SimulateOptions options;
        options.data_dir = SAGE_DATA_DIR;
        options.out_dir = (base / name).string();
        std::ostringstream out, err;
        if (cli::run_simulate(options, out, err) != 0)
            return {false, "batch run failed: " + err.str()};
    }

    auto listing = [](const fs::path& dir) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(dir))
            if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), dir));
        std::sort(files.begin(), files.end());
        return files;
    };

    auto first = listing(base / "a");
    auto second = listing(base / "b");
    if (first != second) return {false, "the two runs wrote different file sets"};

    int compared = 0;
    for (const auto& rel : first) {
        if (read_file(base / "a" / rel) != read_file(base / "b" / rel))
            return {false, rel.string() + " differs between runs"};
        ++compared;
    }
    return {true, std::to_string(compared) + " files byte-identical across runs"};
}

} // namespace

int main() {
    std::vector<sim::Scenario> suite;
    try {
        suite = load_suite();
    } catch (const std::exception& e) {
        std::cout << "FAIL  0. scenario suite did not load: " << e.what() << "\n";
        return 1;
    }

    struct Check {
        std::string label;
        std::function<Outcome()> run;
    };
    const std::vector<Check> checks = {
        {"belief updates stay monotone, bounded, and complete", criterion_monotone_beliefs},
        {"partition values match a brute-force oracle", criterion_partition_oracle},
        {"worked-value fixtures are exact", criterion_worked_values},
        {"the question budget holds against a stonewalling responder",
         [&] { return criterion_budget(suite); }},
        {"charging for repeats asks less at equal coverage",
         [&] { return criterion_cost_contrast(suite); }},
        {"hidden aspects resolve in at most k questions",
         [&] { return criterion_hidden_aspects(suite); }},
        {"corrupted calls fail with their declared kind",
         [&] { return criterion_corruption(suite); }},
        {"reward constants and certainty scaling hold", criterion_reward_constants},
        {"batch simulation replays byte-identically", criterion_replay_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        Outcome outcome;
        try {
            outcome = checks[i].run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failed;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << checks[i].label
                  << " (" << outcome.detail << ")\n";
    }
    return failed == 0 ? 0 : 1;
}
