#include "sage/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace sage::sim {

namespace {

using ojson = nlohmann::ordered_json;

// Product cap for candidate enumeration over masked aspects.
constexpr std::size_t kEnumerationCap = 128;

ojson call_to_ojson(const CandidateCall& call, bool with_id) {
    ojson j = ojson::object();
    if (with_id && !call.id.empty()) j["id"] = call.id;
    j["tool"] = call.tool;
    ojson args = ojson::object();
    for (const auto& [name, value] : call.arguments)
        args[name] = value ? ojson::parse(value->to_json().dump()) : ojson("<UNK>");
    j["arguments"] = std::move(args);
    return j;
}

std::vector<CandidateCall> parse_calls(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array of calls");
    std::vector<CandidateCall> calls;
    for (std::size_t i = 0; i < j.size(); ++i)
        calls.push_back(CandidateCall::from_json(j.at(i), path + "[" + std::to_string(i) + "]"));
    return calls;
}

std::string padded_id(const char* prefix, std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, n);
    return buf;
}

// Values a masked aspect can range over. Only genuinely enumerable domains
// qualify; masking a text or range parameter is a scenario authoring error.
std::vector<Value> enumerable_values(const ParamDomain& domain, const AspectId& aspect) {
    if (const auto* f = domain.get_if<FiniteDomain>()) return f->values;
    if (domain.is<BooleanDomain>()) return {Value::boolean(false), Value::boolean(true)};
    throw UsageError("masked aspect " + aspect.str() + " has no enumerable domain");
}

} // namespace

// ---------------------------------------------------------------------------
// Scenario files
// ---------------------------------------------------------------------------

Scenario parse_scenario(const std::string& text, const std::string& path) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(path + ": expected a scenario object");

    Scenario s;
    if (!j.contains("scenario_id") || !j.at("scenario_id").is_string())
        throw ParseError(path + ": \"scenario_id\" must be a string");
    s.id = j.at("scenario_id").get<std::string>();
    if (s.id.empty()) throw ParseError(path + ": \"scenario_id\" is empty");

    if (!j.contains("domain") || !j.at("domain").is_string())
        throw ParseError(path + ": \"domain\" must be a string");
    s.domain = j.at("domain").get<std::string>();
    const auto names = envs::environment_names();
    if (std::find(names.begin(), names.end(), s.domain) == names.end())
        throw ParseError(path + ": unknown domain \"" + s.domain + "\"");

    s.query_type = j.value("query_type", std::string{});
    if (s.query_type != "explicit" && s.query_type != "ambiguous" && s.query_type != "infeasible")
        throw ParseError(path + ": \"query_type\" must be explicit, ambiguous or infeasible");

    if (!j.contains("requests") || !j.at("requests").is_array() || j.at("requests").empty())
        throw ParseError(path + ": \"requests\" must be a non-empty array");
    for (std::size_t i = 0; i < j.at("requests").size(); ++i) {
        const json& rj = j.at("requests").at(i);
        const std::string rpath = path + ".requests[" + std::to_string(i) + "]";
        if (!rj.is_object()) throw ParseError(rpath + ": expected an object");
        Request r;
        r.query = rj.value("query", std::string{});
        if (r.query.empty()) throw ParseError(rpath + ": \"query\" is empty");
        r.intent = rj.value("intent", std::string{});
        if (!rj.contains("ground_truth"))
            throw ParseError(rpath + ": \"ground_truth\" is missing");
        r.ground_truth = parse_calls(rj.at("ground_truth"), rpath + ".ground_truth");
        if (r.ground_truth.empty()) throw ParseError(rpath + ": \"ground_truth\" is empty");
        if (rj.contains("proposed")) r.proposed = parse_calls(rj.at("proposed"), rpath + ".proposed");
        s.requests.push_back(std::move(r));
    }

    if (j.contains("hidden")) {
        if (!j.at("hidden").is_object()) throw ParseError(path + ": \"hidden\" must be an object");
        for (const auto& [key, vj] : j.at("hidden").items())
            s.hidden[AspectId::parse(key)] = Value::from_json(vj);
    }
    if (j.contains("masked_aspects")) {
        if (!j.at("masked_aspects").is_array())
            throw ParseError(path + ": \"masked_aspects\" must be an array");
        for (const auto& mj : j.at("masked_aspects")) {
            if (!mj.is_string()) throw ParseError(path + ": masked aspect must be a string");
            s.masked.push_back(AspectId::parse(mj.get<std::string>()));
        }
    }
    s.max_clarifications = j.value("max_clarifications", 5);
    if (s.max_clarifications < 0)
        throw ParseError(path + ": \"max_clarifications\" must be non-negative");
    return s;
}

std::string serialize_scenario(const Scenario& scenario) {
    ojson j = ojson::object();
    j["scenario_id"] = scenario.id;
    j["domain"] = scenario.domain;
    j["query_type"] = scenario.query_type;
    ojson requests = ojson::array();
    for (const auto& r : scenario.requests) {
        ojson rj = ojson::object();
        rj["query"] = r.query;
        rj["intent"] = r.intent;
        ojson gt = ojson::array();
        for (const auto& call : r.ground_truth) gt.push_back(call_to_ojson(call, false));
        rj["ground_truth"] = std::move(gt);
        if (!r.proposed.empty()) {
            ojson pr = ojson::array();
            for (const auto& call : r.proposed) pr.push_back(call_to_ojson(call, true));
            rj["proposed"] = std::move(pr);
        }
        requests.push_back(std::move(rj));
    }
    j["requests"] = std::move(requests);
    ojson hidden = ojson::object();
    for (const auto& [aspect, value] : scenario.hidden)
        hidden[aspect.str()] = ojson::parse(value.to_json().dump());
    j["hidden"] = std::move(hidden);
    ojson masked = ojson::array();
    for (const auto& aspect : scenario.masked) masked.push_back(aspect.str());
    j["masked_aspects"] = std::move(masked);
    j["max_clarifications"] = scenario.max_clarifications;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Scripted user
// ---------------------------------------------------------------------------

std::map<AspectId, Constraint> scripted_answer(const Scenario& scenario,
                                               const ClarifyingQuestion& question) {
    std::map<AspectId, Constraint> out;
    for (const auto& aspect : question.aspects) {
        auto it = scenario.hidden.find(aspect);
        if (it != scenario.hidden.end())
            out[aspect] = Constraint::equal_to(it->second);
        else
            out[aspect] = Constraint::no_information();
    }
    return out;
}

agent::Responder make_scripted_responder(const Scenario& scenario) {
    return [scenario](const ClarifyingQuestion& question) {
        json j = json::object();
        for (const auto& [aspect, constraint] : scripted_answer(scenario, question))
            j[aspect.str()] = constraint.to_json();
        return j.dump();
    };
}

agent::Responder make_noinfo_responder() {
    return [](const ClarifyingQuestion&) { return std::string("{}"); };
}

// ---------------------------------------------------------------------------
// Scripted oracles
// ---------------------------------------------------------------------------

agent::OracleSuite make_scripted_oracles(const Scenario& scenario, std::size_t request_index,
                                         const envs::Environment& env) {
    if (request_index >= scenario.requests.size())
        throw UsageError("request index out of range for scenario " + scenario.id);

    agent::OracleSuite oracles;

    oracles.propose_candidates = [&scenario, request_index, &env](
                                     const std::string&,
                                     const std::vector<belief::ObservationRecord>&,
                                     const Toolkit& toolkit) {
        const Request& request = scenario.requests[request_index];
        std::vector<CandidateCall> out;
        if (!request.proposed.empty()) {
            out = request.proposed;
            for (std::size_t i = 0; i < out.size(); ++i)
                if (out[i].id.empty()) out[i].id = padded_id("c", i);
            return out;
        }
        for (const auto& gt : request.ground_truth) {
            // Masked aspects of this tool get every value of their current
            // domain; the cartesian product forms the candidate set.
            std::vector<std::pair<std::string, std::vector<Value>>> axes;
            std::size_t total = 1;
            for (const auto& aspect : scenario.masked) {
                if (aspect.tool != gt.tool) continue;
                const ToolSchema* tool = toolkit.find_tool(gt.tool);
                if (!tool || !tool->find_param(aspect.param))
                    throw UsageError("masked aspect " + aspect.str() + " names no schema param");
                auto values = enumerable_values(env.current_domain(aspect.tool, aspect.param), aspect);
                total *= std::max<std::size_t>(values.size(), 1);
                if (total > kEnumerationCap)
                    throw UsageError("masked enumeration for " + gt.tool + " exceeds " +
                                     std::to_string(kEnumerationCap) + " candidates");
                axes.emplace_back(aspect.param, std::move(values));
            }
            std::vector<CandidateCall> combos{gt};
            for (const auto& [param, values] : axes) {
                std::vector<CandidateCall> next;
                for (const auto& base : combos) {
                    for (const auto& value : values) {
                        CandidateCall c = base;
                        c.arguments[param] = value;
                        next.push_back(std::move(c));
                    }
                }
                combos = std::move(next);
            }
            for (auto& c : combos) out.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i].id = padded_id("c", i);
        return out;
    };

    oracles.propose_questions = [](const std::string&, const BeliefState& state) {
        std::vector<ClarifyingQuestion> out;
        auto live = state.live_candidates();
        for (const auto& tool : state.toolkit->tools) {
            std::vector<const CandidateCall*> of_tool;
            for (const auto* c : live)
                if (c->tool == tool.name) of_tool.push_back(c);
            if (of_tool.empty()) continue;
            for (const auto& spec : tool.params) {
                bool counted = spec.required || !spec.default_value.has_value();
                bool any_unknown = false;
                std::set<Value> specified;
                for (const auto* c : of_tool) {
                    if (c->specified(spec.name))
                        specified.insert(*c->arguments.at(spec.name));
                    else
                        any_unknown = true;
                }
                if ((any_unknown && counted) || specified.size() > 1) {
                    ClarifyingQuestion q;
                    q.id = padded_id("q", out.size());
                    q.text = "Which value should " + tool.name + " use for " + spec.name + "?";
                    q.aspects = {AspectId{tool.name, spec.name}};
                    out.push_back(std::move(q));
                    if (out.size() == 5) return out;
                }
            }
        }
        return out;
    };

    oracles.interpret_response = [](const std::string& response,
                                    const std::set<AspectId>& targets) {
        json j;
        try {
            j = json::parse(response);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("response is not JSON: ") + e.what());
        }
        if (!j.is_object()) throw ParseError("response must be a JSON object");
        std::map<AspectId, Constraint> out;
        for (const auto& [key, cj] : j.items()) {
            AspectId aspect = AspectId::parse(key);
            if (!targets.count(aspect)) continue; // off-target information is dropped
            out[aspect] = Constraint::from_json(cj, "response." + key);
        }
        return out;
    };

    oracles.error_question = [](const envs::ExecutionResult& error, const CandidateCall& call,
                                int attempt) {
        ClarifyingQuestion q;
        q.id = "qe" + std::to_string(attempt);
        q.text = "The call to " + call.tool + " failed (" + to_string(error.kind) +
                 "): what should " + error.param + " be?";
        q.aspects = {AspectId{call.tool, error.param}};
        return q;
    };

    return oracles;
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

ScenarioRun simulate(const Scenario& scenario, envs::Environment& env, const EngineConfig& config,
                     const agent::Responder* responder_override) {
    EngineConfig effective = config;
    effective.max_questions = std::min(config.max_questions, scenario.max_clarifications);
    agent::Responder scripted = make_scripted_responder(scenario);
    const agent::Responder& responder = responder_override ? *responder_override : scripted;

    ScenarioRun run;
    run.scenario_id = scenario.id;
    for (std::size_t i = 0; i < scenario.requests.size(); ++i) {
        auto oracles = make_scripted_oracles(scenario, i, env);
        run.traces.push_back(
            agent::run_episode(scenario.requests[i].query, oracles, env, effective, responder));
    }
    return run;
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

bool values_match(const Value& a, const Value& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Value::Kind::Text: return a.as_text() == b.as_text();
    case Value::Kind::Boolean: return a.as_boolean() == b.as_boolean();
    case Value::Kind::Number: {
        double x = a.as_number(), y = b.as_number();
        double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
        return std::fabs(x - y) <= 1e-9 * scale;
    }
    case Value::Kind::List: {
        const auto& xs = a.as_list();
        const auto& ys = b.as_list();
        if (xs.size() != ys.size()) return false;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (!values_match(xs[i], ys[i])) return false;
        return true;
    }
    }
    return false;
}

namespace {

// Fraction of the ground-truth call's specified parameters the committed call
// reproduces. A ground-truth call without specified parameters matches fully.
double param_fraction(const CandidateCall& gt, const CandidateCall& committed) {
    int total = 0, matched = 0;
    for (const auto& [name, value] : gt.arguments) {
        if (!value) continue;
        ++total;
        auto it = committed.arguments.find(name);
        if (it != committed.arguments.end() && it->second && values_match(*value, *it->second))
            ++matched;
    }
    return total == 0 ? 1.0 : static_cast<double>(matched) / total;
}

} // namespace

MetricsReport score(const std::vector<ScenarioRun>& runs, const std::vector<Scenario>& scenarios) {
    std::map<std::string, const Scenario*> by_id;
    for (const auto& s : scenarios) by_id[s.id] = &s;

    MetricsReport report;
    int covered_total = 0, tool_total = 0, gt_total = 0;
    double fraction_sum = 0.0;
    int matched_pairs = 0, questions_total = 0;

    for (const auto& run : runs) {
        auto it = by_id.find(run.scenario_id);
        if (it == by_id.end()) throw UsageError("run names unknown scenario " + run.scenario_id);
        const Scenario& scenario = *it->second;

        struct GtSlot {
            const CandidateCall* call;
            bool matched = false;
        };
        std::vector<GtSlot> pool;
        for (const auto& request : scenario.requests)
            for (const auto& call : request.ground_truth) pool.push_back({&call});

        ScenarioMetrics sm;
        sm.scenario_id = scenario.id;
        sm.query_type = scenario.query_type;
        sm.ground_truth_calls = static_cast<int>(pool.size());

        int covered = 0, tools = 0, pairs = 0;
        double fractions = 0.0;
        for (const auto& trace : run.traces) {
            sm.questions += trace.asked_count();
            const agent::ExecutedEvent* committed = trace.final_execution();
            if (!committed) continue;
            for (auto& slot : pool) {
                if (slot.matched || slot.call->tool != committed->call.tool) continue;
                slot.matched = true;
                ++tools;
                double frac = param_fraction(*slot.call, committed->call);
                fractions += frac;
                ++pairs;
                if (frac == 1.0) ++covered;
                break;
            }
        }
        sm.coverage = pool.empty() ? 0.0 : static_cast<double>(covered) / pool.size();
        sm.tool_match_rate = pool.empty() ? 0.0 : static_cast<double>(tools) / pool.size();
        sm.param_match_rate = pairs == 0 ? 0.0 : fractions / pairs;
        report.per_scenario.push_back(sm);

        covered_total += covered;
        tool_total += tools;
        gt_total += static_cast<int>(pool.size());
        fraction_sum += fractions;
        matched_pairs += pairs;
        questions_total += sm.questions;
    }

    report.scenarios = static_cast<int>(runs.size());
    report.ground_truth_calls = gt_total;
    report.coverage = gt_total == 0 ? 0.0 : static_cast<double>(covered_total) / gt_total;
    report.tool_match_rate = gt_total == 0 ? 0.0 : static_cast<double>(tool_total) / gt_total;
    report.param_match_rate = matched_pairs == 0 ? 0.0 : fraction_sum / matched_pairs;
    report.avg_questions =
        runs.empty() ? 0.0 : static_cast<double>(questions_total) / static_cast<double>(runs.size());
    return report;
}

json MetricsReport::to_json() const {
    json aggregate = {{"coverage", coverage},
                      {"tool_match_rate", tool_match_rate},
                      {"param_match_rate", param_match_rate},
                      {"avg_questions", avg_questions},
                      {"scenarios", scenarios},
                      {"ground_truth_calls", ground_truth_calls}};
    json per = json::array();
    for (const auto& sm : per_scenario)
        per.push_back({{"scenario_id", sm.scenario_id},
                       {"query_type", sm.query_type},
                       {"coverage", sm.coverage},
                       {"tool_match_rate", sm.tool_match_rate},
                       {"param_match_rate", sm.param_match_rate},
                       {"questions", sm.questions},
                       {"ground_truth_calls", sm.ground_truth_calls}});
    return json{{"aggregate", aggregate}, {"per_scenario", per}};
}

} // namespace sage::sim
