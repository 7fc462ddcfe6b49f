#include "sage/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "sage/agent.hpp"
#include "sage/envs.hpp"
#include "sage/simulator.hpp"

namespace sage::cli {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool write_file(const fs::path& path, const std::string& content, std::ostream& err) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err << "cannot write " << path.string() << "\n";
        return false;
    }
    out << content;
    return true;
}

std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

std::string format_call(const CandidateCall& call) {
    std::string out = call.tool + "(";
    bool first = true;
    for (const auto& [name, value] : call.arguments) {
        if (!first) out += ", ";
        first = false;
        out += name + "=" + (value ? value->repr() : "<UNK>");
    }
    return out + ")";
}

// Scenario files in name order; the suite's scoring is order-independent but
// the artifacts should be stable.
std::optional<std::vector<fs::path>> list_scenario_files(const fs::path& dir, std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        err << "cannot read scenario directory " << dir.string() << "\n";
        return std::nullopt;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct DomainData {
    Toolkit toolkit;
    json fixture;
};

// Loads and verifies the committed toolkit and fixture for one domain.
std::optional<DomainData> load_domain(const std::string& domain, const fs::path& data_dir,
                                      std::ostream& err) {
    fs::path toolkit_path = data_dir / "toolkits" / (domain + ".json");
    auto toolkit_text = read_file(toolkit_path);
    if (!toolkit_text) {
        err << "cannot read toolkit file " << toolkit_path.string() << "\n";
        return std::nullopt;
    }
    DomainData data;
    try {
        data.toolkit = parse_toolkit(*toolkit_text);
    } catch (const ParseError& e) {
        err << toolkit_path.string() << ": " << e.what() << "\n";
        return std::nullopt;
    }
    if (!(data.toolkit == envs::builtin_toolkit(domain))) {
        err << toolkit_path.string() << " does not match the built-in " << domain << " toolkit\n";
        return std::nullopt;
    }
    fs::path fixture_path = data_dir / "fixtures" / (domain + ".json");
    auto fixture_text = read_file(fixture_path);
    if (!fixture_text) {
        err << "cannot read fixture file " << fixture_path.string() << "\n";
        return std::nullopt;
    }
    data.fixture = json::parse(*fixture_text, nullptr, false);
    if (data.fixture.is_discarded()) {
        err << fixture_path.string() << ": not valid JSON\n";
        return std::nullopt;
    }
    return data;
}

std::optional<std::vector<sim::Scenario>> load_scenarios(const fs::path& dir, std::ostream& err) {
    auto files = list_scenario_files(dir, err);
    if (!files) return std::nullopt;
    std::vector<sim::Scenario> scenarios;
    for (const auto& file : *files) {
        auto text = read_file(file);
        if (!text) {
            err << "cannot read scenario file " << file.string() << "\n";
            return std::nullopt;
        }
        try {
            scenarios.push_back(sim::parse_scenario(*text, file.string()));
        } catch (const ParseError& e) {
            err << e.what() << "\n";
            return std::nullopt;
        }
    }
    return scenarios;
}

std::string trace_file_content(const sim::Scenario& scenario, const sim::ScenarioRun& run) {
    std::string out;
    for (std::size_t i = 0; i < run.traces.size(); ++i) {
        json header = {{"event", "request_start"},
                       {"request", i},
                       {"query", scenario.requests[i].query}};
        out += header.dump() + "\n";
        out += run.traces[i].to_jsonl();
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
    fs::path data_dir = options.data_dir;
    fs::path scenarios_dir =
        options.scenarios_dir.empty() ? data_dir / "scenarios" : fs::path(options.scenarios_dir);
    try {
        options.config.validate();
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    }

    auto scenarios = load_scenarios(scenarios_dir, err);
    if (!scenarios) return 2;

    std::map<std::string, DomainData> domains;
    for (const auto& scenario : *scenarios) {
        if (domains.count(scenario.domain)) continue;
        auto data = load_domain(scenario.domain, data_dir, err);
        if (!data) return 2;
        domains.emplace(scenario.domain, std::move(*data));
    }

    std::vector<sim::ScenarioRun> runs;
    int aborted = 0;
    for (const auto& scenario : *scenarios) {
        auto env = envs::make_environment(scenario.domain, domains.at(scenario.domain).fixture);
        sim::ScenarioRun run = sim::simulate(scenario, *env, options.config);
        for (const auto& trace : run.traces)
            if (trace.terminated_reason() == "abort") ++aborted;
        fs::path trace_path = fs::path(options.out_dir) / "traces" / (scenario.id + ".jsonl");
        if (!write_file(trace_path, trace_file_content(scenario, run), err)) return 2;
        runs.push_back(std::move(run));
    }

    sim::MetricsReport report = sim::score(runs, *scenarios);
    fs::path report_path = fs::path(options.out_dir) / "report.json";
    if (!write_file(report_path, report.to_json().dump(2) + "\n", err)) return 2;

    out << "scenario                      type        q  coverage  tool   param\n";
    for (const auto& sm : report.per_scenario) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-29s %-10s %2d  %8s  %5s  %5s\n", sm.scenario_id.c_str(),
                      sm.query_type.c_str(), sm.questions, fixed3(sm.coverage).c_str(),
                      fixed3(sm.tool_match_rate).c_str(), fixed3(sm.param_match_rate).c_str());
        out << line;
    }
    out << "scenarios: " << report.scenarios << "  ground-truth calls: " << report.ground_truth_calls
        << "  aborted episodes: " << aborted << "\n";
    out << "coverage " << fixed3(report.coverage) << "  tool-match " << fixed3(report.tool_match_rate)
        << "  param-match " << fixed3(report.param_match_rate) << "  avg-questions "
        << fixed3(report.avg_questions) << "\n";
    out << "report: " << report_path.string() << "\n";
    return aborted > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// score-rewards
// ---------------------------------------------------------------------------

int run_score_rewards(const ScoreRewardsOptions& options, std::istream& in, std::ostream& out,
                      std::ostream& err) {
    std::ifstream file;
    std::istream* source = &in;
    if (!options.input_path.empty() && options.input_path != "-") {
        file.open(options.input_path, std::ios::binary);
        if (!file) {
            err << "cannot read input file " << options.input_path << "\n";
            return 2;
        }
        source = &file;
    }

    struct Stats {
        int count = 0;
        double total = 0.0;
    };
    std::map<std::string, Stats> per_action;
    int records = 0;
    double grand_total = 0.0;

    std::string line;
    int line_number = 0;
    while (std::getline(*source, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++records;

        auto malformed = [&](const std::string& message) {
            json j = {{"record", line_number}, {"malformed", true}, {"error", message},
                      {"action", "unparseable"}, {"total", 0.0}};
            out << j.dump() << "\n";
            per_action["unparseable"].count += 1;
        };

        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            malformed("line is not a JSON object");
            continue;
        }
        if (!record.contains("completion") || !record.at("completion").is_string() ||
            !record.contains("gold_action") || !record.at("gold_action").is_string()) {
            malformed("record needs \"completion\" and \"gold_action\" strings");
            continue;
        }
        try {
            reward::GoldRecord gold;
            gold.action = reward::action_from_string(record.at("gold_action").get<std::string>());
            if (record.contains("gold_call"))
                gold.call = CandidateCall::from_json(record.at("gold_call"), "gold_call");
            std::string domain = record.value("toolkit", options.default_domain);
            const Toolkit& toolkit = envs::builtin_toolkit(domain);

            reward::ParsedCompletion parsed =
                reward::parse_completion(record.at("completion").get<std::string>());
            reward::RewardBreakdown breakdown =
                reward::total_reward(parsed, gold, options.mode, toolkit, options.epsilon);

            json j = breakdown.to_json();
            j["record"] = line_number;
            j["action"] = reward::to_string(parsed.action);
            j["gold_action"] = reward::to_string(gold.action);
            out << j.dump() << "\n";

            Stats& stats = per_action[reward::to_string(gold.action)];
            stats.count += 1;
            stats.total += breakdown.total;
            grand_total += breakdown.total;
        } catch (const ParseError& e) {
            malformed(e.what());
        } catch (const UsageError& e) {
            malformed(e.what());
        }
    }

    if (records > 0) {
        json per = json::object();
        for (const auto& [action, stats] : per_action)
            per[action] = {{"count", stats.count},
                           {"mean_total", stats.count ? stats.total / stats.count : 0.0}};
        json summary = {{"summary", {{"count", records},
                                     {"mean_total", grand_total / records},
                                     {"per_action", per}}}};
        out << summary.dump() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// corrupt
// ---------------------------------------------------------------------------

int run_corrupt(const CorruptOptions& options, std::ostream& out, std::ostream& err) {
    fs::path data_dir = options.data_dir;
    fs::path scenarios_dir =
        options.scenarios_dir.empty() ? data_dir / "scenarios" : fs::path(options.scenarios_dir);

    auto scenarios = load_scenarios(scenarios_dir, err);
    if (!scenarios) return 2;

    std::map<std::string, DomainData> domains;
    json results = json::array();
    int corrupted_count = 0;
    for (const auto& scenario : *scenarios) {
        if (!domains.count(scenario.domain)) {
            auto data = load_domain(scenario.domain, data_dir, err);
            if (!data) return 2;
            domains.emplace(scenario.domain, std::move(*data));
        }
        auto env = envs::make_environment(scenario.domain, domains.at(scenario.domain).fixture);
        const CandidateCall& call = scenario.requests.front().ground_truth.front();
        auto corrupted = envs::corrupt_call(call, *env, options.seed);
        if (!corrupted) {
            results.push_back({{"scenario_id", scenario.id}, {"corruptible", false}});
            out << scenario.id << ": not corruptible\n";
            continue;
        }
        sim::Scenario variant = scenario;
        variant.id += "-inf";
        variant.query_type = "infeasible";
        variant.requests.resize(1);
        corrupted->call.id = "c000";
        variant.requests[0].proposed = {corrupted->call};
        fs::path variant_path = fs::path(options.out_dir) / "corrupted" / (variant.id + ".json");
        if (!write_file(variant_path, sim::serialize_scenario(variant), err)) return 2;
        ++corrupted_count;
        results.push_back({{"scenario_id", scenario.id},
                           {"corruptible", true},
                           {"heuristic", corrupted->heuristic},
                           {"expected_kind", envs::to_string(corrupted->expected_kind)},
                           {"param", corrupted->param},
                           {"variant", variant.id}});
        out << scenario.id << ": " << corrupted->heuristic << " -> "
            << envs::to_string(corrupted->expected_kind) << " on " << corrupted->param << "\n";
    }

    json report = {{"seed", options.seed}, {"results", results}};
    fs::path report_path = fs::path(options.out_dir) / "corrupt-report.json";
    if (!write_file(report_path, report.dump(2) + "\n", err)) return 2;
    out << "corrupted " << corrupted_count << " of " << scenarios->size() << " scenarios; report: "
        << report_path.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// repl
// ---------------------------------------------------------------------------

namespace {

// Full-string numeric literal, e.g. "42", "-3.5".
std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t consumed = 0;
    try {
        double value = std::stod(text, &consumed);
        if (consumed != text.size()) return std::nullopt;
        return value;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower_copy(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Parses a literal against the shape of the parameter's schema domain.
std::optional<Value> parse_literal(const std::string& text, const ParamDomain& domain) {
    std::string t = trim_copy(text);
    if (t.empty()) return std::nullopt;
    if (domain.is<NumericRangeDomain>()) {
        auto n = parse_number(t);
        return n ? std::optional<Value>(Value::number(*n)) : std::nullopt;
    }
    if (domain.is<BooleanDomain>()) {
        std::string l = lower_copy(t);
        if (l == "true" || l == "yes" || l == "y" || l == "on") return Value::boolean(true);
        if (l == "false" || l == "no" || l == "n" || l == "off") return Value::boolean(false);
        return std::nullopt;
    }
    if (const auto* finite = domain.get_if<FiniteDomain>()) {
        bool numeric = !finite->values.empty() && finite->values.front().is_number();
        if (numeric) {
            auto n = parse_number(t);
            return n ? std::optional<Value>(Value::number(*n)) : std::nullopt;
        }
        return Value::text(t);
    }
    if (const auto* list = domain.get_if<ListOfDomain>()) {
        Value::List items;
        std::string piece;
        std::istringstream stream(t);
        while (std::getline(stream, piece, ',')) {
            auto item = parse_literal(piece, list->element->domain);
            if (!item) return std::nullopt;
            items.push_back(*item);
        }
        return Value::list(std::move(items));
    }
    if (const auto* estimated = domain.get_if<EstimatedFiniteDomain>()) {
        bool numeric = !estimated->examples.empty() && estimated->examples.front().is_number();
        if (numeric) {
            auto n = parse_number(t);
            return n ? std::optional<Value>(Value::number(*n)) : std::nullopt;
        }
        return Value::text(t);
    }
    return Value::text(t);
}

} // namespace

std::map<belief::AspectId, Constraint> interpret_keywords(const std::string& response,
                                                          const std::set<belief::AspectId>& targets,
                                                          const Toolkit& toolkit) {
    std::map<belief::AspectId, Constraint> out;
    std::string text = trim_copy(response);
    std::string lower = lower_copy(text);
    if (text.empty() || lower == "skip" || lower == "don't know" || lower == "dont know" ||
        lower == "unknown" || lower == "no idea")
        return out; // nothing revealed

    // "between A and B" over numeric parameters.
    if (lower.rfind("between ", 0) == 0) {
        std::istringstream stream(lower);
        std::string word, and_word;
        double lo = 0.0, hi = 0.0;
        if (stream >> word >> lo >> and_word >> hi && and_word == "and") {
            if (lo > hi) std::swap(lo, hi);
            for (const auto& aspect : targets) out[aspect] = Constraint::range(lo, hi);
            return out;
        }
    }

    bool negated = lower.rfind("not ", 0) == 0;
    std::string literal = negated ? trim_copy(text.substr(4)) : text;

    for (const auto& aspect : targets) {
        const ToolSchema* tool = toolkit.find_tool(aspect.tool);
        const ParamSpec* spec = tool ? tool->find_param(aspect.param) : nullptr;
        if (!spec) continue;
        auto value = parse_literal(literal, spec->domain);
        if (!value) continue;
        out[aspect] =
            negated ? Constraint::not_in({*value}) : Constraint::equal_to(*value);
    }
    return out;
}

int run_repl(const ReplOptions& options, std::istream& in, std::ostream& out, std::ostream& err) {
    auto text = read_file(options.scenario_path);
    if (!text) {
        err << "cannot read scenario file " << options.scenario_path << "\n";
        return 2;
    }
    sim::Scenario scenario;
    try {
        scenario = sim::parse_scenario(*text, options.scenario_path);
        options.config.validate();
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    }
    auto domain_data = load_domain(scenario.domain, options.data_dir, err);
    if (!domain_data) return 2;
    auto env = envs::make_environment(scenario.domain, domain_data->fixture);

    agent::EventObserver observer = [&out](const agent::TraceEvent& event) {
        if (const auto* cs = std::get_if<agent::CandidateSetEvent>(&event)) {
            out << "candidates:\n";
            for (const auto& call : cs->candidates)
                out << "  " << call.id << "  " << format_call(call) << "\n";
        } else if (const auto* qs = std::get_if<agent::QuestionScoredEvent>(&event)) {
            for (const auto& s : qs->scores)
                out << "  [" << s.question.id << "] evpi=" << fixed3(s.evpi)
                    << " cost=" << fixed3(s.cost) << " score=" << fixed3(s.score) << "  "
                    << s.question.text << "\n";
        } else if (const auto* asked = std::get_if<agent::AskedEvent>(&event)) {
            out << "Q: " << asked->question.text << "\n";
        } else if (const auto* exec = std::get_if<agent::ExecutedEvent>(&event)) {
            out << "executing " << format_call(exec->call) << "\n";
            if (exec->result.ok)
                out << "  ok: " << exec->result.detail << "\n";
            else
                out << "  error (" << envs::to_string(exec->result.kind)
                    << "): " << exec->result.message << "\n";
        } else if (const auto* recovery = std::get_if<agent::ErrorRecoveryEvent>(&event)) {
            out << "recovering from " << envs::to_string(recovery->error.kind) << " on "
                << recovery->error.param << " (attempt " << recovery->attempt << ")\n";
        } else if (const auto* done = std::get_if<agent::TerminatedEvent>(&event)) {
            out << "episode finished: " << done->reason << "\n";
        }
    };

    agent::Responder responder = [&in, &out](const belief::ClarifyingQuestion&) {
        out << "> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) throw agent::UserAbort{};
        std::string lower = lower_copy(trim_copy(line));
        if (lower == "quit" || lower == "exit") throw agent::UserAbort{};
        return line;
    };

    sim::ScenarioRun run;
    run.scenario_id = scenario.id;
    const Toolkit& toolkit = env->toolkit();
    for (std::size_t i = 0; i < scenario.requests.size(); ++i) {
        out << "request " << i << ": " << scenario.requests[i].query << "\n";
        agent::OracleSuite oracles = sim::make_scripted_oracles(scenario, i, *env);
        oracles.interpret_response = [&toolkit](const std::string& response,
                                                const std::set<belief::AspectId>& targets) {
            return interpret_keywords(response, targets, toolkit);
        };
        belief::EngineConfig effective = options.config;
        effective.max_questions = std::min(options.config.max_questions, scenario.max_clarifications);
        run.traces.push_back(
            agent::run_episode(scenario.requests[i].query, oracles, *env, effective, responder,
                               observer));
    }

    fs::path trace_path = fs::path(options.out_dir) / "repl-trace.jsonl";
    if (!write_file(trace_path, trace_file_content(scenario, run), err)) return 2;
    out << "trace written to " << trace_path.string() << "\n";
    return 0;
}

} // namespace sage::cli
