#pragma once
// Command-line drivers: batch simulation over a scenario suite, streaming
// reward scoring, mechanical corruption of feasible scenarios, and an
// interactive loop where a human answers the clarifying questions.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

#include "sage/belief.hpp"
#include "sage/reward.hpp"

namespace sage::cli {

struct SimulateOptions {
    std::string data_dir = "data"; // expects toolkits/, fixtures/, scenarios/
    std::string scenarios_dir;     // overrides data_dir/scenarios when set
    std::string out_dir = "out";
    belief::EngineConfig config;
};

// Writes out_dir/traces/<scenario>.jsonl and out_dir/report.json and prints a
// per-scenario table. Exit 0: clean; 1: at least one episode aborted; 2: a
// file failed to load (the message names the path).
int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

struct ScoreRewardsOptions {
    std::string input_path;                    // JSONL records; empty reads the stream
    std::string default_domain = "filesystem"; // toolkit when a record names none
    reward::RewardMode mode = reward::RewardMode::Baseline;
    double epsilon = 1e-4;
};

// Streams {"completion", "gold_action", "gold_call"?, "toolkit"?} records to
// one breakdown line each, then a summary line with per-action mean totals.
// A malformed line scores zero as unparseable and processing continues.
int run_score_rewards(const ScoreRewardsOptions& options, std::istream& in, std::ostream& out,
                      std::ostream& err);

struct CorruptOptions {
    std::string data_dir = "data";
    std::string scenarios_dir;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
};

// Corrupts the first ground-truth call of every scenario into an infeasible
// variant; writes the variants and a report of the applied heuristics.
int run_corrupt(const CorruptOptions& options, std::ostream& out, std::ostream& err);

struct ReplOptions {
    std::string scenario_path;
    std::string data_dir = "data";
    std::string out_dir = "out";
    belief::EngineConfig config;
};

// Interactive episode: prints candidates and scored questions as they happen,
// reads free-text answers, interprets them with keyword rules, and writes the
// trace on exit. "quit", "exit" and end of input abort gracefully.
int run_repl(const ReplOptions& options, std::istream& in, std::ostream& out, std::ostream& err);

// Free-text constraint interpreter for the interactive loop: "skip" or
// "don't know" reveal nothing, "not X" excludes a value, "between A and B"
// bounds a numeric parameter, and any other literal parses as an equality
// against the parameter's schema type.
std::map<belief::AspectId, Constraint> interpret_keywords(const std::string& response,
                                                          const std::set<belief::AspectId>& targets,
                                                          const Toolkit& toolkit);

} // namespace sage::cli
