// Command-line entry point. Subcommands: simulate a scenario suite, score a
// stream of completion records, corrupt feasible scenarios, or drive one
// scenario interactively.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "sage/belief.hpp"
#include "sage/cli.hpp"

namespace {

void add_engine_flags(CLI::App* cmd, sage::belief::EngineConfig& config,
                      std::string& stop_basis) {
    cmd->add_option("--lambda", config.lambda, "redundancy cost weight");
    cmd->add_option("--alpha", config.alpha, "stop-rule fraction of the viability basis");
    cmd->add_option("--epsilon", config.epsilon, "certainty floor for infinite domains");
    cmd->add_option("--tau-exec", config.tau_exec, "normalized-belief execution threshold");
    cmd->add_option("--max-questions", config.max_questions, "per-episode question budget");
    cmd->add_option("--stop-basis", stop_basis, "stop rule basis: unnormalized|normalized")
        ->check(CLI::IsMember({"unnormalized", "normalized"}));
}

sage::belief::StopBasis parse_stop_basis(const std::string& s) {
    return s == "normalized" ? sage::belief::StopBasis::Normalized
                             : sage::belief::StopBasis::Unnormalized;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clarification-question agent over simulated tool environments"};
    app.require_subcommand(1);

    sage::cli::SimulateOptions simulate;
    std::string simulate_stop_basis = "unnormalized";
    CLI::App* sim_cmd = app.add_subcommand("simulate", "run a scenario suite and score it");
    sim_cmd->add_option("--data", simulate.data_dir, "data directory");
    sim_cmd->add_option("--scenarios", simulate.scenarios_dir, "scenario directory override");
    sim_cmd->add_option("--out", simulate.out_dir, "output directory");
    add_engine_flags(sim_cmd, simulate.config, simulate_stop_basis);

    sage::cli::ScoreRewardsOptions score;
    std::string mode = "baseline";
    CLI::App* score_cmd =
        app.add_subcommand("score-rewards", "score completion records from a JSONL stream");
    score_cmd->add_option("--input", score.input_path, "JSONL input file (default: stdin)");
    score_cmd->add_option("--toolkit", score.default_domain,
                          "toolkit domain when a record names none");
    score_cmd->add_option("--epsilon", score.epsilon, "certainty floor for infinite domains");
    score_cmd->add_option("--mode", mode, "reward mode: baseline|certainty")
        ->check(CLI::IsMember({"baseline", "certainty"}));

    sage::cli::CorruptOptions corrupt;
    CLI::App* corrupt_cmd =
        app.add_subcommand("corrupt", "derive infeasible variants of a scenario suite");
    corrupt_cmd->add_option("--data", corrupt.data_dir, "data directory");
    corrupt_cmd->add_option("--scenarios", corrupt.scenarios_dir, "scenario directory override");
    corrupt_cmd->add_option("--out", corrupt.out_dir, "output directory");
    corrupt_cmd->add_option("--seed", corrupt.seed, "corruption seed");

    sage::cli::ReplOptions repl;
    std::string repl_stop_basis = "unnormalized";
    CLI::App* repl_cmd = app.add_subcommand("repl", "answer one scenario's questions yourself");
    repl_cmd->add_option("--scenario", repl.scenario_path, "scenario file")->required();
    repl_cmd->add_option("--data", repl.data_dir, "data directory");
    repl_cmd->add_option("--out", repl.out_dir, "output directory");
    add_engine_flags(repl_cmd, repl.config, repl_stop_basis);

    CLI11_PARSE(app, argc, argv);

    if (sim_cmd->parsed()) {
        simulate.config.stop_basis = parse_stop_basis(simulate_stop_basis);
        return sage::cli::run_simulate(simulate, std::cout, std::cerr);
    }
    if (score_cmd->parsed()) {
        score.mode = mode == "certainty" ? sage::reward::RewardMode::Certainty
                                         : sage::reward::RewardMode::Baseline;
        return sage::cli::run_score_rewards(score, std::cin, std::cout, std::cerr);
    }
    if (corrupt_cmd->parsed()) return sage::cli::run_corrupt(corrupt, std::cout, std::cerr);
    if (repl_cmd->parsed()) {
        repl.config.stop_basis = parse_stop_basis(repl_stop_basis);
        return sage::cli::run_repl(repl, std::cin, std::cout, std::cerr);
    }
    return 1;
}
