#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "quartet.hpp"

using namespace quartet::cli;

int main(int argc, char **argv) {
    CLI::App app{"Four-qubit SLOCC invariants, hyperdeterminant and Pluecker geometry"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string input;
    const std::map<std::string, Mode> modes{{"float", Mode::Float}, {"exact", Mode::Exact}};
    const std::map<std::string, Output> outputs{{"json", Output::Json}, {"table", Output::Table}};

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--mode", cfg.mode, "Scalar field: float or exact")
            ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
        sub->add_option("--output", cfg.output, "Report format: json or table")
            ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case));
        sub->add_option("--tolerance", cfg.tolerance, "Relative tolerance for degree <= 6 checks")
            ->capture_default_str();
        sub->add_option("--d4-tolerance", cfg.d4_tolerance, "Relative tolerance for D4 route agreement")
            ->capture_default_str();
    };

    const std::vector<std::pair<Command, std::string>> state_commands{
        {Command::Invariants, "Invariants I1..I4, H, L, M, N, U and the sextics D_uv"},
        {Command::Hyperdet, "D4 by three routes with consensus"},
        {Command::Canonical, "Recover (a, b, c, d) of the generic form from the invariants"},
        {Command::Tetrahedron, "Rank, vanishing lines and planes, bracket incidences"},
        {Command::Classify3, "Classify the line of a three-qubit state against the quadric"},
    };
    std::map<CLI::App *, Command> by_app;
    for (const auto &[cmd, help] : state_commands) {
        CLI::App *sub = app.add_subcommand(std::string(command_name(cmd)), help);
        sub->add_option("input", input, "State file (JSON)")->required();
        add_common(sub);
        by_app[sub] = cmd;
    }
    CLI::App *verify = app.add_subcommand("verify", "Run the identity suite on seeded random states");
    verify->add_option("--trials", cfg.trials, "Number of random states")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    add_common(verify);
    by_app[verify] = Command::Verify;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    for (auto *sub : app.get_subcommands()) cfg.command = by_app.at(sub);
    if (!input.empty()) cfg.input_path = input;
    return run(cfg, std::cout, std::cerr);
}
