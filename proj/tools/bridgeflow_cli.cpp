// bridgeflow: entropic steering of Markovian network flows.
//
// Subcommands: bridge, stationary, cool fast, cool asymptotic, check, simulate.
// Problem documents are JSON; results go to stdout (or --out) as JSON, and
// diagnostics to stderr as "LEVEL: message" lines.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bridgeflow/errors.hpp"
#include "bridgeflow/io.hpp"

namespace {

struct CliFlags {
    std::string in_path;
    std::string out_path;
    double tol = 0.0;
    std::size_t max_iters = 0;
    std::uint64_t seed = 0;
    bool strict = false;
    bool trace = false;
};

void add_common_options(CLI::App* cmd, CliFlags& flags) {
    cmd->add_option("--in", flags.in_path, "problem JSON file, or - for stdin")->required();
    cmd->add_option("--out", flags.out_path, "result file (default: stdout)");
    cmd->add_option("--tol", flags.tol, "solver tolerance override");
    cmd->add_option("--max-iters", flags.max_iters, "iteration budget override");
    cmd->add_option("--seed", flags.seed, "RNG seed override");
    cmd->add_flag("--strict", flags.strict, "reject priors that are not fully indecomposable");
    cmd->add_flag("--trace", flags.trace, "record the convergence trace in the output");
}

int execute(const CLI::App* cmd, bridgeflow::io::Kind kind, const CliFlags& flags) {
    using namespace bridgeflow;

    std::string text;
    if (flags.in_path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(flags.in_path);
        if (!in) {
            std::cerr << "ERROR: cannot open " << flags.in_path << "\n";
            return io::kExitValidation;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }

    std::optional<io::ProblemSpec> spec;
    try {
        spec = io::parse_spec(text);
    } catch (const Error& e) {
        std::cerr << "ERROR: " << e.what() << "\n";
        return io::kExitValidation;
    }
    if (spec->kind != kind) {
        std::cerr << "ERROR: spec kind \"" << io::to_string(spec->kind)
                  << "\" does not match subcommand \"" << io::to_string(kind) << "\"\n";
        return io::kExitValidation;
    }

    if (cmd->count("--tol") > 0) spec->options.tol = flags.tol;
    if (cmd->count("--max-iters") > 0) spec->options.max_iters = flags.max_iters;
    if (cmd->count("--seed") > 0) spec->options.seed = flags.seed;
    if (cmd->count("--strict") > 0) spec->options.strict = true;
    if (cmd->count("--trace") > 0) spec->options.trace = true;

    io::RunResult result = io::run(*spec);
    for (const std::string& d : result.diagnostics) std::cerr << d << "\n";

    const std::string body = result.document.dump(2) + "\n";
    if (flags.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(flags.out_path);
        if (!out) {
            std::cerr << "ERROR: cannot write " << flags.out_path << "\n";
            return io::kExitValidation;
        }
        out << body;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic steering of Markovian network flows"};
    app.require_subcommand(1);

    CliFlags flags;
    using bridgeflow::io::Kind;

    CLI::App* bridge = app.add_subcommand("bridge", "finite-horizon bridge between marginals");
    CLI::App* stationary =
        app.add_subcommand("stationary", "steer to an invariant distribution");
    CLI::App* cool = app.add_subcommand("cool", "temperature-lowering pipelines");
    cool->require_subcommand(1);
    CLI::App* cool_fast = cool->add_subcommand("fast", "finite-horizon cooling");
    CLI::App* cool_asym = cool->add_subcommand("asymptotic", "stationary cooling");
    CLI::App* check = app.add_subcommand("check", "structural predicates and feasibility");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo validation");

    add_common_options(bridge, flags);
    add_common_options(stationary, flags);
    add_common_options(cool_fast, flags);
    add_common_options(cool_asym, flags);
    add_common_options(check, flags);
    add_common_options(simulate, flags);

    CLI11_PARSE(app, argc, argv);

    if (bridge->parsed()) return execute(bridge, Kind::finite_bridge, flags);
    if (stationary->parsed()) return execute(stationary, Kind::stationary, flags);
    if (cool->parsed() && cool_fast->parsed()) return execute(cool_fast, Kind::cool_fast, flags);
    if (cool->parsed() && cool_asym->parsed())
        return execute(cool_asym, Kind::cool_asymptotic, flags);
    if (check->parsed()) return execute(check, Kind::check, flags);
    if (simulate->parsed()) return execute(simulate, Kind::simulate, flags);
    return bridgeflow::io::kExitValidation;
}
