#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
    using qdf::cli::RunConfig;
    RunConfig cfg;
    std::string format = "text";

    CLI::App app{"Exchangeable sequences of finite-dimensional quantum states: checks, reconstruction, factorization"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", cfg.input, "JSON input file");
        if (needs_input) in->required();
        sub->add_option("--depth", cfg.depth, "truncate to this many levels");
        sub->add_option("--tol", cfg.tol, "override the input tolerance");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output", cfg.output, "also write the JSON result here");
    };
    auto atoms = [&](CLI::App* sub) {
        sub->add_option("--atoms", cfg.atoms, "JSON atom set (default: generated)");
        sub->add_option("--atom-count", cfg.atom_count, "generated atom count")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
        sub->add_option("--max-residual", cfg.max_residual, "representability threshold")->capture_default_str();
    };

    auto* check = app.add_subcommand("check", "verify symmetry and consistency of an exchangeable sequence");
    common(check, true);
    auto* rec = app.add_subcommand("reconstruct", "recover mixture weights over an atom set");
    common(rec, true);
    atoms(rec);
    auto* factor = app.add_subcommand("factor", "build the mediating map of a cone over the atom set");
    common(factor, true);
    atoms(factor);
    factor->add_option("--trials", cfg.trials, "random restarts for the uniqueness check")->capture_default_str();
    auto* demo = app.add_subcommand("demo", "run a built-in worked example");
    demo->add_option("name", cfg.demo, "circuit1, circuit2, equator, unknown-qubit or coin")
        ->required()
        ->check(CLI::IsMember({"circuit1", "circuit2", "equator", "unknown-qubit", "coin"}));
    common(demo, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qdf::cli::kParseFailure;
    }
    for (auto* sub : {check, rec, factor, demo})
        if (sub->parsed()) cfg.command = sub->get_name();
    cfg.format = format == "json" ? qdf::cli::Format::Json : qdf::cli::Format::Text;
    return qdf::cli::run(cfg, std::cout, std::cerr);
}
