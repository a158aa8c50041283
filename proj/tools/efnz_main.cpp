// Experiment CLI: one subcommand per experiment kind. A config file
// overrides the built-in defaults, and --seed/--out/--threads/--no-svg
// override the config. Every run writes run_manifest.json next to its CSV
// output; pass a manifest as --config to repeat the run exactly.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "efnz/error.hpp"
#include "efnz/experiments.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out;
    std::int64_t seed = -1;
    int threads = -1;
    bool no_svg = false;
};

int run_kind(const std::string& kind, const CommonOptions& opt) {
    efnz::Json config = efnz::default_config(kind);
    if (!opt.config_path.empty()) {
        config = efnz::merge_config(config, efnz::load_config_file(opt.config_path));
    }
    config["kind"] = kind;
    if (opt.seed >= 0) config["seed"] = opt.seed;
    if (!opt.out.empty()) config["out"] = opt.out;
    if (opt.threads >= 0) config["threads"] = opt.threads;
    if (opt.no_svg) config["svg"] = false;

    auto files = efnz::run_experiment(config);
    std::printf("%s: wrote %zu files to %s\n", kind.c_str(), files.size(),
                efnz::config_string(config, "out").c_str());
    for (const auto& f : files) std::printf("  %s\n", f.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"efnz: DDPM sampling, noise-space inversion, and latent-space edits "
                 "with closed-form denoisers"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string picked;
    for (const auto& kind : efnz::experiment_kinds()) {
        CLI::App* sub = app.add_subcommand(kind, "run the '" + kind + "' experiment");
        sub->add_option("--config", opt.config_path,
                        "JSON config or a run_manifest.json to repeat");
        sub->add_option("--seed", opt.seed, "root seed override");
        sub->add_option("--out", opt.out, "output directory override");
        sub->add_option("--threads", opt.threads, "worker threads (0 = all)");
        sub->add_flag("--no-svg", opt.no_svg, "skip SVG plots, keep CSV output");
        sub->callback([&picked, kind] { picked = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        return run_kind(picked, opt);
    } catch (const efnz::ConfigError& e) {
        std::fprintf(stderr, "%s: config error: %s\n", picked.c_str(), e.what());
        return 2;
    } catch (const efnz::FormatError& e) {
        std::fprintf(stderr, "%s: format error: %s\n", picked.c_str(), e.what());
        return 2;
    } catch (const efnz::ShapeError& e) {
        std::fprintf(stderr, "%s: shape error: %s\n", picked.c_str(), e.what());
        return 2;
    } catch (const efnz::Json::exception& e) {
        std::fprintf(stderr, "%s: config error: %s\n", picked.c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s: numerical failure: %s\n", picked.c_str(), e.what());
        return 3;
    }
}
