#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "ntlf/errors.hpp"
#include "ntlf/io.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    double sections_per_lambda = 0.0;
    bool sections_set = false;
};

void add_common_flags(CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config_path, "JSON job configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out-dir", args.out_dir, "Directory for emitted artifacts");
    sub->add_option("--seed", args.seed, "Override the optimizer RNG seed")
        ->each([&](const std::string&) { args.seed_set = true; });
    sub->add_option("--sections-per-lambda", args.sections_per_lambda,
                    "Override the cascade resolution K")
        ->each([&](const std::string&) { args.sections_set = true; });
}

const char* mode_name(ntlf::JobMode mode) {
    switch (mode) {
    case ntlf::JobMode::analyze:
        return "analyze";
    case ntlf::JobMode::synthesize:
        return "synthesize";
    case ntlf::JobMode::verify:
        return "verify";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Microstrip nonuniform-line lowpass filter analysis and synthesis"};
    app.require_subcommand(1);

    SubArgs args;
    CLI::App* analyze = app.add_subcommand("analyze", "Sweep a given width profile");
    CLI::App* synthesize =
        app.add_subcommand("synthesize", "Search for a profile meeting the filter spec");
    CLI::App* verify =
        app.add_subcommand("verify", "Sweep a given profile and check it against the spec");
    add_common_flags(analyze, args);
    add_common_flags(synthesize, args);
    add_common_flags(verify, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const ntlf::JobMode requested = app.got_subcommand(analyze)      ? ntlf::JobMode::analyze
                                        : app.got_subcommand(synthesize) ? ntlf::JobMode::synthesize
                                                                         : ntlf::JobMode::verify;
        ntlf::JobConfig config = ntlf::load_config(args.config_path);
        if (config.mode != requested)
            throw ntlf::ConfigError(std::string("config mode \"") + mode_name(config.mode) +
                                    "\" does not match subcommand \"" + mode_name(requested) +
                                    "\"");
        if (args.seed_set)
            config.optimizer.rng_seed = args.seed;
        if (args.sections_set)
            config.optimizer.sections_per_lambda = args.sections_per_lambda;
        return ntlf::run_job(config, args.out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
