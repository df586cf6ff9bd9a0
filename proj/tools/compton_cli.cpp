#include "compton/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <iostream>
#include <map>

namespace {

spdlog::level::level_enum to_spdlog(compton::LogLevel l) {
    using compton::LogLevel;
    switch (l) {
        case LogLevel::trace: return spdlog::level::trace;
        case LogLevel::debug: return spdlog::level::debug;
        case LogLevel::info: return spdlog::level::info;
        case LogLevel::warn: return spdlog::level::warn;
        case LogLevel::error: return spdlog::level::err;
        case LogLevel::off: return spdlog::level::off;
    }
    return spdlog::level::warn;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace compton;
    RunConfig cfg;
    std::string output;

    CLI::App app{"Polarization channel of Compton scattering: traces, density matrices, Kraus operators, entropies"};
    app.require_subcommand(1, 1);

    const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json}, {"csv", OutputFormat::csv}};
    const std::map<std::string, LogLevel> levels{{"trace", LogLevel::trace}, {"debug", LogLevel::debug},
                                                 {"info", LogLevel::info},   {"warn", LogLevel::warn},
                                                 {"error", LogLevel::error}, {"off", LogLevel::off}};

    // Flags are shared by every subcommand and may follow it.
    app.fallthrough();
    app.add_option("--omega", cfg.omega, "incident photon frequency")->capture_default_str();
    app.add_option("--mass-ratio", cfg.mass_ratio, "electron mass over omega")->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "fine-structure constant")->capture_default_str();
    app.add_option("--p", cfg.p, "channel strength 2 T sigma_t / 5 V")->capture_default_str();
    app.add_option("--theta-steps", cfg.theta_steps, "points on the [0, pi] angle grid")->capture_default_str();
    app.add_option("--output", output, "write to this file instead of stdout");
    app.add_option("--format", cfg.format, "json or csv (csv: traces only)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--log-level", cfg.log_level, "trace, debug, info, warn, error, off")
        ->transform(CLI::CheckedTransformer(levels, CLI::ignore_case));

    for (auto name : kSubcommandNames) {
        auto* sub = app.add_subcommand(std::string(name));
        sub->callback([&cfg, name] { cfg.subcommand = *parse_subcommand(name); });
        if (name == "info") sub->add_flag("--bits", cfg.bits, "report entropies in bits");
    }
    app.get_subcommand("traces")->description("angle sweep of all channel products, exact and Thomson");
    app.get_subcommand("single-dm")->description("scattered single-photon density matrix");
    app.get_subcommand("entangled-dm")->description("signal-idler density matrix after scattering");
    app.get_subcommand("kraus")->description("Kraus operators and completeness defect");
    app.get_subcommand("info")->description("entropies and mutual information");
    app.get_subcommand("verify")->description("run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (!output.empty()) cfg.output_path = output;

    spdlog::set_level(to_spdlog(cfg.log_level));
    spdlog::info("{}: omega={} mass_ratio={} alpha={} p={} theta_steps={}", to_string(cfg.subcommand), cfg.omega,
                 cfg.mass_ratio, cfg.alpha, cfg.p, cfg.theta_steps);

    const int code = run(cfg, std::cout, std::cerr);
    spdlog::debug("exit code {}", code);
    return code;
}
