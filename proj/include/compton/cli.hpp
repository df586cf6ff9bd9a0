// Run configuration and subcommand dispatch for the command-line driver.
// Argument parsing lives in tools/compton_cli.cpp; everything here writes to
// caller-supplied streams so it can be driven from tests.

#pragma once

#include "compton/amplitudes.hpp"
#include "compton/channels.hpp"
#include "compton/density_matrix.hpp"
#include "compton/kinematics.hpp"
#include "compton/quantum_info.hpp"
#include "compton/serialize.hpp"
#include "compton/verify.hpp"

#include <array>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace compton {

enum class Subcommand { traces, single_dm, entangled_dm, kraus, info, verify };
enum class OutputFormat { json, csv };
enum class LogLevel { trace, debug, info, warn, error, off };

struct RunConfig {
    Subcommand subcommand = Subcommand::verify;
    double omega = 1.0;
    double mass_ratio = 1e6;  ///< m / omega
    double alpha = 1.0 / 137.035999;
    double p = 1e-3;
    int theta_steps = 181;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::json;
    LogLevel log_level = LogLevel::warn;
    bool bits = false;  ///< info: entropies in bits instead of nats

    ScatterParams scatter() const { return {omega, mass_ratio * omega, alpha, p}; }
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::array<std::string_view, 6> kSubcommandNames{"traces", "single-dm", "entangled-dm",
                                                                  "kraus",  "info",      "verify"};

inline std::string_view to_string(Subcommand s) { return kSubcommandNames[static_cast<std::size_t>(s)]; }

inline std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (std::size_t i = 0; i < kSubcommandNames.size(); ++i) {
        if (kSubcommandNames[i] == name) return static_cast<Subcommand>(i);
    }
    return std::nullopt;
}

inline void validate(const RunConfig& cfg) {
    if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega)) throw ConfigError("--omega must be positive");
    if (!(cfg.mass_ratio > 0.0) || !std::isfinite(cfg.mass_ratio)) throw ConfigError("--mass-ratio must be positive");
    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw ConfigError("--alpha must be positive");
    if (!(cfg.p >= 0.0 && cfg.p < ScatterParams::max_strength)) {
        throw ConfigError("--p must lie in [0, " + format_p(ScatterParams::max_strength) + "), got " + format_p(cfg.p));
    }
    if (cfg.theta_steps < 2) throw ConfigError("--theta-steps must be at least 2");
    if (cfg.format == OutputFormat::csv && cfg.subcommand != Subcommand::traces) {
        throw ConfigError("csv output is only available for traces");
    }
}

inline std::vector<double> theta_sweep(int steps) { return verify_detail::theta_grid(steps); }

struct TraceTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// One row per angle: omega', then exact and Thomson values of every channel
/// product (absolute units, e^4 included), then the H->H' / V->V ratio.
inline TraceTable trace_table(const RunConfig& cfg) {
    const ScatterParams params = cfg.scatter();
    const std::array<std::pair<PolChannel, PolChannel>, 6> pairs{{{kVtoV, kVtoV},
                                                                  {kHtoHprime, kHtoHprime},
                                                                  {kVtoV, kHtoHprime},
                                                                  {kHtoV, kHtoV},
                                                                  {kVtoHprime, kVtoHprime},
                                                                  {kHtoV, kHtoHprime}}};
    const std::array<std::string_view, 6> names{"vv", "hh", "vv_hh", "hv", "vh", "hv_hh"};

    TraceTable t;
    t.columns = {"theta", "omega_prime"};
    for (auto n : names) {
        t.columns.push_back(std::string(n) + "_exact");
        t.columns.push_back(std::string(n) + "_thomson");
    }
    t.columns.push_back("ratio_hh_vv");

    for (double theta : theta_sweep(cfg.theta_steps)) {
        const auto ev = build_event(params, theta);
        std::vector<double> row{theta, ev.omega_prime};
        for (const auto& [l, r] : pairs) {
            row.push_back(mm_trace_exact(ev, l, r, params.alpha));
            row.push_back(channel_sum_thomson(l, r, theta, params.alpha));
        }
        row.push_back(row[4] / row[2]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Json config_json(const RunConfig& cfg) {
    Json j;
    j["subcommand"] = std::string(to_string(cfg.subcommand));
    j["omega"] = cfg.omega;
    j["mass_ratio"] = cfg.mass_ratio;
    j["alpha"] = cfg.alpha;
    j["p"] = cfg.p;
    j["theta_steps"] = cfg.theta_steps;
    return j;
}

inline std::string render_traces(const RunConfig& cfg) {
    const TraceTable t = trace_table(cfg);
    if (cfg.format == OutputFormat::csv) {
        std::string out;
        for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
        out += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
            out += '\n';
        }
        return out;
    }
    Json j;
    j["config"] = config_json(cfg);
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return dump_json(j) + "\n";
}

inline Json theta_resolved_json(const RunConfig& cfg, bool pair) {
    Json arr = Json::array();
    for (double theta : theta_sweep(cfg.theta_steps)) {
        Json e;
        e["theta"] = theta;
        const MatrixXc w = pair ? MatrixXc(entangled_dm_theta(theta).cast<Complex>())
                                : MatrixXc(single_dm_theta(theta).cast<Complex>());
        e["weights"] = matrix_to_json(w);
        arr.push_back(std::move(e));
    }
    return arr;
}

inline std::string render_density(const RunConfig& cfg, bool pair) {
    const ScatterParams params = cfg.scatter();
    Json j;
    j["config"] = config_json(cfg);
    j["exposure"] = exposure_from_strength(cfg.p);
    j["integrated"] = to_json(pair ? integrate_entangled_dm(params) : integrate_single_dm(params));
    j["first_order"] = to_json(pair ? first_order_entangled_dm(cfg.p) : first_order_single_dm(cfg.p));
    j["theta_resolved"] = theta_resolved_json(cfg, pair);
    return dump_json(j) + "\n";
}

inline std::string render_kraus(const RunConfig& cfg) {
    const auto [a, b] = kraus_parameters(cfg.p);
    const KrausSet ks = kraus_from_p(cfg.p);
    Json j;
    j["config"] = config_json(cfg);
    j["a"] = a;
    j["b"] = b;
    j["k2_first_order"] = kraus_k2_first_order(cfg.p);
    const Json set = to_json(ks);
    for (const auto& [key, value] : set.items()) j[key] = value;
    return dump_json(j) + "\n";
}

inline std::string render_info(const RunConfig& cfg) {
    const InfoBundle b = information_bundle(integrate_entangled_dm(cfg.scatter()), cfg.p);
    const double unit = cfg.bits ? 1.0 / std::numbers::ln2 : 1.0;
    Json j;
    j["config"] = config_json(cfg);
    j["units"] = cfg.bits ? "bits" : "nats";
    j["system"] = to_json(b.system, unit);
    j["signal"] = to_json(b.signal, unit);
    j["idler"] = to_json(b.idler, unit);
    j["mutual_information"] = b.mutual_information * unit;
    j["mutual_information_expansion"] = b.mutual_information_expansion * unit;
    j["initial_mutual_information"] = b.initial_mutual_information * unit;
    j["system_leading_log"] = final_entropy_leading_log(cfg.p) * unit;
    return dump_json(j) + "\n";
}

inline Json to_json(const VerifyReport& r) {
    Json j;
    j["check_id"] = r.check_id;
    j["description"] = r.description;
    j["measured"] = r.measured;
    j["expected"] = r.expected;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

/// Dispatch one subcommand. Returns 0 on success, 1 when a verify check
/// fails, 2 on an invalid configuration.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::string text;
    int code = 0;
    try {
        switch (cfg.subcommand) {
            case Subcommand::traces: text = render_traces(cfg); break;
            case Subcommand::single_dm: text = render_density(cfg, false); break;
            case Subcommand::entangled_dm: text = render_density(cfg, true); break;
            case Subcommand::kraus: text = render_kraus(cfg); break;
            case Subcommand::info: text = render_info(cfg); break;
            case Subcommand::verify: {
                const auto reports = run_verify(cfg.scatter());
                Json j;
                j["config"] = config_json(cfg);
                Json checks = Json::array();
                bool all = true;
                for (const auto& r : reports) {
                    checks.push_back(to_json(r));
                    if (!r.pass) {
                        all = false;
                        err << "verify: check " << r.check_id << " failed (" << r.description
                            << "): measured " << format_double(r.measured) << ", tolerance "
                            << format_double(r.tolerance) << '\n';
                    }
                }
                j["checks"] = std::move(checks);
                j["all_pass"] = all;
                text = dump_json(j) + "\n";
                code = all ? 0 : 1;
                break;
            }
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (cfg.output_path) {
        std::ofstream f(*cfg.output_path, std::ios::binary);
        if (!f) {
            err << "error: cannot open " << *cfg.output_path << '\n';
            return 2;
        }
        f << text;
    } else {
        out << text;
    }
    return code;
}

}  // namespace compton
