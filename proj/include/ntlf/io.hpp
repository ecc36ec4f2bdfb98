#ifndef NTLF_IO_HPP
#define NTLF_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ntlf/optimizer.hpp"

namespace ntlf {

inline constexpr const char* kToolVersion = "ntlf 1.0.0";

enum class JobMode { analyze, synthesize, verify };

JobMode parse_mode(const std::string& text); // throws ConfigError

/// One run's worth of parsed, validated configuration.
struct JobConfig {
    JobMode mode = JobMode::analyze;
    FilterSpec spec;
    Substrate substrate;
    std::optional<FourierWidthProfile> profile; // required for analyze/verify
    int grid_points = 120;
    OptimizerOptions optimizer;
    std::vector<std::string> outputs; // artifact names, e.g. "response.s2p"
};

/// Parse and fully validate a JSON config document. Schema errors name the
/// offending field; invariant violations report both values.
JobConfig parse_config(const std::string& text); // throws ConfigError
JobConfig load_config(const std::filesystem::path& path);

/// Touchstone v1 two-port file: `# HZ S RI R <z_ref>` header, one line per
/// frequency with f and Re/Im of s11, s21, s12, s22 (s12 = s21,
/// reciprocal), 9 significant digits, ascending frequency. One leading `!`
/// comment carries the tool version; nothing else is non-deterministic.
void write_touchstone(const SParameterSweep& sweep, const std::filesystem::path& path);

/// CSV `z_m,w_over_h,z0_ohms,eps_eff` at `samples` uniform z including both
/// endpoints.
void write_profile_csv(const FourierWidthProfile& profile, const Substrate& substrate,
                       int samples, const std::filesystem::path& path);

/// SVG outline of the strip: x spans the length, y spans +-w(z)/2 about the
/// centerline, >= 501 samples, with a length scale annotation.
void write_geometry_svg(const FourierWidthProfile& profile, const Substrate& substrate,
                        const std::filesystem::path& path);

/// JSON summaries: margins/error/feasibility for verify and analyze runs,
/// plus coefficients and search diagnostics for synthesis runs.
void write_report_json(const VerifyResult& result, const FilterSpec& spec,
                       const std::filesystem::path& path);
void write_result_json(const SynthesisResult& result, const FilterSpec& spec,
                       const std::filesystem::path& path);

/// Run one parsed job end to end, writing the requested artifacts into
/// out_dir. Returns the process exit code contract: 0 on success, 2 when a
/// synthesis ends infeasible or a verify fails its constraints.
int run_job(const JobConfig& config, const std::filesystem::path& out_dir);

} // namespace ntlf

#endif
