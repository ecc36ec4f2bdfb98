#include "ntlf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ntlf/errors.hpp"

namespace ntlf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

const json& member(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        fail(where + "." + key + " is required");
    return *it;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        fail(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return it.key() == k; });
        if (!known)
            fail("unknown key " + where + "." + it.key());
    }
}

double number_at(const json& obj, const std::string& where, const char* key) {
    const json& v = member(obj, where, key);
    if (!v.is_number())
        fail(where + "." + key + " must be a number");
    return v.get<double>();
}

int int_at(const json& v, const std::string& where, const char* key) {
    if (!v.is_number_integer())
        fail(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::vector<double> number_array_at(const json& obj, const std::string& where, const char* key) {
    const json& v = member(obj, where, key);
    if (!v.is_array())
        fail(where + "." + key + " must be an array of numbers");
    std::vector<double> values;
    values.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number())
            fail(where + "." + key + " must contain only numbers");
        values.push_back(e.get<double>());
    }
    return values;
}

FilterSpec parse_spec(const json& obj) {
    reject_unknown(obj, "spec",
                   {"f_p_hz", "f_s_hz", "f_max_hz", "alpha_p_db", "alpha_s_db", "wh_min",
                    "wh_max", "d_m", "z0_ohms"});
    FilterSpec spec;
    spec.f_p_hz = number_at(obj, "spec", "f_p_hz");
    spec.f_s_hz = number_at(obj, "spec", "f_s_hz");
    spec.f_max_hz = number_at(obj, "spec", "f_max_hz");
    spec.alpha_p_db = number_at(obj, "spec", "alpha_p_db");
    spec.alpha_s_db = number_at(obj, "spec", "alpha_s_db");
    spec.wh_min = number_at(obj, "spec", "wh_min");
    spec.wh_max = number_at(obj, "spec", "wh_max");
    spec.d_m = number_at(obj, "spec", "d_m");
    spec.z0_ohms = number_at(obj, "spec", "z0_ohms");
    return spec;
}

Substrate parse_substrate(const json& obj) {
    reject_unknown(obj, "substrate", {"eps_r", "h_m"});
    Substrate substrate;
    substrate.eps_r = number_at(obj, "substrate", "eps_r");
    substrate.h = number_at(obj, "substrate", "h_m");
    return substrate;
}

FourierWidthProfile parse_profile(const json& obj) {
    reject_unknown(obj, "profile", {"d_m", "c", "s"});
    FourierWidthProfile profile;
    profile.d = number_at(obj, "profile", "d_m");
    profile.c_coeffs = number_array_at(obj, "profile", "c");
    profile.s_coeffs = number_array_at(obj, "profile", "s");
    return profile;
}

void parse_weights(const json& obj, PenaltyWeights& weights) {
    reject_unknown(obj, "optimizer.penalty_weights",
                   {"passband", "stopband", "transition", "width"});
    if (const auto it = obj.find("passband"); it != obj.end())
        weights.passband = number_at(obj, "optimizer.penalty_weights", "passband");
    if (const auto it = obj.find("stopband"); it != obj.end())
        weights.stopband = number_at(obj, "optimizer.penalty_weights", "stopband");
    if (const auto it = obj.find("transition"); it != obj.end())
        weights.transition = number_at(obj, "optimizer.penalty_weights", "transition");
    if (const auto it = obj.find("width"); it != obj.end())
        weights.width = number_at(obj, "optimizer.penalty_weights", "width");
}

void parse_optimizer(const json& obj, OptimizerOptions& options) {
    reject_unknown(obj, "optimizer",
                   {"order_n", "population", "max_evals", "rng_seed", "penalty_weights",
                    "coeff_bound", "local_refine", "de_weight", "de_crossover",
                    "improvement_tol", "stall_generations", "refine_evals",
                    "sections_per_lambda"});
    if (const auto it = obj.find("order_n"); it != obj.end())
        options.order_n = int_at(*it, "optimizer", "order_n");
    if (const auto it = obj.find("population"); it != obj.end())
        options.population = int_at(*it, "optimizer", "population");
    if (const auto it = obj.find("max_evals"); it != obj.end())
        options.max_evals = int_at(*it, "optimizer", "max_evals");
    if (const auto it = obj.find("rng_seed"); it != obj.end()) {
        if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() &&
                                         it->get<std::int64_t>() < 0))
            fail("optimizer.rng_seed must be a non-negative integer");
        options.rng_seed = it->get<std::uint64_t>();
    }
    if (const auto it = obj.find("penalty_weights"); it != obj.end())
        parse_weights(*it, options.penalty_weights);
    if (const auto it = obj.find("coeff_bound"); it != obj.end())
        options.coeff_bound = number_at(obj, "optimizer", "coeff_bound");
    if (const auto it = obj.find("local_refine"); it != obj.end()) {
        if (!it->is_boolean())
            fail("optimizer.local_refine must be a boolean");
        options.local_refine = it->get<bool>();
    }
    if (const auto it = obj.find("de_weight"); it != obj.end())
        options.de_weight = number_at(obj, "optimizer", "de_weight");
    if (const auto it = obj.find("de_crossover"); it != obj.end())
        options.de_crossover = number_at(obj, "optimizer", "de_crossover");
    if (const auto it = obj.find("improvement_tol"); it != obj.end())
        options.improvement_tol = number_at(obj, "optimizer", "improvement_tol");
    if (const auto it = obj.find("stall_generations"); it != obj.end())
        options.stall_generations = int_at(*it, "optimizer", "stall_generations");
    if (const auto it = obj.find("refine_evals"); it != obj.end())
        options.refine_evals = int_at(*it, "optimizer", "refine_evals");
    if (const auto it = obj.find("sections_per_lambda"); it != obj.end())
        options.sections_per_lambda = number_at(obj, "optimizer", "sections_per_lambda");
}

std::vector<std::string> default_outputs(JobMode mode) {
    if (mode == JobMode::synthesize)
        return {"response.s2p", "profile.csv", "geometry.svg", "result.json"};
    return {"response.s2p", "profile.csv", "geometry.svg", "report.json"};
}

void check_outputs(const std::vector<std::string>& outputs, JobMode mode) {
    const std::vector<std::string> allowed = default_outputs(mode);
    for (const std::string& name : outputs) {
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            fail("outputs: unknown artifact \"" + name + "\" for this mode");
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out)
        throw std::runtime_error("failed while writing " + path.string());
}

json margins_json(const ConstraintReport& report) {
    return json{{"passband_db", report.passband_margin_db},
                {"stopband_db", report.stopband_margin_db},
                {"transition_db", report.transition_margin_db},
                {"width", report.width_margin},
                {"passband_ok", report.passband_ok},
                {"stopband_ok", report.stopband_ok},
                {"transition_ok", report.transition_ok},
                {"width_ok", report.width_ok},
                {"feasible", report.feasible()}};
}

json spec_json(const FilterSpec& spec) {
    return json{{"f_p_hz", spec.f_p_hz},       {"f_s_hz", spec.f_s_hz},
                {"f_max_hz", spec.f_max_hz},   {"alpha_p_db", spec.alpha_p_db},
                {"alpha_s_db", spec.alpha_s_db}, {"wh_min", spec.wh_min},
                {"wh_max", spec.wh_max},       {"d_m", spec.d_m},
                {"z0_ohms", spec.z0_ohms}};
}

} // namespace

JobMode parse_mode(const std::string& text) {
    if (text == "analyze")
        return JobMode::analyze;
    if (text == "synthesize")
        return JobMode::synthesize;
    if (text == "verify")
        return JobMode::verify;
    fail("unknown mode \"" + text + "\" (expected analyze, synthesize, or verify)");
}

JobConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("config parse error: ") + e.what());
    }
    reject_unknown(root, "config",
                   {"mode", "spec", "substrate", "profile", "grid", "optimizer", "outputs"});

    JobConfig config;
    const json& mode_value = member(root, "config", "mode");
    if (!mode_value.is_string())
        fail("config.mode must be a string");
    config.mode = parse_mode(mode_value.get<std::string>());
    config.spec = parse_spec(member(root, "config", "spec"));
    config.substrate = parse_substrate(member(root, "config", "substrate"));

    const bool has_profile = root.contains("profile");
    if (config.mode == JobMode::synthesize && has_profile)
        fail("synthesize forbids a profile (the optimizer produces one)");
    if (config.mode != JobMode::synthesize && !has_profile)
        fail("analyze/verify require a profile");
    if (has_profile)
        config.profile = parse_profile(root["profile"]);

    if (const auto it = root.find("grid"); it != root.end()) {
        reject_unknown(*it, "grid", {"n_points"});
        config.grid_points = int_at(member(*it, "grid", "n_points"), "grid", "n_points");
    }
    if (const auto it = root.find("optimizer"); it != root.end())
        parse_optimizer(*it, config.optimizer);

    if (const auto it = root.find("outputs"); it != root.end()) {
        if (!it->is_array())
            fail("config.outputs must be an array of artifact names");
        for (const json& e : *it) {
            if (!e.is_string())
                fail("config.outputs must contain only strings");
            config.outputs.push_back(e.get<std::string>());
        }
        check_outputs(config.outputs, config.mode);
    } else {
        config.outputs = default_outputs(config.mode);
    }

    try {
        config.substrate.validate();
        config.spec.validate_with(config.substrate);
        if (config.profile) {
            config.profile->validate();
            if (config.profile->d != config.spec.d_m)
                throw std::invalid_argument(
                    "profile.d_m = " + std::to_string(config.profile->d) +
                    " differs from spec.d_m = " + std::to_string(config.spec.d_m));
        }
        if (config.grid_points < 1)
            throw std::invalid_argument("grid.n_points must be >= 1, got " +
                                        std::to_string(config.grid_points));
        config.optimizer.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("config validation: ") + e.what());
    }
    return config;
}

JobConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot read config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void write_touchstone(const SParameterSweep& sweep, const std::filesystem::path& path) {
    if (sweep.entries.empty())
        throw std::invalid_argument("cannot write a Touchstone file from an empty sweep");
    std::ofstream out = open_output(path);
    char line[512];
    std::snprintf(line, sizeof line, "! %s\n# HZ S RI R %g\n", kToolVersion, sweep.z_ref);
    out << line;
    for (const SweepPoint& p : sweep.entries) {
        // two-port column order is s11 s21 s12 s22; s12 repeats s21
        std::snprintf(line, sizeof line,
                      "%.9e %.9e %.9e %.9e %.9e %.9e %.9e %.9e %.9e\n", p.frequency,
                      p.s11.real(), p.s11.imag(), p.s21.real(), p.s21.imag(), p.s21.real(),
                      p.s21.imag(), p.s22.real(), p.s22.imag());
        out << line;
    }
    finish_output(out, path);
}

void write_profile_csv(const FourierWidthProfile& profile, const Substrate& substrate,
                       int samples, const std::filesystem::path& path) {
    if (samples < 2)
        throw std::invalid_argument("profile CSV needs at least two samples, got " +
                                    std::to_string(samples));
    profile.validate();
    substrate.validate();
    std::ofstream out = open_output(path);
    out << "z_m,w_over_h,z0_ohms,eps_eff\n";
    char line[256];
    for (int i = 0; i < samples; ++i) {
        const double z =
            i == samples - 1 ? profile.d : profile.d * static_cast<double>(i) / (samples - 1);
        const double wh = evaluate_profile(profile, z);
        const LineSection section = line_section(wh, substrate.eps_r);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", z, wh, section.z0,
                      section.eps_eff);
        out << line;
    }
    finish_output(out, path);
}

void write_geometry_svg(const FourierWidthProfile& profile, const Substrate& substrate,
                        const std::filesystem::path& path) {
    profile.validate();
    substrate.validate();
    constexpr int kPoints = 501;
    const double d_mm = profile.d * 1e3;
    const double h_mm = substrate.h * 1e3;

    std::vector<double> xs(kPoints);
    std::vector<double> half_widths(kPoints);
    double w_max = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double z =
            i == kPoints - 1 ? profile.d : profile.d * static_cast<double>(i) / (kPoints - 1);
        xs[i] = z * 1e3;
        const double w_mm = evaluate_profile(profile, z) * h_mm;
        half_widths[i] = 0.5 * w_mm;
        w_max = std::max(w_max, w_mm);
    }

    // one user unit = 1 mm; strip centerline sits at y = 0
    const double pad = std::max(1.0, 0.05 * std::max(d_mm, w_max));
    const double bar_mm = d_mm >= 20.0 ? 10.0 : 1.0;
    const double bar_y = 0.5 * w_max + pad;
    const double min_x = -pad;
    const double width = d_mm + 2.0 * pad;
    const double min_y = -(0.5 * w_max + pad);
    const double height = w_max + 3.2 * pad;

    std::ofstream out = open_output(path);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.6fmm\" "
                  "height=\"%.6fmm\" viewBox=\"%.6f %.6f %.6f %.6f\">\n",
                  width, height, min_x, min_y, width, height);
    out << buf;
    out << "<polygon fill=\"#c8872b\" stroke=\"#222222\" stroke-width=\"0.05\" points=\"";
    for (int i = 0; i < kPoints; ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6f,%.6f", i == 0 ? "" : " ", xs[i],
                      -half_widths[i]);
        out << buf;
    }
    for (int i = kPoints - 1; i >= 0; --i) {
        std::snprintf(buf, sizeof buf, " %.6f,%.6f", xs[i], half_widths[i]);
        out << buf;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"0\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\" stroke=\"#222222\" "
                  "stroke-width=\"0.2\"/>\n",
                  bar_y, bar_mm, bar_y);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.6f\" y=\"%.6f\" font-size=\"%.6f\" "
                  "font-family=\"sans-serif\">%g mm</text>\n",
                  0.5 * bar_mm, bar_y + 0.9 * pad, 0.8 * pad, bar_mm);
    out << buf;
    out << "</svg>\n";
    finish_output(out, path);
}

void write_report_json(const VerifyResult& result, const FilterSpec& spec,
                       const std::filesystem::path& path) {
    json doc{{"error", result.error},
             {"feasible", result.report.feasible()},
             {"margins", margins_json(result.report)},
             {"spec", spec_json(spec)}};
    std::ofstream out = open_output(path);
    out << doc.dump(2) << "\n";
    finish_output(out, path);
}

void write_result_json(const SynthesisResult& result, const FilterSpec& spec,
                       const std::filesystem::path& path) {
    json doc{{"feasible", result.feasible},
             {"error", result.error},
             {"profile",
              json{{"d_m", result.profile.d},
                   {"c", result.profile.c_coeffs},
                   {"s", result.profile.s_coeffs}}},
             {"margins", margins_json(result.report)},
             {"evals_used", result.evals_used},
             {"generations", result.generations},
             {"rng_seed", result.rng_seed},
             {"history", result.history},
             {"spec", spec_json(spec)}};
    std::ofstream out = open_output(path);
    out << doc.dump(2) << "\n";
    finish_output(out, path);
}

int run_job(const JobConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const FrequencyGrid grid = FrequencyGrid::uniform(config.spec.f_max_hz, config.grid_points);
    const auto wants = [&](const char* name) {
        return std::find(config.outputs.begin(), config.outputs.end(), name) !=
               config.outputs.end();
    };
    constexpr int kCsvSamples = 1001;

    if (config.mode == JobMode::synthesize) {
        const SynthesisResult result =
            synthesize(config.spec, config.substrate, grid, config.optimizer);
        if (wants("response.s2p"))
            write_touchstone(result.sweep, out_dir / "response.s2p");
        if (wants("profile.csv"))
            write_profile_csv(result.profile, config.substrate, kCsvSamples,
                              out_dir / "profile.csv");
        if (wants("geometry.svg"))
            write_geometry_svg(result.profile, config.substrate, out_dir / "geometry.svg");
        if (wants("result.json"))
            write_result_json(result, config.spec, out_dir / "result.json");
        return result.feasible ? 0 : 2;
    }

    const VerifyResult result = verify(*config.profile, config.spec, config.substrate, grid,
                                       config.optimizer.sections_per_lambda);
    if (wants("response.s2p"))
        write_touchstone(result.sweep, out_dir / "response.s2p");
    if (wants("profile.csv"))
        write_profile_csv(*config.profile, config.substrate, kCsvSamples,
                          out_dir / "profile.csv");
    if (wants("geometry.svg"))
        write_geometry_svg(*config.profile, config.substrate, out_dir / "geometry.svg");
    if (wants("report.json"))
        write_report_json(result, config.spec, out_dir / "report.json");
    return config.mode == JobMode::verify && !result.report.feasible() ? 2 : 0;
}

} // namespace ntlf
