#include "ntlf/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ntlf {

namespace {

double db_mag(const complexd& s) {
    // floor keeps log10 finite for numerically dead transmission
    return 20.0 * std::log10(std::max(std::abs(s), 1e-300));
}

} // namespace

void FilterSpec::validate() const {
    if (!(f_p_hz > 0.0))
        throw std::invalid_argument("f_p must be positive, got " + std::to_string(f_p_hz));
    if (!(f_p_hz < f_s_hz))
        throw std::invalid_argument("f_p < f_s violated: f_p = " + std::to_string(f_p_hz) +
                                    ", f_s = " + std::to_string(f_s_hz));
    if (!(f_s_hz <= f_max_hz))
        throw std::invalid_argument("f_s <= f_max violated: f_s = " + std::to_string(f_s_hz) +
                                    ", f_max = " + std::to_string(f_max_hz));
    if (!(alpha_p_db > 0.0) || !(alpha_p_db < alpha_s_db))
        throw std::invalid_argument("need 0 < alpha_p < alpha_s, got alpha_p = " +
                                    std::to_string(alpha_p_db) + ", alpha_s = " +
                                    std::to_string(alpha_s_db));
    if (!(wh_min > 0.0) || !(wh_min < wh_max))
        throw std::invalid_argument("need 0 < wh_min < wh_max, got wh_min = " +
                                    std::to_string(wh_min) + ", wh_max = " +
                                    std::to_string(wh_max));
    if (!(d_m > 0.0))
        throw std::invalid_argument("line length must be positive, got " + std::to_string(d_m));
    if (!(z0_ohms > 0.0))
        throw std::invalid_argument("port impedance must be positive, got " +
                                    std::to_string(z0_ohms));
}

void FilterSpec::validate_with(const Substrate& substrate) const {
    validate();
    substrate.validate();
    const double w0h = width_for_impedance(z0_ohms, substrate.eps_r);
    if (!(w0h > wh_min && w0h < wh_max))
        throw std::invalid_argument("port width w0/h = " + std::to_string(w0h) +
                                    " not strictly inside [" + std::to_string(wh_min) + ", " +
                                    std::to_string(wh_max) + "]");
}

double error_function(const SParameterSweep& sweep, const FilterSpec& spec) {
    spec.validate();
    if (sweep.entries.empty())
        throw std::invalid_argument("error function needs a non-empty sweep");
    double total = 0.0;
    for (const SweepPoint& p : sweep.entries) {
        if (!(p.frequency > 0.0 && p.frequency <= spec.f_max_hz))
            throw std::invalid_argument("sweep frequency " + std::to_string(p.frequency) +
                                        " outside (0, f_max]");
        // reflection counts through the passband, transmission everywhere
        // above it, transition band included
        total += p.frequency <= spec.f_p_hz ? std::norm(p.s11) : std::norm(p.s21);
    }
    return std::sqrt(total / static_cast<double>(sweep.entries.size()));
}

double transition_bound_db(double f, const FilterSpec& spec) {
    spec.validate();
    if (!(f > spec.f_p_hz && f < spec.f_s_hz))
        throw std::invalid_argument("f = " + std::to_string(f) + " outside transition band (" +
                                    std::to_string(spec.f_p_hz) + ", " +
                                    std::to_string(spec.f_s_hz) + ")");
    return -spec.alpha_p_db - (spec.alpha_s_db - spec.alpha_p_db) * (f - spec.f_p_hz) /
                                  (spec.f_s_hz - spec.f_p_hz);
}

ConstraintReport constraint_report(const SParameterSweep& sweep, const FilterSpec& spec,
                                   const FourierWidthProfile& profile, int z_samples) {
    spec.validate();
    profile.validate();
    if (z_samples < 2)
        throw std::invalid_argument("width scan needs at least two samples, got " +
                                    std::to_string(z_samples));
    constexpr double inf = std::numeric_limits<double>::infinity();
    double pass = inf;
    double stop = inf;
    double tran = inf;
    for (const SweepPoint& p : sweep.entries) {
        const double db = db_mag(p.s21);
        if (p.frequency > 0.0 && p.frequency <= spec.f_p_hz)
            pass = std::min(pass, db + spec.alpha_p_db);
        else if (p.frequency >= spec.f_s_hz && p.frequency <= spec.f_max_hz)
            stop = std::min(stop, -spec.alpha_s_db - db);
        else if (p.frequency > spec.f_p_hz && p.frequency < spec.f_s_hz)
            tran = std::min(tran, transition_bound_db(p.frequency, spec) - db);
    }
    if (pass == inf)
        throw InsufficientGridError("no grid point in the passband (0, f_p]");
    if (tran == inf)
        throw InsufficientGridError("no grid point in the transition band (f_p, f_s)");
    if (stop == inf)
        throw InsufficientGridError("no grid point in the stopband [f_s, f_max]");

    double wh_low = inf;
    double wh_high = -inf;
    for (int i = 0; i < z_samples; ++i) {
        const double z = i == z_samples - 1 ? profile.d
                                            : profile.d * static_cast<double>(i) / (z_samples - 1);
        const double wh = evaluate_profile(profile, z);
        wh_low = std::min(wh_low, wh);
        wh_high = std::max(wh_high, wh);
    }

    ConstraintReport report;
    report.passband_margin_db = pass;
    report.stopband_margin_db = stop;
    report.transition_margin_db = tran;
    report.width_margin = std::min(wh_low - spec.wh_min, spec.wh_max - wh_high);
    report.passband_ok = report.passband_margin_db >= 0.0;
    report.stopband_ok = report.stopband_margin_db >= 0.0;
    report.transition_ok = report.transition_margin_db >= 0.0;
    report.width_ok = report.width_margin >= 0.0;
    return report;
}

FourierWidthProfile profile_with_end_width(std::span<const double> free, double d,
                                           double end_wh) {
    if (free.empty() || free.size() % 2 != 0)
        throw std::invalid_argument("free coefficients must be [C1..CN, S1..SN], got " +
                                    std::to_string(free.size()) + " values");
    if (!(d > 0.0))
        throw std::invalid_argument("length must be positive, got " + std::to_string(d));
    if (!(end_wh > 0.0))
        throw std::invalid_argument("end width must be positive, got " + std::to_string(end_wh));
    const std::size_t n = free.size() / 2;
    FourierWidthProfile profile;
    profile.d = d;
    profile.c_coeffs.resize(n + 1);
    profile.s_coeffs.assign(free.begin() + static_cast<std::ptrdiff_t>(n), free.end());
    double c_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        profile.c_coeffs[i + 1] = free[i];
        c_sum += free[i];
    }
    // eliminating the mean coefficient pins both ends to end_wh exactly
    profile.c_coeffs[0] = std::log(end_wh) - c_sum;
    return profile;
}

FourierWidthProfile enforce_end_width(std::span<const double> free, const FilterSpec& spec,
                                      const Substrate& substrate) {
    spec.validate();
    substrate.validate();
    return profile_with_end_width(free, spec.d_m,
                                  width_for_impedance(spec.z0_ohms, substrate.eps_r));
}

} // namespace ntlf
