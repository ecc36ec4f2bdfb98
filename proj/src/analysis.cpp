#include "ntlf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ntlf {

namespace {

// phase coefficient so that beta * dz = phase_per_f * f * dz
double phase_per_f(double eps_eff) {
    return 2.0 * std::numbers::pi * std::sqrt(eps_eff) / kSpeedOfLight;
}

AbcdMatrix uniform_section(double z0, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{c, 0.0}, {0.0, z0 * s}, {0.0, s / z0}, {c, 0.0}};
}

} // namespace

FrequencyGrid FrequencyGrid::uniform(double f_max, int n_points) {
    if (n_points < 1)
        throw std::invalid_argument("grid needs at least one point, got " +
                                    std::to_string(n_points));
    if (!(f_max > 0.0))
        throw std::invalid_argument("f_max must be positive, got " + std::to_string(f_max));
    FrequencyGrid grid;
    grid.points.reserve(static_cast<std::size_t>(n_points));
    for (int k = 1; k <= n_points; ++k)
        grid.points.push_back(static_cast<double>(k) * f_max / n_points);
    return grid;
}

void FrequencyGrid::validate() const {
    if (points.empty())
        throw std::invalid_argument("frequency grid is empty");
    double prev = 0.0;
    for (const double f : points) {
        if (!(f > prev))
            throw std::invalid_argument("frequency grid must be positive and strictly increasing");
        prev = f;
    }
}

int choose_num_sections(double d, double f_max, double eps_r, double safety_k) {
    if (!(d > 0.0))
        throw std::invalid_argument("length must be positive, got " + std::to_string(d));
    if (!(f_max > 0.0))
        throw std::invalid_argument("f_max must be positive, got " + std::to_string(f_max));
    if (!(eps_r >= 1.0))
        throw std::invalid_argument("eps_r must be >= 1, got " + std::to_string(eps_r));
    if (!(safety_k >= 10.0))
        throw std::invalid_argument("safety divisor must be >= 10, got " +
                                    std::to_string(safety_k));
    const double lambda_min = kSpeedOfLight / (f_max * std::sqrt(eps_r));
    // tiny slack so exact integer ratios are not rounded up
    const double m = std::ceil(d * safety_k / lambda_min - 1e-9);
    return std::max(1, static_cast<int>(m));
}

AbcdMatrix section_abcd(const LineSection& section, double dz, double f) {
    return uniform_section(section.z0, phase_per_f(section.eps_eff) * f * dz);
}

std::vector<LineSection> section_line_params(const FourierWidthProfile& profile,
                                             const Substrate& substrate, int m) {
    substrate.validate();
    if (m < 1)
        throw std::invalid_argument("need at least one section, got " + std::to_string(m));
    std::vector<LineSection> sections;
    sections.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double z = (k + 0.5) * profile.d / m;
        sections.push_back(line_section(evaluate_profile(profile, z), substrate.eps_r));
    }
    return sections;
}

AbcdMatrix cascade_abcd(std::span<const LineSection> sections, double dz, double f) {
    AbcdMatrix total;
    for (const LineSection& section : sections)
        total = total * section_abcd(section, dz, f);
    return total;
}

AbcdMatrix cascade_abcd(const FourierWidthProfile& profile, const Substrate& substrate,
                        double f, int m) {
    const std::vector<LineSection> sections = section_line_params(profile, substrate, m);
    return cascade_abcd(sections, profile.d / m, f);
}

SParams s_parameters(const AbcdMatrix& abcd, double z0) {
    if (!(z0 > 0.0))
        throw std::invalid_argument("reference impedance must be positive, got " +
                                    std::to_string(z0));
    const complexd den = abcd.a * z0 + abcd.b + abcd.c * (z0 * z0) + abcd.d * z0;
    if (std::abs(den) == 0.0)
        throw SingularNetworkError("s-parameter conversion hit a zero denominator");
    return {(abcd.a * z0 + abcd.b - abcd.c * (z0 * z0) - abcd.d * z0) / den,
            (2.0 * z0) / den,
            (-abcd.a * z0 + abcd.b - abcd.c * (z0 * z0) + abcd.d * z0) / den};
}

SParameterSweep analyze(const FourierWidthProfile& profile, const Substrate& substrate,
                        const FrequencyGrid& grid, double z0, int m) {
    grid.validate();
    const std::vector<LineSection> sections = section_line_params(profile, substrate, m);
    const double dz = profile.d / m;
    SParameterSweep sweep;
    sweep.z_ref = z0;
    sweep.entries.reserve(grid.points.size());
    for (const double f : grid.points) {
        const SParams s = s_parameters(cascade_abcd(sections, dz, f), z0);
        sweep.entries.push_back({f, s.s11, s.s21, s.s22});
    }
    return sweep;
}

} // namespace ntlf
