#ifndef NTLF_ANALYSIS_HPP
#define NTLF_ANALYSIS_HPP

#include <complex>
#include <span>
#include <vector>

#include "ntlf/microstrip.hpp"
#include "ntlf/profile.hpp"

namespace ntlf {

using complexd = std::complex<double>;

/// Strictly increasing positive frequencies [Hz].
struct FrequencyGrid {
    std::vector<double> points;

    /// n uniformly spaced points k * f_max / n, k = 1..n (DC excluded).
    static FrequencyGrid uniform(double f_max, int n_points);

    double f_max() const { return points.back(); }
    void validate() const; // throws std::invalid_argument
};

/// Chain (transfer) matrix of a two-port. a, d dimensionless; b in ohms;
/// c in siemens. Reciprocal networks satisfy a*d - b*c = 1.
struct AbcdMatrix {
    complexd a{1.0, 0.0};
    complexd b{0.0, 0.0};
    complexd c{0.0, 0.0};
    complexd d{1.0, 0.0};

    complexd determinant() const { return a * d - b * c; }

    /// Cascade: this network followed by rhs (port 2 of this into port 1 of rhs).
    AbcdMatrix operator*(const AbcdMatrix& rhs) const {
        return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }
};

/// Scattering parameters at a common real reference impedance. s12 equals
/// s21 for the reciprocal networks produced here and is not stored.
struct SParams {
    complexd s11;
    complexd s21;
    complexd s22;
};

struct SweepPoint {
    double frequency = 0.0; // Hz
    complexd s11;
    complexd s21;
    complexd s22;
};

/// Per-frequency scattering description of one analyzed line.
struct SParameterSweep {
    double z_ref = 50.0; // ohm
    std::vector<SweepPoint> entries;
};

/// Section count M = ceil(d / (lambda_min / K)) where
/// lambda_min = c / (f_max * sqrt(eps_r)). K >= 10 controls how far below
/// the shortest in-substrate wavelength each section stays.
int choose_num_sections(double d, double f_max, double eps_r, double safety_k = 50.0);

/// Chain matrix of one uniform lossless section of length dz at frequency f:
/// A = D = cos(beta dz), B = j Z sin(beta dz), C = j sin(beta dz) / Z with
/// beta = 2 pi f sqrt(eps_eff) / c.
AbcdMatrix section_abcd(const LineSection& section, double dz, double f);

/// Line parameters of the M uniform sections approximating the profile,
/// each sampled at its midpoint z_k = (k + 1/2) d / M.
std::vector<LineSection> section_line_params(const FourierWidthProfile& profile,
                                             const Substrate& substrate, int m);

/// Chain matrix of M midpoint-sampled sections multiplied source-to-load.
AbcdMatrix cascade_abcd(std::span<const LineSection> sections, double dz, double f);
AbcdMatrix cascade_abcd(const FourierWidthProfile& profile, const Substrate& substrate,
                        double f, int m);

/// ABCD -> S at reference impedance z0:
///   s11 = (A z0 + B - C z0^2 - D z0) / (A z0 + B + C z0^2 + D z0)
///   s21 = 2 z0 / (A z0 + B + C z0^2 + D z0)
/// s22 uses the same denominator with the signs of A and D flipped.
SParams s_parameters(const AbcdMatrix& abcd, double z0);

/// Full sweep: cascade + conversion per grid frequency, entries in grid
/// order. Pure function of its arguments; per-frequency evaluations share
/// no mutable state and may run concurrently.
SParameterSweep analyze(const FourierWidthProfile& profile, const Substrate& substrate,
                        const FrequencyGrid& grid, double z0, int m);

} // namespace ntlf

#endif
