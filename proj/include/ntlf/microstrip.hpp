#ifndef NTLF_MICROSTRIP_HPP
#define NTLF_MICROSTRIP_HPP

#include "ntlf/errors.hpp"

namespace ntlf {

inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s

// Validity window for the normalized strip width w/h. Queries outside it
// raise instead of extrapolating.
inline constexpr double kWhWindowMin = 0.05;
inline constexpr double kWhWindowMax = 20.0;

/// Dielectric substrate of a microstrip line.
struct Substrate {
    double eps_r = 1.0; // relative permittivity, >= 1
    double h = 0.0;     // thickness [m], > 0

    void validate() const; // throws std::invalid_argument
};

/// Quasi-TEM electrical state of one uniform strip segment.
struct LineSection {
    double z0 = 0.0;      // characteristic impedance [ohm]
    double eps_eff = 1.0; // effective permittivity
};

/// Effective permittivity of a zero-thickness microstrip (Hammerstad closed
/// form). Two branches, switched at w/h = 1; the w/h < 1 branch applies
/// strictly below 1 so the map is single-valued.
///
/// Monotone non-decreasing in wh; bounded by [1, eps_r].
double effective_permittivity(double wh, double eps_r);

/// Characteristic impedance [ohm] of the same model; strictly decreasing
/// in wh. wh must lie inside [kWhWindowMin, kWhWindowMax].
double characteristic_impedance(double wh, double eps_r);

/// Inverts characteristic_impedance by bracketed bisection over the
/// validity window (tolerance 1e-9 on wh). Throws UnreachableImpedanceError
/// with the achievable interval when the target cannot be bracketed.
double width_for_impedance(double z_target, double eps_r);

/// Achievable impedance interval over the validity window.
struct ImpedanceRange {
    double z_min;
    double z_max;
};
ImpedanceRange achievable_impedance(double eps_r);

/// Convenience: both line parameters for one normalized width.
LineSection line_section(double wh, double eps_r);

} // namespace ntlf

#endif
