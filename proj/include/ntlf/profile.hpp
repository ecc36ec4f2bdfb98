#ifndef NTLF_PROFILE_HPP
#define NTLF_PROFILE_HPP

#include <cstddef>
#include <vector>

namespace ntlf {

/// Strip-width profile of a nonuniform line, parameterized as a truncated
/// Fourier series of ln(w(z)/h) with period d:
///
///   ln(w(z)/h) = sum_{n=0}^{N} C_n cos(2 pi n z / d)
///              + sum_{n=1}^{N} S_n sin(2 pi n z / d)
///
/// All sine terms vanish at z = 0 and z = d, so both ends share the width
/// exp(sum C_n) regardless of the coefficients.
struct FourierWidthProfile {
    double d = 0.0;                // line length [m]
    std::vector<double> c_coeffs;  // C_0 .. C_N
    std::vector<double> s_coeffs;  // S_1 .. S_N

    std::size_t order() const { return s_coeffs.size(); } // N

    /// d > 0, len(c) == len(s) + 1. Throws std::invalid_argument.
    void validate() const;
};

/// w(z)/h at position z in [0, d]. Throws std::invalid_argument outside.
double evaluate_profile(const FourierWidthProfile& profile, double z);

/// Shared end width w(0)/h == w(d)/h == exp(sum C_n).
double end_width(const FourierWidthProfile& profile);

/// Profile mirrored about z = d/2 (flips the sign of every S_n).
FourierWidthProfile mirrored(const FourierWidthProfile& profile);

} // namespace ntlf

#endif
