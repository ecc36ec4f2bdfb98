#include "ntlf/profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ntlf {

void FourierWidthProfile::validate() const {
    if (!(d > 0.0))
        throw std::invalid_argument("profile length must be positive, got " + std::to_string(d));
    if (c_coeffs.size() != s_coeffs.size() + 1)
        throw std::invalid_argument("profile needs N+1 cosine and N sine coefficients, got " +
                                    std::to_string(c_coeffs.size()) + " and " +
                                    std::to_string(s_coeffs.size()));
}

double evaluate_profile(const FourierWidthProfile& profile, double z) {
    profile.validate();
    if (!(z >= 0.0 && z <= profile.d))
        throw std::invalid_argument("z = " + std::to_string(z) + " outside [0, " +
                                    std::to_string(profile.d) + "]");
    const double u = 2.0 * std::numbers::pi * z / profile.d;
    double ln_wh = profile.c_coeffs[0];
    for (std::size_t n = 1; n < profile.c_coeffs.size(); ++n)
        ln_wh += profile.c_coeffs[n] * std::cos(static_cast<double>(n) * u);
    for (std::size_t n = 1; n <= profile.s_coeffs.size(); ++n)
        ln_wh += profile.s_coeffs[n - 1] * std::sin(static_cast<double>(n) * u);
    return std::exp(ln_wh);
}

double end_width(const FourierWidthProfile& profile) {
    profile.validate();
    double sum = 0.0;
    for (const double c : profile.c_coeffs)
        sum += c;
    return std::exp(sum);
}

FourierWidthProfile mirrored(const FourierWidthProfile& profile) {
    FourierWidthProfile out = profile;
    for (double& s : out.s_coeffs)
        s = -s;
    return out;
}

} // namespace ntlf
