#include "ntlf/microstrip.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ntlf {

namespace {

void check_eps_r(double eps_r) {
    if (!(eps_r >= 1.0))
        throw std::invalid_argument("eps_r must be >= 1, got " + std::to_string(eps_r));
}

} // namespace

void Substrate::validate() const {
    check_eps_r(eps_r);
    if (!(h > 0.0))
        throw std::invalid_argument("substrate thickness must be positive, got " +
                                    std::to_string(h));
}

double effective_permittivity(double wh, double eps_r) {
    check_eps_r(eps_r);
    if (!(wh > 0.0))
        throw std::invalid_argument("w/h must be positive, got " + std::to_string(wh));
    // Hammerstad closed form; the narrow-strip correction applies strictly
    // below w/h = 1 so the map is single-valued at the seam.
    double eps = 0.5 * (eps_r + 1.0) + 0.5 * (eps_r - 1.0) / std::sqrt(1.0 + 12.0 / wh);
    if (wh < 1.0)
        eps += 0.5 * (eps_r - 1.0) * 0.04 * (1.0 - wh) * (1.0 - wh);
    return eps;
}

double characteristic_impedance(double wh, double eps_r) {
    check_eps_r(eps_r);
    if (!(wh >= kWhWindowMin && wh <= kWhWindowMax))
        throw std::out_of_range("w/h = " + std::to_string(wh) + " outside validity window [" +
                                std::to_string(kWhWindowMin) + ", " +
                                std::to_string(kWhWindowMax) + "]");
    const double root = std::sqrt(effective_permittivity(wh, eps_r));
    if (wh < 1.0)
        return 60.0 / root * std::log(8.0 / wh + wh / 4.0);
    return 120.0 * std::numbers::pi / root / (wh + 1.393 + 0.667 * std::log(wh + 1.444));
}

ImpedanceRange achievable_impedance(double eps_r) {
    // impedance falls as the strip widens, so the window ends swap roles
    return {characteristic_impedance(kWhWindowMax, eps_r),
            characteristic_impedance(kWhWindowMin, eps_r)};
}

double width_for_impedance(double z_target, double eps_r) {
    const ImpedanceRange range = achievable_impedance(eps_r);
    if (!(z_target >= range.z_min && z_target <= range.z_max))
        throw UnreachableImpedanceError(z_target, range.z_min, range.z_max);
    // Z is strictly decreasing in wh inside each branch, so bisection
    // brackets the crossing; the final argmin absorbs the ~0.4% jump the
    // two branches leave at wh = 1 for targets landing in that gap.
    double lo = kWhWindowMin;
    double hi = kWhWindowMax;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (characteristic_impedance(mid, eps_r) >= z_target)
            lo = mid;
        else
            hi = mid;
    }
    double best = lo;
    double best_miss = std::abs(characteristic_impedance(lo, eps_r) - z_target);
    for (const double cand : {0.5 * (lo + hi), hi}) {
        const double miss = std::abs(characteristic_impedance(cand, eps_r) - z_target);
        if (miss < best_miss) {
            best = cand;
            best_miss = miss;
        }
    }
    return best;
}

LineSection line_section(double wh, double eps_r) {
    return {characteristic_impedance(wh, eps_r), effective_permittivity(wh, eps_r)};
}

} // namespace ntlf
