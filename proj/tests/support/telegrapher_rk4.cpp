#include "support/telegrapher_rk4.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ntlf::testsupport {

namespace {

// state is the 2x2 fundamental matrix [V1 V2; I1 I2], columns independent
using State = std::array<complexd, 4>;

State scaled(const State& s, const complexd& k) {
    return {s[0] * k, s[1] * k, s[2] * k, s[3] * k};
}

State plus(const State& a, const State& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

} // namespace

AbcdMatrix telegrapher_abcd(const FourierWidthProfile& profile, const Substrate& substrate,
                            double f, int steps) {
    if (steps < 1)
        throw std::invalid_argument("need at least one integration step");
    const double omega = 2.0 * std::numbers::pi * f;
    const complexd jw(0.0, omega);

    auto derivative = [&](double z, const State& y) {
        const double wh = evaluate_profile(profile, std::clamp(z, 0.0, profile.d));
        const LineSection sec = line_section(wh, substrate.eps_r);
        const double root = std::sqrt(sec.eps_eff);
        const double induct = sec.z0 * root / kSpeedOfLight;
        const double capac = root / (sec.z0 * kSpeedOfLight);
        // dV/dz = -jwL I, dI/dz = -jwC V, column by column
        return State{-jw * induct * y[2], -jw * induct * y[3], -jw * capac * y[0],
                     -jw * capac * y[1]};
    };

    // start at the load end with the identity and integrate back to the
    // source; the arrival state is the chain matrix itself
    const double h = -profile.d / steps;
    State y{complexd(1.0), complexd(0.0), complexd(0.0), complexd(1.0)};
    double z = profile.d;
    for (int i = 0; i < steps; ++i) {
        const State k1 = derivative(z, y);
        const State k2 = derivative(z + 0.5 * h, plus(y, scaled(k1, 0.5 * h)));
        const State k3 = derivative(z + 0.5 * h, plus(y, scaled(k2, 0.5 * h)));
        const State k4 = derivative(z + h, plus(y, scaled(k3, h)));
        const State sum = plus(plus(k1, scaled(k4, 1.0)), scaled(plus(k2, k3), 2.0));
        y = plus(y, scaled(sum, h / 6.0));
        z = profile.d + (i + 1) * h;
    }
    return {y[0], y[1], y[2], y[3]};
}

} // namespace ntlf::testsupport
