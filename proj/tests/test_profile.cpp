#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ntlf/profile.hpp"

using namespace ntlf;

namespace {

FourierWidthProfile lowpass_no1() {
    FourierWidthProfile p;
    p.d = 0.10;
    p.c_coeffs = {0.3805, 0.2716, -0.0143, -0.1071, -0.4725, 0.7393};
    p.s_coeffs = {-0.1593, -0.0968, -0.1729, -0.8906, 1.1364};
    return p;
}

} // namespace

TEST_CASE("profile evaluation") {
    const FourierWidthProfile p = lowpass_no1();
    CHECK(p.order() == 5);
    CHECK_NOTHROW(p.validate());

    // at z=0 every cosine is 1 and every sine is 0: exp of the C sum
    CHECK(evaluate_profile(p, 0.0) == doctest::Approx(std::exp(0.7975)).epsilon(1e-12));
    CHECK(evaluate_profile(p, 0.0) == doctest::Approx(2.2200).epsilon(1e-4));

    // at z=d/2 the cosine signs alternate and the sines vanish again
    CHECK(evaluate_profile(p, 0.05) == doctest::Approx(std::exp(-1.0101)).epsilon(1e-12));
    CHECK(evaluate_profile(p, 0.05) == doctest::Approx(0.364).epsilon(1e-3));

    // both ends carry the same width: sine terms vanish at 0 and d
    CHECK(evaluate_profile(p, p.d) == doctest::Approx(evaluate_profile(p, 0.0)).epsilon(1e-12));
    CHECK(end_width(p) == doctest::Approx(evaluate_profile(p, 0.0)).epsilon(1e-12));

    for (double z : {0.0, 0.013, 0.05, 0.0871, 0.1})
        CHECK(evaluate_profile(p, z) > 0.0);

    CHECK_THROWS_AS(evaluate_profile(p, -1e-12), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_profile(p, 0.1 + 1e-12), std::invalid_argument);
}

TEST_CASE("profile mirroring flips the shape about the midpoint") {
    const FourierWidthProfile p = lowpass_no1();
    const FourierWidthProfile m = mirrored(p);
    CHECK(m.c_coeffs == p.c_coeffs);
    for (std::size_t n = 0; n < p.s_coeffs.size(); ++n)
        CHECK(m.s_coeffs[n] == -p.s_coeffs[n]);
    for (int i = 0; i <= 20; ++i) {
        const double z = p.d * i / 20.0;
        CHECK(evaluate_profile(m, z) ==
              doctest::Approx(evaluate_profile(p, p.d - z)).epsilon(1e-12));
    }
}

TEST_CASE("profile validation") {
    FourierWidthProfile p = lowpass_no1();

    p.d = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.d = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = lowpass_no1();
    p.c_coeffs.clear();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = lowpass_no1();
    p.s_coeffs.push_back(0.1); // sizes must stay N+1 cosines to N sines
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    // order zero (constant width) is legal
    FourierWidthProfile uniform;
    uniform.d = 0.05;
    uniform.c_coeffs = {0.25};
    CHECK_NOTHROW(uniform.validate());
    CHECK(uniform.order() == 0);
    CHECK(evaluate_profile(uniform, 0.02) == doctest::Approx(std::exp(0.25)).epsilon(1e-15));
}
