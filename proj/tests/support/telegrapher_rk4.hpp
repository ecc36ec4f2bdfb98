#ifndef NTLF_TESTS_SUPPORT_TELEGRAPHER_RK4_HPP
#define NTLF_TESTS_SUPPORT_TELEGRAPHER_RK4_HPP

#include "ntlf/analysis.hpp"
#include "ntlf/microstrip.hpp"
#include "ntlf/profile.hpp"

namespace ntlf::testsupport {

/// Independent reference for the cascade analyzer: integrates the
/// frequency-domain telegrapher equations dV/dz = -j w L(z) I,
/// dI/dz = -j w C(z) V with classical RK4 over the exact (continuous)
/// profile, where L = Z sqrt(eps_eff) / c and C = sqrt(eps_eff) / (Z c).
/// The chain matrix is assembled from two initial-value columns started at
/// the load end, so no matrix product approximation is involved.
AbcdMatrix telegrapher_abcd(const FourierWidthProfile& profile, const Substrate& substrate,
                            double f, int steps);

} // namespace ntlf::testsupport

#endif
