#ifndef NTLF_OBJECTIVE_HPP
#define NTLF_OBJECTIVE_HPP

#include <vector>

#include "ntlf/analysis.hpp"
#include "ntlf/microstrip.hpp"
#include "ntlf/profile.hpp"

namespace ntlf {

/// Lowpass target: passband edge f_p, stopband edge f_s, evaluation limit
/// f_max, ripple alpha_p and rejection alpha_s in dB (both positive), strip
/// width bounds, line length, and port reference impedance.
struct FilterSpec {
    double f_p_hz = 0.0;
    double f_s_hz = 0.0;
    double f_max_hz = 0.0;
    double alpha_p_db = 0.0;
    double alpha_s_db = 0.0;
    double wh_min = 0.0;
    double wh_max = 0.0;
    double d_m = 0.0;
    double z0_ohms = 50.0;

    void validate() const; // throws std::invalid_argument
    /// Also checks the width bounds against the substrate's synthesizable
    /// impedance window.
    void validate_with(const Substrate& substrate) const;
};

/// RMS-style reflection/transmission error over the grid:
/// sqrt((1/N) (sum_{0<f<=fp} |s11|^2 + sum_{fp<f<=fmax} |s21|^2)), N the
/// total number of grid points. The transition band counts toward the
/// |s21|^2 sum.
double error_function(const SParameterSweep& sweep, const FilterSpec& spec);

/// Piecewise attenuation mask in dB (negative numbers, bound on 20 log|s21|):
/// -alpha_p through the passband, linear from -alpha_p down to -alpha_s
/// across the transition band, -alpha_s beyond f_s.
double transition_bound_db(double f, const FilterSpec& spec);

/// Signed feasibility margins, all in "positive means satisfied" form.
struct ConstraintReport {
    double passband_margin_db = 0.0;   // min over 0<f<=fp of 20log|s21| + alpha_p
    double stopband_margin_db = 0.0;   // min over fs<=f<=fmax of -alpha_s - 20log|s21|
    double transition_margin_db = 0.0; // min over fp<f<fs of bound(f) - 20log|s21|
    double width_margin = 0.0;         // min over z of distance inside [wh_min, wh_max]

    bool passband_ok = false;
    bool stopband_ok = false;
    bool transition_ok = false;
    bool width_ok = false;

    bool feasible() const { return passband_ok && stopband_ok && transition_ok && width_ok; }
};

/// Margins from an existing sweep plus a width scan of the profile at
/// z_samples uniform positions over [0, d] (endpoints included).
ConstraintReport constraint_report(const SParameterSweep& sweep, const FilterSpec& spec,
                                   const FourierWidthProfile& profile, int z_samples = 1001);

/// Profile whose mean coefficient is eliminated so both ends sit at the
/// width end_wh: C0 = ln(end_wh) - sum of the free cosine coefficients.
/// free = [C1..CN, S1..SN], laid out cosines first.
FourierWidthProfile profile_with_end_width(std::span<const double> free, double d,
                                           double end_wh);

/// Same, with the end width synthesized from the port impedance.
FourierWidthProfile enforce_end_width(std::span<const double> free, const FilterSpec& spec,
                                      const Substrate& substrate);

} // namespace ntlf

#endif
