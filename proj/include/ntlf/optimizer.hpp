#ifndef NTLF_OPTIMIZER_HPP
#define NTLF_OPTIMIZER_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ntlf/objective.hpp"

namespace ntlf {

/// Deterministic uniform source. The engine is mt19937_64 and the mapping
/// to [0,1) is fixed here ((x >> 11) * 2^-53) so streams are reproducible
/// across standard libraries; std::uniform_real_distribution is not.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Integer in [0, n).
    int below(int n) { return static_cast<int>(uniform() * n); }

  private:
    std::mt19937_64 engine_;
};

/// Multipliers on squared constraint violations (dB for the three response
/// margins, w/h units for width).
struct PenaltyWeights {
    double passband = 10.0;
    double stopband = 10.0;
    double transition = 10.0;
    double width = 100.0;
};

struct OptimizerOptions {
    int order_n = 5;            // series order N: free variables = 2N
    int population = 60;        // candidates per generation
    int max_evals = 60000;      // total objective evaluation budget
    std::uint64_t rng_seed = 1;
    PenaltyWeights penalty_weights{};
    double coeff_bound = 2.0;   // search box [-bound, bound] per coefficient
    bool local_refine = true;   // Nelder-Mead polish of the best candidate

    double de_weight = 0.7;     // F, differential weight
    double de_crossover = 0.9;  // CR, crossover probability
    double improvement_tol = 1e-5;
    int stall_generations = 20; // feasible + stalled this long -> stop
    int refine_evals = 4000;    // refinement share of the eval budget
    double sections_per_lambda = 50.0;

    void validate() const; // throws std::invalid_argument
};

/// Penalized objective for one candidate vector free = [C1..CN, S1..SN]:
/// error_function + sum_i weight_i * max(0, -margin_i)^2, so a feasible
/// candidate scores exactly its error. Candidates whose width leaves the
/// microstrip validity window score 1e6 plus the excursion instead of
/// throwing, which keeps the search total.
double penalized_objective(std::span<const double> free, const FilterSpec& spec,
                           const Substrate& substrate, const FrequencyGrid& grid,
                           const PenaltyWeights& weights, int m);

struct SynthesisResult {
    FourierWidthProfile profile; // end-width condition already applied
    SParameterSweep sweep;
    ConstraintReport report;
    double error = 0.0;   // unpenalized error of the returned profile
    bool feasible = false;
    int evals_used = 0;
    int generations = 0;
    std::uint64_t rng_seed = 0;
    std::vector<double> history; // best penalized value after each generation
};

/// Global search (differential evolution, rand/1/bin, synchronous
/// generations) followed by optional Nelder-Mead refinement of the best
/// candidate. Every evaluated candidate is tracked: if any feasible one was
/// seen, the feasible one with the lowest error is returned, otherwise the
/// best penalized candidate. Deterministic for a fixed seed; the
/// coordinator owns the RNG stream, and candidate evaluations within a
/// generation are independent (safe to run concurrently).
SynthesisResult synthesize(const FilterSpec& spec, const Substrate& substrate,
                           const OptimizerOptions& options);
SynthesisResult synthesize(const FilterSpec& spec, const Substrate& substrate,
                           const FrequencyGrid& grid, const OptimizerOptions& options);

struct VerifyResult {
    SParameterSweep sweep;
    ConstraintReport report;
    double error = 0.0;
};

/// Analyze a fixed profile against a spec: sweep, margins, and error.
VerifyResult verify(const FourierWidthProfile& profile, const FilterSpec& spec,
                    const Substrate& substrate, const FrequencyGrid& grid,
                    double sections_per_lambda = 50.0);

} // namespace ntlf

#endif
