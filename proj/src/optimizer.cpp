#include "ntlf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ntlf {

namespace {

constexpr int kWidthSamples = 1001;
constexpr double kWindowPenalty = 1e6;

/// Total excursion of w/h beyond the closed-form validity window, summed
/// over the cascade midpoints and a dense scan. Zero iff the candidate can
/// be analyzed at all.
double window_excess(const FourierWidthProfile& profile, int m) {
    double excess = 0.0;
    auto probe = [&](double z) {
        const double wh = evaluate_profile(profile, z);
        if (wh < kWhWindowMin)
            excess += kWhWindowMin - wh;
        else if (wh > kWhWindowMax)
            excess += wh - kWhWindowMax;
    };
    const double dz = profile.d / m;
    for (int k = 0; k < m; ++k)
        probe((k + 0.5) * dz);
    for (int i = 0; i < kWidthSamples; ++i)
        probe(i == kWidthSamples - 1 ? profile.d
                                     : profile.d * static_cast<double>(i) / (kWidthSamples - 1));
    return excess;
}

struct Evaluation {
    double penalized = 0.0;
    double error = 0.0;
    bool feasible = false;
    bool in_window = false;
};

Evaluation evaluate_candidate(std::span<const double> free, const FilterSpec& spec,
                              const Substrate& substrate, const FrequencyGrid& grid,
                              const PenaltyWeights& weights, int m) {
    const FourierWidthProfile profile = enforce_end_width(free, spec, substrate);
    const double excess = window_excess(profile, m);
    if (excess > 0.0) {
        Evaluation e;
        e.penalized = kWindowPenalty + excess;
        e.error = e.penalized;
        return e;
    }
    const SParameterSweep sweep = analyze(profile, substrate, grid, spec.z0_ohms, m);
    const ConstraintReport report = constraint_report(sweep, spec, profile, kWidthSamples);
    auto hinge2 = [](double margin) {
        const double v = std::max(0.0, -margin);
        return v * v;
    };
    Evaluation e;
    e.error = error_function(sweep, spec);
    e.penalized = e.error + weights.passband * hinge2(report.passband_margin_db) +
                  weights.stopband * hinge2(report.stopband_margin_db) +
                  weights.transition * hinge2(report.transition_margin_db) +
                  weights.width * hinge2(report.width_margin);
    e.feasible = report.feasible();
    e.in_window = true;
    return e;
}

/// Nelder-Mead with standard coefficients (reflect 1, expand 2, contract
/// 0.5, shrink 0.5), every vertex clipped to the search box. fn is expected
/// to do its own bookkeeping; this only spends the local budget.
template <typename Fn>
void nelder_mead(Fn&& fn, const std::vector<double>& x0, double step, double bound, int budget) {
    const int dim = static_cast<int>(x0.size());
    if (budget < dim + 2)
        return;

    struct Vertex {
        double value;
        std::vector<double> x;
    };
    auto clip = [bound](std::vector<double>& v) {
        for (double& t : v)
            t = std::clamp(t, -bound, bound);
    };

    int used = 0;
    std::vector<Vertex> simplex(dim + 1, Vertex{0.0, x0});
    for (int j = 0; j < dim; ++j) {
        double moved = std::clamp(x0[j] + step, -bound, bound);
        if (moved == x0[j]) // pinned at the box edge, step inward instead
            moved = std::clamp(x0[j] - step, -bound, bound);
        simplex[j + 1].x[j] = moved;
    }
    for (Vertex& v : simplex) {
        v.value = fn(v.x);
        ++used;
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.value < b.value; };
    while (used < budget) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        if (simplex.back().value - simplex.front().value < 1e-10)
            break;

        std::vector<double> centroid(dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                centroid[j] += simplex[i].x[j] / dim;
        const Vertex& worst = simplex.back();

        std::vector<double> xr(dim);
        for (int j = 0; j < dim; ++j)
            xr[j] = centroid[j] + (centroid[j] - worst.x[j]);
        clip(xr);
        const double fr = fn(xr);
        ++used;

        if (fr < simplex.front().value) {
            if (used >= budget) {
                simplex.back() = {fr, std::move(xr)};
                break;
            }
            std::vector<double> xe(dim);
            for (int j = 0; j < dim; ++j)
                xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
            clip(xe);
            const double fe = fn(xe);
            ++used;
            simplex.back() = fe < fr ? Vertex{fe, std::move(xe)} : Vertex{fr, std::move(xr)};
        } else if (fr < simplex[dim - 1].value) {
            simplex.back() = {fr, std::move(xr)};
        } else {
            const bool outside = fr < worst.value;
            std::vector<double> xc(dim);
            for (int j = 0; j < dim; ++j)
                xc[j] = centroid[j] +
                        0.5 * ((outside ? xr[j] : worst.x[j]) - centroid[j]);
            clip(xc);
            if (used >= budget) {
                if (fr < simplex.back().value)
                    simplex.back() = {fr, std::move(xr)};
                break;
            }
            const double fc = fn(xc);
            ++used;
            if (fc <= (outside ? fr : worst.value)) {
                simplex.back() = {fc, std::move(xc)};
            } else {
                for (int i = 1; i <= dim; ++i) {
                    for (int j = 0; j < dim; ++j)
                        simplex[i].x[j] =
                            simplex[0].x[j] + 0.5 * (simplex[i].x[j] - simplex[0].x[j]);
                    clip(simplex[i].x);
                    if (used >= budget)
                        return;
                    simplex[i].value = fn(simplex[i].x);
                    ++used;
                }
            }
        }
    }
}

} // namespace

void OptimizerOptions::validate() const {
    if (order_n < 1)
        throw std::invalid_argument("order_n must be >= 1, got " + std::to_string(order_n));
    if (population < 8)
        throw std::invalid_argument("population must be >= 8, got " + std::to_string(population));
    if (max_evals <= population)
        throw std::invalid_argument("max_evals must exceed population, got max_evals = " +
                                    std::to_string(max_evals) + ", population = " +
                                    std::to_string(population));
    if (!(coeff_bound > 0.0))
        throw std::invalid_argument("coeff_bound must be positive, got " +
                                    std::to_string(coeff_bound));
    if (!(de_weight > 0.0))
        throw std::invalid_argument("de_weight must be positive, got " +
                                    std::to_string(de_weight));
    if (!(de_crossover >= 0.0 && de_crossover <= 1.0))
        throw std::invalid_argument("de_crossover must be in [0, 1], got " +
                                    std::to_string(de_crossover));
    if (!(improvement_tol >= 0.0))
        throw std::invalid_argument("improvement_tol must be >= 0, got " +
                                    std::to_string(improvement_tol));
    if (stall_generations < 1)
        throw std::invalid_argument("stall_generations must be >= 1, got " +
                                    std::to_string(stall_generations));
    if (refine_evals < 0)
        throw std::invalid_argument("refine_evals must be >= 0, got " +
                                    std::to_string(refine_evals));
    if (!(sections_per_lambda >= 10.0))
        throw std::invalid_argument("sections_per_lambda must be >= 10, got " +
                                    std::to_string(sections_per_lambda));
    if (!(penalty_weights.passband >= 0.0 && penalty_weights.stopband >= 0.0 &&
          penalty_weights.transition >= 0.0 && penalty_weights.width >= 0.0))
        throw std::invalid_argument("penalty weights must be >= 0");
}

double penalized_objective(std::span<const double> free, const FilterSpec& spec,
                           const Substrate& substrate, const FrequencyGrid& grid,
                           const PenaltyWeights& weights, int m) {
    grid.validate();
    return evaluate_candidate(free, spec, substrate, grid, weights, m).penalized;
}

SynthesisResult synthesize(const FilterSpec& spec, const Substrate& substrate,
                           const OptimizerOptions& options) {
    return synthesize(spec, substrate, FrequencyGrid::uniform(spec.f_max_hz, 120), options);
}

SynthesisResult synthesize(const FilterSpec& spec, const Substrate& substrate,
                           const FrequencyGrid& grid, const OptimizerOptions& options) {
    options.validate();
    spec.validate_with(substrate);
    grid.validate();

    const int dim = 2 * options.order_n;
    const int m = choose_num_sections(spec.d_m, grid.f_max(), substrate.eps_r,
                                      options.sections_per_lambda);
    const double bound = options.coeff_bound;
    Rng rng(options.rng_seed);

    int evals_used = 0;
    bool any_feasible = false;
    double best_feasible_error = std::numeric_limits<double>::infinity();
    double best_penalized = std::numeric_limits<double>::infinity();
    std::vector<double> best_feasible_x;
    std::vector<double> best_penalized_x; // best analyzable candidate seen

    auto evaluate = [&](const std::vector<double>& x) {
        const Evaluation e =
            evaluate_candidate(x, spec, substrate, grid, options.penalty_weights, m);
        ++evals_used;
        if (e.in_window && e.penalized < best_penalized) {
            best_penalized = e.penalized;
            best_penalized_x = x;
        }
        if (e.feasible && e.error < best_feasible_error) {
            any_feasible = true;
            best_feasible_error = e.error;
            best_feasible_x = x;
        }
        return e;
    };

    const int refine_budget =
        options.local_refine
            ? std::min(options.refine_evals, options.max_evals - options.population)
            : 0;
    const int de_budget = options.max_evals - refine_budget;

    std::vector<std::vector<double>> population(options.population, std::vector<double>(dim));
    std::vector<double> scores(options.population);
    std::vector<char> slot_feasible(options.population, 0);
    for (int i = 0; i < options.population; ++i) {
        for (int j = 0; j < dim; ++j)
            population[i][j] = rng.uniform(-bound, bound);
        const Evaluation e = evaluate(population[i]);
        scores[i] = e.penalized;
        slot_feasible[i] = e.feasible ? 1 : 0;
    }

    std::vector<double> history;
    history.push_back(*std::min_element(scores.begin(), scores.end()));

    int generations = 0;
    int stall = 0;
    double previous_best = history.back();
    std::vector<std::vector<double>> trials(options.population, std::vector<double>(dim));

    while (evals_used + options.population <= de_budget) {
        // synchronous generation: all trial vectors come from the current
        // population, so evaluation order cannot influence the search
        for (int i = 0; i < options.population; ++i) {
            int r1 = rng.below(options.population);
            while (r1 == i)
                r1 = rng.below(options.population);
            int r2 = rng.below(options.population);
            while (r2 == i || r2 == r1)
                r2 = rng.below(options.population);
            int r3 = rng.below(options.population);
            while (r3 == i || r3 == r1 || r3 == r2)
                r3 = rng.below(options.population);
            const int forced = rng.below(dim);
            for (int j = 0; j < dim; ++j) {
                const double donor =
                    std::clamp(population[r1][j] + options.de_weight * (population[r2][j] -
                                                                        population[r3][j]),
                               -bound, bound);
                const bool cross = rng.uniform() < options.de_crossover;
                trials[i][j] = (cross || j == forced) ? donor : population[i][j];
            }
        }
        for (int i = 0; i < options.population; ++i) {
            const Evaluation e = evaluate(trials[i]);
            if (e.penalized <= scores[i]) {
                population[i] = trials[i];
                scores[i] = e.penalized;
                slot_feasible[i] = e.feasible ? 1 : 0;
            }
        }
        ++generations;

        const auto best_it = std::min_element(scores.begin(), scores.end());
        const double generation_best = *best_it;
        history.push_back(generation_best);
        const bool best_slot_feasible =
            slot_feasible[static_cast<std::size_t>(best_it - scores.begin())] != 0;
        if (best_slot_feasible && previous_best - generation_best < options.improvement_tol)
            ++stall;
        else
            stall = 0;
        previous_best = generation_best;
        if (stall >= options.stall_generations)
            break;
    }

    if (refine_budget > 0 && !best_penalized_x.empty()) {
        const int nm_budget = std::min(refine_budget, options.max_evals - evals_used);
        nelder_mead([&](const std::vector<double>& x) { return evaluate(x).penalized; },
                    best_penalized_x, 0.1, bound, nm_budget);
    }

    const std::vector<double>& chosen = any_feasible ? best_feasible_x : best_penalized_x;
    if (chosen.empty())
        throw std::runtime_error(
            "synthesis found no candidate inside the analyzable width window");

    SynthesisResult result;
    result.profile = enforce_end_width(chosen, spec, substrate);
    result.sweep = analyze(result.profile, substrate, grid, spec.z0_ohms, m);
    result.error = error_function(result.sweep, spec);
    result.report = constraint_report(result.sweep, spec, result.profile, kWidthSamples);
    result.feasible = result.report.feasible();
    result.evals_used = evals_used;
    result.generations = generations;
    result.rng_seed = options.rng_seed;
    result.history = std::move(history);
    return result;
}

VerifyResult verify(const FourierWidthProfile& profile, const FilterSpec& spec,
                    const Substrate& substrate, const FrequencyGrid& grid,
                    double sections_per_lambda) {
    spec.validate_with(substrate);
    profile.validate();
    grid.validate();
    const int m =
        choose_num_sections(profile.d, grid.f_max(), substrate.eps_r, sections_per_lambda);
    VerifyResult result;
    result.sweep = analyze(profile, substrate, grid, spec.z0_ohms, m);
    result.error = error_function(result.sweep, spec);
    result.report = constraint_report(result.sweep, spec, profile, kWidthSamples);
    return result;
}

} // namespace ntlf
