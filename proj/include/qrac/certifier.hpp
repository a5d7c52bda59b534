#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrac/strategy.hpp"

namespace qrac {

struct CertifierConfig {
    int starts = 200;                // local searches per candidate argmax position
    double constraint_tol = 1e-6;    // max |T(witness) - t_target| at a feasible optimum
    std::vector<double> penalty_schedule = {1e1, 1e2, 1e3, 1e4, 1e5}; // strictly increasing
    double local_step_tol = 1e-9;    // coordinate search stops once all steps shrink below this
    int max_iters_per_weight = 300;  // sweep cap per penalty weight
    std::uint64_t seed = 1;
    bool exploit_symmetry = true;    // reduce candidate positions by input/outcome relabeling
};

/// One certified point of the min-entropy bound: the largest outcome
/// probability attainable by any qubit strategy whose witness equals
/// t_target, together with the strategy attaining it. The result is
/// self-certifying on the "an adversary can do at least this well" side:
/// p_guess is the recomputed maximum entry of witness_strategy's table and
/// constraint_residual its recomputed witness mismatch.
struct EntropyPoint {
    int n = 0;
    double t_target = 0.0;
    bool feasible = false;
    std::optional<double> p_guess;  // in [1/2, 1]; unset when infeasible
    std::optional<double> h_min;    // -log2(p_guess); unset when infeasible
    std::optional<Strategy> witness_strategy;
    double constraint_residual = 0.0;
};

/// Supremum of the guessing probability max_{b,a,y} P(b|a,y) over all
/// pure-state/projective qubit strategies with witness value t_target,
/// by multi-start penalized coordinate search over the angle
/// parameterization with the first measurement axis and the second
/// measurement's azimuth gauge-fixed. The max over (b,a,y) is handled by
/// enumerating candidate argmax positions and maximizing that one smooth
/// entry; with exploit_symmetry the candidates collapse to y = 1 and one
/// input per leading-bit orbit. Targets beyond the see-saw quantum maximum
/// (by more than constraint_tol) come back feasible = false; targets outside
/// the algebraic range throw std::domain_error. Requires 1 <= n <= 5.
EntropyPoint guessing_probability(int n, double t_target, const CertifierConfig& config = {});

/// guessing_probability on the uniform grid over [t_min, t_max] inclusive of
/// both endpoints, ordered by t. Points that break the expected monotone
/// shape by more than optimizer noise are retried with three times the
/// starts.
std::vector<EntropyPoint> entropy_curve(int n, double t_min, double t_max, int steps,
                                        const CertifierConfig& config = {});

/// Smallest witness value at which the certified min-entropy is positive
/// (p_guess <= 1 - 1e-4), located by bisection to width 1e-3.
/// Requires 2 <= n <= 5.
double positivity_threshold(int n, const CertifierConfig& config = {});

/// CSV with header n,t_target,p_guess,h_min,feasible,constraint_residual;
/// reals carry 9 decimal places, feasible is 1/0, unset values print as nan.
std::string entropy_csv(std::span<const EntropyPoint> points);

} // namespace qrac
