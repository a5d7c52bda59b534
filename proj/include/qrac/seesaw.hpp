#pragma once

#include <cstdint>

#include "qrac/strategy.hpp"

namespace qrac {

struct SeesawConfig {
    int starts = 100;
    int max_sweeps = 500;
    double convergence_tol = 1e-12; // absolute witness improvement per sweep
    std::uint64_t seed = 1;
};

struct SeesawResult {
    int n = 0;
    double t_quantum = 0.0;
    Strategy strategy;
    int sweeps_used = 0;
    int start_index = 0;
};

/// Exact inner step with measurements fixed: the witness is
/// T = (1/2) sum_a s_a . v_a with v_a = sum_y (-1)^{a_y} m_y, linear in each
/// state vector, so the optimum is s_a = v_a / |v_a|. Directions with
/// |v_a| < 1e-12 keep the corresponding previous state.
std::vector<QubitState> optimal_states_for_measurements(const std::vector<Projector>& measurements,
                                                        int n,
                                                        const std::vector<QubitState>& previous);

/// Dual step with states fixed: m_y proportional to sum_a (-1)^{a_y} s_a,
/// degenerate sums keep the previous measurement.
std::vector<Projector> optimal_measurements_for_states(const std::vector<QubitState>& states,
                                                       int n,
                                                       const std::vector<Projector>& previous);

/// Best witness over `starts` random initializations (measurement vectors
/// uniform on the sphere, per-start seeds derived from config.seed so results
/// are independent of execution order). Each start alternates the two exact
/// steps; the witness is non-decreasing across half-steps. A start stops once
/// the per-sweep improvement drops below convergence_tol and the iterate has
/// settled, or at max_sweeps. Ties within 1e-12 resolve to the lowest start
/// index. Requires 1 <= n <= 10.
SeesawResult seesaw_optimize(int n, const SeesawConfig& config = {});

} // namespace qrac
