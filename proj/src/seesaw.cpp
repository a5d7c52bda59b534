#include "qrac/seesaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrac/log.hpp"
#include "qrac/rng.hpp"

namespace qrac {

namespace {

constexpr double kDegenerate = 1e-12;

// Stop only when the strategy itself has settled, not just the witness value:
// the witness is flat to second order near an optimum, so a pure value
// criterion can leave the vectors ~1e-6 away from the fixed point while the
// geometry checks need better.
constexpr double kSettleTol = 1e-10;

Vec3 random_unit(Xoshiro256& rng) {
    const double z = 1.0 - 2.0 * rng.uniform();
    const double phi = 2.0 * 3.14159265358979323846 * rng.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

double witness_of(const std::vector<QubitState>& states, const std::vector<Projector>& measurements,
                  int n) {
    double t = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
        Vec3 v{};
        for (int y = 1; y <= n; ++y)
            v += input_sign(static_cast<int>(a), y, n) * measurements[y - 1].bloch();
        t += 0.5 * dot(states[a].bloch(), v);
    }
    return t;
}

} // namespace

std::vector<QubitState> optimal_states_for_measurements(const std::vector<Projector>& measurements,
                                                        int n,
                                                        const std::vector<QubitState>& previous) {
    const std::size_t inputs = std::size_t{1} << n;
    if (measurements.size() != static_cast<std::size_t>(n) || previous.size() != inputs)
        throw std::domain_error("optimal_states_for_measurements: size mismatch");
    std::vector<QubitState> states;
    states.reserve(inputs);
    for (std::size_t a = 0; a < inputs; ++a) {
        Vec3 v{};
        for (int y = 1; y <= n; ++y)
            v += input_sign(static_cast<int>(a), y, n) * measurements[y - 1].bloch();
        states.push_back(norm(v) < kDegenerate ? previous[a] : state_from_bloch(v));
    }
    return states;
}

std::vector<Projector> optimal_measurements_for_states(const std::vector<QubitState>& states,
                                                       int n,
                                                       const std::vector<Projector>& previous) {
    const std::size_t inputs = std::size_t{1} << n;
    if (states.size() != inputs || previous.size() != static_cast<std::size_t>(n))
        throw std::domain_error("optimal_measurements_for_states: size mismatch");
    std::vector<Projector> measurements;
    measurements.reserve(previous.size());
    for (int y = 1; y <= n; ++y) {
        Vec3 w{};
        for (std::size_t a = 0; a < inputs; ++a)
            w += input_sign(static_cast<int>(a), y, n) * states[a].bloch();
        measurements.push_back(norm(w) < kDegenerate ? previous[y - 1] : projector_from_bloch(w));
    }
    return measurements;
}

SeesawResult seesaw_optimize(int n, const SeesawConfig& config) {
    if (n < 1 || n > 10) throw std::domain_error("seesaw_optimize: n must be in [1, 10]");
    if (config.starts < 1) throw std::domain_error("seesaw_optimize: starts must be >= 1");
    if (config.convergence_tol <= 0.0)
        throw std::domain_error("seesaw_optimize: convergence_tol must be > 0");

    const std::size_t inputs = std::size_t{1} << n;
    SeesawResult best;
    best.n = n;
    best.t_quantum = -1e300;

    for (int start = 0; start < config.starts; ++start) {
        Xoshiro256 rng(mix_seed(config.seed, static_cast<std::uint64_t>(start)));
        std::vector<Projector> measurements;
        measurements.reserve(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) measurements.push_back(projector_from_bloch(random_unit(rng)));
        std::vector<QubitState> states(inputs); // |0> placeholders for degenerate fallback

        double t_prev = -1e300;
        int sweeps = 0;
        while (sweeps < config.max_sweeps) {
            const std::vector<QubitState> new_states =
                optimal_states_for_measurements(measurements, n, states);
            const std::vector<Projector> new_measurements =
                optimal_measurements_for_states(new_states, n, measurements);
            double movement = 0.0;
            for (std::size_t a = 0; a < inputs; ++a)
                movement = std::max(movement, norm(new_states[a].bloch() - states[a].bloch()));
            for (int y = 0; y < n; ++y)
                movement =
                    std::max(movement, norm(new_measurements[y].bloch() - measurements[y].bloch()));
            states = new_states;
            measurements = new_measurements;
            ++sweeps;
            const double t = witness_of(states, measurements, n);
            if (t - t_prev < config.convergence_tol && movement < kSettleTol) break;
            t_prev = t;
        }

        Strategy strategy = make_strategy(n, states, measurements);
        const double t = witness_value(probability_table(strategy));
        if (t > best.t_quantum + 1e-12) {
            best.t_quantum = t;
            best.strategy = std::move(strategy);
            best.sweeps_used = sweeps;
            best.start_index = start;
        }
    }
    log_debug("seesaw n=" + std::to_string(n) + " T=" + std::to_string(best.t_quantum) +
              " start=" + std::to_string(best.start_index) +
              " sweeps=" + std::to_string(best.sweeps_used));
    return best;
}

} // namespace qrac
