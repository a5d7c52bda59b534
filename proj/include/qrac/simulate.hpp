#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrac/certifier.hpp"
#include "qrac/strategy.hpp"

namespace qrac {

/// Outcome counts of a simulated run: N[a][y][b] over `rounds` rounds with
/// inputs drawn uniformly. Counts always sum to rounds.
struct Transcript {
    int n = 0;
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts; // flat, (a * n + (y - 1)) * 2 + b

    std::uint64_t at(int a, int y, int b) const {
        return counts[(static_cast<std::size_t>(a) * n + (y - 1)) * 2 + b];
    }
};

/// Thrown when an estimator cell has no samples; carries the empty cell.
class InsufficientStatisticsError : public std::runtime_error {
public:
    InsufficientStatisticsError(int a, int y)
        : std::runtime_error("no samples for input a=" + std::to_string(a) +
                             ", measurement y=" + std::to_string(y)),
          a_(a), y_(y) {}
    int input() const { return a_; }
    int measurement() const { return y_; }

private:
    int a_;
    int y_;
};

/// Runs the honest protocol: each round draws input a uniformly over 2^n
/// values, measurement y uniformly over n, then the outcome b from the Born
/// probability. Rounds are generated in fixed chunks of 2^16 with per-chunk
/// seeds derived from `seed`, and that chunked stream *is* the canonical
/// transcript: identical (strategy, rounds, seed) reproduce it bit-for-bit.
/// Throws std::domain_error when rounds == 0.
Transcript run_protocol(const Strategy& strategy, std::uint64_t rounds, std::uint64_t seed);

struct WitnessEstimate {
    double t_hat = 0.0;
    double t_std_err = 0.0;
};

/// Plug-in witness estimate: Ehat[a][y] = N[a][y][0] / (N[a][y][0] + N[a][y][1]),
/// t_hat = sum (-1)^{a_y} Ehat, and the propagated binomial standard error
/// sqrt(sum Ehat (1 - Ehat) / N_ay) (cells with no spread contribute zero).
/// Throws InsufficientStatisticsError on an empty cell.
WitnessEstimate estimate_witness(const Transcript& transcript);

/// Finite-statistics certificate for a run.
struct CertifiedRate {
    double t_hat = 0.0;
    double t_std_err = 0.0;
    double confidence = 0.0;
    double t_lower = 0.0;    // one-sided normal-approximation lower bound
    double h_min_rate = 0.0; // certified bits per round at t_lower; 0 if none
    bool t_lower_feasible = true;
};

/// t_lower = t_hat - z(confidence) * t_std_err under the normal
/// approximation (an approximation, not a composable security claim), then
/// the min-entropy bound at t_lower. Witness values at or below the
/// classical maximum certify nothing (rate 0, exactly); values beyond the
/// quantum maximum mark the certificate infeasible with rate 0.
/// Requires 0.5 <= confidence < 1, else std::domain_error.
CertifiedRate certify_rate(double t_hat, double t_std_err, int n, double confidence,
                           const CertifierConfig& config = {});

/// One-sided standard-normal quantile (Wichura's AS241, double precision).
double normal_quantile(double p);

/// Transcript interchange JSON: fields "n", "rounds", "seed", "counts" (flat
/// array in (a-major, y, b) order) plus a "bit_convention" note.
std::string transcript_to_json(const Transcript& transcript);
Transcript transcript_from_json(const std::string& text);

} // namespace qrac
