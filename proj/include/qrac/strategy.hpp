#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qrac/bloch.hpp"

namespace qrac {

/// Number of encoded bits is capped so the 2^n-row tables stay tractable.
inline constexpr int kMaxBits = 16;

/// Bit-indexing convention used throughout: a_y is the y-th most significant
/// bit of the input index a, with y in {1, ..., n}. Under this convention the
/// natural integer order of a is the bit-string order 00..0, 00..1, ..., 11..1.
inline int input_bit(int a, int y, int n) { return (a >> (n - y)) & 1; }

/// Sign (-1)^{a_y} as a double.
inline double input_sign(int a, int y, int n) { return input_bit(a, y, n) ? -1.0 : 1.0; }

/// A full device description for the n -> 1 QRAC scenario: one pure state per
/// input a in {0, ..., 2^n - 1} and the b = 0 outcome of each of the n binary
/// measurements.
struct Strategy {
    int n = 0;
    std::vector<QubitState> states;      // indexed by a
    std::vector<Projector> measurements; // indexed by y - 1
};

/// Validates sizes (2^n states, n measurements, 1 <= n <= kMaxBits).
/// Throws std::domain_error on violation.
Strategy make_strategy(int n, std::vector<QubitState> states, std::vector<Projector> measurements);

/// The matrix E[a][y] = P(b = 0 | a, y). P(b = 1 | a, y) is derived as 1 - E
/// rather than stored, so normalization holds by construction.
struct ProbabilityTable {
    int n = 0;
    std::vector<double> p0; // row-major, entry (a, y) at a * n + (y - 1)

    double at(int a, int y) const { return p0[static_cast<std::size_t>(a) * n + (y - 1)]; }
    int rows() const { return 1 << n; }
};

/// A deterministic classical-bit strategy: the sender encodes input a into one
/// bit c, the receiver decodes measurement choice y from c.
struct ClassicalStrategy {
    int n = 0;
    std::vector<std::uint8_t> encoder;              // size 2^n, values in {0, 1}
    std::vector<std::array<std::uint8_t, 2>> decoders; // size n, decoders[y-1][c]
};

/// E[a][y] = born_probability(states[a], measurements[y-1], 0) for all a, y.
ProbabilityTable probability_table(const Strategy& strategy);

/// Deterministic embedding of a classical strategy:
/// E[a][y] = 1 if decoders[y](encoder(a)) == 0, else 0.
ProbabilityTable classical_table(const ClassicalStrategy& cs);

/// The witness T = sum_{a,y} (-1)^{a_y} E[a][y]; range [-n 2^{n-1}, n 2^{n-1}].
double witness_value(const ProbabilityTable& table);

/// Average success probability of the n -> 1 QRAC,
/// S = (1 / (n 2^n)) sum_{a,y} P(b = a_y | a, y) = 1/2 + T / (n 2^n).
double average_success(const ProbabilityTable& table);

/// Largest outcome probability max_{b,a,y} P(b | a, y); always >= 1/2.
double max_outcome_probability(const ProbabilityTable& table);

/// Min-entropy of the measurement outcome, -log2 of the largest outcome
/// probability. Lies in [0, 1] for binary outcomes.
double min_entropy(const ProbabilityTable& table);

/// JSON interchange format used by every CLI subcommand: object with fields
/// "n", "states" (array of [theta, eta] radian pairs in index order),
/// "measurements" (array of [psi, omega] pairs in order y = 1..n), and a
/// "bit_convention" note. Angles are written with 17 significant digits so a
/// round trip recovers each double exactly.
std::string strategy_to_json(const Strategy& strategy);

/// Parses the interchange format. Throws std::domain_error on malformed input.
Strategy strategy_from_json(const std::string& text);

} // namespace qrac
