#pragma once

#include "qrac/strategy.hpp"

namespace qrac {

/// Exact maximum of the witness over deterministic classical-bit strategies,
/// plus a strategy attaining it. t_max is integer-valued.
struct ClassicalBoundResult {
    int n = 0;
    double t_max = 0.0;
    ClassicalStrategy witness_strategy;
};

/// Enumerates all 4^n decoder tuples; for fixed decoders the witness splits
/// into independent per-input terms, so the optimal encoder is chosen
/// greedily per input. Deterministic strategies suffice because the witness
/// is linear in the probability table and randomized strategies are convex
/// mixtures of them.
///
/// Ties resolve to the lexicographically first strategy: decoder tuples
/// ordered with y = 1 as the most significant digit and each decoder encoded
/// as the 2-bit number (D(0), D(1)); encoder bit 0 preferred per input.
///
/// Runtime grows as n * 8^n; instantaneous through n = 5, practical to
/// around n = 8. Throws std::domain_error for n outside [1, kMaxBits].
ClassicalBoundResult classical_max_witness(int n);

} // namespace qrac
