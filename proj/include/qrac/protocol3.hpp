#pragma once

#include "qrac/strategy.hpp"

namespace qrac {

/// The mixing angle of the explicit 3 -> 1 code, xi = arccos sqrt(1/2 + sqrt(3)/6).
double protocol3_xi();

/// Verification report for the explicit optimal 3 -> 1 QRAC. All figures are
/// recomputed from the built strategy through the probability table, so the
/// report and the generic strategy operations cannot disagree.
struct Protocol3Report {
    Strategy strategy;
    double xi = 0.0;
    double t3 = 0.0;
    double s3 = 0.0;
    double h_min = 0.0;
    ProbabilityTable table;
    bool all_correct_equal = false; // all 24 correct-guess probabilities mutually equal (1e-12)
};

/// The explicit 3 -> 1 code: eight states with polar angle 2*xi (first bit 0)
/// or pi - 2*xi (first bit 1) and phases +-pi/4, +-3pi/4; measurement axes
/// z, x, y. The eight state vectors sit on the cube vertices
/// (+-1, +-1, +-1)/sqrt(3) whose face axes are the measurement directions.
Strategy build_protocol3();

Protocol3Report verify_protocol3();

} // namespace qrac
