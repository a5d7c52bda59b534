#include "qrac/protocol3.hpp"

#include <cmath>
#include <numbers>

namespace qrac {

namespace {
constexpr double kPi = std::numbers::pi;
}

double protocol3_xi() {
    // Kept as the defining expression; a decimal literal would invite drift.
    return std::acos(std::sqrt(0.5 + std::sqrt(3.0) / 6.0));
}

Strategy build_protocol3() {
    const double xi = protocol3_xi();
    std::vector<QubitState> states;
    states.reserve(8);
    for (int a = 0; a < 8; ++a) {
        const int a1 = input_bit(a, 1, 3);
        const int a2 = input_bit(a, 2, 3);
        const int a3 = input_bit(a, 3, 3);
        const double polar = a1 == 0 ? 2.0 * xi : kPi - 2.0 * xi;
        const double magnitude = a2 == 0 ? kPi / 4.0 : 3.0 * kPi / 4.0;
        const double phase = a3 == 0 ? magnitude : -magnitude;
        states.push_back(state_from_angles(polar, phase));
    }
    std::vector<Projector> measurements = {
        projector_from_angles(0.0, 0.0),            // z axis
        projector_from_angles(kPi / 2.0, 0.0),      // x axis
        projector_from_angles(kPi / 2.0, kPi / 2.0) // y axis
    };
    return make_strategy(3, std::move(states), std::move(measurements));
}

Protocol3Report verify_protocol3() {
    Protocol3Report report;
    report.strategy = build_protocol3();
    report.xi = protocol3_xi();
    report.table = probability_table(report.strategy);
    report.t3 = witness_value(report.table);
    report.s3 = average_success(report.table);
    report.h_min = min_entropy(report.table);

    double lo = 1.0;
    double hi = 0.0;
    for (int a = 0; a < report.table.rows(); ++a)
        for (int y = 1; y <= 3; ++y) {
            const double e = report.table.at(a, y);
            const double correct = input_bit(a, y, 3) == 0 ? e : 1.0 - e;
            lo = std::min(lo, correct);
            hi = std::max(hi, correct);
        }
    report.all_correct_equal = hi - lo <= 1e-12;
    return report;
}

} // namespace qrac
