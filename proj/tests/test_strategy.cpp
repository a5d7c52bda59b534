#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <set>

#include "testutil.hpp"
#include "qrac/protocol3.hpp"
#include "qrac/rng.hpp"
#include "qrac/strategy.hpp"

using namespace qrac;

namespace {

constexpr double kPi = std::numbers::pi;

Strategy all_zero_strategy(int n) {
    std::vector<QubitState> states(std::size_t{1} << n, state_from_angles(0.0, 0.0));
    std::vector<Projector> measurements(static_cast<std::size_t>(n), projector_from_angles(0.0, 0.0));
    return make_strategy(n, std::move(states), std::move(measurements));
}

// The optimal 2->1 code: states on the diagonals of the xy-plane, x and y
// measurement axes.
Strategy optimal_pair_code() {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<QubitState> states = {
        state_from_bloch({r, r, 0.0}),
        state_from_bloch({r, -r, 0.0}),
        state_from_bloch({-r, r, 0.0}),
        state_from_bloch({-r, -r, 0.0}),
    };
    std::vector<Projector> measurements = {projector_from_angles(kPi / 2.0, 0.0),
                                           projector_from_angles(kPi / 2.0, kPi / 2.0)};
    return make_strategy(2, std::move(states), std::move(measurements));
}

} // namespace

TEST_CASE("make_strategy validates shapes") {
    CHECK_THROWS_AS(make_strategy(0, {}, {}), std::domain_error);
    CHECK_THROWS_AS(make_strategy(17, {}, {}), std::domain_error);
    std::vector<QubitState> three(3);
    std::vector<Projector> one(1);
    CHECK_THROWS_AS(make_strategy(1, three, one), std::domain_error);
}

TEST_CASE("probability_table basics") {
    const ProbabilityTable all_ones = probability_table(all_zero_strategy(2));
    for (double e : all_ones.p0) CHECK(e == doctest::Approx(1.0).epsilon(1e-15));

    // n=1 with |0>, |1> against the z measurement
    Strategy s = make_strategy(1, {state_from_angles(0.0, 0.0), state_from_angles(kPi, 0.0)},
                               {projector_from_angles(0.0, 0.0)});
    const ProbabilityTable t = probability_table(s);
    CHECK(t.at(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.at(1, 1) == doctest::Approx(0.0).epsilon(1e-15));

    // every entry of the explicit 3->1 code is 1/2 +- sqrt(3)/6
    const ProbabilityTable p3 = probability_table(build_protocol3());
    const double hi = 0.5 + std::sqrt(3.0) / 6.0;
    const double lo = 0.5 - std::sqrt(3.0) / 6.0;
    for (double e : p3.p0) CHECK(std::min(std::abs(e - hi), std::abs(e - lo)) < 1e-12);
}

TEST_CASE("witness_value reference points") {
    // identical states make every sign pair cancel
    Xoshiro256 rng(5);
    std::vector<QubitState> same(8, state_from_bloch(testing::random_unit(rng)));
    std::vector<Projector> meas;
    for (int y = 0; y < 3; ++y) meas.push_back(projector_from_bloch(testing::random_unit(rng)));
    CHECK(std::abs(witness_value(probability_table(make_strategy(3, same, meas)))) < 1e-12);

    CHECK(witness_value(probability_table(build_protocol3())) ==
          doctest::Approx(6.928203).epsilon(1e-6));
    CHECK(witness_value(probability_table(optimal_pair_code())) ==
          doctest::Approx(2.828427).epsilon(1e-6));
}

TEST_CASE("average_success reference points") {
    ProbabilityTable coin;
    coin.n = 2;
    coin.p0.assign(8, 0.5);
    CHECK(average_success(coin) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(average_success(probability_table(build_protocol3())) ==
          doctest::Approx(0.5 + 6.928203230275509 / 24.0).epsilon(1e-12));
    CHECK(average_success(probability_table(optimal_pair_code())) ==
          doctest::Approx(0.8535533905932737).epsilon(1e-12));
}

TEST_CASE("min_entropy reference points") {
    ProbabilityTable det;
    det.n = 1;
    det.p0 = {1.0, 0.25};
    CHECK(min_entropy(det) == 0.0);

    ProbabilityTable coin;
    coin.n = 1;
    coin.p0 = {0.5, 0.5};
    CHECK(min_entropy(coin) == doctest::Approx(1.0).epsilon(1e-15));

    const double h3 = min_entropy(probability_table(build_protocol3()));
    CHECK(h3 == doctest::Approx(0.3424969368840823).epsilon(1e-12));
    CHECK(std::abs(h3 - 0.3425) < 5e-4);
}

TEST_CASE("classical_table embeddings") {
    ClassicalStrategy constant{2, {0, 0, 0, 0}, {{{0, 1}}, {{0, 1}}}};
    for (double e : classical_table(constant).p0) CHECK((e == 1.0));

    ClassicalStrategy inverted{2, {0, 0, 0, 0}, {{{1, 0}}, {{1, 0}}}};
    for (double e : classical_table(inverted).p0) CHECK((e == 0.0));

    // encoder sends the leading bit, both decoders repeat it
    ClassicalStrategy leading{2, {0, 0, 1, 1}, {{{0, 1}}, {{0, 1}}}};
    CHECK(witness_value(classical_table(leading)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("witness/average-success identity over random strategies") {
    for (int n = 1; n <= 5; ++n) {
        Xoshiro256 rng(1000 + static_cast<std::uint64_t>(n));
        for (int i = 0; i < 1000; ++i) {
            const Strategy s = testing::random_strategy(n, rng);
            const ProbabilityTable table = probability_table(s);
            const double t = witness_value(table);
            const double expected = 0.5 + t / (static_cast<double>(n) * (1 << n));
            CHECK(std::abs(average_success(table) - expected) < 1e-12);
            CHECK(std::abs(t) <= n * (1 << (n - 1)) + 1e-12);
        }
    }
}

TEST_CASE("witness is invariant under the relabeling symmetry") {
    // flip bit position y* in every input index and swap that measurement's
    // outcomes (antipodal axis)
    Xoshiro256 rng(0x5E7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const Strategy s = testing::random_strategy(n, rng);
        const int y_star = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        Strategy relabeled = s;
        for (int a = 0; a < (1 << n); ++a) {
            const int flipped = a ^ (1 << (n - y_star));
            relabeled.states[static_cast<std::size_t>(flipped)] = s.states[static_cast<std::size_t>(a)];
        }
        relabeled.measurements[static_cast<std::size_t>(y_star - 1)] =
            projector_from_bloch(-s.measurements[static_cast<std::size_t>(y_star - 1)].bloch());
        const double t0 = witness_value(probability_table(s));
        const double t1 = witness_value(probability_table(relabeled));
        CHECK(std::abs(t0 - t1) < 1e-12);
    }
}

TEST_CASE("min_entropy dominated by average success") {
    Xoshiro256 rng(0xAB);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(5));
        const ProbabilityTable table = probability_table(testing::random_strategy(n, rng));
        const double s = average_success(table);
        if (s >= 0.5) CHECK(min_entropy(table) <= -std::log2(s) + 1e-12);
    }
}

TEST_CASE("witness bounded by the fixed-measurement optimum") {
    Xoshiro256 rng(0xF00);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(5));
        const Strategy s = testing::random_strategy(n, rng);
        double bound = 0.0;
        for (int a = 0; a < (1 << n); ++a) {
            Vec3 v{};
            for (int y = 1; y <= n; ++y)
                v += input_sign(a, y, n) * s.measurements[static_cast<std::size_t>(y - 1)].bloch();
            bound += 0.5 * norm(v);
        }
        CHECK(std::abs(witness_value(probability_table(s))) <= bound + 1e-12);
    }
}

TEST_CASE("strategy JSON round trip") {
    Xoshiro256 rng(0x15);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const Strategy s = testing::random_strategy(n, rng);
        const Strategy back = strategy_from_json(strategy_to_json(s));
        REQUIRE(back.n == s.n);
        for (std::size_t a = 0; a < s.states.size(); ++a) {
            CHECK(back.states[a].theta() == s.states[a].theta());
            CHECK(back.states[a].eta() == s.states[a].eta());
        }
        for (std::size_t y = 0; y < s.measurements.size(); ++y) {
            CHECK(back.measurements[y].psi() == s.measurements[y].psi());
            CHECK(back.measurements[y].omega() == s.measurements[y].omega());
        }
    }
}

TEST_CASE("strategy JSON rejects malformed input") {
    CHECK_THROWS_AS(strategy_from_json("{"), std::domain_error);
    CHECK_THROWS_AS(strategy_from_json("{\"n\": 2}"), std::domain_error);
    CHECK_THROWS_AS(strategy_from_json("{\"n\": 2, \"states\": [[0,0]], \"measurements\": []}"),
                    std::domain_error);
    CHECK_THROWS_AS(
        strategy_from_json(
            "{\"n\": 1, \"states\": [[9.9, 0], [0, 0]], \"measurements\": [[0, 0]]}"),
        std::domain_error);
}
