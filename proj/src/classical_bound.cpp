#include "qrac/classical_bound.hpp"

#include <stdexcept>

namespace qrac {

namespace {

// Decoder code d in [0, 4): bit 1 is D(0), bit 0 is D(1).
inline int decode(int d, int c) { return (d >> (1 - c)) & 1; }

} // namespace

ClassicalBoundResult classical_max_witness(int n) {
    if (n < 1 || n > kMaxBits)
        throw std::domain_error("classical_max_witness: n must be in [1, " +
                                std::to_string(kMaxBits) + "]");
    const int inputs = 1 << n;
    const std::uint64_t tuples = std::uint64_t{1} << (2 * n);

    long best = -1;
    std::uint64_t best_tuple = 0;
    std::vector<std::uint8_t> best_encoder;
    std::vector<std::uint8_t> encoder(static_cast<std::size_t>(inputs));

    for (std::uint64_t tuple = 0; tuple < tuples; ++tuple) {
        // tuple digit for y: base-4 with y = 1 most significant.
        long total = 0;
        for (int a = 0; a < inputs; ++a) {
            long g0 = 0;
            long g1 = 0;
            for (int y = 1; y <= n; ++y) {
                const int d = static_cast<int>(tuple >> (2 * (n - y))) & 3;
                const long sign = input_bit(a, y, n) ? -1 : 1;
                if (decode(d, 0) == 0) g0 += sign;
                if (decode(d, 1) == 0) g1 += sign;
            }
            encoder[static_cast<std::size_t>(a)] = g1 > g0 ? 1 : 0;
            total += g1 > g0 ? g1 : g0;
        }
        if (total > best) {
            best = total;
            best_tuple = tuple;
            best_encoder = encoder;
        }
    }

    ClassicalStrategy strategy;
    strategy.n = n;
    strategy.encoder = std::move(best_encoder);
    strategy.decoders.resize(static_cast<std::size_t>(n));
    for (int y = 1; y <= n; ++y) {
        const int d = static_cast<int>(best_tuple >> (2 * (n - y))) & 3;
        strategy.decoders[static_cast<std::size_t>(y - 1)] = {
            static_cast<std::uint8_t>(decode(d, 0)), static_cast<std::uint8_t>(decode(d, 1))};
    }
    return {n, static_cast<double>(best), std::move(strategy)};
}

} // namespace qrac
