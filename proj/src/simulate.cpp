#include "qrac/simulate.hpp"

#include <cmath>

#include "json.hpp"
#include "qrac/classical_bound.hpp"
#include "qrac/rng.hpp"

namespace qrac {

namespace {

// Chunk size is part of the transcript definition, not a tuning knob:
// chunk k of a run is generated from its own derived seed, so transcripts
// are reproducible whether chunks run serially or not.
constexpr std::uint64_t kChunkRounds = std::uint64_t{1} << 16;

} // namespace

Transcript run_protocol(const Strategy& strategy, std::uint64_t rounds, std::uint64_t seed) {
    if (rounds == 0) throw std::domain_error("run_protocol: rounds must be >= 1");
    const ProbabilityTable table = probability_table(strategy);
    const std::uint64_t inputs = std::uint64_t{1} << strategy.n;

    Transcript transcript;
    transcript.n = strategy.n;
    transcript.rounds = rounds;
    transcript.seed = seed;
    transcript.counts.assign(static_cast<std::size_t>(inputs) * strategy.n * 2, 0);

    const std::uint64_t chunks = (rounds + kChunkRounds - 1) / kChunkRounds;
    for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
        Xoshiro256 rng(mix_seed(seed, chunk));
        const std::uint64_t begin = chunk * kChunkRounds;
        const std::uint64_t end = std::min(rounds, begin + kChunkRounds);
        for (std::uint64_t r = begin; r < end; ++r) {
            const auto a = static_cast<int>(rng.below(inputs));
            const auto y = static_cast<int>(rng.below(static_cast<std::uint64_t>(strategy.n))) + 1;
            const double e = table.at(a, y);
            const int b = rng.uniform() < e ? 0 : 1;
            ++transcript.counts[(static_cast<std::size_t>(a) * strategy.n + (y - 1)) * 2 + b];
        }
    }
    return transcript;
}

WitnessEstimate estimate_witness(const Transcript& transcript) {
    if (transcript.n < 1 || transcript.n > kMaxBits)
        throw std::domain_error("estimate_witness: invalid transcript");
    WitnessEstimate est;
    double variance = 0.0;
    for (int a = 0; a < (1 << transcript.n); ++a)
        for (int y = 1; y <= transcript.n; ++y) {
            const double n0 = static_cast<double>(transcript.at(a, y, 0));
            const double n1 = static_cast<double>(transcript.at(a, y, 1));
            const double total = n0 + n1;
            if (total < 1.0) throw InsufficientStatisticsError(a, y);
            const double e = n0 / total;
            est.t_hat += input_sign(a, y, transcript.n) * e;
            variance += e * (1.0 - e) / total; // zero for spread-free cells
        }
    est.t_std_err = std::sqrt(variance);
    return est;
}

CertifiedRate certify_rate(double t_hat, double t_std_err, int n, double confidence,
                           const CertifierConfig& config) {
    if (!(confidence >= 0.5) || !(confidence < 1.0))
        throw std::domain_error("certify_rate: confidence must lie in [0.5, 1)");
    if (t_std_err < 0.0) throw std::domain_error("certify_rate: negative standard error");

    CertifiedRate rate;
    rate.t_hat = t_hat;
    rate.t_std_err = t_std_err;
    rate.confidence = confidence;
    rate.t_lower = t_hat - normal_quantile(confidence) * t_std_err;

    const double algebraic = static_cast<double>(n) * static_cast<double>(1 << (n - 1));
    if (rate.t_lower > algebraic) {
        rate.t_lower_feasible = false;
        return rate;
    }
    // At or below the classical maximum a deterministic entry is always
    // compatible with the witness, so the certified rate is exactly zero;
    // no optimizer run needed.
    if (rate.t_lower <= classical_max_witness(n).t_max) return rate;

    const EntropyPoint point = guessing_probability(n, rate.t_lower, config);
    rate.t_lower_feasible = point.feasible;
    if (point.feasible && point.h_min) rate.h_min_rate = *point.h_min;
    return rate;
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0, 1)");
    // Wichura's algorithm AS241, rational approximations accurate to ~1e-16.
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -value : value;
}

std::string transcript_to_json(const Transcript& transcript) {
    nlohmann::ordered_json doc;
    doc["n"] = transcript.n;
    doc["rounds"] = transcript.rounds;
    doc["seed"] = transcript.seed;
    doc["counts"] = transcript.counts;
    doc["bit_convention"] = "a_y is the y-th most significant bit of a, y = 1..n; "
                            "counts are flat in (a-major, y, b) order";
    return doc.dump(2) + "\n";
}

Transcript transcript_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::domain_error(std::string("transcript JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("rounds") ||
        !doc.contains("seed") || !doc.contains("counts"))
        throw std::domain_error("transcript JSON must have fields n, rounds, seed, counts");
    Transcript transcript;
    transcript.n = doc["n"].get<int>();
    if (transcript.n < 1 || transcript.n > kMaxBits)
        throw std::domain_error("transcript JSON: n out of range");
    transcript.rounds = doc["rounds"].get<std::uint64_t>();
    transcript.seed = doc["seed"].get<std::uint64_t>();
    transcript.counts = doc["counts"].get<std::vector<std::uint64_t>>();
    const std::size_t expected = (std::size_t{1} << transcript.n) * transcript.n * 2;
    if (transcript.counts.size() != expected)
        throw std::domain_error("transcript JSON: counts must have " + std::to_string(expected) +
                                " entries");
    std::uint64_t total = 0;
    for (std::uint64_t c : transcript.counts) total += c;
    if (total != transcript.rounds)
        throw std::domain_error("transcript JSON: counts do not sum to rounds");
    return transcript;
}

} // namespace qrac
