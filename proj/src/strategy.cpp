#include "qrac/strategy.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace qrac {

namespace {

void check_n(int n) {
    if (n < 1 || n > kMaxBits)
        throw std::domain_error("number of encoded bits must be in [1, " +
                                std::to_string(kMaxBits) + "], got " + std::to_string(n));
}

std::string format_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

} // namespace

Strategy make_strategy(int n, std::vector<QubitState> states, std::vector<Projector> measurements) {
    check_n(n);
    const std::size_t expected_states = std::size_t{1} << n;
    if (states.size() != expected_states)
        throw std::domain_error("strategy needs " + std::to_string(expected_states) +
                                " states, got " + std::to_string(states.size()));
    if (measurements.size() != static_cast<std::size_t>(n))
        throw std::domain_error("strategy needs " + std::to_string(n) + " measurements, got " +
                                std::to_string(measurements.size()));
    return {n, std::move(states), std::move(measurements)};
}

ProbabilityTable probability_table(const Strategy& strategy) {
    check_n(strategy.n);
    ProbabilityTable table;
    table.n = strategy.n;
    table.p0.reserve(strategy.states.size() * strategy.measurements.size());
    for (const QubitState& state : strategy.states)
        for (const Projector& m : strategy.measurements)
            table.p0.push_back(born_probability(state, m, 0));
    return table;
}

ProbabilityTable classical_table(const ClassicalStrategy& cs) {
    check_n(cs.n);
    if (cs.encoder.size() != (std::size_t{1} << cs.n) ||
        cs.decoders.size() != static_cast<std::size_t>(cs.n))
        throw std::domain_error("classical strategy has wrong encoder/decoder sizes");
    ProbabilityTable table;
    table.n = cs.n;
    table.p0.reserve(cs.encoder.size() * cs.decoders.size());
    for (std::size_t a = 0; a < cs.encoder.size(); ++a) {
        const std::uint8_t c = cs.encoder[a];
        for (int y = 1; y <= cs.n; ++y)
            table.p0.push_back(cs.decoders[y - 1][c] == 0 ? 1.0 : 0.0);
    }
    return table;
}

double witness_value(const ProbabilityTable& table) {
    double t = 0.0;
    for (int a = 0; a < table.rows(); ++a)
        for (int y = 1; y <= table.n; ++y) t += input_sign(a, y, table.n) * table.at(a, y);
    return t;
}

double average_success(const ProbabilityTable& table) {
    double sum = 0.0;
    for (int a = 0; a < table.rows(); ++a)
        for (int y = 1; y <= table.n; ++y) {
            const double e = table.at(a, y);
            sum += input_bit(a, y, table.n) == 0 ? e : 1.0 - e;
        }
    return sum / (static_cast<double>(table.n) * table.rows());
}

double max_outcome_probability(const ProbabilityTable& table) {
    double best = 0.5;
    for (double e : table.p0) {
        if (e > best) best = e;
        if (1.0 - e > best) best = 1.0 - e;
    }
    return best > 1.0 ? 1.0 : best;
}

double min_entropy(const ProbabilityTable& table) {
    const double p = max_outcome_probability(table);
    return p >= 1.0 ? 0.0 : -std::log2(p);
}

std::string strategy_to_json(const Strategy& strategy) {
    check_n(strategy.n);
    std::string out = "{\n  \"n\": " + std::to_string(strategy.n) + ",\n  \"states\": [\n";
    for (std::size_t a = 0; a < strategy.states.size(); ++a) {
        out += "    [" + format_angle(strategy.states[a].theta()) + ", " +
               format_angle(strategy.states[a].eta()) + "]";
        out += a + 1 < strategy.states.size() ? ",\n" : "\n";
    }
    out += "  ],\n  \"measurements\": [\n";
    for (std::size_t y = 0; y < strategy.measurements.size(); ++y) {
        out += "    [" + format_angle(strategy.measurements[y].psi()) + ", " +
               format_angle(strategy.measurements[y].omega()) + "]";
        out += y + 1 < strategy.measurements.size() ? ",\n" : "\n";
    }
    out += "  ],\n  \"bit_convention\": \"a_y is the y-th most significant bit of a, y = 1..n\"\n}\n";
    return out;
}

Strategy strategy_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::domain_error(std::string("strategy JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("states") ||
        !doc.contains("measurements"))
        throw std::domain_error("strategy JSON must have fields n, states, measurements");
    if (!doc["n"].is_number_integer()) throw std::domain_error("strategy JSON: n must be an integer");
    const int n = doc["n"].get<int>();
    check_n(n);

    auto angle_pair = [](const nlohmann::json& entry, const char* what) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
            throw std::domain_error(std::string("strategy JSON: each ") + what +
                                    " entry must be a [polar, azimuth] pair");
        return std::pair<double, double>{entry[0].get<double>(), entry[1].get<double>()};
    };

    std::vector<QubitState> states;
    states.reserve(doc["states"].size());
    for (const auto& entry : doc["states"]) {
        const auto [theta, eta] = angle_pair(entry, "state");
        states.push_back(state_from_angles(theta, eta));
    }
    std::vector<Projector> measurements;
    measurements.reserve(doc["measurements"].size());
    for (const auto& entry : doc["measurements"]) {
        const auto [psi, omega] = angle_pair(entry, "measurement");
        measurements.push_back(projector_from_angles(psi, omega));
    }
    return make_strategy(n, std::move(states), std::move(measurements));
}

} // namespace qrac
