#include "qrac/bloch.hpp"

#include <numbers>
#include <stdexcept>

namespace qrac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Slack for callers that computed theta = pi (or 0) with rounding error.
constexpr double kAngleSlack = 1e-9;

struct AnglePair {
    double polar;
    double azimuth;
};

AnglePair canonicalize(double polar, double azimuth, const char* what) {
    if (!std::isfinite(polar) || !std::isfinite(azimuth))
        throw std::domain_error(std::string(what) + ": non-finite angle");
    azimuth = std::fmod(azimuth, kTwoPi);
    if (azimuth < 0.0) azimuth += kTwoPi;
    if (azimuth >= kTwoPi) azimuth = 0.0; // fmod can round up to 2pi
    if (polar < 0.0) {
        if (polar < -kAngleSlack)
            throw std::domain_error(std::string(what) + ": polar angle below 0");
        polar = 0.0;
    } else if (polar > kPi) {
        if (polar > kPi + kAngleSlack)
            throw std::domain_error(std::string(what) + ": polar angle above pi");
        polar = kPi;
    }
    if (polar == 0.0 || polar == kPi) azimuth = 0.0; // phase is gauge at the poles
    return {polar, azimuth};
}

Vec3 unit_from_angles(double polar, double azimuth) {
    const double s = std::sin(polar);
    return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

AnglePair angles_from_unit(const Vec3& u) {
    const double r = std::hypot(u.x, u.y);
    if (r < 1e-15) return {u.z >= 0.0 ? 0.0 : kPi, 0.0};
    double az = std::atan2(u.y, u.x);
    if (az < 0.0) az += kTwoPi;
    return {std::atan2(r, u.z), az};
}

Vec3 normalized_or_throw(const Vec3& v, const char* what) {
    const double len = norm(v);
    if (len < 1e-12) throw std::domain_error(std::string(what) + ": zero-length Bloch vector");
    return (1.0 / len) * v;
}

} // namespace

QubitState state_from_angles(double theta, double eta) {
    const AnglePair a = canonicalize(theta, eta, "state_from_angles");
    return {a.polar, a.azimuth, unit_from_angles(a.polar, a.azimuth)};
}

QubitState state_from_bloch(const Vec3& v) {
    const Vec3 u = normalized_or_throw(v, "state_from_bloch");
    const AnglePair a = angles_from_unit(u);
    return {a.polar, a.azimuth, u};
}

Projector projector_from_angles(double psi, double omega) {
    const AnglePair a = canonicalize(psi, omega, "projector_from_angles");
    return {a.polar, a.azimuth, unit_from_angles(a.polar, a.azimuth)};
}

Projector projector_from_bloch(const Vec3& v) {
    const Vec3 u = normalized_or_throw(v, "projector_from_bloch");
    const AnglePair a = angles_from_unit(u);
    return {a.polar, a.azimuth, u};
}

double born_probability(const QubitState& state, const Projector& outcome, int outcome_bit) {
    if (outcome_bit != 0 && outcome_bit != 1)
        throw std::domain_error("born_probability: outcome bit must be 0 or 1");
    const double sign = outcome_bit == 0 ? 1.0 : -1.0;
    const double p = 0.5 * (1.0 + sign * dot(state.bloch(), outcome.bloch()));
    // Unit-vector rounding can leak a few ulp outside [0, 1].
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

} // namespace qrac
