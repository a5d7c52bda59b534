#pragma once

#include <cmath>

namespace qrac {

/// Plain 3-vector. States and binary projective measurements on a qubit both
/// reduce to unit vectors on the Bloch sphere, and every probability in this
/// toolkit is a function of their dot products.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double c, const Vec3& v) { return {c * v.x, c * v.y, c * v.z}; }
    friend Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// A pure qubit state |phi> = cos(theta/2)|0> + e^{i eta} sin(theta/2)|1>,
/// stored as the canonical angle pair plus the cached Bloch vector
/// (sin theta cos eta, sin theta sin eta, cos theta).
///
/// Canonical form: theta in [0, pi], eta in [0, 2pi); at the poles
/// (theta = 0 or pi) the phase is gauge and eta is forced to 0.
class QubitState {
public:
    QubitState() : theta_(0.0), eta_(0.0), bloch_{0.0, 0.0, 1.0} {}

    double theta() const { return theta_; }
    double eta() const { return eta_; }
    const Vec3& bloch() const { return bloch_; }

private:
    QubitState(double theta, double eta, const Vec3& b) : theta_(theta), eta_(eta), bloch_(b) {}
    friend QubitState state_from_angles(double theta, double eta);
    friend QubitState state_from_bloch(const Vec3& v);

    double theta_;
    double eta_;
    Vec3 bloch_;
};

/// The b = 0 outcome of a binary projective measurement, M^0 = (I + m.sigma)/2
/// with m = (sin psi cos omega, sin psi sin omega, cos psi). The complementary
/// outcome M^1 = I - M^0 carries the antipodal Bloch vector.
class Projector {
public:
    Projector() : psi_(0.0), omega_(0.0), bloch_{0.0, 0.0, 1.0} {}

    double psi() const { return psi_; }
    double omega() const { return omega_; }
    const Vec3& bloch() const { return bloch_; }

private:
    Projector(double psi, double omega, const Vec3& b) : psi_(psi), omega_(omega), bloch_(b) {}
    friend Projector projector_from_angles(double psi, double omega);
    friend Projector projector_from_bloch(const Vec3& v);

    double psi_;
    double omega_;
    Vec3 bloch_;
};

/// Builds the state for a polar/azimuth angle pair. eta is reduced modulo
/// 2pi; theta must lie in [0, pi] (a sub-nanoradian overshoot is clamped).
/// Throws std::domain_error otherwise.
QubitState state_from_angles(double theta, double eta);

/// Builds the state pointing along v (normalized first).
/// Throws std::domain_error on a near-zero vector.
QubitState state_from_bloch(const Vec3& v);

/// Same contract as state_from_angles, for measurement outcomes.
Projector projector_from_angles(double psi, double omega);
Projector projector_from_bloch(const Vec3& v);

/// Born rule for a pure state and a projective outcome:
///   P(b) = tr(rho M^b) = (1 + (-1)^b s.m) / 2.
/// outcome_bit must be 0 or 1.
double born_probability(const QubitState& state, const Projector& outcome, int outcome_bit);

} // namespace qrac
