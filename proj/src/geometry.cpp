#include "qrac/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qrac {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi rotations.
std::array<double, 3> symmetric_eigenvalues(Mat3 m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(m[p][q]) < 1e-300) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p];
                    const double mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k];
                    const double mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    std::array<double, 3> ev = {m[0][0], m[1][1], m[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace

double smallest_stack_singular_value(std::span<const Vec3> rows) {
    // sigma_min(A)^2 = lambda_min(A^T A); the 3x3 Gram form keeps this exact
    // enough to resolve defects down to ~sqrt(eps).
    Mat3 gram = {};
    for (const Vec3& r : rows) {
        const double v[3] = {r.x, r.y, r.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gram[i][j] += v[i] * v[j];
    }
    const auto ev = symmetric_eigenvalues(gram);
    return std::sqrt(std::max(0.0, ev[0]));
}

double max_pairwise_alignment(std::span<const Vec3> vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j)
            worst = std::max(worst, std::abs(dot(vectors[i], vectors[j])));
    return worst;
}

} // namespace qrac
