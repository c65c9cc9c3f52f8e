#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "gsmix/core.hpp"

// Test-only numerical routes that stay independent of the library's
// invariant-based formulas: dense Jacobi diagonalisation and the
// matrix-square-root construction of the symplectic spectrum.

namespace testsupport {

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 to_dense(const gsmix::CovMat4& cm) {
    return Mat4{{{cm.a.xx, cm.a.xy, cm.c.m00, cm.c.m01},
                 {cm.a.xy, cm.a.yy, cm.c.m10, cm.c.m11},
                 {cm.c.m00, cm.c.m10, cm.b.xx, cm.b.xy},
                 {cm.c.m01, cm.c.m11, cm.b.xy, cm.b.yy}}};
}

inline Mat4 matmul(const Mat4& x, const Mat4& y) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += x[i][k] * y[k][j];
            r[i][j] = s;
        }
    return r;
}

inline Mat4 transposed(const Mat4& x) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = x[j][i];
    return r;
}

// Cyclic Jacobi diagonalisation of a symmetric 4x4 matrix. Returns the
// eigenvalues in ascending order; `vectors`, when given, receives the
// corresponding orthonormal columns.
inline std::array<double, 4> jacobi_eigenvalues(Mat4 a, Mat4* vectors = nullptr) {
    Mat4 v{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        double scale = 0.0;
        for (int p = 0; p < 4; ++p) scale = std::max(scale, std::abs(a[p][p]));
        if (off <= 1e-30 * std::max(1.0, scale * scale)) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : 1.0 / (theta - std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[i][i] < a[j][j]; });
    std::array<double, 4> evals{};
    Mat4 sorted_v{};
    for (int i = 0; i < 4; ++i) {
        evals[i] = a[order[i]][order[i]];
        for (int k = 0; k < 4; ++k) sorted_v[k][i] = v[k][order[i]];
    }
    if (vectors) *vectors = sorted_v;
    return evals;
}

inline Mat4 matrix_sqrt(const Mat4& a) {
    Mat4 v{};
    const auto evals = jacobi_eigenvalues(a, &v);
    Mat4 d{};
    for (int i = 0; i < 4; ++i) d[i][i] = std::sqrt(std::max(evals[i], 0.0));
    return matmul(matmul(v, d), transposed(v));
}

// Symplectic spectrum through the square-root construction: the
// eigenvalues of (S^{1/2} Omega S^{1/2})^T (S^{1/2} Omega S^{1/2}) are
// the squared symplectic eigenvalues, each doubled.
inline std::pair<double, double> symplectic_spectrum_direct(Mat4 sigma) {
    const Mat4 omega{{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}};
    const Mat4 half = matrix_sqrt(sigma);
    const Mat4 g = matmul(matmul(half, omega), half);
    const auto evals = jacobi_eigenvalues(matmul(transposed(g), g));
    return {std::sqrt(std::max(evals[3], 0.0)), std::sqrt(std::max(evals[0], 0.0))};
}

inline std::pair<double, double> symplectic_spectrum_direct(const gsmix::CovMat4& cm) {
    return symplectic_spectrum_direct(to_dense(cm));
}

// Partial transposition flips the sign of mode 2's momentum.
inline std::pair<double, double> ppt_spectrum_direct(const gsmix::CovMat4& cm) {
    Mat4 sigma = to_dense(cm);
    for (int k = 0; k < 4; ++k) {
        sigma[3][k] = -sigma[3][k];
        sigma[k][3] = -sigma[k][3];
    }
    return symplectic_spectrum_direct(sigma);
}

// Plain cofactor expansion, independent of the library's block formula.
inline double det4_cofactor(const Mat4& m) {
    const auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
           m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

} // namespace testsupport
