#include "gsmix/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gsmix {
namespace {

void require_finite_nonnegative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
}

// sqrt(n (1 + n)) - n without cancellation for large n.
double excess_spread(double n) {
    if (n == 0.0) return 0.0;
    return 1.0 / (1.0 + std::sqrt(1.0 + 1.0 / n));
}

using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 matmul(const Mat4& x, const Mat4& y) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += x[i][k] * y[k][j];
            r[i][j] = s;
        }
    return r;
}

Mat4 transposed(const Mat4& x) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = x[j][i];
    return r;
}

// Discriminant S^2 - 4 i4 of the symplectic characteristic equation.
// Floating-point noise near degenerate spectra can push it slightly
// negative; clamp within a window scaled to the magnitude of S^2 and
// treat anything worse as an unphysical matrix.
double clamped_discriminant(double s, double i4, const char* context) {
    const double disc = s * s - 4.0 * i4;
    if (disc >= 0.0) return disc;
    const double window = 1e-10 * std::max(1.0, s * s);
    if (disc > -window) return 0.0;
    throw UnphysicalCovariance(std::string(context) +
                               ": negative symplectic discriminant");
}

} // namespace

SingleModeState::SingleModeState(double squeezed, double thermal)
    : n_s(squeezed), n_t(thermal) {
    require_finite_nonnegative(squeezed, "n_s");
    require_finite_nonnegative(thermal, "n_t");
}

double SingleModeState::delta() const {
    return (1.0 + 2.0 * n_t) * std::sqrt(n_s * (1.0 + n_s));
}

double SingleModeState::squeezing() const { return std::asinh(std::sqrt(n_s)); }

double CovMat2::min_eigenvalue() const {
    const double mean = 0.5 * (xx + yy);
    const double half = 0.5 * (xx - yy);
    return mean - std::sqrt(half * half + xy * xy);
}

double CovMat2::max_eigenvalue() const {
    const double mean = 0.5 * (xx + yy);
    const double half = 0.5 * (xx - yy);
    return mean + std::sqrt(half * half + xy * xy);
}

bool CovMat2::is_physical(double tol) const {
    return xx > 0.0 && yy > 0.0 && det() >= 0.25 - tol;
}

double CovMat4::det() const {
    // det [[A, C], [C^T, B]] = det(A) det(B - C^T A^{-1} C); A is positive
    // definite for every covariance matrix this library produces.
    const double da = a.det();
    // A^{-1} = [[yy, -xy], [-xy, xx]] / det.
    const double i00 = a.yy / da, i01 = -a.xy / da, i11 = a.xx / da;
    // S = B - C^T A^{-1} C (symmetric).
    const double t00 = i00 * c.m00 + i01 * c.m10;
    const double t10 = i01 * c.m00 + i11 * c.m10;
    const double t01 = i00 * c.m01 + i01 * c.m11;
    const double t11 = i01 * c.m01 + i11 * c.m11;
    const double s00 = b.xx - (c.m00 * t00 + c.m10 * t10);
    const double s01 = b.xy - (c.m00 * t01 + c.m10 * t11);
    const double s11 = b.yy - (c.m01 * t01 + c.m11 * t11);
    return da * (s00 * s11 - s01 * s01);
}

BeamSplitter::BeamSplitter(double transmissivity) : tau(transmissivity) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("beam-splitter transmissivity must lie in [0, 1]");
}

CovMat2 single_mode_cm(const SingleModeState& state) {
    const double n1 = state.mean_photons();
    const double d = state.delta();
    CovMat2 cm;
    cm.xx = 0.5 + n1 + d;
    // 1/2 + n1 - Delta, written to survive the near-total cancellation of
    // n1 against Delta at large squeezing.
    cm.yy = 0.5 + state.n_t - (1.0 + 2.0 * state.n_t) * excess_spread(state.n_s);
    cm.xy = 0.0;
    return cm;
}

CovMat2 thermal_cm(double n) {
    require_finite_nonnegative(n, "thermal photon number");
    return CovMat2{0.5 + n, 0.0, 0.5 + n};
}

CovMat4 apply_beam_splitter(const CovMat2& cm1, const CovMat2& cm2, BeamSplitter bs) {
    const double rt = std::sqrt(bs.tau);
    const double rr = std::sqrt(1.0 - bs.tau);

    Mat4 s{{{rt, 0.0, rr, 0.0},
            {0.0, rt, 0.0, rr},
            {-rr, 0.0, rt, 0.0},
            {0.0, -rr, 0.0, rt}}};
    Mat4 sigma0{{{cm1.xx, cm1.xy, 0.0, 0.0},
                 {cm1.xy, cm1.yy, 0.0, 0.0},
                 {0.0, 0.0, cm2.xx, cm2.xy},
                 {0.0, 0.0, cm2.xy, cm2.yy}}};

    const Mat4 sigma = matmul(matmul(s, sigma0), transposed(s));

    CovMat4 out;
    out.a = CovMat2{sigma[0][0], sigma[0][1], sigma[1][1]};
    out.b = CovMat2{sigma[2][2], sigma[2][3], sigma[3][3]};
    out.c = Mat2{sigma[0][2], sigma[0][3], sigma[1][2], sigma[1][3]};
    return out;
}

Invariants symplectic_invariants(const CovMat4& cm) {
    Invariants inv;
    inv.i1 = cm.a.det();
    inv.i2 = cm.b.det();
    inv.i3 = cm.c.det();
    inv.i4 = cm.det();
    return inv;
}

SymplecticPair symplectic_eigenvalues(const Invariants& inv) {
    const double s = inv.i1 + inv.i2 + 2.0 * inv.i3;
    const double root = std::sqrt(clamped_discriminant(s, inv.i4, "symplectic_eigenvalues"));
    SymplecticPair pair;
    pair.plus = std::sqrt(0.5 * (s + root));
    // lambda_-^2 = 2 i4 / (S + root) keeps the product lambda_+ lambda_-
    // pinned to sqrt(i4) even when S >> root cancellation would bite.
    pair.minus = std::sqrt(2.0 * inv.i4 / (s + root));
    // Near-degenerate spectra take a sqrt(eps)-sized spurious split from
    // discriminant noise, so the physicality window has to grow with the
    // square root of the invariant magnitudes.
    const double magnitude = inv.i1 + inv.i2 + 2.0 * std::abs(inv.i3);
    const double tol = 1e-7 * std::max(1.0, std::sqrt(magnitude));
    if (pair.minus < 0.5 - tol)
        throw UnphysicalCovariance("symplectic_eigenvalues: lambda_- < 1/2");
    return pair;
}

double ppt_lambda_minus(const Invariants& inv) {
    const double s = inv.i1 + inv.i2 - 2.0 * inv.i3;
    const double root = std::sqrt(clamped_discriminant(s, inv.i4, "ppt_lambda_minus"));
    return std::sqrt(2.0 * inv.i4 / (s + root));
}

Invariants mixed_invariants(const SingleModeState& state, double n2, double tau) {
    const CovMat4 out =
        apply_beam_splitter(single_mode_cm(state), thermal_cm(n2), BeamSplitter(tau));
    return symplectic_invariants(out);
}

} // namespace gsmix
