#pragma once

#include <stdexcept>
#include <string>

// Two-mode Gaussian covariance algebra for a beam splitter fed by a
// single-mode squeezed thermal state and a thermal reference state.
//
// Units: hbar-free quadratures with vacuum covariance diag(1/2, 1/2).
// All physicality statements below (det >= 1/4, symplectic eigenvalue
// >= 1/2, entanglement iff PPT eigenvalue < 1/2) assume this convention;
// much of the literature instead normalises the vacuum to the identity,
// which rescales every covariance by 2.

namespace gsmix {

struct UnphysicalCovariance : std::runtime_error {
    explicit UnphysicalCovariance(const std::string& what)
        : std::runtime_error(what) {}
};

// Squeezed thermal state rho(n_s, n_t): a thermal state with n_t mean
// photons squeezed along a fixed quadrature until it carries n_s mean
// squeezed photons. First moments are zero throughout.
struct SingleModeState {
    double n_s;  // mean squeezed photons, >= 0
    double n_t;  // mean thermal photons, >= 0

    SingleModeState(double squeezed, double thermal);

    // Total mean photon number n1 = n_t + (1 + 2 n_t) n_s.
    double mean_photons() const { return n_t + (1.0 + 2.0 * n_t) * n_s; }

    // Half-spread of the covariance eigenvalues, (1 + 2 n_t) sqrt(n_s (1 + n_s)).
    double delta() const;

    double purity() const { return 1.0 / (1.0 + 2.0 * n_t); }

    // Real squeezing parameter r = asinh(sqrt(n_s)).
    double squeezing() const;
};

// Symmetric 2x2 covariance matrix.
struct CovMat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
    double trace() const { return xx + yy; }
    double min_eigenvalue() const;
    double max_eigenvalue() const;

    // Uncertainty principle in these units: symmetric, positive definite,
    // det >= 1/4.
    bool is_physical(double tol = 1e-9) const;
};

// General (not necessarily symmetric) 2x2 block.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    double det() const { return m00 * m11 - m01 * m10; }
    Mat2 transposed() const { return {m00, m10, m01, m11}; }
};

// Two-mode covariance matrix in block form [[A, C], [C^T, B]].
struct CovMat4 {
    CovMat2 a;  // mode-1 block
    CovMat2 b;  // mode-2 block
    Mat2 c;     // correlation block

    double trace() const { return a.trace() + b.trace(); }
    double det() const;
};

struct BeamSplitter {
    double tau;  // power transmissivity in [0, 1]; 1/2 is balanced

    explicit BeamSplitter(double transmissivity);
};

// Local symplectic invariants of a two-mode covariance matrix:
// i1 = det A, i2 = det B, i3 = det C, i4 = det of the full matrix.
struct Invariants {
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
    double i4 = 0.0;
};

struct SymplecticPair {
    double plus = 0.0;
    double minus = 0.0;
};

// Covariance matrix of rho(n_s, n_t): diag(1/2 + n1 + Delta, 1/2 + n1 - Delta).
CovMat2 single_mode_cm(const SingleModeState& state);

// Covariance matrix of a thermal state, (1/2 + n) * identity. Rejects n < 0.
CovMat2 thermal_cm(double n);

// Congruence transform of cm1 (+) cm2 by the beam-splitter symplectic
// S_tau = [[sqrt(tau) I, sqrt(1-tau) I], [-sqrt(1-tau) I, sqrt(tau) I]].
CovMat4 apply_beam_splitter(const CovMat2& cm1, const CovMat2& cm2, BeamSplitter bs);

Invariants symplectic_invariants(const CovMat4& cm);

// Symplectic eigenvalue pair from the invariants. Throws
// UnphysicalCovariance when the smaller eigenvalue falls measurably
// below 1/2 or the discriminant is measurably negative.
SymplecticPair symplectic_eigenvalues(const Invariants& inv);

// Smaller symplectic eigenvalue of the partially transposed state.
// The state is entangled iff the returned value is < 1/2.
double ppt_lambda_minus(const Invariants& inv);

// Invariants of the output of mixing rho(n_s, n_t) with a thermal
// reference nu(n2) at transmissivity tau.
Invariants mixed_invariants(const SingleModeState& state, double n2, double tau);

} // namespace gsmix
