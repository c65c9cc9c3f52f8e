#pragma once

#include "gsmix/core.hpp"

// Nonclassicality and correlation quantifiers for the two-mode output
// state. Every logarithmic quantity is in nats; the paper anchors the
// base through log 2 = 0.6931.

namespace gsmix {

// Which mode the Gaussian measurement acts on. D_{1|2} measures mode 2
// and conditions mode 1; D_{2|1} is the converse, obtained by exchanging
// the roles of the local invariants i1 and i2.
enum class Conditioning { one_given_two, two_given_one };

// Pure single-mode Gaussian measurement seed with covariance
// R(angle) diag(e^{2 squeeze}, e^{-2 squeeze}) / 2 R(angle)^T; det = 1/4.
// squeeze = 0 is heterodyne; squeeze -> infinity approaches homodyne
// detection of the quadrature along `angle`.
struct GaussianMeasurement {
    double squeeze = 0.0;  // >= 0
    double angle = 0.0;    // radians in [0, pi)

    CovMat2 covariance() const;
};

// f(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), the entropy of a
// thermal mode with symplectic eigenvalue x. f(1/2) = 0 by continuity.
// Rejects x below 1/2 - 1e-9.
double entropy_f(double x);

// Nonclassical depth of the input state: the minimum Gaussian smoothing
// that turns its P-function into a probability density. Computed from the
// minimum covariance eigenvalue u as max[(1 - 2u)/2, 0]; always in [0, 1/2)
// for Gaussian states.
double nonclassical_depth(const SingleModeState& state);

// Same quantity via the purity/squeezing form max[(1 - e^{-2r}/mu)/2, 0].
// Kept as a second algebraic route for cross-checking.
double nonclassical_depth_squeezing_form(const SingleModeState& state);

// True iff the state's P-function is a regular probability density,
// i.e. n_s <= n_t^2 / (1 + 2 n_t); equivalent to nonclassical_depth == 0.
bool p_classical(const SingleModeState& state);

// Quantum mutual information f(sqrt i1) + f(sqrt i2) - f(l+) - f(l-).
double mutual_information(const Invariants& inv);

// Minimised conditional covariance determinant E^min over all pure
// Gaussian measurements on the measured mode, in closed form as a
// function of the local symplectic invariants.
double emin_closed_form(const Invariants& inv,
                        Conditioning cond = Conditioning::one_given_two);

struct EminSearchOptions {
    int grid = 64;              // grid points per parameter
    double tol = 1e-10;         // golden-section bracket tolerance
    int refine_rounds = 6;      // coordinate-descent passes
};

// Independent numerical route for E^min: dense grid over the measurement
// parameters followed by coordinate golden-section refinement. The
// measurement squeezing is parametrised by w = e^{-2 squeeze} in [0, 1],
// with w = 0 evaluated through the exact homodyne limit, so the search
// domain is compact and the infimum at infinite squeezing is reachable.
// Throws if an evaluation turns non-finite.
double emin_oracle(const CovMat4& cm,
                   Conditioning cond = Conditioning::one_given_two,
                   const EminSearchOptions& opts = {});

// Gaussian discord f(sqrt E^min) + f(sqrt i_measured) - f(l+) - f(l-),
// clamped to zero within boundary noise.
double gaussian_discord(const Invariants& inv,
                        Conditioning cond = Conditioning::one_given_two);

// Entanglement monotone max[-ln(2 lambda~_-), 0].
double log_negativity(const Invariants& inv);

struct MeasureReport {
    double discord_1g2 = 0.0;        // nats
    double discord_2g1 = 0.0;        // nats
    double mutual_info = 0.0;        // nats
    double classical_corr_1g2 = 0.0; // nats
    double ppt_lambda_minus = 0.0;   // dimensionless
    double log_negativity = 0.0;     // nats
    bool entangled = false;          // ppt_lambda_minus < 1/2
};

MeasureReport evaluate_measures(const Invariants& inv);

// Full report for mixing rho(n_s, n_t) with nu(n2) at transmissivity tau.
MeasureReport measure_mixing(const SingleModeState& state, double n2, double tau);

} // namespace gsmix
