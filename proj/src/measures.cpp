#include "gsmix/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gsmix/optimize.hpp"

namespace gsmix {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Boundary-noise clamp for quantities that are nonnegative by theory.
double clamp_boundary(double v) { return (v > -1e-9 && v < 0.0) ? 0.0 : v; }

// sqrt(n (1 + n)) - n, stable for large n.
double excess_spread(double n) {
    if (n == 0.0) return 0.0;
    return 1.0 / (1.0 + std::sqrt(1.0 + 1.0 / n));
}

struct Vec2 {
    double x, y;
};

Vec2 mat_vec(const Mat2& m, Vec2 v) {
    return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y};
}

// det(A - C (B + M)^{-1} C^T): covariance determinant of the conditioned
// mode after a Gaussian measurement with seed covariance M on the other.
double conditional_det(const CovMat2& a, const CovMat2& b, const Mat2& c,
                       const CovMat2& m) {
    const double t00 = b.xx + m.xx;
    const double t01 = b.xy + m.xy;
    const double t11 = b.yy + m.yy;
    const double dt = t00 * t11 - t01 * t01;
    // (B + M)^{-1}
    const double i00 = t11 / dt, i01 = -t01 / dt, i11 = t00 / dt;
    // C (B + M)^{-1} C^T
    const double u00 = c.m00 * i00 + c.m01 * i01;
    const double u01 = c.m00 * i01 + c.m01 * i11;
    const double u10 = c.m10 * i00 + c.m11 * i01;
    const double u11 = c.m10 * i01 + c.m11 * i11;
    const double r00 = a.xx - (u00 * c.m00 + u01 * c.m01);
    const double r01 = a.xy - (u00 * c.m10 + u01 * c.m11);
    const double r11 = a.yy - (u10 * c.m10 + u11 * c.m11);
    return r00 * r11 - r01 * r01;
}

// Homodyne limit of conditional_det: measuring the quadrature along
// R(angle) e2 with vanishing variance gives
// det(A - (C v)(C v)^T / (v^T B v)).
double conditional_det_homodyne(const CovMat2& a, const CovMat2& b, const Mat2& c,
                                double angle) {
    const Vec2 v{-std::sin(angle), std::cos(angle)};
    const double denom = b.xx * v.x * v.x + 2.0 * b.xy * v.x * v.y + b.yy * v.y * v.y;
    const Vec2 u = mat_vec(c, v);
    const double r00 = a.xx - u.x * u.x / denom;
    const double r01 = a.xy - u.x * u.y / denom;
    const double r11 = a.yy - u.y * u.y / denom;
    return r00 * r11 - r01 * r01;
}

CovMat2 measurement_cm(double w, double angle) {
    // w = e^{-2 squeeze} in (0, 1].
    const double big = 0.5 / w;
    const double small = 0.5 * w;
    const double cth = std::cos(angle);
    const double sth = std::sin(angle);
    CovMat2 m;
    m.xx = big * cth * cth + small * sth * sth;
    m.yy = big * sth * sth + small * cth * cth;
    m.xy = (big - small) * cth * sth;
    return m;
}

} // namespace

CovMat2 GaussianMeasurement::covariance() const {
    return measurement_cm(std::exp(-2.0 * squeeze), angle);
}

double entropy_f(double x) {
    if (x < 0.5 - 1e-9)
        throw std::domain_error("entropy_f: argument below 1/2");
    if (x <= 0.5) return 0.0;
    return (x + 0.5) * std::log(x + 0.5) - (x - 0.5) * std::log(x - 0.5);
}

double nonclassical_depth(const SingleModeState& state) {
    const double u = 0.5 + state.n_t -
                     (1.0 + 2.0 * state.n_t) * excess_spread(state.n_s);
    return std::max(0.5 - u, 0.0);
}

double nonclassical_depth_squeezing_form(const SingleModeState& state) {
    // e^{-2r} = (sqrt(1 + n_s) - sqrt(n_s))^2, written division-free.
    const double em2r = 1.0 / ((std::sqrt(1.0 + state.n_s) + std::sqrt(state.n_s)) *
                               (std::sqrt(1.0 + state.n_s) + std::sqrt(state.n_s)));
    return std::max(0.5 * (1.0 - em2r / state.purity()), 0.0);
}

bool p_classical(const SingleModeState& state) {
    return state.n_s <= state.n_t * state.n_t / (1.0 + 2.0 * state.n_t);
}

// Physical spectra satisfy every bound below exactly; the computed values
// can sit a noise-width under 1/2, which entropy_f would reject.
double entropy_at_least_vacuum(double x) { return entropy_f(std::max(x, 0.5)); }

double mutual_information(const Invariants& inv) {
    const SymplecticPair l = symplectic_eigenvalues(inv);
    const double v = entropy_at_least_vacuum(std::sqrt(inv.i1)) +
                     entropy_at_least_vacuum(std::sqrt(inv.i2)) -
                     entropy_at_least_vacuum(l.plus) - entropy_at_least_vacuum(l.minus);
    return std::max(clamp_boundary(v), 0.0);
}

double emin_closed_form(const Invariants& inv, Conditioning cond) {
    // Standard two-branch expression in vacuum-normalised-to-identity
    // units: rescale the invariants by det -> 4 det (16 for the full
    // matrix), evaluate, and divide the resulting determinant by 4.
    // Both radicands vanish on the branch boundary, where rounding noise
    // gets sqrt-amplified; extended precision keeps that in check.
    using real = long double;
    const real va = 4.0L * (cond == Conditioning::one_given_two ? inv.i1 : inv.i2);
    const real vb = 4.0L * (cond == Conditioning::one_given_two ? inv.i2 : inv.i1);
    const real vc = 4.0L * inv.i3;
    const real vd = 16.0L * inv.i4;

    const real c2 = vc * vc;
    const real dab = vd - va * vb;
    // det C == 0 covers product states (vd == va vb) and the rank-one
    // correlation case, both handled exactly by the second branch. The
    // first branch is 0/0 at vb == 1, which only occurs for product
    // states, so route those through the second branch too.
    const bool first_branch = dab * dab <= (1.0L + vb) * c2 * (va + vd) &&
                              c2 > 0.0L && vb - 1.0L > 1e-12L;
    real emin;
    if (first_branch) {
        const real inner = std::max(c2 + (vb - 1.0L) * (vd - va), 0.0L);
        emin = (2.0L * c2 + (vb - 1.0L) * (vd - va) +
                2.0L * std::abs(vc) * std::sqrt(inner)) /
               ((vb - 1.0L) * (vb - 1.0L));
    } else {
        const real arg =
            std::max(c2 * c2 + dab * dab - 2.0L * c2 * (va * vb + vd), 0.0L);
        emin = (va * vb - c2 + vd - std::sqrt(arg)) / (2.0L * vb);
    }
    return static_cast<double>(emin) / 4.0;
}

double emin_oracle(const CovMat4& cm, Conditioning cond, const EminSearchOptions& opts) {
    const CovMat2& a = (cond == Conditioning::one_given_two) ? cm.a : cm.b;
    const CovMat2& b = (cond == Conditioning::one_given_two) ? cm.b : cm.a;
    const Mat2 c = (cond == Conditioning::one_given_two) ? cm.c : cm.c.transposed();

    const auto eval = [&](double w, double angle) {
        const double th = std::fmod(std::fmod(angle, kPi) + kPi, kPi);
        const double v = (w <= 0.0)
                             ? conditional_det_homodyne(a, b, c, th)
                             : conditional_det(a, b, c, measurement_cm(w, th));
        if (!std::isfinite(v))
            throw std::runtime_error("emin_oracle: non-finite conditional determinant");
        return v;
    };

    // Dense scan over w in [0, 1] (w = 0 is the exact homodyne limit) and
    // angle in [0, pi).
    const int n = std::max(opts.grid, 4);
    const double dw = 1.0 / (n - 1);
    const double dth = kPi / n;
    std::vector<double> values(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            values[static_cast<std::size_t>(i) * n + j] = eval(i * dw, j * dth);

    // Near-tied basins (typically the two principal measurement angles at
    // different squeezings) can differ by less than the grid resolves, so
    // the refinement starts from several well-separated low cells rather
    // than the single best one.
    std::vector<std::size_t> order(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    struct Seed {
        int i, j;
    };
    std::vector<Seed> seeds;
    for (std::size_t k = 0; k < order.size() && seeds.size() < 4; ++k) {
        const int i = static_cast<int>(order[k]) / n;
        const int j = static_cast<int>(order[k]) % n;
        bool separated = true;
        for (const Seed& s : seeds) {
            const int dj = std::abs(s.j - j);
            const int dist = std::max(std::abs(s.i - i), std::min(dj, n - dj));
            separated &= dist >= 6;
        }
        if (separated) seeds.push_back({i, j});
    }

    double best = values[order[0]];
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        double w = seeds[k].i * dw;
        double th = seeds[k].j * dth;
        double span_w = dw;
        double span_th = dth;
        if (k == 0) {
            // Full angle range once: the heterodyne point w = 1 is
            // isotropic, so the angle recorded for a best cell there is an
            // arbitrary tie-break that descent would otherwise inherit.
            const double lo_w = std::max(0.0, w - span_w);
            const double hi_w = std::min(1.0, w + span_w);
            for (int i = 0; i <= 8; ++i) {
                const double wi = lo_w + (hi_w - lo_w) * i / 8.0;
                for (int j = 0; j < 2 * n; ++j) {
                    const double tj = j * kPi / (2 * n);
                    const double v = eval(wi, tj);
                    if (v < best) {
                        best = v;
                        w = wi;
                        th = tj;
                    }
                }
            }
            span_th = kPi / (2 * n);
        }
        double local = eval(w, th);
        for (int round = 0; round < 2 * opts.refine_rounds; ++round) {
            const double lo_w = std::max(0.0, w - span_w);
            const double hi_w = std::min(1.0, w + span_w);
            for (int i = 0; i <= 8; ++i) {
                const double wi = lo_w + (hi_w - lo_w) * i / 8.0;
                for (int j = 0; j <= 8; ++j) {
                    const double tj = th - span_th + 2.0 * span_th * j / 8.0;
                    const double v = eval(wi, tj);
                    if (v < local) {
                        local = v;
                        w = wi;
                        th = tj;
                    }
                }
            }
            span_w *= 0.25;
            span_th *= 0.25;
        }
        // Golden-section polish along each coordinate.
        w = golden_min([&](double x) { return eval(x, th); }, std::max(0.0, w - span_w),
                       std::min(1.0, w + span_w), opts.tol);
        th = golden_min([&](double x) { return eval(w, x); }, th - span_th,
                        th + span_th, opts.tol);
        best = std::min({best, local, eval(w, th)});
    }

    // The boundary curve w = 0 can host its own minimum; refine it in
    // angle separately and keep whichever candidate wins.
    {
        double b0 = values[0];
        double th0 = 0.0;
        for (int j = 0; j < n; ++j) {
            if (values[static_cast<std::size_t>(j)] < b0) {
                b0 = values[static_cast<std::size_t>(j)];
                th0 = j * dth;
            }
        }
        th0 = golden_min([&](double x) { return eval(0.0, x); }, th0 - dth, th0 + dth,
                         opts.tol);
        best = std::min(best, eval(0.0, th0));
    }
    return best;
}

double gaussian_discord(const Invariants& inv, Conditioning cond) {
    const SymplecticPair l = symplectic_eigenvalues(inv);
    const double emin = emin_closed_form(inv, cond);
    const double measured = (cond == Conditioning::one_given_two) ? inv.i2 : inv.i1;
    const double v = entropy_at_least_vacuum(std::sqrt(emin)) +
                     entropy_at_least_vacuum(std::sqrt(measured)) -
                     entropy_at_least_vacuum(l.plus) - entropy_at_least_vacuum(l.minus);
    return std::max(clamp_boundary(v), 0.0);
}

double log_negativity(const Invariants& inv) {
    return std::max(-std::log(2.0 * ppt_lambda_minus(inv)), 0.0);
}

MeasureReport evaluate_measures(const Invariants& inv) {
    MeasureReport r;
    r.discord_1g2 = gaussian_discord(inv, Conditioning::one_given_two);
    r.discord_2g1 = gaussian_discord(inv, Conditioning::two_given_one);
    r.mutual_info = mutual_information(inv);
    r.classical_corr_1g2 = std::max(r.mutual_info - r.discord_1g2, 0.0);
    r.ppt_lambda_minus = ppt_lambda_minus(inv);
    r.log_negativity = std::max(-std::log(2.0 * r.ppt_lambda_minus), 0.0);
    r.entangled = r.ppt_lambda_minus < 0.5;
    return r;
}

MeasureReport measure_mixing(const SingleModeState& state, double n2, double tau) {
    return evaluate_measures(mixed_invariants(state, n2, tau));
}

} // namespace gsmix
