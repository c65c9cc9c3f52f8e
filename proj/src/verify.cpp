#include "gsmix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "gsmix/measures.hpp"
#include "gsmix/rng.hpp"
#include "gsmix/sweeps.hpp"
#include "gsmix/thresholds.hpp"

namespace gsmix {
namespace {

struct Check {
    long default_samples;
    double tolerance;
    const char* note;
    std::function<double(long, SplitMix64&, CheckResult&)> worst_residual;
};

double tau_interior(SplitMix64& rng) { return rng.uniform(1e-4, 1.0 - 1e-4); }

// Entrywise comparison of the beam-splitter congruence against the
// product closed form a+- , b+-, c+-.
double congruence_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 10.0), rng.log_uniform(1e-3, 10.0));
        const double n2 = rng.log_uniform(1e-3, 10.0);
        const double tau = tau_interior(rng);
        const CovMat4 out =
            apply_beam_splitter(single_mode_cm(st), thermal_cm(n2), BeamSplitter(tau));
        const double n1 = st.mean_photons(), d = st.delta();
        const double ap = (0.5 + n2) * (1 - tau) + (0.5 + n1 + d) * tau;
        const double am = (0.5 + n2) * (1 - tau) + (0.5 + n1 - d) * tau;
        const double bp = (0.5 + n2) * tau + (0.5 + n1 + d) * (1 - tau);
        const double bm = (0.5 + n2) * tau + (0.5 + n1 - d) * (1 - tau);
        const double cp = ((0.5 + n2) - (0.5 + n1 + d)) * std::sqrt(tau * (1 - tau));
        const double cm = ((0.5 + n2) - (0.5 + n1 - d)) * std::sqrt(tau * (1 - tau));
        for (double diff :
             {out.a.xx - ap, out.a.yy - am, out.b.xx - bp, out.b.yy - bm,
              out.c.m00 - cp, out.c.m11 - cm, out.a.xy, out.b.xy, out.c.m01, out.c.m10})
            worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

double spectrum_preservation_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2));
        const double n2 = rng.log_uniform(1e-3, 1e2);
        const double tau = tau_interior(rng);
        const CovMat2 s1 = single_mode_cm(st), s2 = thermal_cm(n2);
        const SymplecticPair out =
            symplectic_eigenvalues(symplectic_invariants(apply_beam_splitter(
                s1, s2, BeamSplitter(tau))));
        const double in_hi = std::max(std::sqrt(s1.det()), std::sqrt(s2.det()));
        const double in_lo = std::min(std::sqrt(s1.det()), std::sqrt(s2.det()));
        worst = std::max(worst, std::abs(out.plus - in_hi));
        worst = std::max(worst, std::abs(out.minus - in_lo));
    }
    return worst;
}

double energy_conservation_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 10.0), rng.log_uniform(1e-3, 10.0));
        const CovMat2 s1 = single_mode_cm(st), s2 = thermal_cm(rng.log_uniform(1e-3, 10.0));
        const CovMat4 out = apply_beam_splitter(s1, s2, BeamSplitter(rng.uniform01()));
        worst = std::max(worst, std::abs(out.trace() - s1.trace() - s2.trace()));
    }
    return worst;
}

double tau_swap_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2));
        const double n2 = rng.log_uniform(1e-3, 1e2);
        const double tau = tau_interior(rng);
        const Invariants a = mixed_invariants(st, n2, tau);
        const Invariants b = mixed_invariants(st, n2, 1.0 - tau);
        const auto rel = [](double x, double y) {
            return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
        };
        worst = std::max({worst, rel(a.i1, b.i2), rel(a.i2, b.i1), rel(a.i3, b.i3),
                          rel(a.i4, b.i4)});
    }
    return worst;
}

double purity_identity_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2));
        const double mu = 0.5 / std::sqrt(single_mode_cm(st).det());
        worst = std::max(worst, std::abs(mu - st.purity()));
    }
    return worst;
}

double depth_forms_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-4, 1e2), rng.log_uniform(1e-4, 1e2));
        worst = std::max(worst, std::abs(nonclassical_depth(st) -
                                         nonclassical_depth_squeezing_form(st)));
    }
    return worst;
}

double emin_oracle_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2));
        const double n2 = rng.log_uniform(1e-3, 1e2);
        const double tau = tau_interior(rng);
        const CovMat4 out =
            apply_beam_splitter(single_mode_cm(st), thermal_cm(n2), BeamSplitter(tau));
        const Invariants inv = symplectic_invariants(out);
        const Conditioning cond =
            (i % 2 == 0) ? Conditioning::one_given_two : Conditioning::two_given_one;
        worst = std::max(worst,
                         std::abs(emin_closed_form(inv, cond) - emin_oracle(out, cond)));
    }
    return worst;
}

double discord_bounds_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2));
        const Invariants inv = mixed_invariants(st, rng.log_uniform(1e-3, 1e2),
                                                tau_interior(rng));
        const double im = mutual_information(inv);
        for (Conditioning c :
             {Conditioning::one_given_two, Conditioning::two_given_one}) {
            const double d = gaussian_discord(inv, c);
            worst = std::max(worst, -d);       // nonnegativity
            worst = std::max(worst, d - im);   // bounded by mutual information
        }
    }
    return worst;
}

double separable_discord_worst(long n, SplitMix64& rng, CheckResult& res) {
    double worst = 0.0;
    long separable = 0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 1e2), rng.log_uniform(1e-3, 1e2));
        const Invariants inv = mixed_invariants(st, rng.log_uniform(1e-3, 1e2),
                                                tau_interior(rng));
        if (ppt_lambda_minus(inv) >= 0.5) {
            ++separable;
            worst = std::max(worst, gaussian_discord(inv) - 1.0);
        }
    }
    res.note = std::string(res.note) + " (" + std::to_string(separable) + " separable)";
    return worst;
}

double entanglement_equivalence_worst(long n, SplitMix64& rng, CheckResult& res) {
    long mismatches = 0;
    for (long i = 0; i < n; ++i) {
        const double ns = rng.log_uniform(1e-3, 1e2);
        const double nt = rng.log_uniform(1e-3, 1e2);
        const double lam =
            ppt_lambda_minus(mixed_invariants(SingleModeState(ns, nt), 0.0,
                                              tau_interior(rng)));
        if (std::abs(lam - 0.5) < 1e-12) continue;  // boundary-inconclusive
        const bool entangled = lam < 0.5;
        const bool nonclassical = ns > p_threshold_ns(nt);
        if (entangled != nonclassical) ++mismatches;
    }
    res.note = std::string(res.note) + " (" + std::to_string(mismatches) + " mismatches)";
    return static_cast<double>(mismatches);
}

double threshold_lambda_worst(long n, SplitMix64& rng, CheckResult& res) {
    double worst = 0.0;
    long bad_flips = 0;
    for (long i = 0; i < n; ++i) {
        const double nt = rng.log_uniform(1e-3, 1e2);
        const double n2 = rng.log_uniform(1e-3, 1e2);
        const double tau = tau_interior(rng);
        const double ns = sep_threshold_ns(nt, n2, tau);
        const auto lam = [&](double x) {
            return ppt_lambda_minus(mixed_invariants(SingleModeState(x, nt), n2, tau));
        };
        worst = std::max(worst, std::abs(lam(ns) - 0.5));
        if (!(lam(0.99 * ns) > 0.5)) ++bad_flips;
        if (!(lam(1.01 * ns) < 0.5)) ++bad_flips;
    }
    if (bad_flips) {
        res.note = std::string(res.note) + " (" + std::to_string(bad_flips) +
                   " verdict flips missing)";
        return 1.0;
    }
    return worst;
}

double tau_independence_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const double nt = rng.log_uniform(1e-3, 1e2);
        const double base = sep_threshold_ns(nt, 0.0, 0.5);
        for (int k = 1; k <= 9; ++k)
            worst = std::max(worst, std::abs(sep_threshold_ns(nt, 0.0, 0.1 * k) - base));
    }
    return worst;
}

// Random P-nonclassical state: n_t drawn strictly below the threshold value.
SingleModeState random_nonclassical(SplitMix64& rng) {
    const double ns = rng.log_uniform(1e-2, 10.0);
    const double nt = rng.uniform01() * 0.95 * p_threshold_nt(ns);
    return SingleModeState(ns, nt);
}

double depth_identity_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st = random_nonclassical(rng);
        const EffectiveNC e = effective_nc(st);
        worst = std::max(worst, std::abs(e.value -
                                         depth_to_effective_nc(nonclassical_depth(st))));
        worst = std::max(worst, std::abs(e.value - effective_nc_closed_form(st)));
    }
    return worst;
}

double threshold_monotone_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const double nt = rng.log_uniform(1e-3, 1e2);
        const double tau = tau_interior(rng);
        double prev = sep_threshold_ns(nt, 0.0, tau);
        for (int k = 1; k <= 40; ++k) {
            const double cur = sep_threshold_ns(nt, k * 0.25, tau);
            worst = std::max(worst, prev - cur);
            prev = cur;
        }
    }
    return worst;
}

double p_inverse_worst(long n, SplitMix64& rng, CheckResult&) {
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const double nt = rng.uniform(0.0, 100.0);
        worst = std::max(worst, std::abs(p_threshold_nt(p_threshold_ns(nt)) - nt));
    }
    return worst;
}

double lambda_monotone_worst(long n, SplitMix64& rng, CheckResult&) {
    // Bisection precondition for effective_nc_at_tau: lambda~_- does not
    // decrease with the reference temperature.
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
        const SingleModeState st(rng.log_uniform(1e-3, 10.0), rng.log_uniform(1e-3, 10.0));
        const double tau = tau_interior(rng);
        double prev = ppt_lambda_minus(mixed_invariants(st, 0.0, tau));
        for (int k = 1; k <= 60; ++k) {
            const double cur =
                ppt_lambda_minus(mixed_invariants(st, k * k * 0.05, tau));
            worst = std::max(worst, prev - cur);
            prev = cur;
        }
    }
    return worst;
}

double sweep_determinism_worst(long, SplitMix64&, CheckResult&) {
    SweepSpec spec = SweepSpec::defaults(SweepKind::scatter);
    spec.samples = 500;
    spec.seed = 905;
    const std::string first = to_csv(run_sweep(spec));
    const std::string second = to_csv(run_sweep(spec));
    SweepSpec scan = SweepSpec::defaults(SweepKind::tau_scan);
    scan.tau_axis.count = 41;
    const std::string third = to_csv(run_sweep(scan));
    const std::string fourth = to_csv(run_sweep(scan));
    return (first == second && third == fourth) ? 0.0 : 1.0;
}

double row_count_worst(long, SplitMix64&, CheckResult&) {
    SweepSpec surf = SweepSpec::defaults(SweepKind::surface);
    surf.ns.count = 9;
    surf.nt.count = 7;
    const std::size_t expected = 9u * 7u + 7u + 9u + 7u + 7u;  // grid + 4 curves
    const std::size_t got = run_sweep(surf).rows.size();
    SweepSpec scat = SweepSpec::defaults(SweepKind::scatter);
    scat.samples = 123;
    scat.seed = 7;
    const std::size_t got_scatter = run_sweep(scat).rows.size();
    return (got == expected && got_scatter == 123u) ? 0.0 : 1.0;
}

const std::vector<std::pair<std::string, Check>>& registry() {
    static const std::vector<std::pair<std::string, Check>> checks = {
        {"core-congruence",
         {1000, 1e-12, "n log-uniform [1e-3,10], tau uniform", congruence_worst}},
        {"core-spectrum-preservation",
         {1000, 1e-10, "n log-uniform [1e-3,1e2], tau uniform", spectrum_preservation_worst}},
        {"core-energy-conservation",
         {1000, 1e-12, "n log-uniform [1e-3,10], tau uniform", energy_conservation_worst}},
        {"core-tau-swap",
         {1000, 1e-11, "relative; n log-uniform [1e-3,1e2]", tau_swap_worst}},
        {"core-purity-identity",
         {1000, 1e-12, "n log-uniform [1e-3,1e2]", purity_identity_worst}},
        {"depth-forms",
         {10000, 1e-12, "covariance vs squeezing form", depth_forms_worst}},
        {"emin-oracle",
         {10000, 1e-6, "n log-uniform [1e-3,1e2], tau uniform, both directions",
          emin_oracle_worst}},
        {"discord-bounds",
         {10000, 1e-9, "0 <= D <= mutual information", discord_bounds_worst}},
        {"separable-discord-bound",
         {10000, 1e-9, "D - 1 over separable outputs", separable_discord_worst}},
        {"entanglement-p-equivalence",
         {10000, 0.0, "vacuum reference; verdict vs n_s^P", entanglement_equivalence_worst}},
        {"threshold-lambda",
         {1000, 1e-9, "lambda~_- at n_s^sep; +-1% flips verdict", threshold_lambda_worst}},
        {"threshold-tau-independence",
         {200, 1e-12, "n2 = 0, tau in {0.1..0.9}", tau_independence_worst}},
        {"depth-identity",
         {1000, 1e-8, "max-over-tau value vs tau_m/(1-2 tau_m) and closed form",
          depth_identity_worst}},
        {"threshold-monotone-n2",
         {200, 1e-12, "n_s^sep nondecreasing in n2", threshold_monotone_worst}},
        {"p-threshold-inverse",
         {1000, 1e-10, "n_t uniform [0,100]", p_inverse_worst}},
        {"lambda-monotone-n2",
         {200, 1e-12, "bisection precondition", lambda_monotone_worst}},
        {"sweep-determinism", {1, 0.0, "byte-identical reruns", sweep_determinism_worst}},
        {"sweep-row-count", {1, 0.0, "grid points == rows", row_count_worst}},
    };
    return checks;
}

} // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& [name, check] : registry()) names.push_back(name);
    return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    long samples_override, std::uint64_t seed) {
    std::vector<std::string> wanted = names;
    for (const auto& w : wanted) {
        bool known = false;
        for (const auto& [name, check] : registry()) known |= (name == w);
        if (!known) throw std::invalid_argument("unknown check '" + w + "'");
    }
    std::vector<CheckResult> results;
    for (const auto& [name, check] : registry()) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), name) == wanted.end())
            continue;
        CheckResult res;
        res.name = name;
        res.samples = samples_override > 0 && check.default_samples > 1
                          ? samples_override
                          : check.default_samples;
        res.tolerance = check.tolerance;
        res.note = check.note;
        SplitMix64 rng(seed);
        res.worst = check.worst_residual(res.samples, rng, res);
        res.pass = res.worst <= res.tolerance;
        results.push_back(std::move(res));
    }
    return results;
}

} // namespace gsmix
