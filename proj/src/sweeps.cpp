#include "gsmix/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gsmix/optimize.hpp"
#include "gsmix/rng.hpp"
#include "gsmix/thresholds.hpp"

namespace gsmix {
namespace {

using nlohmann::json;

constexpr double kLn2 = 0.6931471805599453;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kMeasureColumns = {
    "discord_1g2",  "discord_2g1",   "mutual_info", "classical_corr_1g2",
    "ppt_lambda_minus", "log_negativity", "entangled",   "depth",
    "p_classical",  "at_threshold"};

// Indices (relative to the start of the measure block) of nat-valued columns.
const std::vector<int> kMeasureNatOffsets = {0, 1, 2, 3, 5};

void append_measure_columns(SweepResult& result) {
    const int base = static_cast<int>(result.columns.size());
    for (const auto& c : kMeasureColumns) result.columns.push_back(c);
    for (int off : kMeasureNatOffsets) result.nat_columns.push_back(base + off);
}

void append_measures(std::vector<double>& row, const SingleModeState& state,
                     double n2, double tau) {
    const MeasureReport rep = measure_mixing(state, n2, tau);
    row.push_back(rep.discord_1g2);
    row.push_back(rep.discord_2g1);
    row.push_back(rep.mutual_info);
    row.push_back(rep.classical_corr_1g2);
    row.push_back(rep.ppt_lambda_minus);
    row.push_back(rep.log_negativity);
    row.push_back(rep.entangled ? 1.0 : 0.0);
    row.push_back(nonclassical_depth(state));
    row.push_back(p_classical(state) ? 1.0 : 0.0);
    row.push_back(std::abs(rep.ppt_lambda_minus - 0.5) <= 1e-9 ? 1.0 : 0.0);
}

SingleModeState family_state(const std::string& family, double total_n) {
    if (family == "thermal") return SingleModeState(0.0, total_n);
    if (family == "squeezed") return SingleModeState(total_n, 0.0);
    if (family == "threshold") {
        // State on the P-classicality threshold with mean photon number
        // total_n: n_t + n_t^2 = total_n.
        const double nt = 0.5 * (std::sqrt(1.0 + 4.0 * total_n) - 1.0);
        return SingleModeState(p_threshold_ns(nt), nt);
    }
    throw std::invalid_argument("family: expected thermal, squeezed or threshold");
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json axis_to_json(const Axis& a) {
    return json{{"min", a.min},
                {"max", a.max},
                {"count", a.count},
                {"scale", a.scale == AxisScale::log ? "log" : "linear"}};
}

Axis axis_from_json(const json& j, const std::string& field) {
    Axis a;
    try {
        a.min = j.at("min").get<double>();
        a.max = j.at("max").get<double>();
        a.count = j.at("count").get<int>();
        const std::string s = j.value("scale", "linear");
        if (s == "log")
            a.scale = AxisScale::log;
        else if (s == "linear")
            a.scale = AxisScale::linear;
        else
            throw std::invalid_argument(field + ".scale: expected linear or log");
    } catch (const json::exception& e) {
        throw std::invalid_argument(field + ": " + e.what());
    }
    return a;
}

std::string metadata_line(const SweepResult& result, bool bits) {
    json meta;
    meta["artifact"] = kArtifactVersion;
    meta["kind"] = kind_name(result.kind);
    meta["generator"] = "splitmix64";
    if (result.seed) meta["seed"] = *result.seed;
    meta["units"] = bits ? "bits" : "nats";
    meta["spec"] = json::parse(result.spec_json);
    return "#" + meta.dump();
}

double maybe_bits(double v, bool convert) { return convert ? v / kLn2 : v; }

bool is_nat_column(const SweepResult& r, int col) {
    return std::find(r.nat_columns.begin(), r.nat_columns.end(), col) !=
           r.nat_columns.end();
}

void stamp(SweepResult& result, const SweepSpec& spec) {
    result.kind = spec.kind;
    result.spec_json = spec.to_json_text();
    result.seed = spec.seed;
}

} // namespace

std::vector<double> Axis::points() const {
    if (count < 2) throw std::invalid_argument("axis count must be >= 2");
    if (scale == AxisScale::log && !(min > 0.0))
        throw std::invalid_argument("log axis requires min > 0");
    if (!(max >= min)) throw std::invalid_argument("axis requires max >= min");
    std::vector<double> pts(count);
    if (scale == AxisScale::log) {
        const double llo = std::log(min), lhi = std::log(max);
        for (int i = 0; i < count; ++i)
            pts[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
    } else {
        for (int i = 0; i < count; ++i)
            pts[i] = min + (max - min) * i / (count - 1);
    }
    return pts;
}

SweepSpec SweepSpec::defaults(SweepKind kind) {
    SweepSpec spec;
    spec.kind = kind;
    switch (kind) {
        case SweepKind::imbalance:
            spec.total_n = 5.0;
            break;
        case SweepKind::scatter:
            spec.samples = 10000;
            break;
        case SweepKind::asymptote:
            spec.family = "all";
            break;
        default:
            break;
    }
    return spec;
}

void SweepSpec::validate() const {
    const auto check_axis = [](const Axis& a, const char* field, double floor) {
        if (a.count < 2)
            throw std::invalid_argument(std::string(field) + ".count: must be >= 2");
        if (!(a.max >= a.min))
            throw std::invalid_argument(std::string(field) + ": needs max >= min");
        if (a.min < floor)
            throw std::invalid_argument(std::string(field) + ".min: below " +
                                        std::to_string(floor));
        if (a.scale == AxisScale::log && !(a.min > 0.0))
            throw std::invalid_argument(std::string(field) +
                                        ".min: log scale needs min > 0");
    };
    if (kind == SweepKind::scatter) {
        if (!seed) throw std::invalid_argument("seed: required for scatter sweeps");
        if (samples < 1) throw std::invalid_argument("samples: must be >= 1");
    }
    if (!(n2 >= 0.0)) throw std::invalid_argument("n2: must be >= 0");
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("tau: must lie in [0, 1]");
    if (!(total_n >= 0.0)) throw std::invalid_argument("total_n: must be >= 0");
    for (double v : n2_list)
        if (!(v >= 0.0)) throw std::invalid_argument("n2_list: entries must be >= 0");
    for (double v : tau_list)
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("tau_list: entries must lie in (0, 1)");
    if (kind == SweepKind::tau_scan || kind == SweepKind::asymptote) {
        if (family != "thermal" && family != "squeezed" && family != "threshold" &&
            !(kind == SweepKind::asymptote && family == "all"))
            throw std::invalid_argument(
                "family: expected thermal, squeezed or threshold");
    }
    switch (kind) {
        case SweepKind::surface:
            check_axis(ns, "ranges.ns", 0.0);
            check_axis(nt, "ranges.nt", 0.0);
            break;
        case SweepKind::tau_scan:
            check_axis(tau_axis, "ranges.tau", 0.0);
            if (tau_axis.max > 1.0)
                throw std::invalid_argument("ranges.tau.max: above 1");
            break;
        case SweepKind::imbalance:
            if (d_axis_set) {
                check_axis(d_axis, "ranges.d", -total_n - 1e-12);
                if (d_axis.max > total_n + 1e-12)
                    throw std::invalid_argument("ranges.d: must lie within [-N, N]");
            }
            break;
        case SweepKind::asymptote:
            check_axis(total_axis, "ranges.N", 0.0);
            break;
        case SweepKind::threshold_curve:
            check_axis(n1_axis, "ranges.n1", 0.0);
            break;
        case SweepKind::scatter:
            break;
    }
}

SweepSpec SweepSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("spec file: invalid JSON: ") + e.what());
    }
    if (j.value("version", 0) != 1)
        throw std::invalid_argument("version: expected 1");
    if (!j.contains("kind")) throw std::invalid_argument("kind: missing");
    SweepSpec spec = defaults(kind_from_name(j.at("kind").get<std::string>()));
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) spec.samples = j.at("samples").get<long>();
    if (j.contains("n2")) {
        if (j.at("n2").is_string()) {
            if (j.at("n2").get<std::string>() != "random")
                throw std::invalid_argument("n2: expected a number or \"random\"");
            spec.n2_random = true;
        } else {
            spec.n2 = j.at("n2").get<double>();
        }
    }
    if (j.contains("tau")) spec.tau = j.at("tau").get<double>();
    if (j.contains("family")) spec.family = j.at("family").get<std::string>();
    if (j.contains("total_n")) spec.total_n = j.at("total_n").get<double>();
    if (j.contains("tau_list"))
        spec.tau_list = j.at("tau_list").get<std::vector<double>>();
    if (j.contains("n2_list"))
        spec.n2_list = j.at("n2_list").get<std::vector<double>>();
    if (j.contains("ranges")) {
        const json& r = j.at("ranges");
        if (r.contains("ns")) spec.ns = axis_from_json(r.at("ns"), "ranges.ns");
        if (r.contains("nt")) spec.nt = axis_from_json(r.at("nt"), "ranges.nt");
        if (r.contains("tau"))
            spec.tau_axis = axis_from_json(r.at("tau"), "ranges.tau");
        if (r.contains("d")) {
            spec.d_axis = axis_from_json(r.at("d"), "ranges.d");
            spec.d_axis_set = true;
        }
        if (r.contains("n1")) spec.n1_axis = axis_from_json(r.at("n1"), "ranges.n1");
        if (r.contains("N"))
            spec.total_axis = axis_from_json(r.at("N"), "ranges.N");
    }
    spec.validate();
    return spec;
}

std::string SweepSpec::to_json_text() const {
    json j;
    j["version"] = 1;
    j["kind"] = kind_name(kind);
    if (seed) j["seed"] = *seed;
    if (kind == SweepKind::scatter) {
        j["samples"] = samples;
        j["n2"] = n2_random ? json("random") : json(n2);
    } else {
        j["n2"] = n2;
    }
    j["tau"] = tau;
    json ranges;
    switch (kind) {
        case SweepKind::surface:
            ranges["ns"] = axis_to_json(ns);
            ranges["nt"] = axis_to_json(nt);
            break;
        case SweepKind::tau_scan:
            j["family"] = family;
            j["total_n"] = total_n;
            ranges["tau"] = axis_to_json(tau_axis);
            break;
        case SweepKind::imbalance:
            j["total_n"] = total_n;
            j["tau_list"] = tau_list;
            ranges["d"] = axis_to_json(d_axis_set ? d_axis : effective_d_axis());
            break;
        case SweepKind::asymptote:
            j["family"] = family;
            ranges["N"] = axis_to_json(total_axis);
            break;
        case SweepKind::threshold_curve:
            j["n2_list"] = n2_list;
            ranges["n1"] = axis_to_json(n1_axis);
            break;
        case SweepKind::scatter:
            break;
    }
    if (!ranges.empty()) j["ranges"] = ranges;
    return j.dump();
}

SweepResult run_surface(const SweepSpec& spec) {
    SweepResult result;
    stamp(result, spec);
    result.tag_column = "curve";
    result.columns = {"ns", "nt", "n2", "tau", "n1"};
    append_measure_columns(result);

    const auto ns_pts = spec.ns.points();
    const auto nt_pts = spec.nt.points();
    const auto add_row = [&](const std::string& tag, double ns, double nt) {
        const SingleModeState state(ns, nt);
        SweepRow row;
        row.tag = tag;
        row.values = {ns, nt, spec.n2, spec.tau, state.mean_photons()};
        append_measures(row.values, state, spec.n2, spec.tau);
        result.rows.push_back(std::move(row));
    };

    for (double nt : nt_pts)
        for (double ns : ns_pts) add_row("grid", ns, nt);
    for (double nt : nt_pts) add_row("thermal", 0.0, nt);
    for (double ns : ns_pts) add_row("squeezed", ns, 0.0);
    for (double nt : nt_pts) add_row("threshold", p_threshold_ns(nt), nt);
    // Minimum-discord locus (per n_t, numeric minimisation over n_s in the
    // axis's own coordinate).
    const bool log_axis = spec.ns.scale == AxisScale::log;
    for (double nt : nt_pts) {
        const auto discord_at = [&](double x) {
            const double ns = log_axis ? std::exp(x) : x;
            return gaussian_discord(
                mixed_invariants(SingleModeState(ns, nt), spec.n2, spec.tau));
        };
        const double lo = log_axis ? std::log(spec.ns.min) : spec.ns.min;
        const double hi = log_axis ? std::log(spec.ns.max) : spec.ns.max;
        double x = golden_min(discord_at, lo, hi, 1e-9);
        // The minimum can sit exactly on an axis end, which the interior
        // search only approaches.
        for (double cand : {lo, hi})
            if (discord_at(cand) < discord_at(x)) x = cand;
        add_row("min_discord", log_axis ? std::exp(x) : x, nt);
    }
    return result;
}

SweepResult run_tau_scan(const SweepSpec& spec) {
    SweepResult result;
    stamp(result, spec);
    result.tag_column = "family";
    result.columns = {"N", "tau", "ns", "nt", "n2"};
    append_measure_columns(result);

    const SingleModeState state = family_state(spec.family, spec.total_n);
    for (double tau : spec.tau_axis.points()) {
        SweepRow row;
        row.tag = spec.family;
        row.values = {spec.total_n, tau, state.n_s, state.n_t, spec.n2};
        append_measures(row.values, state, spec.n2, tau);
        result.rows.push_back(std::move(row));
    }
    return result;
}

SweepResult run_scatter(const SweepSpec& spec) {
    SweepResult result;
    stamp(result, spec);
    result.columns = {"ns", "nt", "n2", "tau"};
    append_measure_columns(result);

    SplitMix64 rng(*spec.seed);
    result.rows.reserve(static_cast<std::size_t>(spec.samples));
    for (long i = 0; i < spec.samples; ++i) {
        const double ns = rng.log_uniform(1e-3, 1e2);
        const double nt = rng.log_uniform(1e-3, 1e2);
        const double n2 = spec.n2_random ? rng.log_uniform(1e-3, 1e2) : spec.n2;
        const double tau = rng.uniform01();
        SweepRow row;
        row.values = {ns, nt, n2, tau};
        append_measures(row.values, SingleModeState(ns, nt), n2, tau);
        result.rows.push_back(std::move(row));
    }
    return result;
}

Axis SweepSpec::effective_d_axis() const {
    if (d_axis_set) return d_axis;
    return Axis{-total_n, total_n, d_axis.count, AxisScale::linear};
}

SweepResult run_imbalance(const SweepSpec& spec) {
    SweepResult result;
    stamp(result, spec);
    result.columns = {"tau", "N", "d", "ns", "nt", "n2"};
    append_measure_columns(result);

    const Axis d_axis = spec.effective_d_axis();
    for (double tau : spec.tau_list) {
        for (double d : d_axis.points()) {
            const double n1 = 0.5 * (spec.total_n + d);
            const double n2 = 0.5 * (spec.total_n - d);
            const SingleModeState state(0.0, n1);
            SweepRow row;
            row.values = {tau, spec.total_n, d, 0.0, n1, n2};
            append_measures(row.values, state, n2, tau);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepResult run_asymptote(const SweepSpec& spec) {
    SweepResult result;
    stamp(result, spec);
    result.tag_column = "family";
    result.columns = {"N",       "tau",          "ns",
                      "nt",      "n2",           "discord",
                      "discord_leading", "discord_rel_dev", "ppt_lambda_minus",
                      "lambda_leading",  "lambda_rel_dev"};
    result.nat_columns = {5, 6};

    std::vector<std::string> families;
    if (spec.family == "all")
        families = {"thermal", "squeezed", "threshold"};
    else
        families = {spec.family};

    for (const auto& family : families) {
        for (double n : spec.total_axis.points()) {
            const SingleModeState state = family_state(family, n);
            const Invariants inv = mixed_invariants(state, spec.n2, spec.tau);
            const double discord = gaussian_discord(inv);
            const double lam = ppt_lambda_minus(inv);
            double d_lead = kNaN, l_lead = kNaN;
            if (family == "squeezed") {
                d_lead = std::log(0.5 * std::sqrt(n)) + 1.0;
                l_lead = 0.25 / std::sqrt(n);
            } else if (family == "thermal") {
                d_lead = kLn2;
            }
            const double d_dev = std::abs(discord - d_lead) / discord;
            const double l_dev = std::abs(lam - l_lead) / lam;
            SweepRow row;
            row.tag = family;
            row.values = {n,       spec.tau, state.n_s, state.n_t, spec.n2, discord,
                          d_lead,  d_dev,    lam,       l_lead,    l_dev};
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepResult run_threshold_curve(const SweepSpec& spec) {
    SweepResult result;
    stamp(result, spec);
    result.columns = {"n2", "n1", "nt", "ns_sep", "ns_fraction", "ppt_lambda_minus"};

    for (double n2 : spec.n2_list) {
        for (double n1 : spec.n1_axis.points()) {
            SweepRow row;
            // Smallest threshold energy is the pure squeezed point n_t = 0.
            const double ns_floor = sep_threshold_ns(0.0, n2, spec.tau);
            if (n1 < ns_floor) {
                row.values = {n2, n1, kNaN, kNaN, kNaN, kNaN};
            } else {
                const auto energy_gap = [&](double nt) {
                    const double ns = sep_threshold_ns(nt, n2, spec.tau);
                    return ns + nt + 2.0 * ns * nt - n1;
                };
                const double nt = bisect_root(energy_gap, 0.0, n1,
                                              1e-13 * std::max(1.0, n1), 300);
                const double ns = sep_threshold_ns(nt, n2, spec.tau);
                const double lam =
                    ppt_lambda_minus(mixed_invariants(SingleModeState(ns, nt), n2, spec.tau));
                row.values = {n2, n1, nt, ns, ns / n1, lam};
            }
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case SweepKind::surface: return run_surface(spec);
        case SweepKind::tau_scan: return run_tau_scan(spec);
        case SweepKind::scatter: return run_scatter(spec);
        case SweepKind::imbalance: return run_imbalance(spec);
        case SweepKind::asymptote: return run_asymptote(spec);
        case SweepKind::threshold_curve: return run_threshold_curve(spec);
    }
    throw std::logic_error("run_sweep: unknown kind");
}

std::string to_csv(const SweepResult& result, bool bits) {
    std::ostringstream out;
    out << metadata_line(result, bits) << '\n';
    const bool tagged = !result.tag_column.empty();
    if (tagged) out << result.tag_column << ',';
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out << ',';
        out << result.columns[i];
    }
    out << '\n';
    for (const auto& row : result.rows) {
        if (tagged) out << row.tag << ',';
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            if (i) out << ',';
            const bool convert = bits && is_nat_column(result, static_cast<int>(i));
            out << format_value(maybe_bits(row.values[i], convert));
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json_rows(const SweepResult& result, bool bits) {
    json root;
    root["metadata"] = json::parse(metadata_line(result, bits).substr(1));
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r;
        if (!result.tag_column.empty()) r[result.tag_column] = row.tag;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            const bool convert = bits && is_nat_column(result, static_cast<int>(i));
            const double v = maybe_bits(row.values[i], convert);
            if (std::isnan(v))
                r[result.columns[i]] = nullptr;
            else
                r[result.columns[i]] = v;
        }
        rows.push_back(std::move(r));
    }
    root["rows"] = std::move(rows);
    return root.dump(2);
}

const char* kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::surface: return "surface";
        case SweepKind::tau_scan: return "tau-scan";
        case SweepKind::scatter: return "scatter";
        case SweepKind::imbalance: return "imbalance";
        case SweepKind::asymptote: return "asymptote";
        case SweepKind::threshold_curve: return "threshold-curve";
    }
    return "unknown";
}

SweepKind kind_from_name(const std::string& name) {
    std::string norm = name;
    std::replace(norm.begin(), norm.end(), '_', '-');
    if (norm == "surface") return SweepKind::surface;
    if (norm == "tau-scan") return SweepKind::tau_scan;
    if (norm == "scatter") return SweepKind::scatter;
    if (norm == "imbalance") return SweepKind::imbalance;
    if (norm == "asymptote") return SweepKind::asymptote;
    if (norm == "threshold-curve") return SweepKind::threshold_curve;
    throw std::invalid_argument("kind: unknown sweep kind '" + name + "'");
}

} // namespace gsmix
