#include "gsmix/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gsmix/measures.hpp"
#include "gsmix/sweeps.hpp"
#include "gsmix/thresholds.hpp"
#include "gsmix/verify.hpp"

namespace gsmix {
namespace {

constexpr double kLn2 = 0.6931471805599453;

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Axis parse_range(const std::string& text, const std::string& flag) {
    // min:max:count[:scale]
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3 && parts.size() != 4)
        throw std::invalid_argument(flag + ": expected min:max:count[:scale]");
    Axis axis;
    try {
        axis.min = std::stod(parts[0]);
        axis.max = std::stod(parts[1]);
        axis.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw std::invalid_argument(flag + ": expected numeric min:max:count");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log")
            axis.scale = AxisScale::log;
        else if (parts[3] == "linear")
            axis.scale = AxisScale::linear;
        else
            throw std::invalid_argument(flag + ": scale must be linear or log");
    }
    return axis;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": expected comma-separated numbers");
        }
    }
    if (values.empty()) throw std::invalid_argument(flag + ": empty list");
    return values;
}

std::string default_out_path(SweepKind kind) {
    std::string dir;
    if (const char* env = std::getenv("GSMIX_OUT_DIR")) dir = env;
    if (!dir.empty() && dir.back() != '/') dir += '/';
    return dir + kind_name(kind) + ".csv";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output path '" + path + "'");
    file << content;
    if (!file) throw std::invalid_argument("failed writing to '" + path + "'");
}

// Flag holders for one sweep subcommand. CLI11 keeps pointers to these,
// so they live for the whole parse.
struct SweepFlags {
    std::string spec_path, out_path, json_path;
    std::string ns_range, nt_range, tau_range, d_range, n1_range, n_range;
    std::string n2_text, family, tau_list, n2_list;
    double tau = 0.5, total_n = 10.0;
    std::uint64_t seed = 0;
    long samples = 10000;
    bool bits = false;
    CLI::App* cmd = nullptr;
};

SweepSpec build_spec(SweepKind kind, const SweepFlags& f) {
    SweepSpec spec = f.cmd->count("--spec")
                         ? [&] {
                               std::ifstream in(f.spec_path);
                               if (!in)
                                   throw std::invalid_argument("cannot read spec file '" +
                                                               f.spec_path + "'");
                               std::stringstream buf;
                               buf << in.rdbuf();
                               SweepSpec s = SweepSpec::from_json_text(buf.str());
                               if (s.kind != kind)
                                   throw std::invalid_argument(
                                       "kind: spec file disagrees with subcommand");
                               return s;
                           }()
                         : SweepSpec::defaults(kind);

    const auto set = [&](const char* flag) {
        const CLI::Option* opt = f.cmd->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    if (set("--seed")) spec.seed = f.seed;
    if (set("--samples")) spec.samples = f.samples;
    if (set("--n2")) {
        if (kind == SweepKind::threshold_curve) {
            spec.n2_list = parse_list(f.n2_list, "--n2");
        } else if (f.n2_text == "random") {
            spec.n2_random = true;
        } else {
            try {
                spec.n2 = std::stod(f.n2_text);
                spec.n2_random = false;
            } catch (const std::exception&) {
                throw std::invalid_argument("--n2: expected a number or 'random'");
            }
        }
    }
    if (set("--tau")) {
        if (kind == SweepKind::imbalance)
            spec.tau_list = parse_list(f.tau_list, "--tau");
        else
            spec.tau = f.tau;
    }
    if (set("--family")) spec.family = f.family;
    if (set("--N")) spec.total_n = f.total_n;
    if (set("--ns-range")) spec.ns = parse_range(f.ns_range, "--ns-range");
    if (set("--nt-range")) spec.nt = parse_range(f.nt_range, "--nt-range");
    if (set("--tau-range")) spec.tau_axis = parse_range(f.tau_range, "--tau-range");
    if (set("--d-range")) {
        spec.d_axis = parse_range(f.d_range, "--d-range");
        spec.d_axis_set = true;
    }
    if (set("--n1-range")) spec.n1_axis = parse_range(f.n1_range, "--n1-range");
    if (set("--N-range")) spec.total_axis = parse_range(f.n_range, "--N-range");
    spec.validate();
    return spec;
}

int cmd_point(double ns, double nt, double n2, double tau, bool bits,
              std::ostream& out) {
    if (!(ns >= 0.0)) throw std::invalid_argument("--ns: must be >= 0 (photons)");
    if (!(nt >= 0.0)) throw std::invalid_argument("--nt: must be >= 0 (photons)");
    if (!(n2 >= 0.0)) throw std::invalid_argument("--n2: must be >= 0 (photons)");
    if (!(tau >= 0.0 && tau <= 1.0))
        throw std::invalid_argument("--tau: must lie in [0, 1]");
    const SingleModeState state(ns, nt);
    const MeasureReport rep = measure_mixing(state, n2, tau);
    const double depth = nonclassical_depth(state);
    const EffectiveNC enc = effective_nc(state);
    const double scale = bits ? 1.0 / kLn2 : 1.0;
    const char* unit = bits ? "bits" : "nats";

    out << "input: ns=" << fmt12(ns) << " nt=" << fmt12(nt) << " n2=" << fmt12(n2)
        << " tau=" << fmt12(tau) << " (photons, photons, photons, dimensionless)\n";
    out << "units: " << unit << "\n";
    out << "nonclassical_depth    = " << fmt12(depth) << "\n";
    out << "p_classical           = " << (p_classical(state) ? "true" : "false") << "\n";
    out << "effective_nc          = " << fmt12(enc.value)
        << " photons (tau* = " << fmt12(enc.tau_star) << ")\n";
    out << "discord_1g2           = " << fmt12(rep.discord_1g2 * scale) << ' ' << unit
        << "\n";
    out << "discord_2g1           = " << fmt12(rep.discord_2g1 * scale) << ' ' << unit
        << "\n";
    out << "mutual_info           = " << fmt12(rep.mutual_info * scale) << ' ' << unit
        << "\n";
    out << "classical_corr_1g2    = " << fmt12(rep.classical_corr_1g2 * scale) << ' '
        << unit << "\n";
    out << "ppt_lambda_minus      = " << fmt12(rep.ppt_lambda_minus) << "\n";
    out << "log_negativity        = " << fmt12(rep.log_negativity * scale) << ' ' << unit
        << "\n";
    out << "entangled             = " << (rep.entangled ? "true" : "false") << "\n";
    return 0;
}

int cmd_sweep(SweepKind kind, const SweepFlags& flags, std::ostream& out) {
    const SweepSpec spec = build_spec(kind, flags);
    const SweepResult result = run_sweep(spec);
    const std::string path =
        flags.cmd->count("--out") ? flags.out_path : default_out_path(kind);
    write_text_file(path, to_csv(result, flags.bits));
    out << "wrote " << result.rows.size() << " rows to " << path << "\n";
    if (flags.cmd->count("--json-out")) {
        write_text_file(flags.json_path, to_json_rows(result, flags.bits));
        out << "wrote JSON mirror to " << flags.json_path << "\n";
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& checks, long samples,
               std::uint64_t seed, std::ostream& out) {
    const std::vector<CheckResult> results = run_checks(checks, samples, seed);
    bool all_pass = true;
    for (const auto& r : results) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-30s samples=%-7ld worst=%.3e tol=%.1e %s",
                      r.name.c_str(), r.samples, r.worst, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        out << line;
        if (!r.note.empty()) out << "  [" << r.note << "]";
        out << "\n";
        all_pass &= r.pass;
    }
    out << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all_pass ? 0 : 2;
}

void add_sweep_flags(CLI::App* cmd, SweepKind kind, SweepFlags& f) {
    f.cmd = cmd;
    cmd->add_option("--spec", f.spec_path,
                    "JSON sweep spec file (schema version 1); flags override its fields");
    cmd->add_option("--out", f.out_path,
                    "output CSV path (default: $GSMIX_OUT_DIR/<kind>.csv)");
    cmd->add_option("--json-out", f.json_path, "also write a JSON mirror of the rows");
    cmd->add_flag("--bits", f.bits,
                  "report correlation measures in bits instead of nats");
    cmd->add_option("--seed", f.seed, "RNG seed (64-bit integer)");
    switch (kind) {
        case SweepKind::surface:
            cmd->add_option("--ns-range", f.ns_range,
                            "squeezed-photon axis, min:max:count[:scale] (photons)");
            cmd->add_option("--nt-range", f.nt_range,
                            "thermal-photon axis, min:max:count[:scale] (photons)");
            cmd->add_option("--n2", f.n2_text, "reference thermal photons");
            cmd->add_option("--tau", f.tau, "transmissivity (dimensionless, [0,1])");
            break;
        case SweepKind::tau_scan:
            cmd->add_option("--family", f.family,
                            "input family: thermal | squeezed | threshold");
            cmd->add_option("--N", f.total_n, "total input energy (photons)");
            cmd->add_option("--tau-range", f.tau_range,
                            "transmissivity axis, min:max:count (dimensionless)");
            cmd->add_option("--n2", f.n2_text, "reference thermal photons");
            break;
        case SweepKind::scatter:
            cmd->add_option("--samples", f.samples, "number of random states");
            cmd->add_option("--n2", f.n2_text,
                            "reference thermal photons: a number or 'random'");
            break;
        case SweepKind::imbalance:
            cmd->add_option("--N", f.total_n, "total thermal energy (photons)");
            cmd->add_option("--tau", f.tau_list,
                            "comma-separated transmissivities (dimensionless)")
                ->option_text("LIST");
            cmd->add_option("--d-range", f.d_range,
                            "imbalance axis, min:max:count (photons)");
            break;
        case SweepKind::asymptote:
            cmd->add_option("--family", f.family,
                            "input family: thermal | squeezed | threshold | all");
            cmd->add_option("--N-range", f.n_range,
                            "energy axis, min:max:count[:scale] (photons)");
            cmd->add_option("--n2", f.n2_text, "reference thermal photons");
            cmd->add_option("--tau", f.tau, "transmissivity (dimensionless)");
            break;
        case SweepKind::threshold_curve:
            cmd->add_option("--n2", f.n2_list,
                            "comma-separated reference photon numbers")
                ->option_text("LIST");
            cmd->add_option("--n1-range", f.n1_range,
                            "mode-1 energy axis, min:max:count[:scale] (photons)");
            cmd->add_option("--tau", f.tau, "transmissivity (dimensionless)");
            break;
    }
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"beam-splitter mixing of Gaussian states: nonclassical depth, "
                 "Gaussian discord, entanglement, thresholds and sweep tables"};
    app.name("gsmix");
    app.require_subcommand(1);

    // point
    double p_ns = 0, p_nt = 0, p_n2 = 0, p_tau = 0.5;
    bool p_bits = false;
    CLI::App* point = app.add_subcommand(
        "point", "evaluate every quantifier for one (ns, nt, n2, tau) input");
    point->add_option("--ns", p_ns, "mean squeezed photons (photons)")->required();
    point->add_option("--nt", p_nt, "mean thermal photons, mode 1 (photons)")->required();
    point->add_option("--n2", p_n2, "reference thermal photons (photons)")->required();
    point->add_option("--tau", p_tau, "transmissivity (dimensionless, [0,1])")->required();
    point->add_flag("--bits", p_bits, "report correlation measures in bits");

    // sweep with one subcommand per kind
    CLI::App* sweep = app.add_subcommand("sweep", "tabulate measures over a grid or ensemble");
    sweep->require_subcommand(1);
    const SweepKind kinds[] = {SweepKind::surface,   SweepKind::tau_scan,
                               SweepKind::scatter,   SweepKind::imbalance,
                               SweepKind::asymptote, SweepKind::threshold_curve};
    const char* kind_help[] = {
        "discord surface over (ns, nt) with marked reference curves",
        "measures against transmissivity at fixed total energy",
        "random-state ensemble of (discord, PPT eigenvalue) pairs",
        "thermal-imbalance study at fixed total energy",
        "large-energy behaviour against the leading-order forms",
        "separability threshold against mode-1 energy"};
    std::vector<SweepFlags> sweep_flags(6);
    for (int i = 0; i < 6; ++i)
        add_sweep_flags(sweep->add_subcommand(kind_name(kinds[i]), kind_help[i]),
                        kinds[i], sweep_flags[i]);

    // verify
    std::vector<std::string> v_checks;
    long v_samples = 0;
    std::uint64_t v_seed = 20240817;
    CLI::App* verify = app.add_subcommand(
        "verify", "run the oracle cross-checks and print a pass/fail report");
    verify->add_option("--check", v_checks,
                       "run only the named checks (repeatable); see --list");
    verify->add_option("--samples", v_samples, "override per-check sample counts");
    verify->add_option("--seed", v_seed, "RNG seed for the sampled checks");
    bool v_list = false;
    verify->add_flag("--list", v_list, "list available check names and exit");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (point->parsed()) return cmd_point(p_ns, p_nt, p_n2, p_tau, p_bits, out);
        if (verify->parsed()) {
            if (v_list) {
                for (const auto& name : check_names()) out << name << "\n";
                return 0;
            }
            return cmd_verify(v_checks, v_samples, v_seed, out);
        }
        for (int i = 0; i < 6; ++i)
            if (sweep_flags[i].cmd->parsed())
                return cmd_sweep(kinds[i], sweep_flags[i], out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

} // namespace gsmix
