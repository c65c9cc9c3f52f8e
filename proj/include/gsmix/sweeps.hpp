#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsmix/core.hpp"
#include "gsmix/measures.hpp"

// Sweep engines that tabulate the measures over parameter grids and
// random ensembles. Output is CSV (comma separator, '.' decimal point,
// 17 significant digits, header row) preceded by one '#'-prefixed JSON
// metadata comment carrying the full spec echo, the seed and the
// artifact version. A JSON mirror of the rows is available on request.

namespace gsmix {

inline constexpr const char* kArtifactVersion = "gsmix 1.0.0";

enum class SweepKind { surface, tau_scan, scatter, imbalance, asymptote, threshold_curve };

enum class AxisScale { linear, log };

struct Axis {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    AxisScale scale = AxisScale::linear;

    std::vector<double> points() const;
};

struct SweepSpec {
    SweepKind kind = SweepKind::surface;

    Axis ns{1e-3, 1e2, 41, AxisScale::log};     // surface
    Axis nt{1e-3, 1e2, 41, AxisScale::log};     // surface
    Axis tau_axis{0.0, 1.0, 101, AxisScale::linear};  // tau scan
    Axis d_axis{0.0, 0.0, 101, AxisScale::linear};    // imbalance; defaults to [-N, N]
    bool d_axis_set = false;
    Axis n1_axis{1e-2, 1e3, 61, AxisScale::log};      // threshold curve
    Axis total_axis{1e0, 1e4, 37, AxisScale::log};    // asymptote energies

    double n2 = 0.0;
    bool n2_random = false;                      // scatter thermal variant
    std::vector<double> n2_list{0.0, 0.1, 1.0};  // threshold curve
    std::vector<double> tau_list{0.5, 0.8, 0.99};  // imbalance
    double tau = 0.5;
    double total_n = 10.0;         // tau scan / imbalance energy
    std::string family = "thermal";  // tau scan: thermal|squeezed|threshold; asymptote also "all"

    std::optional<std::uint64_t> seed;  // mandatory for scatter
    long samples = 10000;               // scatter only

    static SweepSpec defaults(SweepKind kind);
    static SweepSpec from_json_text(const std::string& text);
    std::string to_json_text() const;
    void validate() const;  // throws std::invalid_argument naming the field
    Axis effective_d_axis() const;  // [-N, N] unless a d range was given
};

struct SweepRow {
    std::vector<double> values;
    std::string tag;  // empty when the sweep kind has no tag column
};

struct SweepResult {
    SweepKind kind = SweepKind::surface;
    std::string tag_column;             // empty when untagged
    std::vector<std::string> columns;   // numeric columns, in output order
    std::vector<int> nat_columns;       // indices rescaled by 1/ln 2 in bits mode
    std::vector<SweepRow> rows;
    std::string spec_json;              // spec echo for the metadata line
    std::optional<std::uint64_t> seed;
};

SweepResult run_surface(const SweepSpec& spec);
SweepResult run_tau_scan(const SweepSpec& spec);
SweepResult run_scatter(const SweepSpec& spec);
SweepResult run_imbalance(const SweepSpec& spec);
SweepResult run_asymptote(const SweepSpec& spec);
SweepResult run_threshold_curve(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec);

std::string to_csv(const SweepResult& result, bool bits = false);
std::string to_json_rows(const SweepResult& result, bool bits = false);

const char* kind_name(SweepKind kind);
SweepKind kind_from_name(const std::string& name);  // accepts - or _ separators

} // namespace gsmix
