// SPDX-License-Identifier: Apache-2.0
#include "dpccm/map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dpccm/error.hpp"
#include "text_util.hpp"

namespace dpccm {

std::string_view to_string(MapFamily family) {
    switch (family) {
    case MapFamily::vee: return "vee";
    case MapFamily::tent: return "tent";
    case MapFamily::logistic: return "logistic";
    case MapFamily::table: return "table";
    }
    return "?";
}

MapFamily parse_map_family(std::string_view name) {
    if (name == "vee") return MapFamily::vee;
    if (name == "tent") return MapFamily::tent;
    if (name == "logistic") return MapFamily::logistic;
    if (name == "table") return MapFamily::table;
    throw UsageError("unknown map family '" + std::string(name) + "'");
}

namespace {

void require_ascending(const std::vector<Voltage>& grid, const char* what) {
    if (grid.size() < 2) throw UsageError(std::string(what) + " needs at least 2 points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw UsageError(std::string(what) + " has a non-finite entry");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw UsageError(std::string(what) + " must be strictly ascending");
    }
}

// Index i such that grid[i] <= v <= grid[i + 1].
std::size_t bracket(const std::vector<Voltage>& grid, Voltage v) {
    auto it = std::upper_bound(grid.begin(), grid.end(), v);
    auto i = static_cast<std::size_t>(std::distance(grid.begin(), it));
    if (i == 0) return 0;
    return std::min(i - 1, grid.size() - 2);
}

void require_voltage(const MapConfig& cfg, Voltage v, const char* what) {
    if (!std::isfinite(v) || v < 0.0 || v > cfg.vdd) {
        std::ostringstream msg;
        msg << what << " = " << v << " V outside [0, " << cfg.vdd << "] V";
        throw DomainError(msg.str());
    }
}

}  // namespace

TransferTable::TransferTable(std::vector<Voltage> control_grid, std::vector<Voltage> input_grid,
                             std::vector<std::vector<Voltage>> outputs)
    : control_grid_(std::move(control_grid)),
      input_grid_(std::move(input_grid)),
      outputs_(std::move(outputs)) {
    require_ascending(control_grid_, "control grid");
    require_ascending(input_grid_, "input grid");
    if (outputs_.size() != control_grid_.size())
        throw UsageError("transfer table has " + std::to_string(outputs_.size()) + " rows, expected " +
                         std::to_string(control_grid_.size()));
    for (const auto& row : outputs_) {
        if (row.size() != input_grid_.size())
            throw UsageError("transfer table row has " + std::to_string(row.size()) + " columns, expected " +
                             std::to_string(input_grid_.size()));
        for (Voltage v : row)
            if (!std::isfinite(v)) throw UsageError("transfer table has a non-finite output");
    }
}

bool TransferTable::contains(Voltage x, Voltage c) const noexcept {
    return x >= input_grid_.front() && x <= input_grid_.back() && c >= control_grid_.front() &&
           c <= control_grid_.back();
}

Voltage TransferTable::interpolate(Voltage x, Voltage c) const {
    if (!contains(x, c)) {
        std::ostringstream msg;
        msg << "table query (x=" << x << ", c=" << c << ") outside grid hull";
        throw DomainError(msg.str());
    }
    const std::size_t i = bracket(control_grid_, c);
    const std::size_t j = bracket(input_grid_, x);
    const double tc = (c - control_grid_[i]) / (control_grid_[i + 1] - control_grid_[i]);
    const double tx = (x - input_grid_[j]) / (input_grid_[j + 1] - input_grid_[j]);
    const double lo = outputs_[i][j] + tx * (outputs_[i][j + 1] - outputs_[i][j]);
    const double hi = outputs_[i + 1][j] + tx * (outputs_[i + 1][j + 1] - outputs_[i + 1][j]);
    return lo + tc * (hi - lo);
}

void TransferTable::check_range(Voltage vdd) const {
    for (const auto& row : outputs_)
        for (Voltage v : row)
            if (v < 0.0 || v > vdd) throw UsageError("transfer table output outside [0, vdd]");
}

TransferTable read_transfer_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!detail::trim(line).empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw FormatError("transfer table: empty input");
    auto header = detail::split(line, ',');
    if (header.empty() || detail::trim(header.front()) != "c\\x")
        throw FormatError("transfer table: header must start with 'c\\x'");
    std::vector<Voltage> inputs;
    for (std::size_t k = 1; k < header.size(); ++k)
        inputs.push_back(detail::parse_double(header[k], "transfer table header", line_no));

    std::vector<Voltage> controls;
    std::vector<std::vector<Voltage>> outputs;
    while (next_line()) {
        auto cells = detail::split(line, ',');
        if (cells.size() != inputs.size() + 1)
            throw FormatError("transfer table line " + std::to_string(line_no) + ": expected " +
                              std::to_string(inputs.size() + 1) + " cells");
        controls.push_back(detail::parse_double(cells[0], "transfer table", line_no));
        std::vector<Voltage> row;
        row.reserve(inputs.size());
        for (std::size_t k = 1; k < cells.size(); ++k)
            row.push_back(detail::parse_double(cells[k], "transfer table", line_no));
        outputs.push_back(std::move(row));
    }
    return TransferTable(std::move(controls), std::move(inputs), std::move(outputs));
}

TransferTable load_transfer_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open transfer table '" + path + "'");
    return read_transfer_table(in);
}

void write_transfer_table(std::ostream& out, const TransferTable& table) {
    out << "c\\x";
    for (Voltage x : table.input_grid()) out << ',' << detail::format_double(x);
    out << '\n';
    for (std::size_t i = 0; i < table.control_grid().size(); ++i) {
        out << detail::format_double(table.control_grid()[i]);
        for (Voltage v : table.outputs()[i]) out << ',' << detail::format_double(v);
        out << '\n';
    }
}

void MapConfig::validate() const {
    if (!std::isfinite(vdd) || vdd <= 0.0) throw UsageError("vdd must be positive");
    if (family == MapFamily::tent || family == MapFamily::vee) {
        if (!(params.a_lo >= 0.0) || !(params.a_hi >= 0.0) || !std::isfinite(params.a_lo) ||
            !std::isfinite(params.a_hi))
            throw UsageError("tent/vee slope parameters must be finite and >= 0");
    }
    if ((family == MapFamily::table) != static_cast<bool>(table))
        throw UsageError("a transfer table is required by, and only by, the table family");
    if (table) table->check_range(vdd);
}

MapConfig MapConfig::tent(Voltage vdd, double a_lo, double a_hi) {
    MapConfig cfg;
    cfg.family = MapFamily::tent;
    cfg.vdd = vdd;
    cfg.params = {a_lo, a_hi};
    return cfg;
}

MapConfig MapConfig::vee(Voltage vdd, double a_lo, double a_hi) {
    MapConfig cfg = tent(vdd, a_lo, a_hi);
    cfg.family = MapFamily::vee;
    return cfg;
}

MapConfig MapConfig::logistic(Voltage vdd) {
    MapConfig cfg;
    cfg.family = MapFamily::logistic;
    cfg.vdd = vdd;
    return cfg;
}

MapConfig MapConfig::from_table(std::shared_ptr<const TransferTable> table, Voltage vdd) {
    MapConfig cfg;
    cfg.family = MapFamily::table;
    cfg.vdd = vdd;
    cfg.table = std::move(table);
    return cfg;
}

double tent_slope_parameter(const MapConfig& cfg, Voltage c) noexcept {
    const double gamma = c / cfg.vdd;
    return cfg.params.a_lo + (cfg.params.a_hi - cfg.params.a_lo) * gamma;
}

double logistic_parameter(const MapConfig& cfg, Voltage c) noexcept { return 4.0 * (c / cfg.vdd); }

Voltage control_for_tent_slope(const MapConfig& cfg, double a) {
    const double span = cfg.params.a_hi - cfg.params.a_lo;
    if (span == 0.0) throw UsageError("tent slope does not depend on the control voltage");
    return (a - cfg.params.a_lo) / span * cfg.vdd;
}

Voltage control_for_logistic(const MapConfig& cfg, double r) { return r / 4.0 * cfg.vdd; }

namespace {

// The V/peak is evaluated in volts as a * min(x, vdd - x). The normalized form
// vdd * a * min(u, 1 - u) is algebraically identical but, at a = 2, every
// step is an exact binary shift and orbits collapse onto 0 within a few
// hundred steps. Subtracting from vdd keeps feeding mantissa bits.
inline double tent_unclamped(const MapConfig& cfg, Voltage x, Voltage c) noexcept {
    return tent_slope_parameter(cfg, c) * std::min(x, cfg.vdd - x);
}

inline Voltage clamp_rail(Voltage v, Voltage vdd) noexcept { return std::clamp(v, 0.0, vdd); }

}  // namespace

Voltage map_eval(const MapConfig& cfg, Voltage x, Voltage c) {
    require_voltage(cfg, x, "x");
    require_voltage(cfg, c, "c");
    switch (cfg.family) {
    case MapFamily::tent:
        return clamp_rail(tent_unclamped(cfg, x, c), cfg.vdd);
    case MapFamily::vee:
        return clamp_rail(cfg.vdd - tent_unclamped(cfg, x, c), cfg.vdd);
    case MapFamily::logistic: {
        const double u = x / cfg.vdd;
        return clamp_rail(cfg.vdd * logistic_parameter(cfg, c) * u * (1.0 - u), cfg.vdd);
    }
    case MapFamily::table:
        return clamp_rail(cfg.table->interpolate(x, c), cfg.vdd);
    }
    throw UsageError("unknown map family");
}

double map_slope(const MapConfig& cfg, Voltage x, Voltage c) {
    require_voltage(cfg, x, "x");
    require_voltage(cfg, c, "c");
    const Voltage half = 0.5 * cfg.vdd;
    switch (cfg.family) {
    case MapFamily::tent:
    case MapFamily::vee: {
        const double a = tent_slope_parameter(cfg, c);
        if (a == 0.0) return 0.0;
        if (x == half) throw BreakpointError("slope requested at the peak x = vdd/2");
        const double raw = tent_unclamped(cfg, x, c);
        // a > 2 saturates at the rail around the peak.
        if (raw == cfg.vdd && a > 2.0) throw BreakpointError("slope requested at the rail saturation kink");
        const double sign = cfg.family == MapFamily::tent ? 1.0 : -1.0;
        if (raw > cfg.vdd) return 0.0;
        return x < half ? sign * a : -sign * a;
    }
    case MapFamily::logistic:
        return logistic_parameter(cfg, c) * (1.0 - 2.0 * (x / cfg.vdd));
    case MapFamily::table: {
        const double h = kTableSlopeStep;
        const auto& t = *cfg.table;
        const bool left = t.contains(x - h, c) && x - h >= 0.0;
        const bool right = t.contains(x + h, c) && x + h <= cfg.vdd;
        if (left && right) return (map_eval(cfg, x + h, c) - map_eval(cfg, x - h, c)) / (2.0 * h);
        if (right) return (map_eval(cfg, x + h, c) - map_eval(cfg, x, c)) / h;
        if (left) return (map_eval(cfg, x, c) - map_eval(cfg, x - h, c)) / h;
        throw DomainError("table too narrow for a finite-difference slope");
    }
    }
    throw UsageError("unknown map family");
}

}  // namespace dpccm
