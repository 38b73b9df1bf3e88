// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional map families f(x; c) over the voltage interval [0, vdd].
//
// The map circuit is a V-shaped transfer characteristic whose control voltage
// c selects the slope. The analytic families stand in for the circuit; the
// `table` family accepts a measured or simulated transfer surface instead.
#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dpccm {

/// Voltages are plain doubles in volts. All state arithmetic is binary64.
using Voltage = double;

inline constexpr Voltage kDefaultVdd = 1.2;

enum class MapFamily { vee, tent, logistic, table };

std::string_view to_string(MapFamily family);
MapFamily parse_map_family(std::string_view name);

/// Output voltage sampled on a (control x input) grid, bilinearly interpolated.
class TransferTable {
public:
    TransferTable(std::vector<Voltage> control_grid, std::vector<Voltage> input_grid,
                  std::vector<std::vector<Voltage>> outputs);

    const std::vector<Voltage>& control_grid() const noexcept { return control_grid_; }
    const std::vector<Voltage>& input_grid() const noexcept { return input_grid_; }
    const std::vector<std::vector<Voltage>>& outputs() const noexcept { return outputs_; }

    /// Bilinear interpolation; throws DomainError outside the grid hull.
    Voltage interpolate(Voltage x, Voltage c) const;

    /// Checks every output lies within [0, vdd].
    void check_range(Voltage vdd) const;

    bool contains(Voltage x, Voltage c) const noexcept;

private:
    std::vector<Voltage> control_grid_;
    std::vector<Voltage> input_grid_;
    std::vector<std::vector<Voltage>> outputs_;
};

/// Parses the CSV layout: header `c\x,x0,x1,...`, then one row per control
/// voltage `c,f(x0;c),f(x1;c),...`.
TransferTable read_transfer_table(std::istream& in);
TransferTable load_transfer_table(const std::string& path);
void write_transfer_table(std::ostream& out, const TransferTable& table);

struct MapParams {
    // tent / vee: slope a(gamma) = a_lo + (a_hi - a_lo) * gamma, gamma = c / vdd.
    double a_lo = 0.0;
    double a_hi = 2.0;
};

struct MapConfig {
    MapFamily family = MapFamily::tent;
    MapParams params{};
    Voltage vdd = kDefaultVdd;
    std::shared_ptr<const TransferTable> table{};

    /// Throws UsageError when an invariant does not hold.
    void validate() const;

    static MapConfig tent(Voltage vdd = kDefaultVdd, double a_lo = 0.0, double a_hi = 2.0);
    static MapConfig vee(Voltage vdd = kDefaultVdd, double a_lo = 0.0, double a_hi = 2.0);
    static MapConfig logistic(Voltage vdd = kDefaultVdd);
    static MapConfig from_table(std::shared_ptr<const TransferTable> table, Voltage vdd = kDefaultVdd);
};

/// Slope parameter of the tent/vee families at control voltage c.
double tent_slope_parameter(const MapConfig& cfg, Voltage c) noexcept;

/// Logistic parameter r(gamma) = 4 gamma.
double logistic_parameter(const MapConfig& cfg, Voltage c) noexcept;

/// Control voltage that yields a given tent slope (inverse of tent_slope_parameter).
Voltage control_for_tent_slope(const MapConfig& cfg, double a);

/// Control voltage that yields a given logistic parameter r.
Voltage control_for_logistic(const MapConfig& cfg, double r);

/// f(x; c), clamped to [0, vdd]. Throws DomainError for x or c outside
/// [0, vdd] or non-finite, and for table queries outside the grid hull.
Voltage map_eval(const MapConfig& cfg, Voltage x, Voltage c);

/// df/dx at (x, c). Analytic for tent/vee/logistic, central difference with
/// h = 1e-6 V for tables. At the rails 0 and vdd the one-sided derivative is
/// returned. Throws BreakpointError exactly at a kink.
double map_slope(const MapConfig& cfg, Voltage x, Voltage c);

inline constexpr double kTableSlopeStep = 1e-6;

}  // namespace dpccm
