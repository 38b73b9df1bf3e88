// SPDX-License-Identifier: Apache-2.0
//
// Bifurcation scans and Lyapunov exponent estimates for a single chaotic
// oscillator or for the seed->controlled cascade.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "dpccm/dpccm.hpp"

namespace dpccm {

/// A lone oscillator; the swept c is its own control voltage.
struct OscillatorSubject {};

/// The cascade; the swept c is the seed map's control voltage and the
/// controlled map's trajectory is the observable.
struct CascadeSubject {
    LinearTransform transform;
};

using Subject = std::variant<OscillatorSubject, CascadeSubject>;

struct BifurcationScan {
    std::vector<Voltage> c_values;
    std::vector<std::vector<Voltage>> samples;  // samples[i] belongs to c_values[i]
    std::uint64_t transient = 0;
    std::size_t samples_per_c = 0;
};

struct ScanRange {
    Voltage c_min = 0.0;
    Voltage c_max = kDefaultVdd;
    std::size_t steps = 2;
};

/// Evenly spaced grid including both ends. Throws UsageError for steps < 2,
/// c_max < c_min, or a range outside [0, vdd].
std::vector<Voltage> scan_grid(const MapConfig& cfg, const ScanRange& range);

/// For each grid c, iterates from x0, drops `transient` oscillator iterations
/// and records the next samples_per_c map outputs (v1, v2, v1, v2, ...).
BifurcationScan bifurcation_scan(const MapConfig& cfg, const Subject& subject, const ScanRange& range,
                                 std::uint64_t transient, std::size_t samples_per_c, Voltage x0,
                                 unsigned threads = 1);

enum class LyapunovMethod { derivative, divergence };

std::string_view to_string(LyapunovMethod method);

struct LyapunovEstimate {
    Voltage c = 0.0;
    double lambda = 0.0;      // nats per map application
    std::uint64_t n = 0;      // map applications averaged
    LyapunovMethod method = LyapunovMethod::derivative;
    std::uint64_t perturbations = 0;  // breakpoint nudges (derivative method)
};

inline constexpr std::uint64_t kMinLyapunovIterations = 1000;
inline constexpr Voltage kBreakpointNudge = 1e-12;

/// Mean of ln|f'(x_i)| over the 2n map applications that follow the
/// transient. A trajectory landing on a kink or critical point is nudged by
/// 1e-12 V; more than n/100 nudges raises NumericalError.
LyapunovEstimate lyapunov_derivative(const MapConfig& cfg, const Subject& subject, Voltage c, std::uint64_t n,
                                     std::uint64_t transient = kDefaultTransient, Voltage x0 = -1.0);

/// Two-trajectory estimate with renormalisation to `eps` after every map
/// application. eps must lie in [1e-12, 1e-6] V.
LyapunovEstimate lyapunov_divergence(const MapConfig& cfg, const Subject& subject, Voltage c, std::uint64_t n,
                                     double eps = 1e-9, Voltage x0 = -1.0,
                                     std::uint64_t transient = kDefaultTransient);

struct LyapunovScanOptions {
    LyapunovMethod method = LyapunovMethod::derivative;
    std::uint64_t n = 10'000;
    std::uint64_t transient = kDefaultTransient;
    double eps = 1e-9;
    Voltage x0 = -1.0;  // negative selects 0.37 * vdd
    unsigned threads = 1;
};

std::vector<LyapunovEstimate> lyapunov_scan(const MapConfig& cfg, const Subject& subject, const ScanRange& range,
                                            const LyapunovScanOptions& options = {});

struct ChaoticRange {
    Voltage c_lo;
    Voltage c_hi;

    friend bool operator==(const ChaoticRange&, const ChaoticRange&) = default;
};

/// Maximal runs of consecutive grid points with lambda > 0.
std::vector<ChaoticRange> find_chaotic_ranges(std::span<const LyapunovEstimate> estimates);

/// CSV writers: `c,sample` and `c,lambda,n,method`.
void write_bifurcation_csv(std::ostream& out, const BifurcationScan& scan);
void write_lyapunov_csv(std::ostream& out, std::span<const LyapunovEstimate> estimates);

}  // namespace dpccm
