// SPDX-License-Identifier: Apache-2.0
#include "dpccm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "dpccm/error.hpp"
#include "dpccm/parallel.hpp"
#include "text_util.hpp"

namespace dpccm {

std::string_view to_string(LyapunovMethod method) {
    return method == LyapunovMethod::derivative ? "derivative" : "divergence";
}

namespace {

Voltage resolve_start(const MapConfig& cfg, Voltage x0) { return x0 < 0.0 ? kDefaultStartFraction * cfg.vdd : x0; }

// Walks the observable trajectory one oscillator iteration at a time. For the
// cascade the seed oscillator is advanced first and its v2, transformed, is
// the control of the two controlled-map applications that follow.
class Walker {
public:
    Walker(const MapConfig& cfg, const Subject& subject, Voltage c, Voltage x0) : cfg_(cfg), x_(x0), c_(c) {
        if (const auto* cascade = std::get_if<CascadeSubject>(&subject)) {
            cascade->transform.validate();
            transform_ = cascade->transform;
            cascade_ = true;
            seed_ = OscillatorState{x0, c, 0};
            c_ = transform_eval(transform_, x0);
        }
    }

    void next_control() {
        if (!cascade_) return;
        seed_ = oscillator_step(cfg_, seed_).next;
        c_ = transform_eval(transform_, seed_.x);
    }

    Voltage apply(Voltage x) const { return map_eval(cfg_, x, c_); }

    void skip(std::uint64_t iterations) {
        for (std::uint64_t i = 0; i < iterations; ++i) {
            next_control();
            x_ = apply(apply(x_));
        }
    }

    Voltage& x() { return x_; }
    Voltage c() const { return c_; }

private:
    const MapConfig& cfg_;
    Voltage x_;
    Voltage c_;
    bool cascade_ = false;
    LinearTransform transform_{};
    OscillatorState seed_{};
};

Voltage nudge(const MapConfig& cfg, Voltage x) {
    return x + kBreakpointNudge <= cfg.vdd ? x + kBreakpointNudge : x - kBreakpointNudge;
}

void require_iterations(std::uint64_t n) {
    if (n < kMinLyapunovIterations)
        throw UsageError("Lyapunov estimate needs n >= " + std::to_string(kMinLyapunovIterations));
}

}  // namespace

std::vector<Voltage> scan_grid(const MapConfig& cfg, const ScanRange& range) {
    if (range.steps < 2) throw UsageError("scan needs at least 2 steps");
    if (!(range.c_max >= range.c_min)) throw UsageError("scan range requires c_max >= c_min");
    if (range.c_min < 0.0 || range.c_max > cfg.vdd) throw UsageError("scan range must lie within [0, vdd]");
    std::vector<Voltage> grid(range.steps);
    const double step = (range.c_max - range.c_min) / static_cast<double>(range.steps - 1);
    for (std::size_t i = 0; i < range.steps; ++i) grid[i] = range.c_min + step * static_cast<double>(i);
    grid.back() = range.c_max;
    return grid;
}

BifurcationScan bifurcation_scan(const MapConfig& cfg, const Subject& subject, const ScanRange& range,
                                 std::uint64_t transient, std::size_t samples_per_c, Voltage x0,
                                 unsigned threads) {
    if (samples_per_c < 1) throw UsageError("bifurcation scan needs samples_per_c >= 1");
    x0 = resolve_start(cfg, x0);
    BifurcationScan scan;
    scan.c_values = scan_grid(cfg, range);
    scan.transient = transient;
    scan.samples_per_c = samples_per_c;
    scan.samples.resize(scan.c_values.size());
    parallel_for(scan.c_values.size(), threads, [&](std::size_t i) {
        Walker walk(cfg, subject, scan.c_values[i], x0);
        walk.skip(transient);
        auto& out = scan.samples[i];
        out.reserve(samples_per_c);
        while (out.size() < samples_per_c) {
            walk.next_control();
            for (int k = 0; k < 2 && out.size() < samples_per_c; ++k) {
                walk.x() = walk.apply(walk.x());
                out.push_back(walk.x());
            }
        }
    });
    return scan;
}

LyapunovEstimate lyapunov_derivative(const MapConfig& cfg, const Subject& subject, Voltage c, std::uint64_t n,
                                     std::uint64_t transient, Voltage x0) {
    require_iterations(n);
    Walker walk(cfg, subject, c, resolve_start(cfg, x0));
    walk.skip(transient);
    const std::uint64_t budget = n / 100;
    std::uint64_t nudges = 0;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        walk.next_control();
        for (int k = 0; k < 2; ++k) {
            Voltage& x = walk.x();
            double slope;
            bool kink = false;
            try {
                slope = map_slope(cfg, x, walk.c());
            } catch (const BreakpointError&) {
                slope = 0.0;
                kink = true;
            }
            if (slope == 0.0) {
                const Voltage moved = nudge(cfg, x);
                const double moved_slope = map_slope(cfg, moved, walk.c());
                if (kink || moved_slope != 0.0) {
                    if (++nudges > budget) {
                        std::ostringstream msg;
                        msg << "trajectory hit a kink or critical point more than " << budget
                            << " times at c = " << c << " V";
                        throw NumericalError(msg.str());
                    }
                    x = moved;
                    slope = moved_slope;
                }
            }
            // A flat stretch (slope 0 on both sides) contributes the smallest
            // normal double so the estimate stays finite and negative.
            sum += std::log(std::max(std::abs(slope), std::numeric_limits<double>::min()));
            x = walk.apply(x);
        }
    }
    return {c, sum / static_cast<double>(2 * n), 2 * n, LyapunovMethod::derivative, nudges};
}

LyapunovEstimate lyapunov_divergence(const MapConfig& cfg, const Subject& subject, Voltage c, std::uint64_t n,
                                     double eps, Voltage x0, std::uint64_t transient) {
    require_iterations(n);
    if (!(eps >= 1e-12 && eps <= 1e-6)) throw UsageError("divergence eps must lie in [1e-12, 1e-6] V");
    Walker walk(cfg, subject, c, resolve_start(cfg, x0));
    walk.skip(transient);
    auto companion_of = [&](Voltage x, double direction) {
        Voltage y = x + direction * eps;
        if (y < 0.0 || y > cfg.vdd) y = x - direction * eps;
        return y;
    };
    Voltage y = companion_of(walk.x(), 1.0);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        walk.next_control();
        for (int k = 0; k < 2; ++k) {
            const Voltage fx = walk.apply(walk.x());
            const Voltage fy = walk.apply(y);
            const double d = std::abs(fy - fx);
            if (d == 0.0) {
                std::ostringstream msg;
                msg << "trajectories merged at c = " << c << " V (degenerate orbit)";
                throw NumericalError(msg.str());
            }
            sum += std::log(d / eps);
            walk.x() = fx;
            y = companion_of(fx, fy >= fx ? 1.0 : -1.0);
        }
    }
    return {c, sum / static_cast<double>(2 * n), 2 * n, LyapunovMethod::divergence, 0};
}

std::vector<LyapunovEstimate> lyapunov_scan(const MapConfig& cfg, const Subject& subject, const ScanRange& range,
                                            const LyapunovScanOptions& options) {
    const auto grid = scan_grid(cfg, range);
    std::vector<LyapunovEstimate> out(grid.size());
    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        out[i] = options.method == LyapunovMethod::derivative
                     ? lyapunov_derivative(cfg, subject, grid[i], options.n, options.transient, options.x0)
                     : lyapunov_divergence(cfg, subject, grid[i], options.n, options.eps, options.x0,
                                           options.transient);
    });
    return out;
}

std::vector<ChaoticRange> find_chaotic_ranges(std::span<const LyapunovEstimate> estimates) {
    std::vector<ChaoticRange> ranges;
    bool open = false;
    for (const auto& e : estimates) {
        if (e.lambda > 0.0) {
            if (!open) ranges.push_back({e.c, e.c});
            ranges.back().c_hi = e.c;
            open = true;
        } else {
            open = false;
        }
    }
    return ranges;
}

void write_bifurcation_csv(std::ostream& out, const BifurcationScan& scan) {
    out << "c,sample\n";
    for (std::size_t i = 0; i < scan.c_values.size(); ++i) {
        const auto c = detail::format_double(scan.c_values[i]);
        for (Voltage v : scan.samples[i]) out << c << ',' << detail::format_double(v) << '\n';
    }
}

void write_lyapunov_csv(std::ostream& out, std::span<const LyapunovEstimate> estimates) {
    out << "c,lambda,n,method\n";
    for (const auto& e : estimates)
        out << detail::format_double(e.c) << ',' << detail::format_double(e.lambda) << ',' << e.n << ','
            << to_string(e.method) << '\n';
}

}  // namespace dpccm
