// SPDX-License-Identifier: Apache-2.0
//
// Statistics and constants follow NIST SP 800-22 rev. 1a (sections 2.1-2.6,
// 2.11-2.13) and the reference implementation sts-2.1.2.
#include "dpccm/nist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>

#include <fftw3.h>
#include <json.hpp>

#include "dpccm/error.hpp"
#include "dpccm/parallel.hpp"
#include "dpccm/special.hpp"

namespace dpccm::nist {

namespace {

void require_length(std::span<const std::uint8_t> bits, std::size_t min, const char* test) {
    if (bits.size() < min)
        throw UsageError(std::string(test) + " test needs at least " + std::to_string(min) + " bits, got " +
                         std::to_string(bits.size()));
}

int floor_log2(std::size_t n) {
    int r = -1;
    while (n) {
        n >>= 1;
        ++r;
    }
    return r;
}

// Counts of every overlapping m-bit pattern, wrapping around the end.
std::vector<std::uint64_t> pattern_counts(std::span<const std::uint8_t> bits, int m) {
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    if (m == 0) {
        counts[0] = bits.size();
        return counts;
    }
    const std::size_t n = bits.size();
    const std::uint32_t mask = (1u << m) - 1u;
    std::uint32_t word = 0;
    for (int k = 0; k < m - 1; ++k) word = (word << 1) | bits[static_cast<std::size_t>(k) % n];
    for (std::size_t i = 0; i < n; ++i) {
        word = ((word << 1) | bits[(i + static_cast<std::size_t>(m) - 1) % n]) & mask;
        ++counts[word];
    }
    return counts;
}

double psi_squared(std::span<const std::uint8_t> bits, int m) {
    if (m <= 0) return 0.0;
    const auto counts = pattern_counts(bits, m);
    double sum = 0.0;
    for (auto c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    const double n = static_cast<double>(bits.size());
    return sum * std::ldexp(1.0, m) / n - n;
}

double phi(std::span<const std::uint8_t> bits, int m) {
    if (m <= 0) return 0.0;
    const auto counts = pattern_counts(bits, m);
    const double n = static_cast<double>(bits.size());
    double sum = 0.0;
    for (auto c : counts)
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            sum += p * std::log(p);
        }
    return sum;
}

// FFTW planning is not thread-safe.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

double frequency(std::span<const std::uint8_t> bits) {
    require_length(bits, 100, "frequency");
    long long s = 0;
    for (auto b : bits) s += b ? 1 : -1;
    return dpccm::erfc(std::abs(static_cast<double>(s)) / std::sqrt(2.0 * static_cast<double>(bits.size())));
}

double block_frequency(std::span<const std::uint8_t> bits, std::size_t m) {
    require_length(bits, 100, "block frequency");
    if (m < 20 || m > bits.size()) throw UsageError("block frequency block size must lie in [20, n]");
    const std::size_t blocks = bits.size() / m;
    double chi = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t ones = 0;
        for (std::size_t k = 0; k < m; ++k) ones += bits[b * m + k];
        const double pi = static_cast<double>(ones) / static_cast<double>(m) - 0.5;
        chi += pi * pi;
    }
    chi *= 4.0 * static_cast<double>(m);
    return igammaq(static_cast<double>(blocks) / 2.0, chi / 2.0);
}

double runs(std::span<const std::uint8_t> bits) {
    require_length(bits, 100, "runs");
    const double n = static_cast<double>(bits.size());
    std::size_t ones = 0;
    for (auto b : bits) ones += b;
    const double pi = static_cast<double>(ones) / n;
    // Frequency prerequisite: tau = 2 / sqrt(n).
    if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
    std::size_t v = 1;
    for (std::size_t k = 1; k < bits.size(); ++k) v += bits[k] != bits[k - 1];
    const double num = std::abs(static_cast<double>(v) - 2.0 * n * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    return dpccm::erfc(num / den);
}

double longest_run(std::span<const std::uint8_t> bits) {
    require_length(bits, 128, "longest run");
    // Block size, class boundaries and class probabilities per SP 800-22
    // table 2.4; the three parameter sets apply from n = 128, 6272, 750000.
    struct Setting {
        std::size_t m;
        std::size_t lowest;  // runs <= lowest fall in class 0
        std::vector<double> pi;
    };
    static const Setting small{8, 1, {0.21484375, 0.3671875, 0.23046875, 0.1875}};
    static const Setting medium{
        128, 4, {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847}};
    static const Setting large{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
    const Setting& s = bits.size() < 6272 ? small : bits.size() < 750000 ? medium : large;
    const std::size_t k = s.pi.size() - 1;
    const std::size_t blocks = bits.size() / s.m;
    std::vector<std::size_t> v(s.pi.size(), 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t run = 0;
        std::size_t longest = 0;
        for (std::size_t j = 0; j < s.m; ++j) {
            run = bits[b * s.m + j] ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        const std::size_t cls = longest <= s.lowest ? 0 : std::min(longest - s.lowest, k);
        ++v[cls];
    }
    double chi = 0.0;
    const double nb = static_cast<double>(blocks);
    for (std::size_t i = 0; i <= k; ++i) {
        const double expected = nb * s.pi[i];
        chi += (static_cast<double>(v[i]) - expected) * (static_cast<double>(v[i]) - expected) / expected;
    }
    return igammaq(static_cast<double>(k) / 2.0, chi / 2.0);
}

double cumulative_sums(std::span<const std::uint8_t> bits, bool forward) {
    require_length(bits, 100, "cumulative sums");
    const long long n = static_cast<long long>(bits.size());
    long long s = 0;
    long long z = 0;
    for (long long i = 0; i < n; ++i) {
        const auto b = bits[static_cast<std::size_t>(forward ? i : n - 1 - i)];
        s += b ? 1 : -1;
        z = std::max(z, std::abs(s));
    }
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double zd = static_cast<double>(z);
    // Summation bounds use truncating integer division, as in sts-2.1.2.
    double sum1 = 0.0;
    for (long long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k)
        sum1 += normal_cdf(static_cast<double>(4 * k + 1) * zd / sqrt_n) -
                normal_cdf(static_cast<double>(4 * k - 1) * zd / sqrt_n);
    double sum2 = 0.0;
    for (long long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k)
        sum2 += normal_cdf(static_cast<double>(4 * k + 3) * zd / sqrt_n) -
                normal_cdf(static_cast<double>(4 * k + 1) * zd / sqrt_n);
    return std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
}

std::array<double, 2> serial(std::span<const std::uint8_t> bits, int m) {
    if (m < 2 || m > 24) throw UsageError("serial block length must lie in [2, 24]");
    if (bits.empty() || m >= floor_log2(bits.size()) - 2)
        throw UsageError("serial test with m = " + std::to_string(m) + " needs at least " +
                         std::to_string(std::size_t{1} << (m + 3)) + " bits");
    const double p0 = psi_squared(bits, m);
    const double p1 = psi_squared(bits, m - 1);
    const double p2 = psi_squared(bits, m - 2);
    const double del1 = p0 - p1;
    const double del2 = p0 - 2.0 * p1 + p2;
    return {igammaq(std::ldexp(1.0, m - 2), std::max(del1, 0.0) / 2.0),
            igammaq(std::ldexp(1.0, m - 3), std::max(del2, 0.0) / 2.0)};
}

double approximate_entropy(std::span<const std::uint8_t> bits, int m) {
    if (m < 1 || m > 24) throw UsageError("approximate entropy block length must lie in [1, 24]");
    if (bits.empty() || m >= floor_log2(bits.size()) - 5)
        throw UsageError("approximate entropy with m = " + std::to_string(m) + " needs at least " +
                         std::to_string(std::size_t{1} << (m + 6)) + " bits");
    const double n = static_cast<double>(bits.size());
    const double apen = phi(bits, m) - phi(bits, m + 1);
    const double chi = 2.0 * n * (std::log(2.0) - apen);
    return igammaq(std::ldexp(1.0, m - 1), std::max(chi, 0.0) / 2.0);
}

double dft(std::span<const std::uint8_t> bits) {
    require_length(bits, 1000, "discrete Fourier transform");
    const std::size_t n = bits.size();
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) in[i] = bits[i] ? 1.0 : -1.0;
    fftw_execute(plan);
    const double nd = static_cast<double>(n);
    // 95 % peak height threshold: sqrt(ln(1 / 0.05) n).
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * nd);
    std::size_t below = 0;
    for (std::size_t j = 0; j < n / 2; ++j)
        if (std::hypot(out[j][0], out[j][1]) < threshold) ++below;
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    const double expected = 0.95 * nd / 2.0;
    const double d = (static_cast<double>(below) - expected) / std::sqrt(nd * 0.95 * 0.05 / 4.0);
    return dpccm::erfc(std::abs(d) / std::sqrt(2.0));
}

std::string_view to_string(Kind kind) {
    switch (kind) {
    case Kind::frequency: return "frequency";
    case Kind::block_frequency: return "block_frequency";
    case Kind::runs: return "runs";
    case Kind::longest_run: return "longest_run";
    case Kind::cusum_forward: return "cusum_forward";
    case Kind::cusum_backward: return "cusum_backward";
    case Kind::serial: return "serial";
    case Kind::approx_entropy: return "approximate_entropy";
    case Kind::dft: return "dft";
    }
    return "?";
}

std::vector<double> pvalue(Kind kind, std::span<const std::uint8_t> bits, const Params& params) {
    switch (kind) {
    case Kind::frequency: return {frequency(bits)};
    case Kind::block_frequency: return {block_frequency(bits, params.block_frequency_m)};
    case Kind::runs: return {runs(bits)};
    case Kind::longest_run: return {longest_run(bits)};
    case Kind::cusum_forward: return {cumulative_sums(bits, true)};
    case Kind::cusum_backward: return {cumulative_sums(bits, false)};
    case Kind::serial: {
        const auto p = serial(bits, params.serial_m);
        return {p[0], p[1]};
    }
    case Kind::approx_entropy: return {approximate_entropy(bits, params.approx_entropy_m)};
    case Kind::dft: return {dft(bits)};
    }
    throw UsageError("unknown NIST test");
}

StreamPValues run_battery(std::span<const std::uint8_t> bits, const Params& params) {
    StreamPValues r;
    const auto s = serial(bits, params.serial_m);
    r.p = {frequency(bits),
           block_frequency(bits, params.block_frequency_m),
           cumulative_sums(bits, true),
           cumulative_sums(bits, false),
           runs(bits),
           longest_run(bits),
           dft(bits),
           approximate_entropy(bits, params.approx_entropy_m),
           s[0],
           s[1]};
    return r;
}

bool CampaignReport::pass() const noexcept {
    return std::all_of(per_test.begin(), per_test.end(), [](const TestTally& t) { return t.averaged || t.pass; });
}

std::size_t default_min_pass(std::size_t streams, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    if (streams == 0) return 0;
    const double m = static_cast<double>(streams);
    const double p = 1.0 - alpha;
    const double floor_rate = p - 3.0 * std::sqrt(p * alpha / m);
    return static_cast<std::size_t>(std::max(0.0, std::floor(m * floor_rate)));
}

CampaignReport tally(std::span<const StreamPValues> results, double alpha, std::size_t min_pass) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
    CampaignReport report;
    report.alpha = alpha;
    report.min_pass = min_pass;
    const std::size_t streams = results.size();
    for (std::size_t t = 0; t < kTestNames.size(); ++t) {
        TestTally row;
        row.test = std::string(kTestNames[t]);
        row.streams = streams;
        for (const auto& r : results) row.pass_count += r.p[t] > alpha;
        row.pass_rate = streams ? static_cast<double>(row.pass_count) / static_cast<double>(streams) : 0.0;
        row.pass = row.pass_count >= min_pass;
        report.per_test.push_back(std::move(row));
    }
    auto averaged = [&](const char* name, std::size_t a, std::size_t b) {
        TestTally row;
        row.test = name;
        row.streams = streams;
        row.averaged = true;
        row.pass_count = (report.per_test[a].pass_count + report.per_test[b].pass_count) / 2;
        row.pass_rate = (report.per_test[a].pass_rate + report.per_test[b].pass_rate) / 2.0;
        row.pass = report.per_test[a].pass && report.per_test[b].pass;
        report.per_test.push_back(std::move(row));
    };
    averaged("cumulative_sums*", 2, 3);
    averaged("serial*", 8, 9);
    return report;
}

CampaignReport campaign(std::span<const BitStream> streams, double alpha, std::size_t min_pass, const Params& params,
                        unsigned threads) {
    if (streams.empty()) throw UsageError("NIST campaign needs at least one stream");
    for (const auto& s : streams)
        if (s.size() != streams.front().size()) throw UsageError("NIST campaign streams must have equal lengths");
    std::vector<StreamPValues> results(streams.size());
    parallel_for(streams.size(), threads, [&](std::size_t i) { results[i] = run_battery(streams[i].unpack(), params); });
    return tally(results, alpha, min_pass);
}

std::string format_report(const CampaignReport& report, const std::string& label) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %10s %10s %8s\n", "NIST TEST", "Pass rate", "Passed", "Verdict");
    out << "# " << label << "  (alpha = " << report.alpha << ", min pass = " << report.min_pass << ")\n" << line;
    for (const auto& t : report.per_test) {
        std::snprintf(line, sizeof line, "%-22s %10.2f %10s %8s\n", t.test.c_str(), t.pass_rate,
                      t.averaged ? "" : (std::to_string(t.pass_count) + "/" + std::to_string(t.streams)).c_str(),
                      t.averaged ? "" : (t.pass ? "pass" : "FAIL"));
        out << line;
    }
    out << "(* arithmetic mean of the variants above)\n";
    return out.str();
}

std::string report_json(const CampaignReport& report) {
    nlohmann::ordered_json j;
    j["alpha"] = report.alpha;
    j["min_pass"] = report.min_pass;
    j["pass"] = report.pass();
    auto& rows = j["per_test"] = nlohmann::ordered_json::array();
    for (const auto& t : report.per_test) {
        nlohmann::ordered_json row{{"test", t.test},
                                   {"pass_count", t.pass_count},
                                   {"streams", t.streams},
                                   {"pass_rate", t.pass_rate},
                                   {"alpha", report.alpha}};
        if (t.averaged) row["averaged"] = true;
        else row["pass"] = t.pass;
        rows.push_back(std::move(row));
    }
    return j.dump(2);
}

bool diehard_census(std::span<const double> p_values) {
    std::size_t extremes = 0;
    for (double p : p_values) {
        const double rounded = std::round(p * 1e6) / 1e6;
        extremes += rounded == 0.0 || rounded == 1.0;
    }
    return extremes < 6;
}

}  // namespace dpccm::nist
