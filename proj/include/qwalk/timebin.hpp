#pragma once

// Time-multiplexed optical-loop model: lattice -> arrival-time grid, collision
// audit, lossy Monte Carlo photon detection, histogramming, and distribution
// reconstruction from the histogram.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <tuple>
#include <vector>

#include "metrics.hpp"

namespace qwalk {

struct DelayConfig {
    // optical delays in ns; defaults are the loop as built
    double L1 = 127.8;
    double L2 = 107.2;
    double L3 = 4.7;
    double L4 = 0.6;
    double Lc = 1.3;
    double eta_cycle = 0.207;   // per-cycle transmittance, BS split included
    double eta_det = 0.5;       // detector efficiency, applied once at exit
    double jitter_fwhm_ns = 0.6;
    double window_ns = 2.0;
    double bin_ps = 8.0;
    double accidental_rate = 0.0;  // background events per ns of histogram span
    // optional per-arm imbalance factors; 1 = balanced
    double t_L1 = 1.0, t_L2 = 1.0, t_L3 = 1.0, t_L4 = 1.0;

    void validate() const {
        if (!(L1 > L2 && L2 >= 0.0 && L3 > L4 && L4 >= 0.0))
            throw std::invalid_argument("delays must satisfy L1 > L2 >= 0 and L3 > L4 >= 0");
        if (!(eta_cycle > 0.0 && eta_cycle <= 1.0 && eta_det > 0.0 && eta_det <= 1.0))
            throw std::invalid_argument("efficiencies must lie in (0, 1]");
        if (window_ns <= 0.0 || bin_ps <= 0.0 || jitter_fwhm_ns < 0.0 || accidental_rate < 0.0)
            throw std::invalid_argument("bad timing parameter");
    }
};

struct GridEntry {
    int n = 0;
    Site site;
    double time_ns = 0.0;
};

struct TimeGrid {
    std::vector<GridEntry> entries;  // sorted by (n, x, y)
    double min_gap_ns = 0.0;         // smallest pairwise separation across all entries
};

// Arrival time of the (n, x, y) bin: k1 passes through L1 (x-bit up),
// n-k1 through L2, and likewise k3/L3, n-k3/L4 for y, plus n common paths.
inline double arrival_time(const DelayConfig& cfg, int n, int x, int y) {
    if (std::abs(x) > n || std::abs(y) > n || ((n + x) & 1) || ((n + y) & 1))
        throw std::invalid_argument("arrival_time: site violates the step-n parity lattice");
    int k1 = (n + x) / 2;
    int k3 = (n + y) / 2;
    return n * cfg.Lc + k1 * cfg.L1 + (n - k1) * cfg.L2 + k3 * cfg.L3 + (n - k3) * cfg.L4;
}

inline TimeGrid build_grid(const DelayConfig& cfg, int max_steps) {
    TimeGrid grid;
    for (int n = 0; n <= max_steps; ++n)
        for (int x = -n; x <= n; x += 2)
            for (int y = -n; y <= n; y += 2)
                grid.entries.push_back({n, Site{x, y}, arrival_time(cfg, n, x, y)});
    grid.min_gap_ns = std::numeric_limits<double>::infinity();
    std::vector<double> times;
    for (const auto& e : grid.entries) times.push_back(e.time_ns);
    std::sort(times.begin(), times.end());
    for (std::size_t i = 1; i < times.size(); ++i)
        grid.min_gap_ns = std::min(grid.min_gap_ns, times[i] - times[i - 1]);
    if (grid.entries.size() < 2) grid.min_gap_ns = std::numeric_limits<double>::infinity();
    return grid;
}

struct Collision {
    GridEntry a, b;
    double gap_ns = 0.0;
};

struct AuditResult {
    bool pass = true;
    std::vector<Collision> collisions;
};

inline AuditResult audit(const TimeGrid& grid, double min_gap_ns) {
    AuditResult r;
    auto sorted = grid.entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const GridEntry& a, const GridEntry& b) { return a.time_ns < b.time_ns; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        double gap = sorted[i + 1].time_ns - sorted[i].time_ns;
        // 1 fs slack so exact-by-construction separations pass
        if (gap < min_gap_ns - 1e-6) {
            r.pass = false;
            r.collisions.push_back({sorted[i], sorted[i + 1], gap});
        }
    }
    return r;
}

struct DetectionEvent {
    int step = 0;  // -1 for accidental background
    Site site;
    double time_ns = 0.0;
};

struct Histogram {
    double bin_ns = 0.0;
    std::vector<std::uint64_t> counts;  // bin i covers [i*bin_ns, (i+1)*bin_ns)

    void add(double t_ns) {
        if (t_ns < 0.0) return;
        auto i = static_cast<std::size_t>(t_ns / bin_ns);
        if (i >= counts.size()) counts.resize(i + 1, 0);
        ++counts[i];
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-photon RNG derived from the master seed; independent of execution order.
inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t index) {
    return std::mt19937_64(splitmix64(master ^ splitmix64(index)));
}

// Theory probabilities reweighted by per-arm transmittances along the path.
inline std::vector<std::pair<Site, double>> arm_weighted(const DelayConfig& cfg,
                                                         const Distribution& d) {
    std::vector<std::pair<Site, double>> out;
    double total = 0.0;
    int n = d.step;
    for (const auto& [site, p] : d.probs) {
        int k1 = (n + site.x) / 2, k3 = (n + site.y) / 2;
        double w = p * std::pow(cfg.t_L1, k1) * std::pow(cfg.t_L2, n - k1) *
                   std::pow(cfg.t_L3, k3) * std::pow(cfg.t_L4, n - k3);
        out.push_back({site, w});
        total += w;
    }
    for (auto& [site, w] : out) w /= total;
    return out;
}

}  // namespace detail

struct SimResult {
    std::vector<DetectionEvent> events;
    Histogram histogram;
    std::vector<std::uint64_t> counts_per_step;  // index n = 1..N
};

// Monte Carlo detection: each heralded photon exits and is detected after n
// loop cycles with probability eta_cycle^n * eta_det; the landing site is drawn
// from the step-n theory distribution, the arrival time from the grid plus
// Gaussian jitter. Accidentals are uniform over the histogram span.
inline SimResult detect_sim(const DelayConfig& cfg,
                            const std::vector<Distribution>& per_step_theory,
                            std::uint64_t photons, std::uint64_t seed) {
    cfg.validate();
    if (per_step_theory.empty()) throw std::invalid_argument("detect_sim: no theory distributions");
    if (photons < 1) throw std::invalid_argument("detect_sim: need at least one photon");

    const int max_n = per_step_theory.back().step;
    TimeGrid grid = build_grid(cfg, max_n);
    double latest = 0.0;
    for (const auto& e : grid.entries) latest = std::max(latest, e.time_ns);
    const double span_ns = latest + 3.0 * cfg.window_ns;
    const double sigma = cfg.jitter_fwhm_ns / (2.0 * std::sqrt(2.0 * std::log(2.0)));

    // detection-step CDF: P(n) = eta_cycle^n * eta_det
    std::vector<double> cum;
    double acc = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        acc += std::pow(cfg.eta_cycle, n) * cfg.eta_det;
        cum.push_back(acc);
    }

    // per-step cumulative site tables
    std::vector<std::vector<std::pair<Site, double>>> site_cdf(max_n + 1);
    for (const auto& d : per_step_theory) {
        if (d.step < 1 || d.step > max_n) continue;
        auto weighted = detail::arm_weighted(cfg, d);
        double c = 0.0;
        for (auto& [site, w] : weighted) {
            c += w;
            site_cdf[d.step].push_back({site, c});
        }
    }

    SimResult result;
    result.histogram.bin_ns = cfg.bin_ps / 1000.0;
    result.counts_per_step.assign(max_n, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, sigma);

    for (std::uint64_t i = 0; i < photons; ++i) {
        auto rng = detail::substream(seed, i);
        double u = unit(rng);
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) continue;  // photon lost in the loop
        int n = static_cast<int>(it - cum.begin()) + 1;
        if (site_cdf[n].empty()) continue;
        double v = unit(rng);
        Site site = site_cdf[n].back().first;
        for (const auto& [s, c] : site_cdf[n]) {
            if (v <= c) {
                site = s;
                break;
            }
        }
        double t = arrival_time(cfg, n, site.x, site.y);
        if (cfg.jitter_fwhm_ns > 0.0) t += jitter(rng);
        result.events.push_back({n, site, t});
        result.histogram.add(t);
        ++result.counts_per_step[n - 1];
    }

    if (cfg.accidental_rate > 0.0) {
        auto rng = detail::substream(seed, photons + 0x5eedULL);
        std::poisson_distribution<std::uint64_t> bg(cfg.accidental_rate * span_ns);
        std::uniform_real_distribution<double> when(0.0, span_ns);
        std::uint64_t k = bg(rng);
        for (std::uint64_t j = 0; j < k; ++j) {
            double t = when(rng);
            result.events.push_back({-1, Site{}, t});
            result.histogram.add(t);
        }
    }
    return result;
}

// Integrate counts in a window around each grid time, subtract the expected
// accidental background, clamp at zero, and normalize within each step.
inline std::vector<Distribution> reconstruct(const Histogram& histogram, const TimeGrid& grid,
                                             const DelayConfig& cfg) {
    cfg.validate();
    if (!audit(grid, cfg.window_ns).pass)
        throw std::runtime_error("reconstruct: grid windows overlap at this window width");

    int max_n = 0;
    for (const auto& e : grid.entries) max_n = std::max(max_n, e.n);

    std::vector<Distribution> out(max_n + 1);
    for (int n = 0; n <= max_n; ++n) out[n].step = n;

    const double expected_bg = cfg.accidental_rate * cfg.window_ns;
    for (const auto& e : grid.entries) {
        double lo = e.time_ns - 0.5 * cfg.window_ns;
        double hi = e.time_ns + 0.5 * cfg.window_ns;
        double counts = 0.0;
        auto first = static_cast<std::int64_t>(std::floor(std::max(0.0, lo) / histogram.bin_ns));
        for (std::int64_t b = first; b < static_cast<std::int64_t>(histogram.counts.size()); ++b) {
            double bin_lo = b * histogram.bin_ns;
            if (bin_lo >= hi) break;
            if (bin_lo >= lo) counts += static_cast<double>(histogram.counts[b]);
        }
        out[e.n].probs[e.site] = std::max(0.0, counts - expected_bg);
    }
    for (auto& d : out) {
        double total = d.total();
        if (total > 0.0)
            for (auto& [site, p] : d.probs) p /= total;
        std::erase_if(d.probs, [](const auto& kv) { return kv.second == 0.0; });
    }
    return out;
}

}  // namespace qwalk
