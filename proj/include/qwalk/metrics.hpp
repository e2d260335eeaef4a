#pragma once

// Probability distributions and the scalar figures of merit: mean position,
// variance, squared-Bhattacharyya similarity, and the classical baseline.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "state.hpp"

namespace qwalk {

struct Distribution {
    int step = 0;
    std::map<Site, double> probs;

    double total() const {
        double s = 0.0;
        for (const auto& [site, p] : probs) s += p;
        return s;
    }
};

template <std::size_t Dim>
Distribution distribution(const SparseState<Dim>& state) {
    Distribution d;
    d.step = state.step_count;
    for (const auto& [site, v] : state.amps) {
        double p = vec_norm_sq(v);
        if (p > 0.0) d.probs[site] = p;
    }
    return d;
}

inline Distribution distribution(const JointState& state) {
    Distribution d;
    d.step = state.step_count;
    for (const auto& [site, v] : state.amps) {
        double p = vec_norm_sq(v);
        if (p > 0.0) d.probs[site] = p;
    }
    return d;
}

inline std::pair<double, double> mean(const Distribution& d) {
    double mx = 0.0, my = 0.0;
    for (const auto& [site, p] : d.probs) {
        mx += p * site.x;
        my += p * site.y;
    }
    return {mx, my};
}

inline double variance(const Distribution& d) {
    auto [mx, my] = mean(d);
    double v = 0.0;
    for (const auto& [site, p] : d.probs) {
        double dx = site.x - mx, dy = site.y - my;
        v += p * (dx * dx + dy * dy);
    }
    return v;
}

// S = (sum_ij sqrt(P_ij Q_ij))^2 over the union of supports.
inline double similarity(const Distribution& p, const Distribution& q) {
    double b = 0.0;
    for (const auto& [site, pp] : p.probs) {
        auto it = q.probs.find(site);
        if (it != q.probs.end()) b += std::sqrt(pp * it->second);
    }
    return b * b;
}

// Product of two independent fair +-1 random walks after n steps.
inline Distribution classical_distribution(int n) {
    if (n < 0) throw std::invalid_argument("classical_distribution: n must be >= 0");
    // binomial row C(n,k) fits in uint64 well past n = 60
    std::map<int, double> marginal;
    double scale = std::pow(0.5, n);
    std::uint64_t c = 1;
    for (int k = 0; k <= n; ++k) {
        marginal[2 * k - n] = static_cast<double>(c) * scale;
        c = c * (n - k) / (k + 1);
    }
    Distribution d;
    d.step = n;
    for (const auto& [x, px] : marginal)
        for (const auto& [y, py] : marginal) d.probs[Site{x, y}] = px * py;
    return d;
}

// Largest absolute per-site difference over the union of supports.
inline double max_site_difference(const Distribution& p, const Distribution& q) {
    double worst = 0.0;
    for (const auto& [site, pp] : p.probs) {
        auto it = q.probs.find(site);
        double qq = it == q.probs.end() ? 0.0 : it->second;
        worst = std::max(worst, std::abs(pp - qq));
    }
    for (const auto& [site, qq] : q.probs)
        if (!p.probs.count(site)) worst = std::max(worst, qq);
    return worst;
}

}  // namespace qwalk
