#pragma once

// Sparse walker states on the 2D integer lattice with a 2- or 4-level coin.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

using cxd = std::complex<double>;

inline constexpr double kNormTol = 1e-12;
// Sites whose coin vector falls below this norm are dropped after each step.
inline constexpr double kPruneTol = 1e-15;

struct Site {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Site&, const Site&) = default;
};

template <std::size_t Dim>
using CoinVec = std::array<cxd, Dim>;

using CoinVec2 = CoinVec<2>;
using CoinVec4 = CoinVec<4>;

template <std::size_t Dim>
double vec_norm_sq(const CoinVec<Dim>& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

// Named polarisation coin states in the |H>,|V> basis.
inline CoinVec2 named_coin(char label) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (label) {
        case 'H': return {cxd{1, 0}, cxd{0, 0}};
        case 'V': return {cxd{0, 0}, cxd{1, 0}};
        case 'D': return {cxd{s, 0}, cxd{s, 0}};
        case 'A': return {cxd{s, 0}, cxd{-s, 0}};
        case 'L': return {cxd{s, 0}, cxd{0, s}};
        case 'R': return {cxd{s, 0}, cxd{0, -s}};
        default:
            throw std::invalid_argument(std::string("unknown coin label: ") + label);
    }
}

// Sparse state: lattice site -> coin amplitude vector. Value type; operations
// elsewhere return new states rather than mutating shared ones.
template <std::size_t Dim>
struct SparseState {
    static constexpr std::size_t coin_dim = Dim;
    std::map<Site, CoinVec<Dim>> amps;
    int step_count = 0;

    double total_norm() const {
        double s = 0.0;
        for (const auto& [site, v] : amps) s += vec_norm_sq(v);
        return s;
    }

    void prune() {
        for (auto it = amps.begin(); it != amps.end();) {
            if (vec_norm_sq(it->second) <= kPruneTol * kPruneTol)
                it = amps.erase(it);
            else
                ++it;
        }
    }
};

using WalkState2 = SparseState<2>;
using WalkState4 = SparseState<4>;

// Walker tensored with an ancilla qubit: 4 amplitudes per site, index = 2*ancilla + coin.
struct JointState {
    std::map<Site, CoinVec4> amps;
    int step_count = 0;

    double total_norm() const {
        double s = 0.0;
        for (const auto& [site, v] : amps) s += vec_norm_sq(v);
        return s;
    }

    void prune() {
        for (auto it = amps.begin(); it != amps.end();) {
            if (vec_norm_sq(it->second) <= kPruneTol * kPruneTol)
                it = amps.erase(it);
            else
                ++it;
        }
    }
};

template <std::size_t Dim>
SparseState<Dim> localized_state(const CoinVec<Dim>& coin, Site origin = {0, 0}) {
    if (std::abs(vec_norm_sq(coin) - 1.0) > kNormTol)
        throw std::invalid_argument("localized_state: coin vector is not unit norm");
    SparseState<Dim> s;
    s.amps[origin] = coin;
    return s;
}

template <class State>
double total_norm(const State& s) {
    return s.total_norm();
}

inline cxd inner(const CoinVec2& a, const CoinVec2& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

// Convex mixture of pure coin states, weights summing to 1.
using CoinEnsemble = std::vector<std::pair<double, CoinVec2>>;

}  // namespace qwalk
