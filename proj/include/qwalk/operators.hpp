#pragma once

// Coin unitaries and conditional shift operators.
//
// Shift conventions: coin index 0 moves to the smaller coordinate, the highest
// index to the larger one. For the 4-level coin the index bits are (x-bit,
// y-bit): 0 -> (x-1,y-1), 1 -> (x-1,y+1), 2 -> (x+1,y-1), 3 -> (x+1,y+1).

#include <cstdlib>
#include <stdexcept>

#include "state.hpp"

namespace qwalk {

template <std::size_t Dim>
using CoinMatrix = std::array<std::array<cxd, Dim>, Dim>;

using Mat2 = CoinMatrix<2>;
using Mat4 = CoinMatrix<4>;

template <std::size_t Dim>
CoinMatrix<Dim> identity_matrix() {
    CoinMatrix<Dim> m{};
    for (std::size_t i = 0; i < Dim; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Mat2{{{cxd{s, 0}, cxd{s, 0}}, {cxd{s, 0}, cxd{-s, 0}}}};
}

// Grover diffusion coin G = 2|s><s| - I on 4 levels.
inline Mat4 grover_coin() {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            m[i][j] = (i == j) ? cxd{-0.5, 0} : cxd{0.5, 0};
    return m;
}

template <std::size_t Dim>
double unitarity_defect(const CoinMatrix<Dim>& u) {
    double worst = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
        for (std::size_t j = 0; j < Dim; ++j) {
            cxd s = 0.0;
            for (std::size_t k = 0; k < Dim; ++k) s += std::conj(u[k][i]) * u[k][j];
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

template <std::size_t Dim>
void require_unitary(const CoinMatrix<Dim>& u) {
    if (unitarity_defect(u) > kNormTol)
        throw std::invalid_argument("coin matrix is not unitary");
}

template <std::size_t Dim>
CoinVec<Dim> matvec(const CoinMatrix<Dim>& m, const CoinVec<Dim>& v) {
    CoinVec<Dim> out{};
    for (std::size_t i = 0; i < Dim; ++i)
        for (std::size_t j = 0; j < Dim; ++j) out[i] += m[i][j] * v[j];
    return out;
}

enum class ShiftKind { X, Y, Grover };

// Displacement of a coin basis index under a shift.
inline Site shift_displacement(ShiftKind kind, std::size_t coin_index) {
    switch (kind) {
        case ShiftKind::X: return {coin_index == 0 ? -1 : +1, 0};
        case ShiftKind::Y: return {0, coin_index == 0 ? -1 : +1};
        case ShiftKind::Grover:
            return {(coin_index & 2) ? +1 : -1, (coin_index & 1) ? +1 : -1};
    }
    std::abort();
}

template <std::size_t Dim>
SparseState<Dim> apply_coin(const SparseState<Dim>& state, const CoinMatrix<Dim>& u) {
    SparseState<Dim> out;
    out.step_count = state.step_count;
    for (const auto& [site, v] : state.amps) out.amps[site] = matvec(u, v);
    return out;
}

// Coin unitary on the coin factor of an ancilla-joint state, identity on the ancilla.
inline JointState apply_coin(const JointState& state, const Mat2& u) {
    JointState out;
    out.step_count = state.step_count;
    for (const auto& [site, v] : state.amps) {
        CoinVec4 w{};
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t k = 0; k < 2; ++k) w[2 * a + c] += u[c][k] * v[2 * a + k];
        out.amps[site] = w;
    }
    return out;
}

inline WalkState2 apply_shift(const WalkState2& state, ShiftKind kind) {
    if (kind == ShiftKind::Grover)
        throw std::invalid_argument("Grover shift requires a 4-level coin");
    WalkState2 out;
    out.step_count = state.step_count;
    for (const auto& [site, v] : state.amps) {
        for (std::size_t c = 0; c < 2; ++c) {
            Site d = shift_displacement(kind, c);
            out.amps[Site{site.x + d.x, site.y + d.y}][c] += v[c];
        }
    }
    out.prune();
    return out;
}

inline WalkState4 apply_shift(const WalkState4& state, ShiftKind kind) {
    if (kind != ShiftKind::Grover)
        throw std::invalid_argument("X/Y shifts require a 2-level coin");
    WalkState4 out;
    out.step_count = state.step_count;
    for (const auto& [site, v] : state.amps) {
        for (std::size_t c = 0; c < 4; ++c) {
            Site d = shift_displacement(kind, c);
            out.amps[Site{site.x + d.x, site.y + d.y}][c] += v[c];
        }
    }
    out.prune();
    return out;
}

// Shift conditioned on the coin factor; ancilla rides along untouched.
inline JointState apply_shift(const JointState& state, ShiftKind kind) {
    if (kind == ShiftKind::Grover)
        throw std::invalid_argument("Grover shift requires a 4-level coin");
    JointState out;
    out.step_count = state.step_count;
    for (const auto& [site, v] : state.amps) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t c = 0; c < 2; ++c) {
                Site d = shift_displacement(kind, c);
                out.amps[Site{site.x + d.x, site.y + d.y}][2 * a + c] += v[2 * a + c];
            }
        }
    }
    out.prune();
    return out;
}

}  // namespace qwalk
