#pragma once

// Walk composition: alternate-direction walks with a qubit coin, the standard
// 4-level Grover walk, ancilla-joint (delayed-choice) evolution, and mixed-coin
// ensembles. One step n is a full pass over all axes (X then Y by default).

#include <variant>
#include <vector>

#include "metrics.hpp"
#include "operators.hpp"

namespace qwalk {

struct AlternateWalk {
    std::vector<ShiftKind> axes{ShiftKind::X, ShiftKind::Y};
    Mat2 coin = hadamard();
};

struct GroverWalk {
    Mat4 coin = grover_coin();
};

using WalkKind = std::variant<AlternateWalk, GroverWalk>;

// One full step: S_axis (coin x) for each axis in order.
inline WalkState2 alternate_step(const WalkState2& state, const AlternateWalk& kind) {
    if (kind.axes.empty()) throw std::invalid_argument("alternate walk needs at least one axis");
    WalkState2 s = state;
    for (ShiftKind axis : kind.axes) s = apply_shift(apply_coin(s, kind.coin), axis);
    ++s.step_count;
    return s;
}

inline WalkState2 alternate_step(const WalkState2& state, const Mat2& coin = hadamard()) {
    return alternate_step(state, AlternateWalk{{ShiftKind::X, ShiftKind::Y}, coin});
}

inline WalkState4 grover_step(const WalkState4& state, const Mat4& coin = grover_coin()) {
    WalkState4 s = apply_shift(apply_coin(state, coin), ShiftKind::Grover);
    ++s.step_count;
    return s;
}

inline JointState joint_step(const JointState& state, const AlternateWalk& kind) {
    if (kind.axes.empty()) throw std::invalid_argument("alternate walk needs at least one axis");
    JointState s = state;
    for (ShiftKind axis : kind.axes) s = apply_shift(apply_coin(s, kind.coin), axis);
    ++s.step_count;
    return s;
}

template <class State>
struct RunResult {
    State final_state;
    std::vector<Distribution> per_step;  // index n = 0..steps
};

inline RunResult<WalkState2> run(const AlternateWalk& kind, const CoinVec2& coin, int steps) {
    WalkState2 s = localized_state(coin);
    RunResult<WalkState2> r;
    r.per_step.push_back(distribution(s));
    for (int n = 0; n < steps; ++n) {
        s = alternate_step(s, kind);
        r.per_step.push_back(distribution(s));
    }
    r.final_state = std::move(s);
    return r;
}

inline RunResult<WalkState4> run(const GroverWalk& kind, const CoinVec4& coin, int steps) {
    WalkState4 s = localized_state(coin);
    RunResult<WalkState4> r;
    r.per_step.push_back(distribution(s));
    for (int n = 0; n < steps; ++n) {
        s = grover_step(s, kind.coin);
        r.per_step.push_back(distribution(s));
    }
    r.final_state = std::move(s);
    return r;
}

// Joint walker+ancilla evolution from a pure two-qubit state
// (basis |HH>,|HV>,|VH>,|VV>, ancilla first).
inline JointState joint_initial(const CoinVec4& two_qubit) {
    if (std::abs(vec_norm_sq(two_qubit) - 1.0) > kNormTol)
        throw std::invalid_argument("joint_initial: two-qubit vector is not unit norm");
    JointState s;
    s.amps[Site{0, 0}] = two_qubit;
    return s;
}

inline RunResult<JointState> run_joint(const CoinVec4& two_qubit, const AlternateWalk& kind,
                                       int steps) {
    JointState s = joint_initial(two_qubit);
    RunResult<JointState> r;
    r.per_step.push_back(distribution(s));
    for (int n = 0; n < steps; ++n) {
        s = joint_step(s, kind);
        r.per_step.push_back(distribution(s));
    }
    r.final_state = std::move(s);
    return r;
}

struct ProjectionResult {
    double probability = 0.0;
    WalkState2 state;  // normalized conditional walker state; empty if probability ~ 0
};

// Project the ancilla onto |proj>; returns the heralding probability and the
// normalized conditional walker state. An (almost) impossible outcome yields
// probability 0 and an empty state.
inline ProjectionResult project_ancilla(const JointState& joint, const CoinVec2& proj) {
    if (std::abs(vec_norm_sq(proj) - 1.0) > kNormTol)
        throw std::invalid_argument("project_ancilla: projector is not unit norm");
    ProjectionResult r;
    r.state.step_count = joint.step_count;
    for (const auto& [site, v] : joint.amps) {
        CoinVec2 w{};
        for (std::size_t c = 0; c < 2; ++c)
            w[c] = std::conj(proj[0]) * v[0 + c] + std::conj(proj[1]) * v[2 + c];
        double p = vec_norm_sq(w);
        if (p > 0.0) {
            r.state.amps[site] = w;
            r.probability += p;
        }
    }
    if (r.probability < 1e-15) {
        r.probability = 0.0;
        r.state.amps.clear();
        return r;
    }
    double scale = 1.0 / std::sqrt(r.probability);
    for (auto& [site, w] : r.state.amps)
        for (auto& a : w) a *= scale;
    return r;
}

inline void require_ensemble(const CoinEnsemble& ensemble) {
    double total = 0.0;
    for (const auto& [w, coin] : ensemble) {
        if (w < 0.0) throw std::invalid_argument("ensemble weight is negative");
        if (std::abs(vec_norm_sq(coin) - 1.0) > kNormTol)
            throw std::invalid_argument("ensemble coin is not unit norm");
        total += w;
    }
    if (std::abs(total - 1.0) > kNormTol)
        throw std::invalid_argument("ensemble weights do not sum to 1");
}

// Weighted mixture of pure-coin runs; exact for unitary evolution with a
// terminal measurement.
inline std::vector<Distribution> run_mixture(const CoinEnsemble& ensemble,
                                             const AlternateWalk& kind, int steps) {
    require_ensemble(ensemble);
    std::vector<Distribution> out(static_cast<std::size_t>(steps) + 1);
    for (int n = 0; n <= steps; ++n) out[n].step = n;
    for (const auto& [w, coin] : ensemble) {
        if (w == 0.0) continue;
        auto r = run(kind, coin, steps);
        for (int n = 0; n <= steps; ++n)
            for (const auto& [site, p] : r.per_step[n].probs) out[n].probs[site] += w * p;
    }
    return out;
}

inline std::vector<Distribution> run_mixture(const CoinEnsemble& ensemble, int steps) {
    return run_mixture(ensemble, AlternateWalk{}, steps);
}

}  // namespace qwalk
