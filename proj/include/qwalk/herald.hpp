#pragma once

// Two-qubit source states (pure Bell, Werner noise), Alice-side projection and
// heralded-coin extraction, plus concurrence and fidelity. Basis order is
// |HH>,|HV>,|VH>,|VV> with Alice first.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

#include "state.hpp"

namespace qwalk {

using Mat4cd = Eigen::Matrix4cd;
using Mat2cd = Eigen::Matrix2cd;

struct TwoQubitDensity {
    Mat4cd rho;
};

inline CoinVec4 bell_phi_plus_vector() {
    const double s = 1.0 / std::sqrt(2.0);
    return {cxd{s, 0}, cxd{0, 0}, cxd{0, 0}, cxd{s, 0}};
}

inline TwoQubitDensity bell_phi_plus() {
    Eigen::Vector4cd v;
    auto b = bell_phi_plus_vector();
    v << b[0], b[1], b[2], b[3];
    return {v * v.adjoint()};
}

// p |Phi+><Phi+| + (1-p) I/4
inline TwoQubitDensity werner(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner: p must be in [0,1]");
    return {p * bell_phi_plus().rho + (1.0 - p) * 0.25 * Mat4cd::Identity()};
}

inline void require_density(const TwoQubitDensity& d) {
    if ((d.rho - d.rho.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(d.rho.trace().real() - 1.0) > kNormTol)
        throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat4cd> es(d.rho);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

struct HeraldOutcome {
    double probability = 0.0;
    CoinEnsemble coin;
};

namespace detail {

// Eigen-decompose a 2x2 coin density into a pure ensemble, dropping
// negligible weights.
inline CoinEnsemble coin_ensemble_from_density(const Mat2cd& rho) {
    Eigen::SelfAdjointEigenSolver<Mat2cd> es(rho);
    CoinEnsemble out;
    double total = 0.0;
    for (int k = 0; k < 2; ++k) {
        double w = es.eigenvalues()(k);
        if (w > 1e-14) {
            auto v = es.eigenvectors().col(k);
            out.push_back({w, CoinVec2{v(0), v(1)}});
            total += w;
        }
    }
    for (auto& [w, coin] : out) w /= total;
    return out;
}

}  // namespace detail

// Alice projects onto |proj>; returns Tr[(P (x) I) rho] and the conditional
// coin state of Bob's photon as a pure ensemble.
inline HeraldOutcome herald_coin(const TwoQubitDensity& rho, const CoinVec2& proj) {
    if (std::abs(vec_norm_sq(proj) - 1.0) > kNormTol)
        throw std::invalid_argument("herald_coin: projector is not unit norm");
    Eigen::Vector2cd a;
    a << proj[0], proj[1];
    // conditional (unnormalized) coin density: sum_{ab} conj(a_a) a_b rho[(a,c),(b,c')]
    Mat2cd cond = Mat2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int c = 0; c < 2; ++c)
                for (int cp = 0; cp < 2; ++cp)
                    cond(c, cp) += std::conj(a(i)) * a(j) * rho.rho(2 * i + c, 2 * j + cp);
    HeraldOutcome out;
    out.probability = cond.trace().real();
    if (out.probability < 1e-15) throw std::runtime_error("herald_coin: impossible outcome");
    out.coin = detail::coin_ensemble_from_density(cond / out.probability);
    return out;
}

// Partial trace over Alice, returned as a pure coin ensemble.
inline CoinEnsemble reduced_coin(const TwoQubitDensity& rho) {
    Mat2cd red = Mat2cd::Zero();
    for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp)
            for (int a = 0; a < 2; ++a) red(c, cp) += rho.rho(2 * a + c, 2 * a + cp);
    return detail::coin_ensemble_from_density(red);
}

// Coin density matrix of an ensemble, for comparing mixtures.
inline Mat2cd ensemble_density(const CoinEnsemble& ensemble) {
    Mat2cd rho = Mat2cd::Zero();
    for (const auto& [w, coin] : ensemble) {
        Eigen::Vector2cd v;
        v << coin[0], coin[1];
        rho += w * v * v.adjoint();
    }
    return rho;
}

// Wootters concurrence: max(0, l1 - l2 - l3 - l4) with l_k the sorted square
// roots of the eigenvalues of rho (sy(x)sy) rho* (sy(x)sy).
inline double concurrence(const TwoQubitDensity& d) {
    Mat4cd yy = Mat4cd::Zero();
    // sigma_y (x) sigma_y
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    Mat4cd r = d.rho * yy * d.rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4cd> es(r);
    std::array<double, 4> lambda{};
    for (int k = 0; k < 4; ++k) lambda[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const TwoQubitDensity& rho, const TwoQubitDensity& sigma) {
    Eigen::SelfAdjointEigenSolver<Mat4cd> es(rho.rho);
    Mat4cd sqrt_rho = es.eigenvectors() *
                      es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      es.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Mat4cd> inner(sqrt_rho * sigma.rho * sqrt_rho);
    double t = inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return t * t;
}

}  // namespace qwalk
