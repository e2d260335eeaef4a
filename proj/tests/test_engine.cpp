#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qwalk/engine.hpp"

using namespace qwalk;

namespace {

Distribution from_oracle(const std::map<std::pair<int, int>, double>& d, int n) {
    Distribution out;
    out.step = n;
    for (const auto& [site, p] : d) out.probs[Site{site.first, site.second}] = p;
    return out;
}

const CoinVec4 kNonLocalizedCoin{0.5, -0.5, -0.5, 0.5};

}  // namespace

TEST_CASE("alternate walk, one step from |L>") {
    auto r = run(AlternateWalk{}, named_coin('L'), 1);
    const auto& d = r.per_step[1];
    REQUIRE(d.probs.size() == 4);
    for (int x : {-1, 1})
        for (int y : {-1, 1}) CHECK(d.probs.at(Site{x, y}) == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("alternate walk matches classical at n <= 2") {
    for (int n : {1, 2}) {
        auto r = run(AlternateWalk{}, named_coin('L'), n);
        CHECK(max_site_difference(r.per_step[n], classical_distribution(n)) < 1e-12);
    }
}

TEST_CASE("alternate walk agrees with the brute-force oracle") {
    for (int n : {3, 4, 6}) {
        auto ours = run(AlternateWalk{}, named_coin('L'), n).per_step[n];
        auto ref = from_oracle(oracle::alt_walk({oracle::cd(1 / std::sqrt(2.0), 0),
                                                 oracle::cd(0, 1 / std::sqrt(2.0))},
                                                n),
                               n);
        CHECK(max_site_difference(ours, ref) < 1e-13);
    }
}

TEST_CASE("grover walk, one step from coin |0>") {
    auto r = run(GroverWalk{}, CoinVec4{cxd{1, 0}, {}, {}, {}}, 1);
    const auto& d = r.per_step[1];
    REQUIRE(d.probs.size() == 4);
    for (int x : {-1, 1})
        for (int y : {-1, 1}) CHECK(d.probs.at(Site{x, y}) == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("grover walk norm after 10 steps") {
    auto r = run(GroverWalk{}, CoinVec4{cxd{1, 0}, {}, {}, {}}, 10);
    CHECK(std::abs(total_norm(r.final_state) - 1.0) < 1e-12);
}

TEST_CASE("alternate |R> equals the non-localized Grover walk") {
    // identity site mapping; no reflection needed under this shift convention
    for (int n = 1; n <= 10; ++n) {
        auto alt = run(AlternateWalk{}, named_coin('R'), n).per_step[n];
        auto gro = run(GroverWalk{}, kNonLocalizedCoin, n).per_step[n];
        CHECK(max_site_difference(alt, gro) < 1e-10);
    }
}

TEST_CASE("grover walk localizes for coin |0>") {
    // frozen from the dense oracle: P(0,0) at n = 20
    auto ref = oracle::grover_walk({oracle::cd(1, 0), {}, {}, {}}, 20);
    CHECK(ref.at({0, 0}) == Catch::Approx(0.34623672818997875).epsilon(1e-9));

    auto d = run(GroverWalk{}, CoinVec4{cxd{1, 0}, {}, {}, {}}, 20).per_step[20];
    CHECK(d.probs.at(Site{0, 0}) == Catch::Approx(0.34623672818997875).epsilon(1e-9));
}

TEST_CASE("run_joint: Phi+ marginal is maximally mixed at n = 0") {
    auto joint = joint_initial(CoinVec4{cxd{1 / std::sqrt(2.0), 0}, {}, {},
                                        cxd{1 / std::sqrt(2.0), 0}});
    // reduced coin density: sum over ancilla of |amp|^2 per coin index
    double p0 = 0.0, p1 = 0.0;
    for (const auto& [site, v] : joint.amps) {
        p0 += std::norm(v[0]) + std::norm(v[2]);
        p1 += std::norm(v[1]) + std::norm(v[3]);
    }
    CHECK(p0 == Catch::Approx(0.5).margin(1e-12));
    CHECK(p1 == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("delayed choice commutes with the walk") {
    const CoinVec4 phi_plus{cxd{1 / std::sqrt(2.0), 0}, {}, {}, cxd{1 / std::sqrt(2.0), 0}};
    for (char label : {'H', 'V', 'D', 'A', 'L', 'R'}) {
        for (int n = 1; n <= 6; ++n) {
            auto joint = run_joint(phi_plus, AlternateWalk{}, n).final_state;
            auto after = project_ancilla(joint, named_coin(label));
            CHECK(after.probability == Catch::Approx(0.5).margin(1e-12));

            // heralding |psi> on Phi+ prepares the conjugate coin
            auto proj = named_coin(label);
            CoinVec2 heralded{std::conj(proj[0]), std::conj(proj[1])};
            auto direct = run(AlternateWalk{}, heralded, n).per_step[n];
            CHECK(max_site_difference(distribution(after.state), direct) < 1e-12);
        }
    }
}

TEST_CASE("projection on |R> after Phi+ walk heralds |L>") {
    const CoinVec4 phi_plus{cxd{1 / std::sqrt(2.0), 0}, {}, {}, cxd{1 / std::sqrt(2.0), 0}};
    auto joint = run_joint(phi_plus, AlternateWalk{}, 4).final_state;
    auto after = project_ancilla(joint, named_coin('R'));
    auto l_run = run(AlternateWalk{}, named_coin('L'), 4).per_step[4];
    CHECK(max_site_difference(distribution(after.state), l_run) < 1e-12);
}

TEST_CASE("product-state ancilla projection has no effect") {
    // |H> (x) |H>: ancilla H, coin H
    auto joint = run_joint(CoinVec4{cxd{1, 0}, {}, {}, {}}, AlternateWalk{}, 2).final_state;
    auto direct = run(AlternateWalk{}, named_coin('H'), 2).per_step[2];
    for (char label : {'H', 'D', 'L'}) {
        auto after = project_ancilla(joint, named_coin(label));
        CHECK(max_site_difference(distribution(after.state), direct) < 1e-12);
    }
}

TEST_CASE("run_mixture") {
    SECTION("singleton ensemble equals the pure run") {
        auto mix = run_mixture({{1.0, named_coin('L')}}, 4);
        auto pure = run(AlternateWalk{}, named_coin('L'), 4).per_step;
        for (int n = 0; n <= 4; ++n) CHECK(max_site_difference(mix[n], pure[n]) < 1e-15);
    }
    SECTION("maximally mixed coin equals |L> and |R> runs") {
        auto mix = run_mixture({{0.5, named_coin('H')}, {0.5, named_coin('V')}}, 4);
        auto l = run(AlternateWalk{}, named_coin('L'), 4).per_step[4];
        auto r = run(AlternateWalk{}, named_coin('R'), 4).per_step[4];
        CHECK(max_site_difference(mix[4], l) < 1e-12);
        CHECK(max_site_difference(mix[4], r) < 1e-12);
    }
    SECTION("equivalent realizations of I/2 agree") {
        auto hv = run_mixture({{0.5, named_coin('H')}, {0.5, named_coin('V')}}, 4);
        auto da = run_mixture({{0.5, named_coin('D')}, {0.5, named_coin('A')}}, 4);
        for (int n = 0; n <= 4; ++n) CHECK(max_site_difference(hv[n], da[n]) < 1e-12);
    }
    SECTION("bad weights rejected") {
        CHECK_THROWS_AS(run_mixture({{0.7, named_coin('H')}, {0.7, named_coin('V')}}, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_mixture({{-0.5, named_coin('H')}, {1.5, named_coin('V')}}, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("generalized axis lists") {
    // X-only alternate walk never moves in y
    AlternateWalk x_only{{ShiftKind::X}, hadamard()};
    auto r = run(x_only, named_coin('L'), 5);
    for (const auto& [site, p] : r.per_step[5].probs) CHECK(site.y == 0);
    CHECK(std::abs(r.per_step[5].total() - 1.0) < 1e-12);
}
