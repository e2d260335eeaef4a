#include <catch2/catch_amalgamated.hpp>

#include "qwalk/engine.hpp"
#include "qwalk/timebin.hpp"

using namespace qwalk;

TEST_CASE("arrival_time with the as-built delays") {
    DelayConfig cfg;
    CHECK(arrival_time(cfg, 1, 1, 1) == Catch::Approx(133.8).margin(1e-9));
    CHECK(arrival_time(cfg, 0, 0, 0) == 0.0);

    // X neighbors at fixed (n, y) differ by L1 - L2 = 20.6 ns
    CHECK(arrival_time(cfg, 2, 2, 0) - arrival_time(cfg, 2, 0, 0) ==
          Catch::Approx(20.6).margin(1e-9));
    // Y neighbors at fixed (n, x) differ by L3 - L4 = 4.1 ns
    CHECK(arrival_time(cfg, 2, 0, 2) - arrival_time(cfg, 2, 0, 0) ==
          Catch::Approx(4.1).margin(1e-9));

    CHECK_THROWS_AS(arrival_time(cfg, 2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(arrival_time(cfg, 2, 4, 0), std::invalid_argument);
}

TEST_CASE("build_grid counts and latest arrival") {
    DelayConfig cfg;
    auto g2 = build_grid(cfg, 2);
    CHECK(g2.entries.size() == 1 + 4 + 9);

    auto g6 = build_grid(cfg, 6);
    for (int n = 0; n <= 6; ++n) {
        auto count = std::count_if(g6.entries.begin(), g6.entries.end(),
                                   [n](const GridEntry& e) { return e.n == n; });
        CHECK(count == (n + 1) * (n + 1));
    }

    double latest = 0.0;
    for (const auto& e : build_grid(cfg, 4).entries) latest = std::max(latest, e.time_ns);
    CHECK(std::abs(latest - 535.4) < 0.5);  // computed 535.2 from the rounded delays
}

TEST_CASE("audit") {
    DelayConfig cfg;
    CHECK(audit(build_grid(cfg, 4), 4.1).pass);

    auto bad = audit(build_grid(cfg, 6), 4.1);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.collisions.empty());

    TimeGrid single;
    single.entries.push_back({0, Site{0, 0}, 0.0});
    CHECK(audit(single, 100.0).pass);
}

TEST_CASE("detect_sim is deterministic for a fixed seed") {
    DelayConfig cfg;
    cfg.jitter_fwhm_ns = 0.0;
    auto theory = run_mixture({{1.0, named_coin('L')}}, 3);
    auto a = detect_sim(cfg, theory, 20000, 42);
    auto b = detect_sim(cfg, theory, 20000, 42);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].step == b.events[i].step);
        CHECK(a.events[i].time_ns == b.events[i].time_ns);
    }
    auto c = detect_sim(cfg, theory, 20000, 43);
    bool differs = a.events.size() != c.events.size();
    for (std::size_t i = 0; !differs && i < a.events.size(); ++i)
        differs = a.events[i].time_ns != c.events[i].time_ns;
    CHECK(differs);
}

TEST_CASE("zero jitter puts every event on a grid time") {
    DelayConfig cfg;
    cfg.jitter_fwhm_ns = 0.0;
    auto theory = run_mixture({{1.0, named_coin('L')}}, 3);
    auto grid = build_grid(cfg, 3);
    auto sim = detect_sim(cfg, theory, 5000, 1);
    for (const auto& e : sim.events) {
        bool on_grid = false;
        for (const auto& g : grid.entries)
            if (std::abs(g.time_ns - e.time_ns) < 1e-12) on_grid = true;
        REQUIRE(on_grid);
    }
}

TEST_CASE("per-step counts decay like eta_cycle") {
    DelayConfig cfg;
    auto theory = run_mixture({{1.0, named_coin('L')}}, 3);
    auto sim = detect_sim(cfg, theory, 400000, 7);
    for (int n = 1; n < 3; ++n) {
        double ratio = static_cast<double>(sim.counts_per_step[n]) / sim.counts_per_step[n - 1];
        double expect = cfg.eta_cycle;
        // 3 standard errors of the binomial ratio estimate
        double se = 3.0 * std::sqrt(expect / sim.counts_per_step[n - 1]);
        CHECK(std::abs(ratio - expect) < se);
    }
}

TEST_CASE("window containment with 0.6 ns jitter and 2 ns window") {
    DelayConfig cfg;
    auto theory = run_mixture({{1.0, named_coin('L')}}, 2);
    auto sim = detect_sim(cfg, theory, 200000, 11);
    std::size_t inside = 0;
    for (const auto& e : sim.events) {
        double t = arrival_time(cfg, e.step, e.site.x, e.site.y);
        if (std::abs(e.time_ns - t) <= 0.5 * cfg.window_ns) ++inside;
    }
    CHECK(static_cast<double>(inside) / sim.events.size() >= 0.99);
}

TEST_CASE("reconstruct round trip") {
    DelayConfig cfg;
    cfg.eta_cycle = 0.6;  // lower loss so step 4 collects >= 1e4 events cheaply
    auto theory = run_mixture({{1.0, named_coin('L')}}, 4);
    auto grid = build_grid(cfg, 4);
    auto sim = detect_sim(cfg, theory, 400000, 5);
    REQUIRE(sim.counts_per_step[3] >= 10000);
    auto reco = reconstruct(sim.histogram, grid, cfg);
    for (int n = 1; n <= 4; ++n)
        CHECK(similarity(theory[n], reco[n]) >= 0.98);
}

TEST_CASE("all counts in one bin reconstruct to a point mass") {
    DelayConfig cfg;
    Histogram h;
    h.bin_ns = cfg.bin_ps / 1000.0;
    double t = arrival_time(cfg, 1, 1, 1);
    for (int k = 0; k < 100; ++k) h.add(t);
    auto reco = reconstruct(h, build_grid(cfg, 1), cfg);
    CHECK(reco[1].probs.at(Site{1, 1}) == Catch::Approx(1.0).margin(1e-12));
    CHECK(reco[1].probs.size() == 1);
}

TEST_CASE("pure accidental background yields low similarity") {
    DelayConfig cfg;
    cfg.accidental_rate = 0.5;
    auto theory = run_mixture({{1.0, named_coin('L')}}, 2);
    // photons that never survive: eta as small as validation allows, so the
    // histogram is essentially background
    DelayConfig starved = cfg;
    starved.eta_cycle = 1e-6;
    auto sim = detect_sim(starved, theory, 1000, 3);
    // reconstruct without background subtraction to see the flat profile
    DelayConfig no_corr = starved;
    no_corr.accidental_rate = 0.0;
    auto reco = reconstruct(sim.histogram, build_grid(cfg, 2), no_corr);
    if (reco[2].total() > 0.0) CHECK(similarity(theory[2], reco[2]) < 0.9);
}

TEST_CASE("overlapping windows are rejected") {
    DelayConfig cfg;
    auto grid = build_grid(cfg, 6);  // collides at 4.1 ns spacing < window feasible
    Histogram h;
    h.bin_ns = cfg.bin_ps / 1000.0;
    h.add(10.0);
    cfg.window_ns = 30.0;
    CHECK_THROWS_AS(reconstruct(h, grid, cfg), std::runtime_error);
}

TEST_CASE("config validation") {
    DelayConfig cfg;
    cfg.L2 = 200.0;  // violates L1 > L2
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    DelayConfig cfg2;
    cfg2.eta_cycle = 0.0;
    CHECK_THROWS_AS(cfg2.validate(), std::invalid_argument);
}
