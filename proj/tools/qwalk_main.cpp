// qwalk: 2D discrete-time quantum walk simulator and time-bin loop model.
//
// Subcommands: walk, compare, timebin audit, timebin simulate, heatmap.
// Exit codes: 0 success, 1 invalid input, 2 audit/constraint failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "qwalk/qwalk.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

qwalk::cxd parse_complex(std::string tok) {
    // forms: "1", "-0.5", "0.5i", "0.5+0.5i", "0.5-0.5i"
    std::erase(tok, ' ');
    if (tok.empty()) throw std::invalid_argument("empty complex literal");
    if (tok.back() != 'i') return {std::stod(tok), 0.0};
    tok.pop_back();
    // split at the last +/- that is not a leading sign or exponent sign
    for (std::size_t i = tok.size(); i-- > 1;) {
        if ((tok[i] == '+' || tok[i] == '-') && tok[i - 1] != 'e' && tok[i - 1] != 'E') {
            double re = std::stod(tok.substr(0, i));
            double im = std::stod(tok.substr(i) == "+" ? "1" : tok.substr(i) == "-" ? "-1"
                                                                                    : tok.substr(i));
            return {re, im};
        }
    }
    if (tok.empty() || tok == "+") return {0.0, 1.0};
    if (tok == "-") return {0.0, -1.0};
    return {0.0, std::stod(tok)};
}

std::vector<qwalk::cxd> parse_vector(const std::string& spec) {
    std::vector<qwalk::cxd> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_complex(tok));
    double norm = 0.0;
    for (const auto& a : out) norm += std::norm(a);
    if (norm <= 0.0) throw std::invalid_argument("zero coin vector");
    for (auto& a : out) a /= std::sqrt(norm);
    return out;
}

qwalk::DelayConfig load_delay_config(const std::optional<std::string>& path) {
    qwalk::DelayConfig cfg;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw std::invalid_argument("cannot open config " + *path);
        json j = json::parse(in);
        auto get = [&](const char* key, double& field) {
            if (j.contains(key)) field = j.at(key).get<double>();
        };
        get("L1", cfg.L1);
        get("L2", cfg.L2);
        get("L3", cfg.L3);
        get("L4", cfg.L4);
        get("Lc", cfg.Lc);
        get("eta_cycle", cfg.eta_cycle);
        get("eta_det", cfg.eta_det);
        get("jitter_fwhm_ns", cfg.jitter_fwhm_ns);
        get("window_ns", cfg.window_ns);
        get("bin_ps", cfg.bin_ps);
        get("accidental_rate", cfg.accidental_rate);
        get("t_L1", cfg.t_L1);
        get("t_L2", cfg.t_L2);
        get("t_L3", cfg.t_L3);
        get("t_L4", cfg.t_L4);
    }
    cfg.validate();
    return cfg;
}

struct WalkOptions {
    std::string walk = "alternate";
    std::string coin = "L";
    std::optional<std::string> herald_projector;
    double werner_p = 1.0;
    int steps = 4;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
};

// Resolve the coin specification to either a 2-level ensemble (alternate walk)
// or a pure 4-level coin (grover walk).
qwalk::CoinEnsemble resolve_coin2(const WalkOptions& opt) {
    if (opt.herald_projector) {
        auto source = qwalk::werner(opt.werner_p);
        auto proj = qwalk::named_coin(opt.herald_projector->at(0));
        auto outcome = qwalk::herald_coin(source, proj);
        std::cerr << "herald probability: " << outcome.probability << "\n";
        return outcome.coin;
    }
    if (opt.coin == "mixed") return qwalk::reduced_coin(qwalk::werner(opt.werner_p));
    if (opt.coin.size() == 1) return {{1.0, qwalk::named_coin(opt.coin[0])}};
    auto v = parse_vector(opt.coin);
    if (v.size() != 2) throw std::invalid_argument("alternate walk needs a 2-component coin");
    return {{1.0, qwalk::CoinVec2{v[0], v[1]}}};
}

qwalk::CoinVec4 resolve_coin4(const WalkOptions& opt) {
    if (opt.coin == "nonlocalized" || opt.coin == "L" /* default */) {
        // the one initial coin for which the Grover walk does not localize
        return {0.5, -0.5, -0.5, 0.5};
    }
    auto v = parse_vector(opt.coin);
    if (v.size() != 4) throw std::invalid_argument("grover walk needs a 4-component coin");
    return {v[0], v[1], v[2], v[3]};
}

int cmd_walk(const WalkOptions& opt) {
    fs::create_directories(opt.out_dir);
    std::vector<qwalk::Distribution> per_step;
    if (opt.walk == "alternate") {
        per_step = qwalk::run_mixture(resolve_coin2(opt), opt.steps);
    } else if (opt.walk == "grover") {
        per_step = qwalk::run(qwalk::GroverWalk{}, resolve_coin4(opt), opt.steps).per_step;
    } else {
        throw std::invalid_argument("unknown walk kind: " + opt.walk);
    }

    std::ofstream summary(fs::path(opt.out_dir) / "summary.txt");
    summary << "n\tmean_x\tmean_y\tvariance\tsimilarity_to_classical\n";
    for (const auto& d : per_step) {
        fs::path file = fs::path(opt.out_dir) / ("dist_n" + std::to_string(d.step) + ".tsv");
        qwalk::write_distribution(file, d);
        auto [mx, my] = qwalk::mean(d);
        summary << d.step << '\t' << mx << '\t' << my << '\t' << qwalk::variance(d) << '\t'
                << qwalk::similarity(d, qwalk::classical_distribution(d.step)) << '\n';
    }
    qwalk::write_metadata(fs::path(opt.out_dir) / "run.meta",
                          {{"walk", opt.walk},
                           {"coin", opt.herald_projector ? "herald:" + *opt.herald_projector
                                                         : opt.coin},
                           {"werner_p", std::to_string(opt.werner_p)},
                           {"steps", std::to_string(opt.steps)},
                           {"seed", std::to_string(opt.seed)}});
    std::cout << "wrote " << per_step.size() << " distributions to " << opt.out_dir << "\n";
    return 0;
}

int cmd_compare(const std::string& file_p, const std::string& file_q) {
    auto p = qwalk::read_distribution(file_p);
    auto q = qwalk::read_distribution(file_q);
    double tp = p.total(), tq = q.total();
    for (auto& [site, v] : p.probs) v /= tp;
    for (auto& [site, v] : q.probs) v /= tq;
    std::cout << "similarity: " << std::setprecision(12) << qwalk::similarity(p, q) << "\n";
    std::cout << "max site difference: " << qwalk::max_site_difference(p, q) << "\n";
    std::set<qwalk::Site> sites;
    for (const auto& [site, v] : p.probs) sites.insert(site);
    for (const auto& [site, v] : q.probs) sites.insert(site);
    for (const auto& site : sites) {
        double vp = p.probs.count(site) ? p.probs[site] : 0.0;
        double vq = q.probs.count(site) ? q.probs[site] : 0.0;
        std::cout << site.x << '\t' << site.y << '\t' << vp << '\t' << vq << '\t' << vp - vq
                  << '\n';
    }
    return 0;
}

int cmd_timebin_audit(const qwalk::DelayConfig& cfg, int steps, double gap_ns) {
    auto grid = qwalk::build_grid(cfg, steps);
    auto result = qwalk::audit(grid, gap_ns);
    // largest N whose grid still audits clean, for the report
    int max_clean = -1;
    for (int n = 0; n <= steps; ++n) {
        if (qwalk::audit(qwalk::build_grid(cfg, n), gap_ns).pass)
            max_clean = n;
        else
            break;
    }
    std::cout << (result.pass ? "PASS" : "FAIL") << ": " << grid.entries.size()
              << " time bins, min gap " << grid.min_gap_ns << " ns (required " << gap_ns
              << " ns), max collision-free N = " << max_clean << "\n";
    for (const auto& c : result.collisions)
        std::cout << "collision: (n=" << c.a.n << "," << c.a.site.x << "," << c.a.site.y
                  << ") vs (n=" << c.b.n << "," << c.b.site.x << "," << c.b.site.y << ") gap "
                  << c.gap_ns << " ns\n";
    return result.pass ? 0 : 2;
}

int cmd_timebin_simulate(const qwalk::DelayConfig& cfg, const WalkOptions& opt,
                         std::uint64_t photons) {
    fs::create_directories(opt.out_dir);
    auto per_step = qwalk::run_mixture(resolve_coin2(opt), opt.steps);
    auto grid = qwalk::build_grid(cfg, opt.steps);
    if (!qwalk::audit(grid, cfg.window_ns).pass) {
        std::cerr << "grid windows overlap at window " << cfg.window_ns << " ns\n";
        return 2;
    }
    auto sim = qwalk::detect_sim(cfg, per_step, photons, opt.seed);
    auto reco = qwalk::reconstruct(sim.histogram, grid, cfg);

    qwalk::write_grid(fs::path(opt.out_dir) / "grid.tsv", grid);
    qwalk::write_histogram(fs::path(opt.out_dir) / "histogram.tsv", sim.histogram);
    std::cout << "n\tdetected\tsimilarity\n";
    for (int n = 1; n <= opt.steps; ++n) {
        qwalk::write_distribution(fs::path(opt.out_dir) / ("reco_n" + std::to_string(n) + ".tsv"),
                                  reco[n]);
        std::cout << n << '\t' << sim.counts_per_step[n - 1] << '\t'
                  << qwalk::similarity(per_step[n], reco[n]) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D discrete-time quantum walk simulator with a time-bin loop model"};
    app.require_subcommand(1);

    WalkOptions opt;
    std::optional<std::string> config_path;
    double gap_ns = 4.1;
    std::uint64_t photons = 1000000;
    std::string file_p, file_q, out_file = "heatmap.ppm";
    int cell_px = 16;
    bool log_scale = false;

    auto* walk = app.add_subcommand("walk", "run a walk and export per-step distributions");
    walk->add_option("--walk", opt.walk, "alternate|grover")->default_val("alternate");
    walk->add_option("--coin", opt.coin, "H|V|D|A|L|R|mixed|comma-separated vector");
    walk->add_option("--herald-projector", opt.herald_projector,
                     "Alice projector (H|V|D|A|L|R) on the entangled source");
    walk->add_option("--werner-p", opt.werner_p, "source Werner parameter");
    walk->add_option("--steps", opt.steps)->check(CLI::NonNegativeNumber);
    walk->add_option("--seed", opt.seed);
    walk->add_option("--out", opt.out_dir);

    auto* compare = app.add_subcommand("compare", "similarity between two distribution files");
    compare->add_option("file_p", file_p)->required();
    compare->add_option("file_q", file_q)->required();

    auto* timebin = app.add_subcommand("timebin", "time-bin grid audit and detection simulation");
    timebin->require_subcommand(1);
    auto* tb_audit = timebin->add_subcommand("audit", "check pairwise time-bin separation");
    tb_audit->add_option("--steps", opt.steps)->check(CLI::NonNegativeNumber);
    tb_audit->add_option("--gap", gap_ns, "required separation in ns");
    tb_audit->add_option("--config", config_path, "JSON delay-config overrides");
    auto* tb_sim = timebin->add_subcommand("simulate", "Monte Carlo detection + reconstruction");
    tb_sim->add_option("--steps", opt.steps)->check(CLI::NonNegativeNumber);
    tb_sim->add_option("--photons", photons)->check(CLI::PositiveNumber);
    tb_sim->add_option("--seed", opt.seed);
    tb_sim->add_option("--coin", opt.coin);
    tb_sim->add_option("--herald-projector", opt.herald_projector);
    tb_sim->add_option("--werner-p", opt.werner_p);
    tb_sim->add_option("--config", config_path);
    tb_sim->add_option("--out", opt.out_dir);

    auto* heatmap = app.add_subcommand("heatmap", "render a distribution file as a PPM image");
    heatmap->add_option("file", file_p)->required();
    heatmap->add_option("--out", out_file);
    heatmap->add_option("--cell", cell_px, "cell size in pixels");
    heatmap->add_flag("--log", log_scale, "logarithmic intensity scale");

    CLI11_PARSE(app, argc, argv);

    try {
        if (walk->parsed()) return cmd_walk(opt);
        if (compare->parsed()) return cmd_compare(file_p, file_q);
        if (tb_audit->parsed())
            return cmd_timebin_audit(load_delay_config(config_path), opt.steps, gap_ns);
        if (tb_sim->parsed())
            return cmd_timebin_simulate(load_delay_config(config_path), opt, photons);
        if (heatmap->parsed()) {
            double max_p = qwalk::write_heatmap(out_file, qwalk::read_distribution(file_p),
                                                cell_px, log_scale);
            std::cout << "max probability: " << max_p << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
