#pragma once

// File formats: distribution tables (n x y p), grid and histogram exports, and
// portable-pixmap heatmaps.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "timebin.hpp"

namespace qwalk {

inline void write_distribution(const std::filesystem::path& path, const Distribution& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "n\tx\ty\tp\n";
    out << std::setprecision(17);
    for (const auto& [site, p] : d.probs)
        out << d.step << '\t' << site.x << '\t' << site.y << '\t' << p << '\n';
}

inline Distribution read_distribution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.substr(0, 1) != "n")
        throw std::runtime_error("bad distribution file header: " + path.string());
    Distribution d;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        int n, x, y;
        double p;
        if (!(row >> n >> x >> y >> p))
            throw std::runtime_error("bad distribution row: " + line);
        if (first) {
            d.step = n;
            first = false;
        } else if (n != d.step) {
            throw std::runtime_error("mixed step indices in " + path.string());
        }
        d.probs[Site{x, y}] = p;
    }
    return d;
}

// Sidecar provenance: key\tvalue lines next to a distribution file.
inline void write_metadata(const std::filesystem::path& path,
                           const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    for (const auto& [k, v] : entries) out << k << '\t' << v << '\n';
}

inline void write_grid(const std::filesystem::path& path, const TimeGrid& grid) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "n\tx\ty\ttime_ns\n";
    out << std::setprecision(17);
    for (const auto& e : grid.entries)
        out << e.n << '\t' << e.site.x << '\t' << e.site.y << '\t' << e.time_ns << '\n';
}

inline void write_histogram(const std::filesystem::path& path, const Histogram& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "bin_start_ns\tcounts\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] == 0) continue;
        out << i * h.bin_ns << '\t' << h.counts[i] << '\n';
    }
}

// Grayscale PPM heatmap, one cell per lattice site on the step-n parity grid.
// Linear intensity by default; returns the maximum probability for the caller
// to print alongside.
inline double write_heatmap(const std::filesystem::path& path, const Distribution& d,
                            int cell_px = 16, bool log_scale = false) {
    int lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    double max_p = 0.0;
    for (const auto& [site, p] : d.probs) {
        lo_x = std::min(lo_x, site.x);
        hi_x = std::max(hi_x, site.x);
        lo_y = std::min(lo_y, site.y);
        hi_y = std::max(hi_y, site.y);
        max_p = std::max(max_p, p);
    }
    int nx = hi_x - lo_x + 1, ny = hi_y - lo_y + 1;
    int w = nx * cell_px, h = ny * cell_px;

    std::vector<unsigned char> pix(static_cast<std::size_t>(w) * h, 0);
    const double log_floor = 1e-6;
    for (const auto& [site, p] : d.probs) {
        double level = log_scale
                           ? std::max(0.0, 1.0 + std::log10(std::max(p / max_p, log_floor)) / 6.0)
                           : p / max_p;
        auto value = static_cast<unsigned char>(std::lround(255.0 * level));
        int cx = (site.x - lo_x) * cell_px;
        int cy = (hi_y - site.y) * cell_px;  // y grows upward in the image
        for (int dy = 0; dy < cell_px; ++dy)
            for (int dx = 0; dx < cell_px; ++dx)
                pix[static_cast<std::size_t>(cy + dy) * w + cx + dx] = value;
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "P5\n" << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
    return max_p;
}

}  // namespace qwalk
