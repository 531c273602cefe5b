#include "evfront/phasemap.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include <json.hpp>

#include "evfront/errors.hpp"
#include "evfront/phase.hpp"

namespace evfront {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

bool cut_overlaps(const DispersionModel& model, double a, double b) {
    if (!model.relativistic_kind()) return b > 0.0;
    double mu = model.rest_frequency();
    return b > mu || a < -mu;
}

bool on_cut_real(const DispersionModel& model, double re) {
    if (!model.relativistic_kind()) return re > 0.0;
    return std::abs(re) > model.rest_frequency();
}

// Cell (i, j)-(i+1, j+1) crosses the discontinuity of the grid's sheet.
bool cell_crosses_cut(const PhaseGrid& g, int i, int j) {
    const DispersionModel& model = g.model;
    double y0 = g.im_at(j), y1 = g.im_at(j + 1);
    if (!cut_overlaps(model, g.re_at(i), g.re_at(i + 1))) return false;
    if (y0 < 0.0 && y1 > 0.0) return true;
    // a row on the axis holds the boundary value from the sheet's own side
    if (y1 == 0.0 && g.sheet == Sheet::Upper) return true;
    if (y0 == 0.0 && g.sheet == Sheet::Lower) return true;
    return false;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const char* to_string(Quantity q) { return q == Quantity::ReNormalized ? "re_normalized" : "im_normalized"; }

double PhaseGrid::re_at(int i) const {
    return window.re_min + (window.re_max - window.re_min) * i / (resolution.nx - 1);
}
double PhaseGrid::im_at(int j) const {
    return window.im_min + (window.im_max - window.im_min) * j / (resolution.ny - 1);
}
double PhaseGrid::dx() const { return (window.re_max - window.re_min) / (resolution.nx - 1); }
double PhaseGrid::dy() const { return (window.im_max - window.im_min) / (resolution.ny - 1); }

double phase_normalization(const DispersionModel& model, double x, double t) {
    if (!model.relativistic_kind()) {
        if (!(x > 0.0) || !(t > 0.0)) throw DomainError("normalization requires x > 0 and t > 0");
        return -model.mass * x * x / (2.0 * t);
    }
    double c = model.light_speed;
    double n = model.mass * c * std::sqrt(std::abs((c * t - x) * (c * t + x)));
    if (!(n > 0.0)) throw DomainError("normalization vanishes on the light cone");
    return n;
}

PhaseGrid build_grid(const DispersionModel& model, double x, double t, const Window& window,
                     const Resolution& resolution, Sheet sheet, int jobs) {
    model.validate();
    if (resolution.nx < 2 || resolution.ny < 2) throw DomainError("grid needs at least 2x2 nodes");
    if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min))
        throw DomainError("degenerate window");
    PhaseGrid g;
    g.model = model;
    g.window = window;
    g.resolution = resolution;
    g.sheet = sheet;
    g.normalization = phase_normalization(model, x, t);
    std::size_t n = std::size_t(resolution.nx) * resolution.ny;
    g.values.resize(n);
    g.cut_mask.assign(n, 0);
    auto row = [&](int j) {
        double im = g.im_at(j);
        for (int i = 0; i < resolution.nx; ++i) {
            double re = g.re_at(i);
            std::size_t k = std::size_t(j) * resolution.nx + i;
            if (im == 0.0 && on_cut_real(model, re)) g.cut_mask[k] = 1;
            try {
                g.values[k] = phase(model, cplx(re, im), sheet, x, t) / g.normalization;
            } catch (const ThresholdError&) {
                g.values[k] = cplx(nan, nan);
                g.cut_mask[k] = 1;
            }
        }
    };
    int workers = std::clamp(jobs, 1, resolution.ny);
    if (workers == 1) {
        for (int j = 0; j < resolution.ny; ++j) row(j);
        return g;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_lock;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            try {
                for (int j; (j = next++) < resolution.ny;) row(j);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_lock);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return g;
}

std::vector<ContourPolyline> extract_contours(const PhaseGrid& grid, const std::vector<double>& levels,
                                              Quantity quantity) {
    const int nx = grid.resolution.nx, ny = grid.resolution.ny;
    auto val = [&](int i, int j) {
        const cplx& v = grid.at(i, j);
        return quantity == Quantity::ReNormalized ? v.real() : v.imag();
    };
    auto hkey = [&](int i, int j) { return 2 * (long(j) * nx + i); };
    auto vkey = [&](int i, int j) { return 2 * (long(j) * nx + i) + 1; };

    std::vector<ContourPolyline> out;
    for (double level : levels) {
        auto f = [&](int i, int j) { return val(i, j) - level; };
        // crossing point on an edge, identical from both adjacent cells
        auto edge_point = [&](long key) {
            long node = key / 2;
            int i = int(node % nx), j = int(node / nx);
            int i2 = (key % 2 == 0) ? i + 1 : i;
            int j2 = (key % 2 == 0) ? j : j + 1;
            double fa = f(i, j), fb = f(i2, j2);
            double s = fa / (fa - fb);
            return cplx(grid.re_at(i) + s * (grid.re_at(i2) - grid.re_at(i)),
                        grid.im_at(j) + s * (grid.im_at(j2) - grid.im_at(j)));
        };
        struct Seg {
            long a, b;
        };
        std::vector<Seg> segs;
        for (int j = 0; j + 1 < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                // cut nodes carry the boundary value from the grid's own sheet, so only
                // cells reaching across the cut are dropped
                if (cell_crosses_cut(grid, i, j)) continue;
                double v00 = f(i, j), v10 = f(i + 1, j), v11 = f(i + 1, j + 1), v01 = f(i, j + 1);
                if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) || !std::isfinite(v01))
                    continue;
                bool b00 = v00 >= 0.0, b10 = v10 >= 0.0, b11 = v11 >= 0.0, b01 = v01 >= 0.0;
                // edges: 0 bottom, 1 right, 2 top, 3 left
                long e[4] = {hkey(i, j), vkey(i + 1, j), hkey(i, j + 1), vkey(i, j)};
                bool cross[4] = {b00 != b10, b10 != b11, b01 != b11, b00 != b01};
                int n = cross[0] + cross[1] + cross[2] + cross[3];
                if (n == 2) {
                    long ends[2];
                    int k = 0;
                    for (int q = 0; q < 4; ++q)
                        if (cross[q]) ends[k++] = e[q];
                    segs.push_back({ends[0], ends[1]});
                } else if (n == 4) {
                    double centre = 0.25 * (v00 + v10 + v11 + v01);
                    if ((centre >= 0.0) == b00) {
                        segs.push_back({e[0], e[1]});
                        segs.push_back({e[2], e[3]});
                    } else {
                        segs.push_back({e[3], e[0]});
                        segs.push_back({e[1], e[2]});
                    }
                }
            }
        }
        std::map<long, std::vector<std::size_t>> by_edge;
        for (std::size_t s = 0; s < segs.size(); ++s) {
            by_edge[segs[s].a].push_back(s);
            by_edge[segs[s].b].push_back(s);
        }
        auto other_edge = [&](std::size_t s, long e) { return segs[s].a == e ? segs[s].b : segs[s].a; };
        auto neighbour = [&](std::size_t s, long e) -> long {
            for (std::size_t n : by_edge[e])
                if (n != s) return long(n);
            return -1;
        };
        std::vector<char> visited(segs.size(), 0);
        for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
            if (visited[s0]) continue;
            // walk back to the open end of the chain, or once around a loop
            std::size_t start = s0;
            long entry = segs[s0].a;
            for (std::size_t guard = 0; guard <= segs.size(); ++guard) {
                long n = neighbour(start, entry);
                if (n < 0 || std::size_t(n) == s0 || visited[std::size_t(n)]) break;
                entry = other_edge(std::size_t(n), entry);
                start = std::size_t(n);
            }
            ContourPolyline line;
            line.level = level;
            line.quantity = quantity;
            line.sheet = grid.sheet;
            line.points.push_back(edge_point(entry));
            std::size_t cur = start;
            long in = entry;
            while (true) {
                visited[cur] = 1;
                long outk = other_edge(cur, in);
                line.points.push_back(edge_point(outk));
                long n = neighbour(cur, outk);
                if (n < 0) break;
                if (visited[std::size_t(n)]) {
                    line.closed = std::size_t(n) == start;
                    break;
                }
                cur = std::size_t(n);
                in = outk;
            }
            out.push_back(std::move(line));
        }
    }
    return out;
}

std::vector<double> real_axis_crossings(const ContourPolyline& line, double touch) {
    std::vector<double> out;
    const auto& p = line.points;
    auto im = [&](std::size_t k) { return p[k].imag(); };
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (im(k) == 0.0) {
            if (k == 0 || im(k - 1) != 0.0) out.push_back(p[k].real());
            continue;
        }
        if (k + 1 < p.size() && im(k + 1) != 0.0 && (im(k) > 0.0) != (im(k + 1) > 0.0)) {
            double s = im(k) / (im(k) - im(k + 1));
            out.push_back(p[k].real() + s * (p[k + 1].real() - p[k].real()));
            continue;
        }
        // a line that comes down to the axis and turns back without crossing it
        if (touch > 0.0 && k > 0 && k + 1 < p.size() && std::abs(im(k)) <= touch &&
            std::abs(im(k)) < std::abs(im(k - 1)) && std::abs(im(k)) <= std::abs(im(k + 1)) &&
            (im(k - 1) > 0.0) == (im(k) > 0.0) && (im(k + 1) > 0.0) == (im(k) > 0.0))
            out.push_back(p[k].real());
    }
    return out;
}

double distance_to_polyline(const ContourPolyline& line, cplx p) {
    double best = std::numeric_limits<double>::infinity();
    const auto& v = line.points;
    if (v.size() == 1) return std::abs(p - v[0]);
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        cplx d = v[k + 1] - v[k];
        double len2 = std::norm(d);
        double s = len2 > 0.0 ? std::clamp(((p - v[k]) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, std::abs(p - (v[k] + s * d)));
    }
    return best;
}

void write_contours_csv(std::ostream& os, const std::vector<ContourPolyline>& lines) {
    os << "# evfront contours v1\n";
    os << "quantity,level,sheet,omega_r,omega_i,segment_id\n";
    for (std::size_t id = 0; id < lines.size(); ++id) {
        const auto& l = lines[id];
        for (const auto& p : l.points)
            os << to_string(l.quantity) << ',' << fmt17(l.level) << ',' << to_string(l.sheet) << ','
               << fmt17(p.real()) << ',' << fmt17(p.imag()) << ',' << id << '\n';
    }
}

std::string contours_json(const std::vector<ContourPolyline>& lines, int indent) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["contours"] = nlohmann::json::array();
    for (std::size_t id = 0; id < lines.size(); ++id) {
        const auto& l = lines[id];
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : l.points) pts.push_back({p.real(), p.imag()});
        j["contours"].push_back({{"segment_id", id},
                                 {"quantity", to_string(l.quantity)},
                                 {"level", l.level},
                                 {"sheet", to_string(l.sheet)},
                                 {"closed", l.closed},
                                 {"points", pts}});
    }
    return j.dump(indent);
}

}  // namespace evfront
