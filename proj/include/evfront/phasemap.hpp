#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "evfront/dispersion.hpp"

namespace evfront {

struct Window {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
};

struct Resolution {
    int nx = 0;
    int ny = 0;
};

enum class Quantity { ReNormalized, ImNormalized };
const char* to_string(Quantity q);

// phi / N on a rectangular grid of complex Omega, N the figure normalization:
// phi_s = -m x^2/(2t) non-relativistically, m c sqrt|c^2 t^2 - x^2| relativistically.
struct PhaseGrid {
    DispersionModel model;
    Window window;
    Resolution resolution;
    Sheet sheet = Sheet::Upper;
    double normalization = 1.0;
    std::vector<cplx> values;            // row-major, index j * nx + i
    std::vector<std::uint8_t> cut_mask;  // 1 for nodes on a branch cut

    double re_at(int i) const;
    double im_at(int j) const;
    double dx() const;
    double dy() const;
    const cplx& at(int i, int j) const { return values[std::size_t(j) * resolution.nx + i]; }
    bool masked(int i, int j) const { return cut_mask[std::size_t(j) * resolution.nx + i] != 0; }
};

struct ContourPolyline {
    double level = 0.0;
    Quantity quantity = Quantity::ReNormalized;
    Sheet sheet = Sheet::Upper;
    std::vector<cplx> points;  // (Omega_r, Omega_i)
    bool closed = false;
};

double phase_normalization(const DispersionModel& model, double x, double t);

// Rows are evaluated by up to `jobs` threads; the result does not depend on jobs.
PhaseGrid build_grid(const DispersionModel& model, double x, double t, const Window& window,
                     const Resolution& resolution, Sheet sheet, int jobs = 1);

// Marching squares with linear interpolation on cell edges. Cells that straddle a branch cut
// on the grid's sheet, or touch a non-finite value, are skipped, so polylines stop there.
std::vector<ContourPolyline> extract_contours(const PhaseGrid& grid, const std::vector<double>& levels,
                                              Quantity quantity);

// Real-axis crossings of a polyline (linear interpolation between vertices). With touch > 0,
// vertices where the line reaches within touch of the axis and turns back are reported too.
std::vector<double> real_axis_crossings(const ContourPolyline& line, double touch = 0.0);

// Distance from p to the nearest segment of the polyline.
double distance_to_polyline(const ContourPolyline& line, cplx p);

void write_contours_csv(std::ostream& os, const std::vector<ContourPolyline>& lines);
std::string contours_json(const std::vector<ContourPolyline>& lines, int indent = -1);

}  // namespace evfront
