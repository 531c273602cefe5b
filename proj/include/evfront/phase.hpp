#pragma once

#include <array>
#include <optional>
#include <vector>

#include "evfront/dispersion.hpp"

namespace evfront {

// Plus is the saddle at +Omega_s; Minus (relativistic only) the mirrored one at -Omega_s.
enum class SaddleBranch { Plus, Minus };

const char* to_string(SaddleBranch b);

struct SaddleInfo {
    SaddleBranch branch = SaddleBranch::Plus;
    double frequency = 0.0;   // Omega_s
    double wavenumber = 0.0;  // k_s
    double phase = 0.0;       // phi_s
    double curvature = 0.0;   // d^2 phi / d Omega^2 at the saddle
    std::optional<double> proper_time;  // theta = sqrt(t^2 - x^2/c^2), relativistic only
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v > lo && v < hi; }
};

// phi(Omega; x, t) = Omega t - k(Omega) x
cplx phase(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet, double x, double t);
cplx phase_derivative(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet, double x,
                      double t);

// One entry for the non-relativistic model, two (Plus, Minus) for the relativistic one.
std::vector<SaddleInfo> saddle(const DispersionModel& model, double x, double t);
SaddleInfo saddle(const DispersionModel& model, double x, double t, SaddleBranch branch);

// Range of Omega_r on which the stph line through the given saddle is defined.
Interval stph_support(const DispersionModel& model, double x, double t,
                      SaddleBranch branch = SaddleBranch::Plus);
double stph_line(const DispersionModel& model, double x, double t, double omega_r,
                 SaddleBranch branch = SaddleBranch::Plus);
// Sheet on which the stph line lives at the given Omega_r.
Sheet stph_sheet(const DispersionModel& model, double x, double t, double omega_r,
                 SaddleBranch branch = SaddleBranch::Plus);
cplx phase_on_stph(const DispersionModel& model, double x, double t, double omega_r,
                   SaddleBranch branch = SaddleBranch::Plus);

// Real-axis points of the stph line: {saddle, other crossing}.
// Non-relativistic: {Omega_s, -Omega_s}; relativistic Plus: {Omega_s, (mc^2)^2/Omega_s}.
std::array<double, 2> stph_real_crossings(const DispersionModel& model, double x, double t,
                                          SaddleBranch branch = SaddleBranch::Plus);

double pole_crossing_time(const DispersionModel& model, double omega0, double x);
// Time at which the relevant stph crossing point meets Omega_0, found by root search.
double detect_pole_crossing_time(const DispersionModel& model, double omega0, double x);

}  // namespace evfront
