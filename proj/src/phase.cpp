#include "evfront/phase.hpp"

#include <cmath>

#include "evfront/errors.hpp"
#include "evfront/quadrature.hpp"

namespace evfront {

const char* to_string(SaddleBranch b) { return b == SaddleBranch::Plus ? "plus" : "minus"; }

cplx phase(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet, double x, double t) {
    return omega * t - wavenumber(model, omega, sheet) * x;
}

cplx phase_derivative(const DispersionModel& model, cplx omega, std::optional<Sheet> sheet, double x,
                      double t) {
    return t - wavenumber_derivative(model, omega, sheet) * x;
}

namespace {

void require_positive(double x, double t) {
    if (!(x > 0.0) || !(t > 0.0)) throw DomainError("saddle requires x > 0 and t > 0");
}

double proper_time(const DispersionModel& model, double x, double t) {
    double c = model.light_speed;
    if (!(x < c * t)) throw CausalRegionError("saddle exists only inside the light cone (x < ct)");
    return std::sqrt((t - x / c) * (t + x / c));
}

}  // namespace

SaddleInfo saddle(const DispersionModel& model, double x, double t, SaddleBranch branch) {
    require_positive(x, t);
    SaddleInfo s;
    s.branch = branch;
    double m = model.mass;
    if (!model.relativistic_kind()) {
        if (branch == SaddleBranch::Minus) throw DomainError("non-relativistic model has a single saddle");
        s.frequency = m * x * x / (2.0 * t * t);
        s.wavenumber = m * x / t;
        s.phase = -m * x * x / (2.0 * t);
        s.curvature = t * t * t / (m * x * x);
        return s;
    }
    double th = proper_time(model, x, t);
    double mu = model.rest_frequency();
    s.proper_time = th;
    s.frequency = mu * t / th;
    s.wavenumber = m * x / th;
    s.phase = mu * th;
    s.curvature = th * th * th / (m * x * x);
    if (branch == SaddleBranch::Minus) {
        s.frequency = -s.frequency;
        s.wavenumber = -s.wavenumber;
        s.phase = -s.phase;
        s.curvature = -s.curvature;
    }
    return s;
}

std::vector<SaddleInfo> saddle(const DispersionModel& model, double x, double t) {
    std::vector<SaddleInfo> out{saddle(model, x, t, SaddleBranch::Plus)};
    if (model.relativistic_kind()) out.push_back(saddle(model, x, t, SaddleBranch::Minus));
    return out;
}

Interval stph_support(const DispersionModel& model, double x, double t, SaddleBranch branch) {
    SaddleInfo s = saddle(model, x, t, branch);
    if (!model.relativistic_kind()) return {-INFINITY, INFINITY};
    double r = model.light_speed * std::abs(s.wavenumber);  // sqrt(Omega_s^2 - mu^2)
    return {s.frequency - r, s.frequency + r};
}

double stph_line(const DispersionModel& model, double x, double t, double omega_r, SaddleBranch branch) {
    SaddleInfo s = saddle(model, x, t, branch);
    if (!model.relativistic_kind()) {
        double q = omega_r / s.frequency;
        return 0.5 * s.frequency * (1.0 - q * q);
    }
    if (branch == SaddleBranch::Minus) return stph_line(model, x, t, -omega_r, SaddleBranch::Plus);
    Interval sup = stph_support(model, x, t, branch);
    if (!sup.contains(omega_r)) throw DomainError("Omega_r outside the support of the stph line");
    double mu = model.rest_frequency();
    double os = s.frequency;
    double r = model.light_speed * s.wavenumber;
    double d = omega_r - os;
    double num = -d * (omega_r * os - mu * mu);
    double den = std::sqrt(r * r * (r - d) * (r + d));
    return num / den;
}

Sheet stph_sheet(const DispersionModel& model, double x, double t, double omega_r, SaddleBranch branch) {
    SaddleInfo s = saddle(model, x, t, branch);
    if (branch == SaddleBranch::Minus) return omega_r >= s.frequency ? Sheet::Upper : Sheet::Lower;
    return omega_r <= s.frequency ? Sheet::Upper : Sheet::Lower;
}

cplx phase_on_stph(const DispersionModel& model, double x, double t, double omega_r, SaddleBranch branch) {
    if (!model.relativistic_kind()) {
        SaddleInfo s = saddle(model, x, t, branch);
        double q = 1.0 - omega_r / s.frequency;
        return s.phase * cplx(1.0, 0.5 * q * q);
    }
    double oi = stph_line(model, x, t, omega_r, branch);
    return phase(model, cplx(omega_r, oi), stph_sheet(model, x, t, omega_r, branch), x, t);
}

std::array<double, 2> stph_real_crossings(const DispersionModel& model, double x, double t,
                                          SaddleBranch branch) {
    SaddleInfo s = saddle(model, x, t, branch);
    if (!model.relativistic_kind()) return {s.frequency, -s.frequency};
    double mu = model.rest_frequency();
    return {s.frequency, mu * mu / s.frequency};
}

double pole_crossing_time(const DispersionModel& model, double omega0, double x) {
    return traversal_time(model, omega0, x);
}

double detect_pole_crossing_time(const DispersionModel& model, double omega0, double x) {
    WaveKind kind = classify(model, omega0);
    if (x < 0.0) throw DomainError("x must be non-negative");
    if (x == 0.0) return 0.0;
    SaddleBranch br = SaddleBranch::Plus;
    int idx = kind == WaveKind::Propagating ? 0 : 1;
    double t0 = 0.0;  // lower end of the admissible time range
    if (model.relativistic_kind()) {
        if (omega0 == 0.0) return x / model.light_speed;  // both crossings reach 0 only at the light cone
        if (omega0 < 0.0) br = SaddleBranch::Minus;
        t0 = x / model.light_speed;
    }
    auto f = [&](double s) { return stph_real_crossings(model, x, t0 + s, br)[idx] - omega0; };
    double scale = t0 > 0.0 ? t0 : x;
    double lo = scale, hi = scale;
    double flo = f(lo), fhi = flo;
    for (int i = 0; i < 400 && (flo > 0.0) == (fhi > 0.0); ++i) {
        lo *= 0.5;
        hi *= 2.0;
        flo = f(lo);
        fhi = f(hi);
    }
    return t0 + quad::find_root(f, lo, hi);
}

}  // namespace evfront
