#include "evfront/decomposition.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "evfront/errors.hpp"
#include "evfront/quadrature.hpp"

namespace evfront {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
const cplx I(0.0, 1.0);

bool outside_light_cone(const DispersionModel& model, double x, double t) {
    return model.relativistic_kind() && !(x < model.light_speed * t);
}

// exp(-i(V t - m x^2/(2t))) for the non-relativistic model; exp(-i(V t +- mc^2 theta)) otherwise.
cplx front_phase_factor(const DispersionModel& model, SaddleBranch b, double x, double t) {
    double V = model.potential;
    if (!model.relativistic_kind()) return std::exp(-I * (V * t - model.mass * x * x / (2.0 * t)));
    double th = std::sqrt((t - x / model.light_speed) * (t + x / model.light_speed));
    double mth = model.rest_frequency() * th;
    return std::exp(-I * (V * t + (b == SaddleBranch::Plus ? mth : -mth)));
}

cplx near_front_value(const DispersionModel& model, const SourceSpec& source, double x, double t) {
    double w0 = kinetic_frequency(model, source.carrier);
    WaveKind kind = classify(model, w0);
    double sign = front_active(model, w0, x, t) ? 1.0 : -1.0;
    cplx v = -0.5 * source.amplitude * front_phase_factor(model, front_branch(model, w0), x, t) * sign;
    if (kind == WaveKind::Evanescent) v *= std::exp(-model.mass * x * x / t);
    return v;
}

}  // namespace

const char* to_string(StphFormula f) { return f == StphFormula::Linearized ? "linearized" : "arctan"; }
const char* to_string(TailRegime r) { return r == TailRegime::ShortTime ? "short_time" : "long_time"; }

bool front_active(const DispersionModel& model, double omega0, double x, double t) {
    return front_velocity(model, omega0) * t > x;
}

cplx pole_contribution(const DispersionModel& model, const SourceSpec& source, double x, double t) {
    double w0 = kinetic_frequency(model, source.carrier);
    if (!front_active(model, w0, x, t)) return 0.0;
    cplx k0 = wavenumber(model, cplx(w0, 0.0), Sheet::Upper);
    return source.amplitude * std::exp(-I * (model.potential + w0) * t) * std::exp(I * k0 * x);
}

GaussTerms saddle_gauss(const DispersionModel& model, const SourceSpec& source, double x, double t) {
    GaussTerms g;
    if (outside_light_cone(model, x, t)) {
        g.inside_light_cone = false;
        return g;
    }
    double w0 = kinetic_frequency(model, source.carrier);
    cplx A = source.amplitude;
    cplx pre = I * A / (2.0 * pi);
    SaddleInfo sp = saddle(model, x, t, SaddleBranch::Plus);
    if (!model.relativistic_kind()) {
        double os = sp.frequency;
        if (os == w0) throw DomainError("pole coincides with the saddle");
        g.plus = pre * std::sqrt(cplx(0.0, -4.0 * pi / (os * t))) * os / (os - w0) *
                 front_phase_factor(model, SaddleBranch::Plus, x, t);
        return g;
    }
    double th = *sp.proper_time;
    double os = sp.frequency;
    double s = 2.0 * pi * model.mass * x * x / (th * th * th);
    if (os == w0 || os == -w0) throw DomainError("pole coincides with a saddle");
    g.plus = pre * std::sqrt(cplx(0.0, -s)) / (os - w0) * front_phase_factor(model, SaddleBranch::Plus, x, t);
    g.minus = -pre * std::sqrt(cplx(0.0, s)) / (os + w0) * front_phase_factor(model, SaddleBranch::Minus, x, t);
    return g;
}

double gauss_validity(const DispersionModel& model, double omega0, double x, double t, SaddleBranch branch) {
    if (!(x > 0.0) || !(t > 0.0) || outside_light_cone(model, x, t)) return inf;
    SaddleInfo s = saddle(model, x, t, branch);
    double d = s.frequency - omega0;
    return std::abs(s.curvature) * d * d;
}

SaddleBranch front_branch(const DispersionModel& model, double omega0) {
    if (model.relativistic_kind() && omega0 < 0.0) return SaddleBranch::Minus;
    return SaddleBranch::Plus;
}

double front_window_parameter(const DispersionModel& model, double omega0, double x, double t) {
    if (!(x > 0.0) || !(t > 0.0) || outside_light_cone(model, x, t)) return inf;
    WaveKind kind = classify(model, omega0);
    SaddleBranch b = front_branch(model, omega0);
    if (kind == WaveKind::Propagating) return gauss_validity(model, omega0, x, t, b);
    double oc = stph_real_crossings(model, x, t, b)[1];
    cplx d = phase_derivative(model, cplx(oc, 0.0), Sheet::Upper, x, t);
    return std::abs(d) * std::abs(omega0 - oc);
}

cplx near_front_limit(const DispersionModel& model, const SourceSpec& source, double x, double t,
                      double window) {
    double w0 = kinetic_frequency(model, source.carrier);
    double p = front_window_parameter(model, w0, x, t);
    if (!(p < window)) throw WindowError("point is outside the near-front window");
    return near_front_value(model, source, x, t);
}

double phase_matching_residual(const DispersionModel& model, double omega0, double x, double t) {
    WaveKind kind = classify(model, omega0);
    double a = std::abs(omega0);
    if (!model.relativistic_kind()) {
        double q = model.mass * x * x / (2.0 * t);
        if (kind == WaveKind::Evanescent) return -a * t + q;
        double k0 = wavenumber(model, cplx(omega0, 0.0), Sheet::Upper).real();
        return omega0 * t - k0 * x + q;
    }
    double c = model.light_speed;
    if (x > c * t) throw CausalRegionError("phase matching requires x <= ct");
    double mth = model.rest_frequency() * std::sqrt((t - x / c) * (t + x / c));
    if (kind == WaveKind::Evanescent) return a * t - mth;
    double k0 = std::abs(wavenumber(model, cplx(omega0, 0.0), Sheet::Upper).real());
    return a * t - k0 * x - mth;
}

double phase_matching_gradient(const DispersionModel& model, double omega0, double x, double t) {
    WaveKind kind = classify(model, omega0);
    double k0 = kind == WaveKind::Propagating ? std::abs(wavenumber(model, cplx(omega0, 0.0), Sheet::Upper).real())
                                              : 0.0;
    if (!model.relativistic_kind()) return -k0 + model.mass * x / t;
    double c = model.light_speed;
    double th = std::sqrt((t - x / c) * (t + x / c));
    return -k0 + model.rest_frequency() * x / (c * c * th);
}

double front_velocity_from_phase_matching(const DispersionModel& model, double omega0) {
    WaveKind kind = classify(model, omega0);
    // Evanescent: the residual has a simple root in v = x/t. Propagating: the residual
    // touches zero quadratically, so the root of its x-derivative is located instead.
    auto f = [&](double v) {
        return kind == WaveKind::Evanescent ? phase_matching_residual(model, omega0, v, 1.0)
                                            : phase_matching_gradient(model, omega0, v, 1.0);
    };
    double hi;
    if (model.relativistic_kind()) {
        double c = model.light_speed;
        if (kind == WaveKind::Evanescent) return quad::find_root(f, 0.0, c);
        hi = c * (1.0 - 1e-3);
        for (int i = 0; i < 5 && f(hi) < 0.0; ++i) hi = c - (c - hi) * 1e-3;
    } else {
        hi = 1.0;
        for (int i = 0; i < 2000 && f(hi) < 0.0; ++i) hi *= 2.0;
    }
    return quad::find_root(f, 0.0, hi);
}

WaveDecomposition decompose(const DispersionModel& model, const SourceSpec& source, double x, double t) {
    if (!(x > 0.0)) throw DomainError("decomposition requires x > 0");
    source.validate(model);
    WaveDecomposition d;
    double w0 = kinetic_frequency(model, source.carrier);
    classify(model, w0);  // threshold check
    d.gauss_validity_minus = inf;

    if (source.band_limited()) {
        BandSegments b = band_segments(model, source, x, t);
        d.psi_p = pole_contribution(model, source, x, t);
        d.front_active = front_active(model, w0, x, t);
        d.psi_s_plus = b.sum();
        d.gauss_validity = gauss_validity(model, w0, x, t);
        d.window_parameter = front_window_parameter(model, w0, x, t);
        d.near_front = d.window_parameter < 1.0;
        d.psi_total = d.psi_p + d.psi_s_plus;
        return d;
    }

    if (!(t > 0.0) || outside_light_cone(model, x, t)) {
        d.inside_light_cone = !outside_light_cone(model, x, t);
        d.gauss_validity = inf;
        d.window_parameter = inf;
        return d;
    }

    d.psi_p = pole_contribution(model, source, x, t);
    d.front_active = front_active(model, w0, x, t);
    GaussTerms g = saddle_gauss(model, source, x, t);
    d.psi_s_plus = g.plus;
    d.psi_s_minus = g.minus;
    d.gauss_validity = gauss_validity(model, w0, x, t, SaddleBranch::Plus);
    if (model.relativistic_kind()) d.gauss_validity_minus = gauss_validity(model, w0, x, t, SaddleBranch::Minus);
    d.window_parameter = front_window_parameter(model, w0, x, t);
    d.near_front = d.window_parameter < 1.0;
    if (d.near_front) {
        cplx nf = near_front_value(model, source, x, t);
        bool prop = classify(model, w0) == WaveKind::Propagating;
        cplx& target = front_branch(model, w0) == SaddleBranch::Plus ? d.psi_s_plus : d.psi_s_minus;
        target = prop ? nf : target + nf;
    }
    d.psi_total = d.psi_p + d.psi_s_plus + d.psi_s_minus;
    return d;
}

BandSegments band_segments(const DispersionModel& model, const SourceSpec& source, double x, double t,
                           const BandRegimeLimits& limits) {
    if (model.relativistic_kind()) throw RegimeError("band-limited segments are non-relativistic only");
    if (!source.band_limited()) throw DomainError("band segments need a band-limited source");
    if (!(x > 0.0) || !(t > 0.0)) throw DomainError("band segments require x > 0 and t > 0");
    source.validate(model);
    double m = model.mass;
    double w0 = kinetic_frequency(model, source.carrier);
    double dw = *source.half_width;
    double W = std::abs(w0);
    if (!(w0 < 0.0)) throw RegimeError("band segments need an evanescent carrier");
    if (dw / W > limits.max_band_ratio) throw RegimeError("band too wide compared with |Omega_0|");
    double vm = front_velocity(model, w0);
    double tau = x / vm;
    if (dw * tau < limits.min_onset) throw RegimeError("band too narrow compared with 1/tau");

    BandSegments b;
    double os = m * x * x / (2.0 * t * t);
    b.alpha = os * t;
    b.w0 = (vm * vm * t * t - x * x) / (x * x);
    b.u_plus = -b.w0 + dw / os;
    b.u_minus = -b.w0 - dw / os;
    b.de_broglie = 1.0 / (m * vm);

    cplx A = source.amplitude;
    cplx phase = std::exp(-I * (model.potential * t - m * x * x / (2.0 * t)));
    double supp = -m * x * x / t;  // log of the common suppression factor
    auto edge = [&](double u) {
        double au = b.alpha * u;
        return (1.0 + I) * A / (2.0 * pi) / (dw * t) * phase * std::exp(cplx(supp + au, -0.5 * au)) *
               std::sin(0.5 * au);
    };
    b.psi_minus_seg = edge(b.u_minus);
    b.psi_plus_seg = edge(b.u_plus);

    double d = os - W;
    double ratio = dw / W;
    double aw = std::abs(b.w0);
    if (d != 0.0 && aw >= ratio / limits.selection_band) {
        // sinh(dw t) exp(d t) exp(supp) combined in log form
        double e1 = supp + d * t + dw * t;
        double s = 0.5 * (std::exp(e1) - std::exp(e1 - 2.0 * dw * t));
        b.psi_2 = (1.0 + I) * A / (2.0 * pi) / (d * t) * phase * s;
    }
    if (aw <= ratio * limits.selection_band) {
        // at w0 = 0 the pre-front side (d > 0) is used, matching Theta at equality
        double at = d == 0.0 ? pi / 2.0 : std::atan(dw / d);
        b.psi_s2 = A / pi * phase * std::exp(supp + dw * t) * at;
    }
    if (aw > ratio && b.psi_2) {
        b.selected = StphFormula::Linearized;
        b.psi_stph_seg = *b.psi_2;
    } else {
        b.selected = StphFormula::ArcTan;
        b.psi_stph_seg = *b.psi_s2;
    }
    return b;
}

TailEstimate band_tail_estimates(const DispersionModel& model, const SourceSpec& source, double x, double t,
                                 double regime_factor) {
    if (model.relativistic_kind()) throw RegimeError("band tail estimates are non-relativistic only");
    if (!source.band_limited()) throw DomainError("band tail estimates need a band-limited source");
    if (!(x > 0.0) || !(t > 0.0)) throw DomainError("band tail estimates require x > 0 and t > 0");
    double w0 = kinetic_frequency(model, source.carrier);
    double tau = traversal_time(model, w0, x);
    if (t > tau / regime_factor && t < tau * regime_factor)
        throw RegimeError("tail estimates are not valid near t = tau");
    double m = model.mass;
    double os = m * x * x / (2.0 * t * t);
    double wp = w0 + *source.half_width;
    TailEstimate e;
    double q = 1.0 - wp / os;
    e.exponent = -0.5 * os * t * q * q;
    if (t < tau) {
        e.regime = TailRegime::ShortTime;
        e.asymptotic_exponent = -0.5 * os * t;
    } else {
        e.regime = TailRegime::LongTime;
        e.asymptotic_exponent = -wp * wp * t * t * t / (m * x * x);
    }
    return e;
}

}  // namespace evfront
