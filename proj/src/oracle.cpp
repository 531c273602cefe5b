#include "evfront/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "evfront/decomposition.hpp"
#include "evfront/errors.hpp"
#include "evfront/phase.hpp"
#include "evfront/quadrature.hpp"
#include "evfront/special.hpp"

namespace evfront {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Exponent at which path integrals are truncated (integrand down by exp(-tail_cut)).
constexpr double tail_cut = 46.0;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// A simple pole of the path integrand, already mapped to the path parameter.
struct PathPole {
    cplx at;        // location in the path parameter
    cplx residue;   // residue of the parameterized integrand
    bool physical;  // the pole that produces psi_p
};

// Integrate f over [lo, hi] with the listed poles subtracted and their contributions
// restored in closed form. enclosed_sign is the sign of Im(at) on the side that counts as
// enclosed; a physical pole sitting on the line is put on the side given by `active`.
template <class F>
quad::Integral integrate_with_poles(F&& f, double lo, double hi, std::vector<double> pts,
                                    const std::vector<PathPole>& poles, double enclosed_sign, bool active,
                                    double tol, int max_sub) {
    auto g = [&](double a) {
        cplx v = f(a);
        for (const auto& p : poles) v -= p.residue / (a - p.at);
        return v;
    };
    pts.push_back(lo);
    pts.push_back(hi);
    pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double v) { return v < lo || v > hi; }), pts.end());
    quad::Integral r = quad::integrate(g, pts, tol, max_sub);
    for (const auto& p : poles) {
        double eta = p.at.imag();
        double scale = std::abs(p.at) + 1.0;
        if (p.physical && std::abs(eta) < 1e-10 * scale) eta = (active ? enclosed_sign : -enclosed_sign) * 1e-300;
        if (eta == 0.0) eta = -enclosed_sign * 1e-300;
        double c = p.at.real();
        // int_lo^hi da/(a - p) with the argument followed continuously along the real line
        double logmod = 0.5 * std::log(((hi - c) * (hi - c) + eta * eta) / ((lo - c) * (lo - c) + eta * eta));
        double arg = std::atan2(-eta, hi - c) - std::atan2(-eta, lo - c);
        r.value += p.residue * cplx(logmod, arg);
    }
    return r;
}

// floor: absolute error attributable to cancellation inside the integrand itself
void require_converged(const quad::Integral& r, const char* what, const QuadratureSettings& st, double floor = 0.0) {
    if (r.converged || r.error <= floor) return;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s: no convergence within %d subdivisions (error %.3g, integrand L1 %.3g)", what,
                  st.max_subdivisions, r.error, r.l1);
    throw ConvergenceError(buf);
}

void require_sharp(const SourceSpec& s) {
    if (s.band_limited()) throw DomainError("this oracle handles the sharp-onset source only");
}

double tolerance_for(const QuadratureSettings& st) { return 0.05 * st.rel_tol; }

// ---------------- non-relativistic contour ----------------

OracleResult contour_nonrel(const DispersionModel& model, const SourceSpec& source, double x, double t,
                            const QuadratureSettings& st) {
    OracleResult out;
    out.method = OracleMethod::ContourQuadrature;
    double m = model.mass;
    double w0 = kinetic_frequency(model, source.carrier);
    classify(model, w0);
    cplx pre = I * source.amplitude / (2.0 * pi) * std::exp(-I * model.potential * t);
    double ks = m * x / t;
    double phis = -m * x * x / (2.0 * t);
    cplx q = std::sqrt(cplx(2.0 * m * w0, 0.0));  // physical root: k0 or i kappa0
    const cplx dir = std::polar(1.0, -pi / 4.0);
    double gam = t / (2.0 * m);
    double sigma = 1.0 / std::sqrt(gam);
    double R = std::sqrt(tail_cut / gam);
    bool active = front_active(model, w0, x, t);

    // line k = k_s + dir r
    // dk/dr [1/(k-q) + 1/(k+q)] = 1/(r-r_+) + 1/(r-r_-); written in r to keep the poles exact
    const cplx rpp = (q - ks) / dir, rpm = (-q - ks) / dir;
    auto F = [&](double r) {
        return std::exp(cplx(-gam * r * r, -phis)) * (1.0 / (r - rpp) + 1.0 / (r - rpm));
    };
    std::vector<PathPole> poles;
    for (int s : {1, -1}) {
        cplx rp = s == 1 ? rpp : rpm;
        if (std::abs(rp.imag()) < 3.0 * sigma && std::abs(rp.real()) < R + 3.0 * sigma)
            poles.push_back({rp, std::exp(cplx(0.0, -phis) - gam * rp * rp), s == 1});
    }
    std::vector<double> pts{-4.0 * sigma, -sigma, 0.0, sigma, 4.0 * sigma};
    quad::Integral line = integrate_with_poles(F, -R, R, pts, poles, 1.0, active, tolerance_for(st),
                                               st.max_subdivisions);
    require_converged(line, "steepest-descent line", st);
    out.forerunner = pre * line.value;
    out.saddle_plus = out.forerunner;
    double tail = std::exp(-tail_cut) * sigma * 4.0 / std::max(std::abs(q) + ks, 1e-300);
    out.est_error = std::abs(pre) * (line.error + tail);

    if (active) {
        double dphi = std::abs(t * q / m - x);
        double rad = std::min({0.5 * std::abs(2.0 * q), dphi > 0.0 ? 0.5 / dphi : 1.0, 1.0});
        auto G = [&](cplx k) {
            return std::exp(-I * (k * k * gam - k * x)) * (1.0 / (k - q) + 1.0 / (k + q));
        };
        double cerr = 0.0;
        cplx res = quad::circle_residue(G, q, rad, 64, &cerr);
        out.pole = source.amplitude * std::exp(-I * model.potential * t) * res;
        out.pole_enclosed = true;
        out.est_error += std::abs(source.amplitude) * cerr;
    }
    out.psi = out.forerunner + out.pole;
    out.path_metadata = fmt("nonrel steepest-descent line k=k_s+e^{-i pi/4} r, k_s=%.6g, |r|<=%.6g", ks, R) +
                        (active ? ", pole circle included" : ", pole not enclosed");
    return out;
}

// ---------------- relativistic contour ----------------

struct RelPath {
    double sign;   // -1 for the line through the saddle at +Omega_s, +1 for the mirrored one
    double shift;  // imaginary offset (0 or pi)
    cplx zeta(cplx a) const { return a + sign * I * std::atan(std::sinh(a)) + I * shift; }
    cplx dzeta(cplx a) const { return 1.0 + sign * I / std::cosh(a); }
};

// Solve zeta(a) = target near the real axis.
std::optional<cplx> invert_path(const RelPath& p, cplx target, double L) {
    double best = 0.0, bd = std::numeric_limits<double>::infinity();
    const int n = 800;
    for (int i = 0; i <= n; ++i) {
        double a = -L - 2.0 + (2.0 * L + 4.0) * i / n;
        double d = std::abs(p.zeta(a) - target);
        if (d < bd) {
            bd = d;
            best = a;
        }
    }
    cplx a = best;
    for (int it = 0; it < 60; ++it) {
        cplx step = (p.zeta(a) - target) / p.dzeta(a);
        a -= step;
        if (std::abs(a.imag()) > 1.2) return std::nullopt;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(a))) break;
    }
    if (std::abs(p.zeta(a) - target) > 1e-12 * (1.0 + std::abs(target))) return std::nullopt;
    return a;
}

OracleResult contour_rel(const DispersionModel& model, const SourceSpec& source, double x, double t,
                         const QuadratureSettings& st) {
    OracleResult out;
    out.method = OracleMethod::ContourQuadrature;
    double c = model.light_speed;
    double mu = model.rest_frequency();
    double w0 = kinetic_frequency(model, source.carrier);
    classify(model, w0);
    if (!(x < c * t)) {
        out.causal_zero = true;
        out.path_metadata = "outside light cone: path shifted to Im Omega -> +inf, field vanishes";
        return out;
    }
    cplx pre = I * source.amplitude / (2.0 * pi) * std::exp(-I * model.potential * t);
    double th = std::sqrt((t - x / c) * (t + x / c));
    double ths = std::atanh(x / (c * t));
    double mt = mu * th;
    double r0 = w0 / mu;
    bool active = front_active(model, w0, x, t);

    // physical pole in theta (Omega = mu cosh theta, c k = mu sinh theta)
    cplx tp;
    if (r0 > 1.0) tp = std::acosh(r0);
    else if (r0 < -1.0) tp = cplx(std::acosh(-r0), pi);
    else tp = cplx(0.0, std::acos(r0));
    std::vector<std::pair<cplx, bool>> images;
    for (int n = -1; n <= 1; ++n) {
        images.push_back({tp + 2.0 * pi * I * double(n), n == 0});
        images.push_back({-tp + 2.0 * pi * I * double(n), false});
    }

    // truncation: mt sinh(a) tanh(a) >= tail_cut
    double L = std::asinh(std::max(tail_cut / mt, std::sqrt(tail_cut / mt)));
    while (mt * std::sinh(L) * std::tanh(L) < tail_cut) L += 0.25;
    double sa = std::min(1.0, 1.0 / std::sqrt(mt));

    auto ratio = [&](cplx theta) { return std::sinh(theta) / (std::cosh(theta) - r0); };
    int subtracted = 0;
    // only the path of the front branch can pass the physical pole; near the other one the
    // local side says nothing about enclosure by the combined contour
    bool front_on_minus = front_branch(model, w0) == SaddleBranch::Minus;
    auto run = [&](const RelPath& p, double phase_sign, double enclosed_sign, bool front_path) {
        std::vector<PathPole> poles;
        std::vector<cplx> thetas;
        // cosh(theta) - r0 near the pole image tj reached at path parameter aj, free of cancellation
        auto denom_near = [&](double a, cplx aj, cplx tj) {
            cplx su = std::sinh(cplx(a)), sv = std::sinh(aj);
            cplx dsh = 2.0 * std::cosh(0.5 * (a + aj)) * std::sinh(0.5 * (a - aj));
            cplx d = (a - aj) + p.sign * I * std::atan(dsh / (1.0 + su * sv));
            cplx theta = ths + p.zeta(a);
            return 2.0 * std::sinh(0.5 * (theta + tj)) * std::sinh(0.5 * d);
        };
        auto F = [&](double a) {
            double g = std::sinh(a) * std::tanh(a);
            cplx theta = ths + p.zeta(a);
            cplx den = std::cosh(theta) - r0;
            double best = 0.25;
            for (std::size_t j = 0; j < poles.size(); ++j) {
                double d = std::abs(a - poles[j].at);
                if (d < best) {
                    best = d;
                    den = denom_near(a, poles[j].at, thetas[j]);
                }
            }
            return std::exp(cplx(-mt * g, -phase_sign * mt)) * std::sinh(theta) / den * p.dzeta(a);
        };
        for (auto& [img, phys] : images) {
            auto a = invert_path(p, img - ths, L);
            if (!a || std::abs(a->imag()) > 0.5 || std::abs(a->real()) > L + 1.0) continue;
            cplx res = std::exp(-I * mt * std::cosh(img - ths));
            // a huge residue means the image was reached on another branch of the path map:
            // the integrand stays bounded there and subtracting it would only cancel digits
            if (!phys && std::abs(res) > 1e4) continue;
            poles.push_back({*a, res, phys});
            thetas.push_back(img);
            if (phys && front_path && std::abs(a->imag()) > 1e-10 * (1.0 + std::abs(*a)) &&
                (a->imag() * enclosed_sign > 0.0) != active)
                throw ConvergenceError("sheet tracking failure: pole side disagrees with the front position");
        }
        subtracted += int(poles.size());
        std::vector<double> pts{-4.0 * sa, -sa, 0.0, sa, 4.0 * sa, -ths};
        quad::Integral r = integrate_with_poles(F, -L, L, pts, poles, enclosed_sign, active, tolerance_for(st),
                                                st.max_subdivisions);
        require_converged(r, "steepest-descent path", st);
        return r;
    };
    quad::Integral ip = run(RelPath{-1.0, 0.0}, 1.0, 1.0, !front_on_minus);
    quad::Integral im = run(RelPath{1.0, pi}, -1.0, -1.0, front_on_minus);
    out.saddle_plus = pre * ip.value;
    out.saddle_minus = -pre * im.value;
    out.forerunner = out.saddle_plus + out.saddle_minus;
    double tail = 2.0 * std::exp(-tail_cut);
    out.est_error = std::abs(pre) * (ip.error + im.error + 2.0 * tail);

    if (active) {
        double dist = std::numeric_limits<double>::infinity();
        for (auto& [img, phys] : images)
            if (!phys) dist = std::min(dist, std::abs(img - tp));
        double dphi = std::abs(mt * std::sinh(tp - ths));
        double rad = std::min({0.5 * dist, dphi > 0.0 ? 0.5 / dphi : 1.0, 1.0});
        auto G = [&](cplx theta) { return std::exp(-I * mt * std::cosh(theta - ths)) * ratio(theta); };
        double cerr = 0.0;
        cplx res = quad::circle_residue(G, tp, rad, 64, &cerr);
        out.pole = source.amplitude * std::exp(-I * model.potential * t) * res;
        out.pole_enclosed = true;
        out.est_error += std::abs(source.amplitude) * cerr;
    }
    out.psi = out.forerunner + out.pole;
    out.path_metadata = fmt("rel steepest-descent lines through +-Omega_s in theta (Omega=mc^2 cosh theta), "
                            "theta_s=%.6g, |a|<=%.6g, subtracted poles=%.0f",
                            ths, L, double(subtracted)) +
                        (active ? ", pole circle included" : ", pole not enclosed");
    return out;
}

}  // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw ConfigError("abs_tol must be non-negative");
    if (max_subdivisions < 64) throw ConfigError("max_subdivisions must be at least 64");
    if (!(pv_window > 0.0 && pv_window <= 1.0)) throw ConfigError("pv_window must lie in (0, 1]");
}

const char* to_string(OracleMethod m) {
    switch (m) {
        case OracleMethod::ClosedFormNonRel: return "closed_form";
        case OracleMethod::BandQuadrature: return "band_quadrature";
        case OracleMethod::ContourQuadrature: return "contour_quadrature";
        case OracleMethod::ShiftedLineQuadrature: return "shifted_line";
    }
    return "unknown";
}

OracleResult exact_nonrel_sharp(const DispersionModel& model, const SourceSpec& source, double x, double t) {
    if (model.relativistic_kind()) throw DomainError("closed form exists for the non-relativistic model only");
    require_sharp(source);
    if (t == 0.0) throw DomainError("closed form is undefined at t = 0");
    if (x < 0.0) throw DomainError("x must be non-negative");
    OracleResult out;
    out.method = OracleMethod::ClosedFormNonRel;
    if (t < 0.0) {
        out.causal_zero = true;
        out.path_metadata = "before switch-on";
        return out;
    }
    cplx A = source.amplitude;
    double m = model.mass;
    double w0 = kinetic_frequency(model, source.carrier);
    double a = t / (2.0 * m);
    double kc = m * x / t;
    cplx q = std::sqrt(cplx(2.0 * m * w0, 0.0));
    cplx rot = std::polar(std::sqrt(a), pi / 4.0);
    double ph = m * x * x / (2.0 * t);
    cplx E = std::polar(1.0, ph);
    cplx sum = 0.0;
    double mag = 0.0;
    for (double s : {1.0, -1.0}) {
        cplx z = -rot * (s * q - kc);
        cplx term;
        if (z.imag() >= 0.0) {
            term = faddeeva(z) * E;
        } else {
            // w(z) = 2 exp(-z^2) - w(-z); fold the Gaussian and the phase into one exponent
            term = 2.0 * std::exp(-z * z + I * ph) - faddeeva(-z) * E;
        }
        sum += term;
        mag += std::abs(term);
    }
    out.psi = 0.5 * A * std::exp(-I * model.potential * t) * sum;
    out.est_error = 1e-13 * 0.5 * std::abs(A) * mag;
    out.path_metadata = "Faddeeva closed form";
    return out;
}

OracleResult contour_quadrature(const DispersionModel& model, const SourceSpec& source, double x, double t,
                                const QuadratureSettings& settings) {
    require_sharp(source);
    settings.validate();
    if (!(x >= 0.0)) throw DomainError("contour quadrature requires x >= 0");
    if (!(t > 0.0)) {
        OracleResult out;
        out.method = OracleMethod::ContourQuadrature;
        out.causal_zero = true;
        out.path_metadata = "before switch-on";
        return out;
    }
    if (model.relativistic_kind()) return contour_rel(model, source, x, t, settings);
    return contour_nonrel(model, source, x, t, settings);
}

OracleResult shifted_line_quadrature(const DispersionModel& model, const SourceSpec& source, double x,
                                     double t, const QuadratureSettings& settings) {
    if (!model.relativistic_kind()) throw DomainError("shifted-line quadrature is implemented for the relativistic model");
    require_sharp(source);
    settings.validate();
    if (!(x >= 0.0)) throw DomainError("shifted-line quadrature requires x >= 0");
    OracleResult out;
    out.method = OracleMethod::ShiftedLineQuadrature;
    double c = model.light_speed;
    double mu = model.rest_frequency();
    double w0 = kinetic_frequency(model, source.carrier);
    classify(model, w0);
    double s = t - x / c;
    double Y = s != 0.0 ? 1.0 / std::abs(s) : 1.0 / std::max(t, 1e-300);
    double kap = x * mu * mu / (2.0 * c);
    double B = mu;
    cplx pre = I * source.amplitude / (2.0 * pi) * std::exp(-I * model.potential * t);

    // exp(i(k - Omega/c) x) = 1 - i kap/W + beta/W^2 + O(W^-3) with W = Omega + iB
    double beta = kap * B - 0.5 * kap * kap;
    auto asym_factor = [&](cplx w) {
        cplx wi = 1.0 / (w + I * B);
        return 1.0 - I * kap * wi + beta * wi * wi;
    };
    auto h = [&](double u) {
        cplx w(u, Y);
        cplx k = wavenumber(model, w, Sheet::Upper);
        cplx full = std::exp(-I * (w * t - k * x));
        cplx asym = std::exp(-I * s * w) * asym_factor(w);
        return (full - asym) / (w - w0);
    };
    // the remainder beyond U oscillates like exp(-i s Omega), so it is of order |h(U)|/|s|
    auto tail_of = [&](double U) {
        double reach = s != 0.0 ? std::min(U, 2.0 / std::abs(s)) : U;
        return (std::abs(h(U)) + std::abs(h(-U))) * reach;
    };
    double scale = std::max({mu, std::abs(w0), Y, std::sqrt(kap * Y)});
    double U = 40.0 * scale;
    for (int i = 0; i < 40 && tail_of(U) >= 1e-3 * settings.rel_tol; ++i) U *= 1.5;
    double panel = std::max(4.0 * pi / std::max(std::abs(s), 1e-300), 4.0 * Y);
    std::vector<double> pts{-U, U, w0, mu, -mu};
    int np = int(std::min(2.0 * U / panel, 20000.0));
    for (int i = 1; i < np; ++i) pts.push_back(-U + 2.0 * U * i / np);
    quad::Integral r = quad::integrate(h, pts, tolerance_for(settings), settings.max_subdivisions, settings.abs_tol);
    // full - asym cancels at large |Omega|, so roundoff is set by the size of the terms, not their difference
    double gross = 0.0;
    {
        std::vector<double> g = pts;
        std::sort(g.begin(), g.end());
        auto mag = [&](double u) {
            cplx w(u, Y);
            cplx k = wavenumber(model, w, Sheet::Upper);
            return (std::abs(std::exp(-I * (w * t - k * x))) + std::abs(std::exp(-I * s * w) * asym_factor(w))) /
                   std::abs(w - w0);
        };
        for (std::size_t i = 1; i < g.size(); ++i) gross += 0.5 * (mag(g[i - 1]) + mag(g[i])) * (g[i] - g[i - 1]);
    }

    // residues of the subtracted part below the line (closed downward for s > 0)
    cplx S = 0.0;
    if (s >= 0.0) {
        cplx d = w0 + I * B;
        S = -2.0 * pi * I *
            (std::exp(-I * s * w0) * asym_factor(w0) +
             std::exp(-s * B) * (I * kap / d + beta * (I * s / d - 1.0 / (d * d))));
        if (s == 0.0) S *= 0.5;
    }
    // the tolerance applies to the field, which the closed-form residues may dominate
    double floor = std::max(64.0 * std::numeric_limits<double>::epsilon() * gross,
                            tolerance_for(settings) * std::abs(r.value + S));
    require_converged(r, "shifted line", settings, floor);
    out.psi = pre * (r.value + S);
    out.est_error = std::abs(pre) * (r.error + tail_of(U));
    out.path_metadata = fmt("line Im Omega=%.6g, |Re Omega|<=%.6g, s=t-x/c=%.6g", Y, U, s);
    return out;
}

OracleResult band_quadrature(const DispersionModel& model, const SourceSpec& source, double x, double t,
                             const QuadratureSettings& settings) {
    if (!source.band_limited()) throw DomainError("band quadrature needs a band-limited source");
    settings.validate();
    source.validate(model);
    if (x < 0.0) throw DomainError("x must be non-negative");
    OracleResult out;
    out.method = OracleMethod::BandQuadrature;
    double w0 = kinetic_frequency(model, source.carrier);
    double dw = *source.half_width;
    double win = settings.pv_window * dw;
    cplx pre = I * source.amplitude / (2.0 * pi) * std::exp(-I * model.potential * t);

    auto f = [&](double w) {
        cplx k = wavenumber(model, cplx(w, 0.0), Sheet::Upper);
        return std::exp(-I * w * t + I * k * x);
    };
    auto folded = [&](double s) { return (f(w0 + s) - f(w0 - s)) / s; };
    auto direct = [&](double w) { return f(w) / (w - w0); };

    // panels of about one oscillation period keep the adaptive scheme local
    auto panels = [&](double lo, double hi) {
        std::vector<double> p{lo, hi};
        double width = 2.0 * pi / std::max(std::abs(t), 1e-300);
        int n = int(std::min((hi - lo) / width, 4000.0));
        for (int i = 1; i < n; ++i) p.push_back(lo + (hi - lo) * i / n);
        if (model.relativistic_kind()) {
            double mu = model.rest_frequency();
            for (double b : {mu, -mu})
                if (b > lo && b < hi) p.push_back(b);
        }
        return p;
    };
    double tol = tolerance_for(settings);
    std::vector<double> fold_pts = panels(0.0, win);
    if (model.relativistic_kind()) {
        // branch points seen by the folded integrand
        double mu = model.rest_frequency();
        for (double b : {mu - w0, w0 - mu, -mu - w0, w0 + mu})
            if (b > 0.0 && b < win) fold_pts.push_back(b);
    }
    quad::Integral core = quad::integrate(folded, fold_pts, tol, settings.max_subdivisions, settings.abs_tol);
    require_converged(core, "band principal-value window", settings);
    cplx value = core.value;
    double err = core.error;
    if (win < dw) {
        quad::Integral up = quad::integrate(direct, panels(w0 + win, w0 + dw), tol, settings.max_subdivisions);
        quad::Integral lo = quad::integrate(direct, panels(w0 - dw, w0 - win), tol, settings.max_subdivisions);
        require_converged(up, "band upper part", settings);
        require_converged(lo, "band lower part", settings);
        value += up.value + lo.value;
        err += up.error + lo.error;
    }
    value -= I * pi * f(w0);
    out.psi = pre * value;
    out.est_error = std::abs(pre) * err;
    out.path_metadata = fmt("real-axis band [%.6g, %.6g], principal-value window %.6g", w0 - dw, w0 + dw, win);
    return out;
}

OracleResult reference_field(const DispersionModel& model, const SourceSpec& source, double x, double t,
                             const QuadratureSettings& settings) {
    if (source.band_limited()) return band_quadrature(model, source, x, t, settings);
    if (!model.relativistic_kind()) {
        if (t == 0.0) {
            OracleResult out;
            out.causal_zero = x > 0.0;
            out.psi = x > 0.0 ? cplx(0.0) : 0.5 * source.amplitude;
            out.path_metadata = "switch-on instant";
            return out;
        }
        return exact_nonrel_sharp(model, source, x, t);
    }
    return contour_quadrature(model, source, x, t, settings);
}

std::optional<OracleResult> cross_check_field(const DispersionModel& model, const SourceSpec& source, double x,
                                              double t, const QuadratureSettings& settings) {
    if (source.band_limited() || !(x >= 0.0)) return std::nullopt;
    if (!model.relativistic_kind()) return contour_quadrature(model, source, x, t, settings);
    if (!(t > 0.0)) return std::nullopt;
    return shifted_line_quadrature(model, source, x, t, settings);
}

cplx band_boundary_field(const SourceSpec& source, double t) {
    if (!source.band_limited()) throw DomainError("band boundary field needs a band-limited source");
    return source.amplitude * std::exp(-I * source.carrier * t) *
           (0.5 + sine_integral(*source.half_width * t) / pi);
}

}  // namespace evfront
