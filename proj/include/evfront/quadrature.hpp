#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "evfront/errors.hpp"

namespace evfront::quad {

using cplx = std::complex<double>;

struct Integral {
    cplx value{0.0, 0.0};
    double error = 0.0;
    double l1 = 0.0;
    bool converged = true;  // the error target was met within the subdivision budget
};

// Globally adaptive 21-point Gauss-Kronrod started from the given breakpoints: the piece
// with the largest error estimate is bisected until the summed error drops below
// tol times the L1 norm of the whole integrand (or abs_tol), or max_subdivisions is spent.
template <class F>
Integral integrate(F&& f, std::vector<double> pts, double tol, int max_subdivisions, double abs_tol = 0.0) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    struct Piece {
        double a, b, err, l1;
        cplx v;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    auto eval = [&](double a, double b) {
        double err = 0.0, l1 = 0.0;
        cplx v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
        return Piece{a, b, err * 0.5 * (b - a), l1, v};
    };
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::priority_queue<Piece> heap;
    Integral out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Piece p = eval(pts[i], pts[i + 1]);
        out.value += p.v;
        out.error += p.err;
        out.l1 += p.l1;
        heap.push(p);
    }
    for (int n = 0; n < max_subdivisions && !heap.empty(); ++n) {
        if (out.error <= std::max(abs_tol, tol * out.l1)) break;
        Piece p = heap.top();
        double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) break;
        heap.pop();
        Piece l = eval(p.a, mid), r = eval(mid, p.b);
        out.value += l.v + r.v - p.v;
        out.error += l.err + r.err - p.err;
        out.l1 += l.l1 + r.l1 - p.l1;
        heap.push(l);
        heap.push(r);
    }
    // recompute the error sum to shed accumulated rounding in the running total
    out.error = 0.0;
    cplx total = 0.0;
    while (!heap.empty()) {
        out.error += heap.top().err;
        total += heap.top().v;
        heap.pop();
    }
    out.value = total;
    // a target below the rounding level of the integrand cannot be met by bisection
    double floor = 64.0 * std::numeric_limits<double>::epsilon() * out.l1;
    out.converged = out.error <= std::max({abs_tol, tol * out.l1, floor});
    return out;
}

// Residue of g at center from the trapezoidal rule on a circle:
// (1/2 pi i) closed integral of g dz = mean of g(z_j) (z_j - center).
// err gets the difference against the rule with half the nodes.
template <class G>
cplx circle_residue(G&& g, cplx center, double radius, int n, double* err = nullptr) {
    cplx full = 0.0, half = 0.0;
    for (int j = 0; j < n; ++j) {
        double th = 2.0 * std::numbers::pi * (j + 0.5) / n;
        cplx dz = std::polar(radius, th);
        cplx v = g(center + dz) * dz;
        full += v;
        if (j % 2 == 0) half += v;
    }
    full /= double(n);
    half /= double(n / 2);
    if (err) *err = std::abs(full - half);
    return full;
}

// Root of f on [a, b] (sign change required), solved to full double precision.
template <class F>
double find_root(F&& f, double a, double b) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw ConvergenceError("root not bracketed");
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace evfront::quad
