#include "evfront/special.hpp"

#include <cmath>
#include <numbers>

namespace evfront {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Laplace continued fraction, good for |z| large in the upper half-plane.
cplx faddeeva_cf(cplx z) {
    const int n = 40;
    cplx r = 0.0;
    for (int k = n; k >= 1; --k) r = (0.5 * k) / (z - r);
    return cplx(0.0, 1.0 / std::sqrt(pi)) / (z - r);
}

// Trapezoidal rule for (i/pi) int exp(-s^2)/(z-s) ds with the pole correction term.
// The grid (integer or half-integer multiples of h) is picked to keep Re z away from nodes.
cplx faddeeva_trapezoid(cplx z) {
    const double h = 0.5;
    const int n = 14;
    const cplx I(0.0, 1.0);
    double f = z.real() / h - std::floor(z.real() / h);
    double shift = (f > 0.25 && f < 0.75) ? 0.0 : 0.5;
    cplx sum = 0.0;
    for (int j = -n; j <= n; ++j) {
        double s = (j + shift) * h;
        sum += std::exp(-s * s) / (z - s);
    }
    cplx t = I * h / pi * sum;
    cplx e = std::exp(-2.0 * pi * I * z / h);
    cplx g = 2.0 * std::exp(-z * z);
    return shift == 0.0 ? t + g / (1.0 - e) : t + g / (1.0 + e);
}

cplx faddeeva_upper(cplx z) {
    if (std::abs(z) >= 7.5) return faddeeva_cf(z);
    return faddeeva_trapezoid(z);
}

}  // namespace

cplx faddeeva(cplx z) {
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    // reflection: w(z) = 2 exp(-z^2) - w(-z)
    return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

double sine_integral(double x) {
    if (x < 0.0) return -sine_integral(-x);
    if (x == 0.0) return 0.0;
    if (x <= 2.0) {
        // power series
        double x2 = x * x, term = x, sum = x;
        for (int n = 1; n < 40; ++n) {
            term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
            double add = term / (2.0 * n + 1.0);
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    // E1(ix) = -Ci(x) + i (Si(x) - pi/2), continued fraction by modified Lentz
    const cplx I(0.0, 1.0);
    const double tiny = 1e-300;
    cplx b = cplx(1.0, x);
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 200; ++i) {
        double a = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    cplx e1 = h * std::exp(-I * x);
    return pi / 2.0 + e1.imag();
}

}  // namespace evfront
