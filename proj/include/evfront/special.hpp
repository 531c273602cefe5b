#pragma once

#include <complex>

namespace evfront {

// Faddeeva function w(z) = exp(-z^2) erfc(-i z), valid in the whole complex plane.
std::complex<double> faddeeva(std::complex<double> z);

// Sine integral Si(x) = int_0^x sin(s)/s ds.
double sine_integral(double x);

}  // namespace evfront
