#pragma once

// Exact rational arithmetic for terminating hypergeometric sums. Every
// finite double is a dyadic rational, so inputs convert without rounding.

#include <gmpxx.h>

namespace jacobi::numerics {

using Rational = mpq_class;

/// Exact value of a finite double.
Rational exact(double x);

/// Nearest-below double of an exact rational (error at most one ulp).
double to_double(const Rational& q);

/// F(-m, b; c; x) summed exactly and rounded once.
double gauss_2f1_terminating(int m, const Rational& b, const Rational& c, const Rational& x);

} // namespace jacobi::numerics
