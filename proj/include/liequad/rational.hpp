#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace liequad {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r);

/// Largest integer not above r.
long floor_to_long(const Rational& r);

double to_double(const Rational& r);

/// "3", "-1/2".
std::string to_string(const Rational& r);

/// Parses a decimal literal ("12", "0.25", "1.5e-3") exactly.
Rational parse_decimal(std::string_view text);

/// Exact binary value of a finite double.
Rational from_double_exact(double x);

/// Continued-fraction snap: the best approximation with denominator <= max_den,
/// accepted only if it lies within tol * max(1, |x|) of x.
std::optional<Rational> rationalize(double x, long max_den = 1000000, double tol = 1e-9);

/// q-th root of r when it is rational, e.g. (4/9)^(1/2) = 2/3.
std::optional<Rational> exact_root(const Rational& r, long q);

}  // namespace liequad
