// Internal canonical representation used by simplify and the zero test.
#pragma once

#include "liequad/expr.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace liequad::nf {

struct AtomData;

// Indeterminates of the polynomial layer: a coordinate, a function application
// over a canonical argument, or a non-integer power of a canonical polynomial.
struct Atom {
    enum class Kind : std::uint8_t { Var, Fn, Pow };
    Kind kind = Kind::Var;
    Func func = Func::Sin;
    std::size_t var = 0;
    std::shared_ptr<const AtomData> data;  // Fn argument or Pow base
};

int compare(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }

struct Factor {
    Atom atom;
    Rational exp;
    bool operator==(const Factor& o) const { return atom == o.atom && exp == o.exp; }
};

// Sorted by atom; no zero exponents.
using Monomial = std::vector<Factor>;

int lex(const Monomial& a, const Monomial& b);

struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return lex(a, b) > 0; }
};

// Leading term first, constant term last.
using Poly = std::map<Monomial, Rational, MonoGreater>;

struct RF {
    Poly num;
    Poly den;  // never empty; monic
};

struct AtomData {
    Expr expr;
    RF rf;
};

RF normal_form(const Expr& e);
Expr to_expr(const RF& r);
Expr to_expr(const Poly& p);
bool is_one(const Poly& p);

}  // namespace liequad::nf
