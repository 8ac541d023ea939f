#pragma once

#include "liequad/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liequad {

enum class CoordRole { Position, Momentum, Time, Contact, Generic };

struct Coordinate {
    std::string name;
    CoordRole role = CoordRole::Generic;

    bool operator==(const Coordinate&) const = default;
};

/// Ordered, uniquely named coordinates of a chart.
class CoordinateSystem {
public:
    CoordinateSystem() = default;
    explicit CoordinateSystem(std::vector<Coordinate> coordinates);

    static CoordinateSystem generic(const std::vector<std::string>& names);

    std::size_t dim() const { return coordinates_.size(); }
    const Coordinate& operator[](std::size_t i) const { return coordinates_.at(i); }
    const std::vector<Coordinate>& coordinates() const { return coordinates_; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    bool operator==(const CoordinateSystem&) const = default;

private:
    std::vector<Coordinate> coordinates_;
};

using ChartPtr = std::shared_ptr<const CoordinateSystem>;

enum class Func { Sin, Cos, Exp, Ln, Sqrt, Atan };

std::string_view func_name(Func f);

/// Immutable expression tree over coordinate ids. Copies share nodes.
class Expr {
public:
    enum class Kind { Constant, Variable, Sum, Product, Power, Function };

    Expr();
    Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
    Expr(long c);             // NOLINT(google-explicit-constructor)
    Expr(int c) : Expr(static_cast<long>(c)) {}  // NOLINT(google-explicit-constructor)

    static Expr constant(const Rational& c);
    static Expr variable(std::size_t id);
    /// Flattens nested sums and drops zero constants; no further simplification.
    static Expr sum(std::vector<Expr> terms);
    /// Flattens nested products, drops unit factors, folds to 0 on a zero factor.
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, const Rational& exponent);
    static Expr function(Func f, Expr argument);

    Kind kind() const;
    bool is_constant() const { return kind() == Kind::Constant; }
    bool is_zero() const;
    bool is_one() const;

    const Rational& value() const;
    std::size_t variable_id() const;
    const std::vector<Expr>& operands() const;
    const Expr& base() const;
    const Rational& exponent() const;
    Func func() const;
    const Expr& argument() const;

    friend int compare(const Expr& a, const Expr& b);
    friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
    friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Total structural order: negative, zero, or positive.
int compare(const Expr& a, const Expr& b);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Rational& exponent);
Expr apply(Func f, const Expr& argument);

/// Parses the expression grammar; identifiers must name coordinates of `coords`.
Expr parse(std::string_view text, const CoordinateSystem& coords);

/// Canonical form: collected monomials over atoms (coordinates and function
/// applications), a single fraction with a monic denominator, fixed rewrite rules.
Expr simplify(const Expr& e);

/// Exact partial derivative, simplified.
Expr differentiate(const Expr& e, std::size_t var);

/// Replaces variable i by replacements[i] (ids beyond the span are kept). Not simplified.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Throws DomainError naming the offending subexpression.
double evaluate(const Expr& e, std::span<const double> point);
double evaluate(const Expr& e, std::span<const double> point, const CoordinateSystem& names);

enum class ZeroTest { Zero, NonZero, Unknown };

std::string_view to_string(ZeroTest z);

/// Zero when the canonical numerator vanishes; NonZero when the canonical form is a
/// nonzero rational function of the coordinates, or when a sample in [-2,2]^dim exceeds
/// 1e-8 in magnitude; otherwise Unknown.
ZeroTest is_identically_zero(const Expr& e);

/// Combines per-component verdicts: NonZero dominates, then Unknown.
ZeroTest combine(ZeroTest a, ZeroTest b);

std::set<std::size_t> free_variables(const Expr& e);
bool depends_on(const Expr& e, std::size_t var);

/// Value of e when its canonical form is a rational constant.
std::optional<Rational> as_constant(const Expr& e);

/// True when the canonical form uses only coordinates with integer exponents.
bool is_rational_function(const Expr& e);

std::string to_string(const Expr& e, const CoordinateSystem& names);
/// Uses x0, x1, ... for coordinate names.
std::string to_string(const Expr& e);

}  // namespace liequad
