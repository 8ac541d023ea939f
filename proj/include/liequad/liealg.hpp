#pragma once

#include "liequad/errors.hpp"
#include "liequad/expr.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace liequad {

/// c^k_ij with [b_i, b_j] = c^k_ij b_k; indices 0-based.
class StructureConstants {
public:
    StructureConstants() = default;
    explicit StructureConstants(std::size_t m) : m_(m), c_(m * m * m) {}

    std::size_t dim() const { return m_; }
    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_.at((i * m_ + j) * m_ + k); }
    Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_.at((i * m_ + j) * m_ + k); }
    /// Sets c^k_ij and c^k_ji = -c^k_ij.
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& v);

    bool is_abelian() const;
    bool is_antisymmetric() const;
    /// Exact Jacobi identity on the constants.
    bool satisfies_jacobi() const;

    /// Bracket of coefficient vectors.
    std::vector<Rational> bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

    bool operator==(const StructureConstants&) const = default;

    /// Set to true when the closure residual was only verified numerically.
    bool numerically_verified = false;

private:
    std::size_t m_ = 0;
    std::vector<Rational> c_;
};

/// An algebra element given by its components: one entry for a function, one per
/// coordinate for a vector field.
using AlgebraElement = std::vector<Expr>;
using BracketFn = std::function<AlgebraElement(const AlgebraElement&, const AlgebraElement&)>;

class NotClosedError : public Error {
public:
    NotClosedError(const std::string& what, std::size_t i, std::size_t j) : Error(what), i_(i), j_(j) {}
    std::size_t i() const { return i_; }
    std::size_t j() const { return j_; }

private:
    std::size_t i_, j_;
};

class LinearlyDependentBasisError : public Error {
public:
    using Error::Error;
};

class NotSolvableError : public Error {
public:
    using Error::Error;
};

/// Recovers rational structure constants from evaluations at >= m+5 random points in
/// [-2,2]^dim (least squares, continued-fraction snap with denominator <= 1e6), then
/// verifies the closure residual symbolically, or numerically (<= 1e-9 at 25 points)
/// when the zero test is inconclusive.
StructureConstants structure_constants(const std::vector<AlgebraElement>& basis, const BracketFn& bracket,
                                       std::uint64_t seed = 0);

using Subspace = std::vector<std::vector<Rational>>;  // rows in reduced echelon form

/// Reduced row echelon basis of the span of the given vectors.
Subspace span_of(const std::vector<std::vector<Rational>>& vectors, std::size_t dim);
bool in_span(const Subspace& s, const std::vector<Rational>& v);
/// Span of [x, y] for x in a, y in b.
Subspace bracket_span(const StructureConstants& c, const Subspace& a, const Subspace& b);

struct DerivedSeries {
    bool solvable = false;
    std::vector<std::size_t> dims;  // dim g^(0), g^(1), ... down to 0 or the stable value
    std::vector<Subspace> terms;
};

DerivedSeries derived_series(const StructureConstants& c);
bool is_solvable(const StructureConstants& c);

/// {0} = L_0 < L_1 < ... < L_m = g with L_i a codimension-1 ideal of L_{i+1}.
struct SolvableFlag {
    std::vector<Subspace> subspaces;                 // L_0 .. L_m
    std::vector<std::vector<Rational>> adapted;      // e_k in L_k \ L_{k-1}, k = 1..m
};

/// Recursive hyperplane construction: the last direction (in basis order) outside
/// [g,g] is discarded, the hyperplane spanned by [g,g] and the remaining directions is
/// an ideal; recurse inside it. Throws NotSolvableError.
SolvableFlag solvable_flag(const StructureConstants& c);

/// Exact check of [L_{i+1}, L_i] within L_i and dim L_i = i.
bool verify_flag(const StructureConstants& c, const SolvableFlag& flag);

}  // namespace liequad
