#pragma once

#include "liequad/errors.hpp"
#include "liequad/geometry.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace liequad {

class ReductionError : public Error {
public:
    using Error::Error;
};

/// No catalog case matched; probes() lists why each case was rejected.
class NotStraightenable : public ReductionError {
public:
    explicit NotStraightenable(std::vector<std::string> probes);
    const std::vector<std::string>& probes() const { return probes_; }

private:
    std::vector<std::string> probes_;
};

/// A reduced component still depends on the eliminated coordinate.
class DependenceResidual : public ReductionError {
public:
    using ReductionError::ReductionError;
};

class QuadratureError : public ReductionError {
public:
    using ReductionError::ReductionError;
};

/// y = forward(x), x = inverse(y); the straightened coordinate is the last target coordinate.
struct CoordinateChange {
    ChartPtr source;
    ChartPtr target;
    std::vector<Expr> forward;  // over source ids
    std::vector<Expr> inverse;  // over target ids
    std::string catalog_case;   // "translation", "separable:<kind>", "linear", "euler", "rotation"
    bool pushforward_exact = true;  // false when the unit-field check fell back to sampling
};

/// Rectifies u near x0 using a closed-form catalog, probed in order:
///   (i)   translation c d/dx^i, c constant or free of x^i (and constant combinations);
///   (ii)  separable g(x^i) d/dx^i with g a power, exponential, linear, sine, cosine, or 1/linear;
///   (iii) linear A x with A diagonalizable over the rationals, or a 2x2 rotation block;
///   (iv)  Euler fields sum lambda_i x^i d/dx^i.
/// The result is certified: u pushes forward to d/dy^last, inverse(forward(x)) = x on a box
/// around x0 (1e-9), and |det D forward(x0)| > 1e-6.
CoordinateChange straighten(const VectorField& u, std::span<const double> x0);

/// Pushforward of w under the change, expressed over the target chart.
VectorField transform(const VectorField& w, const CoordinateChange& change);

struct ReductionStage {
    CoordinateChange change;
    VectorField reduced;           // first d-1 components over a (d-1)-dimensional chart
    Expr quadrature_rhs;           // d y^last / dt as a function of the reduced coordinates
    std::vector<VectorField> remaining;  // the other symmetries, projected
};

/// Straightens u, rewrites v in the new chart, and asserts that no component depends
/// on the straightened coordinate (DependenceResidual otherwise). `others` are carried
/// to the reduced chart and must descend to symmetries of the reduced field.
ReductionStage reduce_once(const VectorField& v, const VectorField& u, std::span<const double> x0,
                           const std::vector<VectorField>& others = {});

struct QuadratureTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<std::string> log;  // one line per stage
};

/// Reduces v by the symmetries in order, solves the remaining core triangularly, and
/// back-substitutes through the one-dimensional quadratures (adaptive Gauss-Kronrod,
/// relative tolerance 1e-10). The parameter value 0 corresponds to x0.
QuadratureTrajectory integrate_by_quadratures(const VectorField& v, const std::vector<VectorField>& symmetries,
                                              std::span<const double> x0, std::span<const double> t_grid);

/// Adaptive 15-point Gauss-Kronrod quadrature.
double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                     double abs_tol = 1e-14);

}  // namespace liequad
