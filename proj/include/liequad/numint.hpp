#pragma once

#include "liequad/errors.hpp"
#include "liequad/geometry.hpp"

#include <span>
#include <string>
#include <vector>

namespace liequad {

struct Trajectory {
    ChartPtr chart;
    std::vector<double> times;                // strictly increasing
    std::vector<std::vector<double>> states;  // one chart-sized vector per time
    double step = 0;
    std::string method;
};

/// A domain error hit while integrating, with the parameter value where it happened.
class IntegrationError : public Error {
public:
    IntegrationError(double t, const std::string& what)
        : Error("at t = " + std::to_string(t) + ": " + what), t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

/// Sample parameters used by integrate_field: t0 + k h, then t1 if not already reached.
std::vector<double> sample_times(double t0, double t1, double h);

/// Classical fixed-step RK4 with samples at t0 + k h and a final partial step to t1.
Trajectory integrate_field(const VectorField& v, std::span<const double> x0, double t0, double t1, double h);

/// RK4 on the dynamics field of the system.
Trajectory integrate(const HamiltonianSystem& sys, std::span<const double> x0, double t0, double t1, double h);

struct DriftReport {
    double max_drift = 0;
    std::vector<double> drift;  // |f(x(t)) - f(x(t0))| per sample
};

DriftReport monitor(const Expr& f, const Trajectory& traj);

}  // namespace liequad
