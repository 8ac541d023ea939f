#include "liequad/numint.hpp"

#include <cmath>

namespace liequad {

std::vector<double> sample_times(double t0, double t1, double h)
{
    std::vector<double> ts{t0};
    const auto full = static_cast<long>(std::floor((t1 - t0) / h * (1 + 1e-12)));
    for (long k = 1; k <= full; ++k)
        ts.push_back(std::min(t1, t0 + static_cast<double>(k) * h));
    if (t1 - ts.back() > 1e-12 * std::max(1.0, std::fabs(t1)))
        ts.push_back(t1);
    return ts;
}

Trajectory integrate_field(const VectorField& v, std::span<const double> x0, double t0, double t1, double h)
{
    if (!(h > 0))
        throw Error("step size must be positive");
    if (!(t1 > t0))
        throw Error("integration interval must be increasing");
    const std::size_t d = v.dim();
    if (x0.size() != d)
        throw Error("initial point has dimension " + std::to_string(x0.size()) + ", chart has " + std::to_string(d));

    Trajectory tr;
    tr.chart = v.chart();
    tr.step = h;
    tr.method = "rk4";
    std::vector<double> x(x0.begin(), x0.end());
    double t = t0;
    auto f = [&](const std::vector<double>& y, std::vector<double>& out) {
        try {
            for (std::size_t i = 0; i < d; ++i)
                out[i] = evaluate(v[i], y, *v.chart());
        } catch (const DomainError& e) {
            throw IntegrationError(t, e.what());
        }
    };
    std::vector<double> k1(d), k2(d), k3(d), k4(d), y(d);
    auto step = [&](double dt) {
        f(x, k1);
        for (std::size_t i = 0; i < d; ++i)
            y[i] = x[i] + 0.5 * dt * k1[i];
        f(y, k2);
        for (std::size_t i = 0; i < d; ++i)
            y[i] = x[i] + 0.5 * dt * k2[i];
        f(y, k3);
        for (std::size_t i = 0; i < d; ++i)
            y[i] = x[i] + dt * k3[i];
        f(y, k4);
        for (std::size_t i = 0; i < d; ++i)
            x[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    };

    tr.times.push_back(t0);
    tr.states.push_back(x);
    const double span = t1 - t0;
    const auto full = static_cast<long>(std::floor(span / h * (1 + 1e-12)));
    for (long k = 1; k <= full; ++k) {
        double next = t0 + static_cast<double>(k) * h;
        if (next > t1)
            next = t1;
        step(next - t);
        t = next;
        tr.times.push_back(t);
        tr.states.push_back(x);
    }
    if (t1 - t > 1e-12 * std::max(1.0, std::fabs(t1))) {
        step(t1 - t);
        t = t1;
        tr.times.push_back(t);
        tr.states.push_back(x);
    }
    return tr;
}

Trajectory integrate(const HamiltonianSystem& sys, std::span<const double> x0, double t0, double t1, double h)
{
    return integrate_field(dynamics_field(sys), x0, t0, t1, h);
}

DriftReport monitor(const Expr& f, const Trajectory& traj)
{
    DriftReport r;
    if (traj.states.empty())
        return r;
    const double f0 = evaluate(f, traj.states.front());
    for (const auto& x : traj.states) {
        double d = std::fabs(evaluate(f, x) - f0);
        r.drift.push_back(d);
        r.max_drift = std::max(r.max_drift, d);
    }
    return r;
}

}  // namespace liequad
