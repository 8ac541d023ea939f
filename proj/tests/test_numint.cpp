#include "test_support.hpp"

#include "liequad/numint.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace liequad;

TEST_CASE("sample times")
{
    CHECK(sample_times(0, 1, 0.25) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    auto t = sample_times(0, 1, 0.3);
    REQUIRE(t.size() == 5);
    CHECK(t.back() == 1.0);
    CHECK(t[3] == doctest::Approx(0.9));
}

TEST_CASE("harmonic oscillator reaches (0, -1) at t = pi")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto sys = make_system(s, "(q1^2 + p1^2)/2");
    std::vector<double> x0{0, 1};
    Trajectory tr = integrate(sys, x0, 0, std::numbers::pi, 1e-3);
    CHECK(tr.method == "rk4");
    CHECK(tr.times.back() == std::numbers::pi);
    CHECK(std::fabs(tr.states.back()[0]) <= 1e-8);
    CHECK(std::fabs(tr.states.back()[1] + 1) <= 1e-8);
    for (std::size_t i = 0; i < tr.times.size(); i += 97) {
        CHECK(std::fabs(tr.states[i][0] - std::sin(tr.times[i])) <= 1e-10);
        CHECK(std::fabs(tr.states[i][1] - std::cos(tr.times[i])) <= 1e-10);
    }
    DriftReport d = monitor(sys.H, tr);
    CHECK(d.drift.size() == tr.times.size());
    CHECK(d.max_drift <= 1e-10);
}

TEST_CASE("damped contact oscillator: H decays like exp(-gamma t)")
{
    auto c = make_geometry(GeometryKind::Contact, 1);
    auto sys = make_system(c, "(q1^2 + p1^2)/2 + z/5");
    std::vector<double> x0{0, 1, 2.5};
    Trajectory tr = integrate(sys, x0, 0, 5, 1e-3);
    const double h0 = evaluate(sys.H, x0);
    for (std::size_t i = 0; i < tr.times.size(); i += 250) {
        double h = evaluate(sys.H, tr.states[i]);
        CHECK(std::fabs(h - h0 * std::exp(-0.2 * tr.times[i])) <= 1e-9);
    }
    CHECK(monitor(sys.H, tr).max_drift > 0.1);
}

TEST_CASE("cocontact and cosymplectic time coordinate advances with the parameter")
{
    auto cc = make_geometry(GeometryKind::Cocontact, 1);
    auto sys = make_system(cc, "p1^2/2 + t*q1 + z/3");
    std::vector<double> x0{0, 0, 1, 0};
    Trajectory tr = integrate(sys, x0, 0, 2, 1e-2);
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        CHECK(tr.states[i][0] == doctest::Approx(tr.times[i]).epsilon(1e-14));

    auto cs = make_geometry(GeometryKind::Cosymplectic, 1);
    auto ps = make_system(cs, "p1^2/2 + t*q1");
    std::vector<double> y0{0, 1, 0};
    Trajectory ty = integrate(ps, y0, 0, 1, 1e-2);
    CHECK(ty.states.back()[2] == doctest::Approx(1.0).epsilon(1e-14));
    // p = 1 - t^2/2 exactly; RK4 is exact on polynomials of degree <= 4
    CHECK(std::fabs(ty.states.back()[1] - 0.5) <= 1e-13);
    CHECK(monitor(parse("p1 + t^2/2", cs->chart()), ty).max_drift <= 1e-13);
}

TEST_CASE("monitor examples")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto sys = make_system(s, "p1^2/2");
    std::vector<double> x0{0, 2};
    Trajectory tr = integrate(sys, x0, 0, 1, 0.1);
    CHECK(monitor(parse("p1", s->chart()), tr).max_drift == 0);
    DriftReport q = monitor(parse("q1", s->chart()), tr);
    CHECK(q.max_drift == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(q.drift.front() == 0);
}

TEST_CASE("fourth-order convergence")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto sys = make_system(s, "p1^2/2 - cos(q1)");
    std::vector<double> x0{0.5, 0.2};
    auto end = [&](double h) { return integrate(sys, x0, 0, 2, h).states.back(); };
    auto ref = end(1e-4);
    auto err = [&](double h) {
        auto x = end(h);
        return std::hypot(x[0] - ref[0], x[1] - ref[1]);
    };
    double ratio = err(0.1) / err(0.05);
    CHECK(ratio >= 12);
    CHECK(ratio <= 20);
}

TEST_CASE("integration errors")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto sys = make_system(s, "p1^2/2 + sqrt(q1)");
    std::vector<double> x0{0.1, -1};
    CHECK_THROWS_AS(integrate(sys, x0, 0, 5, 1e-2), IntegrationError);
    std::vector<double> wrong{0.1};
    CHECK_THROWS(integrate(sys, wrong, 0, 1, 1e-2));
    std::vector<double> ok{1, 0};
    CHECK_THROWS(integrate(sys, ok, 0, 1, 0));
}
