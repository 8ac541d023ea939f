#include "test_support.hpp"

#include "liequad/errors.hpp"
#include "liequad/expr.hpp"
#include "liequad/geometry.hpp"

#include <doctest.h>

#include <cmath>

using namespace liequad;

namespace {

const CoordinateSystem& sym2()
{
    static const GeometryPtr g = make_geometry(GeometryKind::Symplectic, 2);
    return g->chart();
}

const CoordinateSystem& contact1()
{
    static const GeometryPtr g = make_geometry(GeometryKind::Contact, 1);
    return g->chart();
}

std::string canon(const std::string& s, const CoordinateSystem& c) { return to_string(simplify(parse(s, c)), c); }

}  // namespace

TEST_CASE("parse builds the expected trees")
{
    const auto& c = sym2();
    Expr e = parse("p1^2/2 + q1^2/2", c);
    CHECK(e.kind() == Expr::Kind::Sum);
    CHECK(e.operands().size() == 2);
    Expr s = parse("sin(q1)*p1", c);
    REQUIRE(s.kind() == Expr::Kind::Product);
    bool has_sin = false, has_p1 = false;
    for (const auto& f : s.operands()) {
        has_sin |= f.kind() == Expr::Kind::Function && f.func() == Func::Sin;
        has_p1 |= f.kind() == Expr::Kind::Variable && f.variable_id() == c.index_of("p1");
    }
    CHECK(has_sin);
    CHECK(has_p1);
    CHECK(parse("2^3^2", c).value() == 512);  // right associative
    CHECK(as_constant(parse("1/2 + 0.25", c)) == make_rational(3, 4));
    CHECK(as_constant(parse("-3^2", c)) == -9);
    CHECK(as_constant(parse("1.5e-3", c)) == make_rational(3, 2000));
}

TEST_CASE("parse errors carry position or identifier")
{
    const auto& c = sym2();
    CHECK_THROWS_AS(parse("q3", c), UnknownIdentifierError);
    try {
        parse("q1 + q3", c);
        FAIL("expected an unknown identifier");
    } catch (const UnknownIdentifierError& e) {
        CHECK(std::string(e.what()).find("q3") != std::string::npos);
    }
    try {
        parse("q1 + * p1", c);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse("(q1", c), SyntaxError);
    CHECK_THROWS_AS(parse("q1^p1", c), SyntaxError);
    CHECK_THROWS_AS(parse("foo(q1)", c), UnknownIdentifierError);
    CHECK_THROWS_AS(parse("z", c), UnknownIdentifierError);
    CHECK_THROWS_AS(parse("", c), SyntaxError);
}

TEST_CASE("differentiate examples")
{
    const auto& c = contact1();
    CHECK(to_string(differentiate(parse("q1^2*p1", c), 0), c) == "2*q1*p1");
    CHECK(differentiate(parse("q1^2", c), c.index_of("p1")).is_zero());
    CHECK(to_string(differentiate(parse("exp(-2*z)", c), c.index_of("z")), c) == "-2*exp(-2*z)");
    CHECK(is_identically_zero(differentiate(parse("ln(q1)", c), 0) - parse("1/q1", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(differentiate(parse("sqrt(q1)", c), 0) - parse("1/(2*sqrt(q1))", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(differentiate(parse("cos(q1*p1)", c), 0) + parse("p1*sin(q1*p1)", c)) == ZeroTest::Zero);
}

TEST_CASE("evaluate examples and domain errors")
{
    const auto& c = sym2();
    std::vector<double> x{3, 0, 4, 0};
    CHECK(evaluate(parse("(q1^2+p1^2)/2", c), x) == doctest::Approx(12.5).epsilon(1e-15));
    std::vector<double> neg{-1, 0, 0, 0};
    CHECK_THROWS_AS(evaluate(parse("ln(q1)", c), neg), DomainError);
    CHECK_THROWS_AS(evaluate(parse("sqrt(q1)", c), neg), DomainError);
    std::vector<double> zero{0, 0, 0, 0};
    CHECK_THROWS_AS(evaluate(parse("1/q1", c), zero), DomainError);
    CHECK(evaluate(parse("exp(0)", c), zero) == 1.0);
    try {
        evaluate(parse("p1 + ln(q1)", c), neg, c);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("ln(q1)") != std::string::npos);
    }
}

TEST_CASE("zero test examples")
{
    const auto& c = sym2();
    CHECK(is_identically_zero(parse("q1*p1 - p1*q1", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(parse("q1", c)) == ZeroTest::NonZero);
    CHECK(is_identically_zero(parse("sin(q1)^2 + cos(q1)^2 - 1", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(parse("(q1^2 - p1^2)/(q1 - p1) - q1 - p1", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(parse("exp(q1)*exp(-q1) - 1", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(parse("ln(exp(q1 + p1)) - q1 - p1", c)) == ZeroTest::Zero);
    CHECK(is_identically_zero(parse("sin(q1) - q1", c)) == ZeroTest::NonZero);
    CHECK(is_identically_zero(parse("sqrt(q1^2) - q1", c)) == ZeroTest::NonZero);
}

TEST_CASE("canonical printing")
{
    const auto& c = contact1();
    CHECK(canon("0.2*z + q1/3", c) == "q1/3 + z/5");
    CHECK(canon("(q1^2-1)/(q1-1)", c) == "q1 + 1");
    CHECK(canon("exp(-2*z)*exp(z)", c) == "exp(-z)");
    CHECK(canon("sqrt(4*q1^4)", c) == "2*q1^2");
    CHECK(canon("p1 - p1", c) == "0");
}

TEST_CASE("rational helpers")
{
    CHECK(parse_decimal("0.25") == make_rational(1, 4));
    CHECK(parse_decimal("1.5e-3") == make_rational(3, 2000));
    CHECK(rationalize(0.3333333333333333) == make_rational(1, 3));
    CHECK(!rationalize(std::sqrt(2.0), 1000, 1e-12));
    CHECK(exact_root(make_rational(4, 9), 2) == make_rational(2, 3));
    CHECK(!exact_root(make_rational(2), 2));
    CHECK(floor_to_long(make_rational(-3, 2)) == -2);
    CHECK(to_string(make_rational(-1, 2)) == "-1/2");
}

TEST_CASE("differentiation is linear")
{
    std::mt19937_64 rng(11);
    const std::size_t dim = 4;
    auto vars = support::all_vars(dim);
    for (int trial = 0; trial < 50; ++trial) {
        Expr e1 = support::random_poly(rng, vars), e2 = support::random_poly(rng, vars);
        Rational a = make_rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 5) + 1);
        std::size_t v = rng() % dim;
        Expr lhs = differentiate(Expr(a) * e1 + e2, v);
        Expr rhs = Expr(a) * differentiate(e1, v) + differentiate(e2, v);
        REQUIRE(is_identically_zero(lhs - rhs) == ZeroTest::Zero);
        CHECK(simplify(lhs) == simplify(rhs));
    }
}

TEST_CASE("derivatives agree with central differences")
{
    std::mt19937_64 rng(12);
    const std::size_t dim = 3;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Expr e = support::random_smooth(rng, dim);
        std::size_t v = rng() % dim;
        auto x = support::random_point(rng, dim, -1, 1);
        Expr d = differentiate(e, v);
        const double h = 1e-5;
        auto xp = x, xm = x;
        xp[v] += h;
        xm[v] -= h;
        double fd = (evaluate(e, xp) - evaluate(e, xm)) / (2 * h);
        double exact = evaluate(d, x);
        CHECK(std::fabs(fd - exact) <= 1e-5 * (1 + std::fabs(exact)));
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("mixed partials commute")
{
    std::mt19937_64 rng(13);
    const std::size_t dim = 3;
    for (int trial = 0; trial < 40; ++trial) {
        Expr e = support::random_smooth(rng, dim);
        std::size_t u = rng() % dim, v = rng() % dim;
        Expr a = differentiate(differentiate(e, u), v);
        Expr b = differentiate(differentiate(e, v), u);
        CHECK(is_identically_zero(a - b) == ZeroTest::Zero);
    }
}

TEST_CASE("simplify preserves values")
{
    std::mt19937_64 rng(14);
    const std::size_t dim = 3;
    for (int trial = 0; trial < 60; ++trial) {
        Expr e = support::random_smooth(rng, dim);
        Expr s = simplify(e);
        auto x = support::random_point(rng, dim);
        double a = evaluate(e, x), b = evaluate(s, x);
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
    }
}
