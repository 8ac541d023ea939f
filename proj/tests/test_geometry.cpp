#include "test_support.hpp"

#include "liequad/errors.hpp"
#include "liequad/geometry.hpp"

#include <doctest.h>

using namespace liequad;

namespace {

const GeometryKind kAll[] = {GeometryKind::Symplectic, GeometryKind::Cosymplectic, GeometryKind::Contact,
                             GeometryKind::Cocontact};

std::vector<std::string> comps(const VectorField& v, const CoordinateSystem& c)
{
    std::vector<std::string> out;
    for (const auto& e : v.components())
        out.push_back(to_string(e, c));
    return out;
}

bool same(const VectorField& a, const VectorField& b) { return (a - b).is_zero() == ZeroTest::Zero; }

}  // namespace

TEST_CASE("chart layouts")
{
    auto names = [](GeometryKind k, std::size_t n) {
        std::vector<std::string> out;
        auto g = make_geometry(k, n);
        for (const auto& c : g->chart().coordinates())
            out.push_back(c.name);
        return out;
    };
    CHECK(names(GeometryKind::Symplectic, 2) == std::vector<std::string>{"q1", "q2", "p1", "p2"});
    CHECK(names(GeometryKind::Cosymplectic, 1) == std::vector<std::string>{"q1", "p1", "t"});
    CHECK(names(GeometryKind::Contact, 2) == std::vector<std::string>{"q1", "q2", "p1", "p2", "z"});
    CHECK(names(GeometryKind::Cocontact, 1) == std::vector<std::string>{"t", "q1", "p1", "z"});
    CHECK_THROWS_AS(PhaseGeometry(GeometryKind::Symplectic, 0), Error);
    CHECK(parse_geometry_kind("cocontact") == GeometryKind::Cocontact);
    CHECK(!parse_geometry_kind("Contact"));
}

TEST_CASE("Hamiltonian vector field examples")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    CHECK(comps(hamiltonian_vector_field(*s, make_scalar(s, "(q1^2+p1^2)/2")), s->chart()) ==
          std::vector<std::string>{"p1", "-q1"});
    auto c = make_geometry(GeometryKind::Contact, 1);
    VectorField x = hamiltonian_vector_field(*c, make_scalar(c, "p1^2/2 + q1^2/2 + 0.2*z"));
    VectorField expected(c->chart_ptr(), {parse("p1", c->chart()), parse("-q1 - 0.2*p1", c->chart()),
                                          parse("p1^2/2 - q1^2/2 - 0.2*z", c->chart())});
    CHECK(same(x, expected));
    CHECK(comps(hamiltonian_vector_field(*c, make_scalar(c, "1")), c->chart()) == std::vector<std::string>{"0", "0", "-1"});
    auto other = make_geometry(GeometryKind::Symplectic, 2);
    CHECK_THROWS_AS(hamiltonian_vector_field(*s, make_scalar(other, "q2")), GeometryMismatch);
}

TEST_CASE("Reeb fields")
{
    CHECK(reeb_fields(*make_geometry(GeometryKind::Symplectic, 2)).empty());
    auto c = make_geometry(GeometryKind::Contact, 2);
    auto r = reeb_fields(*c);
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == "R");
    CHECK(comps(r[0].second, c->chart()) == std::vector<std::string>{"0", "0", "0", "0", "1"});
    auto cc = make_geometry(GeometryKind::Cocontact, 1);
    auto rc = reeb_fields(*cc);
    REQUIRE(rc.size() == 2);
    CHECK(rc[0].first == "R_z");
    CHECK(comps(rc[0].second, cc->chart()) == std::vector<std::string>{"0", "0", "0", "1"});
    CHECK(rc[1].first == "R_t");
    CHECK(comps(rc[1].second, cc->chart()) == std::vector<std::string>{"1", "0", "0", "0"});
    auto cs = make_geometry(GeometryKind::Cosymplectic, 1);
    CHECK(comps(reeb_fields(*cs).at(0).second, cs->chart()) == std::vector<std::string>{"0", "0", "1"});
}

TEST_CASE("dynamics fields and equations of motion")
{
    auto cs = make_geometry(GeometryKind::Cosymplectic, 1);
    CHECK(comps(dynamics_field(make_system(cs, "p1^2/2 + t*q1")), cs->chart()) ==
          std::vector<std::string>{"p1", "-t", "1"});
    auto cc = make_geometry(GeometryKind::Cocontact, 1);
    VectorField e = dynamics_field(make_system(cc, "p1^2/2"));
    VectorField expected(cc->chart_ptr(), {Expr(1L), parse("p1", cc->chart()), Expr(0L), parse("p1^2/2", cc->chart())});
    CHECK(same(e, expected));
    auto s = make_geometry(GeometryKind::Symplectic, 2);
    auto sys = make_system(s, "q1*p2 + sin(q2)*p1^2");
    CHECK(same(dynamics_field(sys), hamiltonian_vector_field(*s, sys.H)));

    auto eq = equations_of_motion(make_system(make_geometry(GeometryKind::Symplectic, 1), "(q1^2+p1^2)/2"));
    REQUIRE(eq.size() == 2);
    CHECK(eq[0].first == "q1");
    CHECK(to_string(eq[0].second) == "x1");
    CHECK(eq[1].first == "p1");
    auto c = make_geometry(GeometryKind::Contact, 1);
    auto eqc = equations_of_motion(make_system(c, "p1^2/2 + q1^2/2 + 0.2*z"));
    CHECK(eqc[2].first == "z");
    CHECK(is_identically_zero(eqc[2].second - parse("p1^2/2 - q1^2/2 - 0.2*z", c->chart())) == ZeroTest::Zero);
    auto eqcc = equations_of_motion(make_system(cc, "q1*p1 + z"));
    CHECK(eqcc[0].first == "t");
    CHECK(as_constant(eqcc[0].second) == 1);
}

TEST_CASE("f -> X_f is linear")
{
    std::mt19937_64 rng(21);
    for (GeometryKind k : kAll)
        for (std::size_t n = 1; n <= 2; ++n) {
            auto g = make_geometry(k, n);
            auto vars = support::all_vars(g->dim());
            for (int trial = 0; trial < 10; ++trial) {
                Expr f = support::random_poly(rng, vars), h = support::random_poly(rng, vars);
                Rational a = make_rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
                VectorField lhs = hamiltonian_vector_field(*g, f + Expr(a) * h);
                VectorField rhs = hamiltonian_vector_field(*g, f) + Expr(a) * hamiltonian_vector_field(*g, h);
                CHECK(same(lhs, rhs));
            }
        }
}

TEST_CASE("contraction identities")
{
    std::mt19937_64 rng(22);
    for (GeometryKind k : kAll)
        for (std::size_t n = 1; n <= 2; ++n) {
            auto g = make_geometry(k, n);
            auto vars = support::all_vars(g->dim());
            for (int trial = 0; trial < 10; ++trial) {
                Expr f = support::random_poly(rng, vars);
                VectorField x = hamiltonian_vector_field(*g, f);
                if (g->has_contact_form())
                    CHECK(is_identically_zero(contact_form(*g, x) + f) == ZeroTest::Zero);
                if (g->t())
                    CHECK(x[*g->t()].is_zero());
            }
            for (const auto& [name, r] : reeb_fields(*g)) {
                if (name == "R_t" || (k == GeometryKind::Cosymplectic)) {
                    CHECK(as_constant(time_form(*g, r)) == 1);
                    if (g->has_contact_form())
                        CHECK(as_constant(contact_form(*g, r)) == 0);
                } else {
                    CHECK(as_constant(contact_form(*g, r)) == 1);
                    if (g->t())
                        CHECK(as_constant(time_form(*g, r)) == 0);
                }
            }
        }
}

TEST_CASE("vector field arithmetic")
{
    auto chart = std::make_shared<const CoordinateSystem>(CoordinateSystem::generic({"x", "y"}));
    VectorField u(chart, {parse("y", *chart), parse("x", *chart)});
    VectorField zero = VectorField::zero(chart);
    CHECK((u - u).is_zero() == ZeroTest::Zero);
    CHECK(same(u + zero, u));
    CHECK(to_string(u.apply(parse("x*y", *chart)), *chart) == "x^2 + y^2");
    std::vector<double> pt{1, 2};
    CHECK(u.evaluate_at(pt) == std::vector<double>{2, 1});
    auto other = std::make_shared<const CoordinateSystem>(CoordinateSystem::generic({"a", "b"}));
    CHECK_THROWS_AS(u + VectorField::zero(other), GeometryMismatch);
}
