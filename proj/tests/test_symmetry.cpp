#include "test_support.hpp"

#include "liequad/brackets.hpp"
#include "liequad/numint.hpp"
#include "liequad/symmetry.hpp"

#include <doctest.h>

#include <cmath>

using namespace liequad;

namespace {

const GeometryKind kAll[] = {GeometryKind::Symplectic, GeometryKind::Cosymplectic, GeometryKind::Contact,
                             GeometryKind::Cocontact};

VectorField field(const std::shared_ptr<const CoordinateSystem>& c, std::initializer_list<const char*> comps)
{
    std::vector<Expr> out;
    for (const char* s : comps)
        out.push_back(parse(s, *c));
    return VectorField(c, std::move(out));
}

std::vector<Expr> z_free_polys(std::mt19937_64& rng, const PhaseGeometry& g, int count)
{
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (!g.z() || i != *g.z())
            vars.push_back(i);
    std::vector<Expr> out;
    for (int i = 0; i < count; ++i)
        out.push_back(support::random_poly(rng, vars));
    return out;
}

}  // namespace

TEST_CASE("commutator examples")
{
    auto c = std::make_shared<const CoordinateSystem>(CoordinateSystem::generic({"x", "y"}));
    VectorField dx = field(c, {"1", "0"}), euler = field(c, {"x", "y"}), rot = field(c, {"-y", "x"});
    CHECK(is_identically_zero((commutator(dx, euler) - dx)[0]) == ZeroTest::Zero);
    CHECK(is_symmetry(euler, rot) == Answer::Yes);
    CHECK(is_symmetry(dx, rot) == Answer::No);
    CHECK(commutator(rot, rot).is_zero() == ZeroTest::Zero);

    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto free = make_system(s, "p1^2/2");
    CHECK(is_symmetry(hamiltonian_vector_field(*s, make_scalar(s, "p1")), dynamics_field(free)) == Answer::Yes);
    CHECK(is_symmetry(hamiltonian_vector_field(*s, make_scalar(s, "q1")), dynamics_field(free)) == Answer::No);
}

TEST_CASE("antihomomorphism examples")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto r = check_antihomomorphism(*s, parse("q1", s->chart()), parse("p1", s->chart()));
    CHECK(r.verdict == Answer::Yes);
    auto c = make_geometry(GeometryKind::Contact, 1);
    CHECK(check_antihomomorphism(*c, parse("q1^2", c->chart()), parse("q1*p1", c->chart())).verdict == Answer::Yes);
    CHECK_THROWS_AS(check_antihomomorphism(*c, parse("z", c->chart()), parse("q1", c->chart())),
                    InapplicableHypothesis);
}

TEST_CASE("antihomomorphism on random inputs")
{
    std::mt19937_64 rng(51);
    for (GeometryKind k : kAll)
        for (std::size_t n = 1; n <= 2; ++n) {
            auto g = make_geometry(k, n);
            for (int trial = 0; trial < 8; ++trial) {
                auto fs = z_free_polys(rng, *g, 2);
                auto r = check_antihomomorphism(*g, fs[0], fs[1]);
                CHECK(r.verdict == Answer::Yes);
                CHECK(r.residual.is_zero() == ZeroTest::Zero);
            }
        }
}

TEST_CASE("Reeb identity examples")
{
    auto cs = make_geometry(GeometryKind::Cosymplectic, 1);
    auto sys = make_system(cs, "p1^2/2 + t*q1");
    auto checks = check_reeb_identities(sys, parse("p1 + t^2/2", cs->chart()));
    REQUIRE(!checks.empty());
    for (const auto& c : checks)
        if (c.verdict)
            CHECK(*c.verdict == Answer::Yes);

    auto c = make_geometry(GeometryKind::Contact, 1);
    auto good = make_system(c, "p1^2/2");
    bool saw_good = false;
    for (const auto& chk : check_reeb_identities(good, parse("p1", c->chart())))
        if (chk.verdict) {
            CHECK(*chk.verdict == Answer::Yes);
            saw_good = true;
        }
    CHECK(saw_good);

    // z-dependent H: the Reeb identities do not apply and are skipped
    auto damped = make_system(c, "p1^2/2 + z");
    bool skipped = false;
    for (const auto& chk : check_reeb_identities(damped, parse("p1", c->chart())))
        if (chk.identity == "[R, X_H] = 0") {
            CHECK(!chk.verdict);
            CHECK(chk.skip_reason == "H depends on z");
            skipped = true;
        }
    CHECK(skipped);
    CHECK(is_symmetry(VectorField::unit(c->chart_ptr(), *c->z()), dynamics_field(damped)) == Answer::No);

    std::mt19937_64 rng(52);
    for (GeometryKind k : {GeometryKind::Cosymplectic, GeometryKind::Cocontact}) {
        auto g = make_geometry(k, 1);
        for (int trial = 0; trial < 5; ++trial) {
            auto fs = z_free_polys(rng, *g, 2);
            auto list = check_reeb_identities(HamiltonianSystem{g, fs[0]}, fs[1]);
            CHECK(!list.empty());
            for (const auto& chk : list)
                if (chk.verdict && chk.identity.find("X_{R") != std::string::npos)
                    CHECK(*chk.verdict == Answer::Yes);
        }
    }
}

TEST_CASE("tangency examples")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    LevelSet m{s, {parse("(q1^2 + p1^2)/2", s->chart())}, {0.5}, {}};
    auto rot = hamiltonian_vector_field(*s, make_scalar(s, "(q1^2 + p1^2)/2"));
    std::vector<TangencyDetail> detail;
    CHECK(tangent_to_level_set(rot, m, &detail) == Answer::Yes);
    auto dq = VectorField(s->chart_ptr(), {Expr(1L), Expr(0L)});
    m.points = {{1, 0}};
    CHECK(tangent_to_level_set(dq, m) == Answer::No);

    // u(f) = 2 (f - alpha): tangent through the ideal tier
    LevelSet sq{s, {parse("q1", s->chart())}, {1}, {}};
    auto radial = VectorField(s->chart_ptr(), {parse("2*q1 - 2", s->chart()), Expr(0L)});
    detail.clear();
    CHECK(tangent_to_level_set(radial, sq, &detail) == Answer::Yes);

    LevelSet none{s, {parse("q1*p1", s->chart())}, {1}, {}};
    auto odd = VectorField(s->chart_ptr(), {parse("sin(q1*p1)", s->chart()), Expr(0L)});
    CHECK_THROWS_AS(tangent_to_level_set(odd, none), NoSamplePoints);
}

TEST_CASE("level set points and rank examples")
{
    auto s = make_geometry(GeometryKind::Symplectic, 2);
    LevelSet m{s, {parse("p1", s->chart()), parse("p2", s->chart())}, {1, 2}, {}};
    auto pts = find_level_set_points(m, 7, 3);
    CHECK(!pts.empty());
    for (const auto& p : pts) {
        CHECK(std::fabs(p[2] - 1) <= 1e-11);
        CHECK(std::fabs(p[3] - 2) <= 1e-11);
    }
    RankReport r = functional_independence_rank(m, 7);
    CHECK(r.rank == 2);
    CHECK(r.verdict == Answer::Yes);
    CHECK(r.level_set_dim == 2);

    LevelSet dep{s, {parse("p1", s->chart()), parse("2*p1", s->chart())}, {1, 2}, {}};
    RankReport rd = functional_independence_rank(dep, 7);
    CHECK(rd.rank == 1);
    CHECK(rd.verdict == Answer::No);

    LevelSet empty{s, {parse("q1^2 + 1", s->chart())}, {0}, {}};
    CHECK_THROWS_AS(find_level_set_points(empty, 1), NoPointFound);

    LevelSet bad = m;
    bad.points = {{0, 0, 0, 0}};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("a symmetry maps trajectories to trajectories")
{
    // The flow of X_{p1} translates q1; it commutes with the free-particle flow.
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    auto sys = make_system(s, "p1^2/2 + p1^4/12");
    auto x = dynamics_field(sys);
    std::vector<double> a{0.3, 0.7}, b{0.3 + 0.25, 0.7};
    auto ta = integrate_field(x, a, 0, 2, 1e-3).states.back();
    auto tb = integrate_field(x, b, 0, 2, 1e-3).states.back();
    CHECK(std::fabs(tb[0] - ta[0] - 0.25) <= 1e-9);
    CHECK(std::fabs(tb[1] - ta[1]) <= 1e-12);
}
