#include "test_support.hpp"

#include "liequad/brackets.hpp"
#include "liequad/geometry.hpp"
#include "liequad/liealg.hpp"

#include <doctest.h>

using namespace liequad;

namespace {

BracketFn function_bracket(const GeometryPtr& g)
{
    return [g](const AlgebraElement& a, const AlgebraElement& b) { return AlgebraElement{bracket(*g, a[0], b[0])}; };
}

std::vector<AlgebraElement> elements(const GeometryPtr& g, std::initializer_list<const char*> fs)
{
    std::vector<AlgebraElement> out;
    for (const char* f : fs)
        out.push_back({parse(f, g->chart())});
    return out;
}

std::vector<Rational> unit(std::size_t m, std::size_t i)
{
    std::vector<Rational> v(m);
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("structure constants from function brackets")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    StructureConstants c = structure_constants(elements(s, {"p1", "q1*p1"}), function_bracket(s));
    CHECK(c.dim() == 2);
    CHECK(c(0, 1, 0) == -1);
    CHECK(c(1, 0, 0) == 1);
    CHECK(c(0, 1, 1) == 0);
    CHECK(!c.numerically_verified);

    StructureConstants one = structure_constants(elements(s, {"q1^2 + p1^2"}), function_bracket(s));
    CHECK(one.dim() == 1);
    CHECK(one.is_abelian());

    auto s2 = make_geometry(GeometryKind::Symplectic, 2);
    StructureConstants ab = structure_constants(elements(s2, {"p1", "p2"}), function_bracket(s2));
    CHECK(ab.is_abelian());

    StructureConstants sl2 =
        structure_constants(elements(s, {"q1^2/2", "p1^2/2", "q1*p1"}), function_bracket(s));
    CHECK(sl2.satisfies_jacobi());
    CHECK(derived_series(sl2).dims == std::vector<std::size_t>{3});
}

TEST_CASE("closure failures")
{
    auto s = make_geometry(GeometryKind::Symplectic, 1);
    try {
        structure_constants(elements(s, {"q1", "p1"}), function_bracket(s));
        FAIL("expected NotClosedError");
    } catch (const NotClosedError& e) {
        CHECK(e.i() == 0);
        CHECK(e.j() == 1);
    }
    CHECK_THROWS_AS(structure_constants(elements(s, {"q1", "p1"}), function_bracket(s)), NotClosedError);
    CHECK_THROWS_AS(structure_constants(elements(s, {"p1", "2*p1"}), function_bracket(s)), LinearlyDependentBasisError);
}

TEST_CASE("derived series examples")
{
    CHECK(derived_series(support::catalog_algebra(0)).dims == std::vector<std::size_t>{3, 0});
    DerivedSeries h = derived_series(support::catalog_algebra(1));
    CHECK(h.dims == std::vector<std::size_t>{3, 1, 0});
    CHECK(h.solvable);
    CHECK(derived_series(support::catalog_algebra(2)).dims == std::vector<std::size_t>{3, 1, 0});
    DerivedSeries sl2 = derived_series(support::catalog_algebra(3));
    CHECK(sl2.dims == std::vector<std::size_t>{3});  // stops at the stable term
    CHECK(!sl2.solvable);
    CHECK(!is_solvable(support::catalog_algebra(4)));
    CHECK(derived_series(support::catalog_algebra(6)).dims == std::vector<std::size_t>{4, 3});
    CHECK(is_solvable(support::catalog_algebra(7)));

    StructureConstants two(2);
    two.set(0, 1, 0, -1);
    CHECK(derived_series(two).dims == std::vector<std::size_t>{2, 1, 0});
    for (std::size_t m = 1; m <= 4; ++m)
        CHECK(derived_series(StructureConstants(m)).dims == std::vector<std::size_t>{m, 0});
}

TEST_CASE("solvable flag examples")
{
    SolvableFlag ab = solvable_flag(StructureConstants(2));
    REQUIRE(ab.subspaces.size() == 3);
    CHECK(ab.subspaces[0].empty());
    CHECK(ab.subspaces[1] == Subspace{unit(2, 0)});  // the last direction is discarded first
    CHECK(verify_flag(StructureConstants(2), ab));

    StructureConstants aff(2);
    aff.set(0, 1, 1, 1);  // [e1,e2] = e2
    SolvableFlag f = solvable_flag(aff);
    CHECK(f.subspaces[1] == Subspace{unit(2, 1)});
    CHECK(verify_flag(aff, f));
    REQUIRE(f.adapted.size() == 2);
    CHECK(in_span(f.subspaces[1], f.adapted[0]));
    CHECK(!in_span(f.subspaces[1], f.adapted[1]));

    CHECK_THROWS_AS(solvable_flag(support::catalog_algebra(3)), NotSolvableError);
    CHECK_THROWS_AS(solvable_flag(support::catalog_algebra(6)), NotSolvableError);

    // a wrong chain is rejected
    SolvableFlag bad = f;
    bad.subspaces[1] = Subspace{unit(2, 0)};
    CHECK(!verify_flag(aff, bad));
}

TEST_CASE("span helpers")
{
    Subspace s = span_of({{1, 2, 0}, {2, 4, 0}, {0, 0, 1}}, 3);
    CHECK(s.size() == 2);
    CHECK(in_span(s, {3, 6, -1}));
    CHECK(!in_span(s, {1, 0, 0}));
    StructureConstants h = support::catalog_algebra(1);
    Subspace all = span_of({unit(3, 0), unit(3, 1), unit(3, 2)}, 3);
    CHECK(bracket_span(h, all, all) == Subspace{unit(3, 2)});
}

TEST_CASE("random Lie algebras: invariants and flags")
{
    std::mt19937_64 rng(41);
    int solvable = 0;
    for (int trial = 0; trial < 200; ++trial) {
        StructureConstants c = support::random_jacobi_tensor(rng);
        REQUIRE(c.is_antisymmetric());
        REQUIRE(c.satisfies_jacobi());
        DerivedSeries d = derived_series(c);
        REQUIRE(!d.dims.empty());
        CHECK(d.dims.front() == c.dim());
        for (std::size_t i = 1; i < d.dims.size(); ++i)
            CHECK(d.dims[i] <= d.dims[i - 1]);
        CHECK(d.solvable == (d.dims.back() == 0));

        // basis independence
        StructureConstants moved = support::change_basis(c, rng);
        CHECK(moved.satisfies_jacobi());
        CHECK(derived_series(moved).dims == d.dims);

        if (d.solvable) {
            ++solvable;
            SolvableFlag f = solvable_flag(c);
            CHECK(f.subspaces.size() == c.dim() + 1);
            CHECK(verify_flag(c, f));
            // each L_k is an ideal of L_{k+1}, checked directly with brackets
            for (std::size_t k = 1; k < f.subspaces.size(); ++k)
                for (const auto& x : f.subspaces[k])
                    for (const auto& y : f.subspaces[k - 1])
                        CHECK(in_span(f.subspaces[k - 1], c.bracket(x, y)));
        } else {
            CHECK_THROWS_AS(solvable_flag(c), NotSolvableError);
        }
    }
    CHECK(solvable > 50);
}
