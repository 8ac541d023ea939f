// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include "test_support.hpp"

#include "liequad/brackets.hpp"
#include "liequad/liealg.hpp"
#include "liequad/numint.hpp"
#include "liequad/reduce.hpp"
#include "liequad/symmetry.hpp"
#include "liequad/system_file.hpp"
#include "liequad/theorems.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

using namespace liequad;

namespace {

const GeometryKind kAll[] = {GeometryKind::Symplectic, GeometryKind::Cosymplectic, GeometryKind::Contact,
                             GeometryKind::Cocontact};

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why)
    {
        if (ok)
            detail = why;
        ok = false;
    }
};

std::string fixture_path(const std::string& name) { return std::string(LIEQUAD_FIXTURES) + "/" + name + ".json"; }

// Canonical zero, or relative agreement at 20 random points when the zero test is inconclusive.
bool equivalent(const Expr& a, const Expr& b, std::size_t dim, std::mt19937_64& rng)
{
    ZeroTest z = is_identically_zero(a - b);
    if (z != ZeroTest::Unknown)
        return z == ZeroTest::Zero;
    for (int i = 0; i < 20; ++i) {
        auto x = support::random_point(rng, dim);
        double va = evaluate(a, x), vb = evaluate(b, x);
        if (std::fabs(va - vb) > 1e-9 * std::max(1.0, std::fabs(va)))
            return false;
    }
    return true;
}

std::vector<std::size_t> z_free_vars(const PhaseGeometry& g)
{
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (!g.z() || i != *g.z())
            vars.push_back(i);
    return vars;
}

std::vector<std::size_t> momentum_vars(const PhaseGeometry& g)
{
    std::vector<std::size_t> vars;
    const auto& c = g.chart();
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (c.coordinates()[i].name[0] == 'p')
            vars.push_back(i);
    return vars;
}

Outcome bracket_oracle()
{
    Outcome o;
    std::mt19937_64 rng(101);
    for (GeometryKind k : kAll) {
        for (int trial = 0; trial < 100; ++trial) {
            auto g = make_geometry(k, 1 + trial % 2);
            auto vars = support::all_vars(g->dim());
            Expr f = support::random_poly(rng, vars), h = support::random_poly(rng, vars);
            if (!equivalent(bracket(*g, f, h), bracket_intrinsic(*g, f, h), g->dim(), rng))
                o.fail(std::string(to_string(k)) + " pair " + std::to_string(trial));
        }
    }
    return o;
}

Outcome bracket_axioms()
{
    Outcome o;
    std::mt19937_64 rng(102);
    for (GeometryKind k : kAll) {
        for (int trial = 0; trial < 100; ++trial) {
            auto g = make_geometry(k, 1 + trial % 2);
            auto vars = support::all_vars(g->dim());
            Expr a = support::random_poly(rng, vars, 2, 3), b = support::random_poly(rng, vars, 2, 3),
                 c = support::random_poly(rng, vars, 2, 3);
            if (is_identically_zero(bracket(*g, a, b) + bracket(*g, b, a)) != ZeroTest::Zero)
                o.fail(std::string(to_string(k)) + " antisymmetry, triple " + std::to_string(trial));
            Expr jac = bracket(*g, a, bracket(*g, b, c)) + bracket(*g, b, bracket(*g, c, a)) +
                       bracket(*g, c, bracket(*g, a, b));
            if (is_identically_zero(jac) != ZeroTest::Zero)
                o.fail(std::string(to_string(k)) + " Jacobi, triple " + std::to_string(trial));
        }
    }
    auto g = make_geometry(GeometryKind::Contact, 1);
    Expr z = parse("z", g->chart()), q = parse("q1", g->chart());
    Expr defect = bracket(*g, z, q * q) - q * bracket(*g, z, q) - q * bracket(*g, z, q);
    if (is_identically_zero(defect) != ZeroTest::NonZero)
        o.fail("contact Leibniz defect is not nonzero");
    return o;
}

Outcome antihomomorphism()
{
    Outcome o;
    std::mt19937_64 rng(103);
    for (GeometryKind k : kAll) {
        for (int trial = 0; trial < 100; ++trial) {
            auto g = make_geometry(k, 1 + trial % 2);
            auto vars = z_free_vars(*g);
            Expr f = support::random_poly(rng, vars), h = support::random_poly(rng, vars);
            std::string where = std::string(to_string(k)) + " pair " + std::to_string(trial);
            if (check_antihomomorphism(*g, f, h).verdict != Answer::Yes)
                o.fail(where + ": X_{f,g} + [X_f,X_g]");
            if (g->t()) {
                VectorField r = VectorField::unit(g->chart_ptr(), *g->t());
                VectorField res = hamiltonian_vector_field(*g, differentiate(f, *g->t())) +
                                  commutator(hamiltonian_vector_field(*g, f), r);
                if (res.is_zero() != ZeroTest::Zero)
                    o.fail(where + ": time Reeb identity");
            }
            if (g->z() && !differentiate(bracket(*g, f, h), *g->z()).is_zero() &&
                is_identically_zero(differentiate(bracket(*g, f, h), *g->z())) != ZeroTest::Zero)
                o.fail(where + ": Reeb derivative of the bracket");
        }
    }
    return o;
}

Outcome constant_implies_symmetry()
{
    Outcome o;
    std::mt19937_64 rng(104);
    int pairs = 0;
    for (GeometryKind k : kAll) {
        for (int trial = 0; trial < 5; ++trial) {
            auto g = make_geometry(k, 1 + trial % 2);
            auto p = momentum_vars(*g);
            HamiltonianSystem sys{g, support::random_poly(rng, p)};
            // f: a function of the momenta, or the Hamiltonian itself for conservative geometries
            Expr f = (trial == 4 && k == GeometryKind::Symplectic) ? sys.H : support::random_poly(rng, p);
            if (is_constant_of_motion(sys, f) != Answer::Yes) {
                o.fail(std::string(to_string(k)) + " construction is not a constant of motion");
                continue;
            }
            ++pairs;
            if (is_symmetry(dynamics_field(sys), hamiltonian_vector_field(*g, f)) != Answer::Yes)
                o.fail(std::string(to_string(k)) + " pair " + std::to_string(trial));
        }
    }
    if (pairs != 20)
        o.fail("expected 20 pairs, built " + std::to_string(pairs));
    return o;
}

TheoremReport check_fixture(const std::string& name)
{
    SystemFile f = load_system_file(fixture_path(name));
    LoadedSystem s = build_system(f);
    return check_integrability(s.system, s.constants, s.alphas, f.seed, f.points);
}

Outcome theorem_fixtures()
{
    Outcome o;
    const std::map<std::string, Verdict> expected{
        {"free_particle", Verdict::Holds},        {"good_contact", Verdict::Holds},
        {"structure_violation", Verdict::Fails},  {"sl2_type", Verdict::Fails},
        {"harmonic_oscillator", Verdict::Holds},  {"contact_oscillator", Verdict::Holds},
        {"damped_contact", Verdict::Fails},       {"cosymplectic_particle", Verdict::Holds},
        {"cocontact_particle", Verdict::Holds},
    };
    for (const auto& [name, v] : expected)
        if (check_fixture(name).verdict != v)
            o.fail(name + " verdict");
    TheoremReport fp = check_fixture("free_particle");
    if (fp.theorem != TheoremId::T2 || fp.dim_level_set != std::optional<std::size_t>(2))
        o.fail("free_particle theorem or level-set dimension");
    TheoremReport gc = check_fixture("good_contact");
    if (gc.theorem != TheoremId::T4)
        o.fail("good_contact theorem");
    TheoremReport sv = check_fixture("structure_violation");
    const Hypothesis* sc = sv.find("structure_constraint");
    if (!sc || sc->verdict != Verdict::Fails || !sc->counterexample)
        o.fail("structure_violation has no counterexample");
    TheoremReport sl = check_fixture("sl2_type");
    if (!sl.find("solvable") || sl.find("solvable")->verdict != Verdict::Fails)
        o.fail("sl2_type solvability");
    return o;
}

Outcome solvability_engine()
{
    Outcome o;
    std::mt19937_64 rng(106);
    for (int trial = 0; trial < 200; ++trial) {
        StructureConstants c = support::random_jacobi_tensor(rng);
        bool solvable = is_solvable(c);
        bool has_flag = true;
        SolvableFlag flag;
        try {
            flag = solvable_flag(c);
        } catch (const NotSolvableError&) {
            has_flag = false;
        }
        if (solvable != has_flag)
            o.fail("tensor " + std::to_string(trial) + ": solvability and flag disagree");
        if (has_flag && !verify_flag(c, flag))
            o.fail("tensor " + std::to_string(trial) + ": flag conditions");
    }
    return o;
}

double max_diff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b)
{
    if (a.empty() || a.size() != b.size())
        return INFINITY;
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            m = std::max(m, std::fabs(a[i][j] - b[i][j]));
    return m;
}

Outcome quadrature_vs_rk4()
{
    Outcome o;
    auto grid = sample_times(0, 10, 1e-3);
    {
        auto c = std::make_shared<const CoordinateSystem>(CoordinateSystem::generic({"x", "y"}));
        VectorField v(c, {parse("y", *c), Expr(0L)});
        VectorField dx(c, {Expr(1L), Expr(0L)}), scale(c, {parse("x", *c), parse("y", *c)});
        std::vector<double> x0{1, 2};
        auto q = integrate_by_quadratures(v, {dx, scale}, x0, grid);
        auto rk = integrate_field(v, x0, 0, 10, 1e-3);
        double d = max_diff(q.states, rk.states);
        if (!(d <= 1e-6))
            o.fail("two-symmetry fixture differs by " + std::to_string(d));
        try {
            integrate_by_quadratures(v, {scale, dx}, x0, grid);
            o.fail("reversed flag order was accepted");
        } catch (const ReductionError&) {
        }
    }
    for (const char* name : {"harmonic_oscillator", "contact_oscillator"}) {
        SystemFile f = load_system_file(fixture_path(name));
        LoadedSystem s = build_system(f);
        TheoremReport r = check_integrability(s.system, s.constants, s.alphas, f.seed, f.points);
        std::vector<VectorField> package;
        for (const auto& p : r.certified_package)
            package.push_back(p.field);
        VectorField e = dynamics_field(s.system);
        auto q = integrate_by_quadratures(e, package, f.points.at(0), grid);
        auto rk = integrate(s.system, f.points.at(0), 0, 10, 1e-3);
        double d = max_diff(q.states, rk.states);
        if (!(d <= 1e-6))
            o.fail(std::string(name) + " differs by " + std::to_string(d));
    }
    return o;
}

Outcome dissipation_law()
{
    Outcome o;
    auto g = make_geometry(GeometryKind::Contact, 1);
    auto sys = make_system(g, "(q1^2 + p1^2)/2 + 0.2*z");
    std::vector<double> x0{0, 1, 2.5};
    Trajectory tr = integrate(sys, x0, 0, 10, 1e-3);
    const double h0 = evaluate(sys.H, x0);
    double worst = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        worst = std::max(worst, std::fabs(evaluate(sys.H, tr.states[i]) - h0 * std::exp(-0.2 * tr.times[i])));
    if (!(worst <= 1e-6))
        o.fail("energy law deviates by " + std::to_string(worst));
    std::mt19937_64 rng(108);
    for (int trial = 0; trial < 20; ++trial) {
        auto gc = make_geometry(GeometryKind::Contact, 1 + trial % 2);
        HamiltonianSystem s{gc, support::random_poly(rng, support::all_vars(gc->dim()))};
        Expr rhs = -(s.H * differentiate(s.H, *gc->z()));
        if (is_identically_zero(evolution_derivative(s, s.H) - rhs) != ZeroTest::Zero)
            o.fail("symbolic identity, Hamiltonian " + std::to_string(trial));
    }
    return o;
}

Outcome rk4_order()
{
    Outcome o;
    auto g = make_geometry(GeometryKind::Symplectic, 1);
    auto sys = make_system(g, "(q1^2 + p1^2)/2");
    std::vector<double> x0{0, 1};
    auto err = [&](double h) {
        auto x = integrate(sys, x0, 0, 10, h).states.back();
        return std::hypot(x[0] - std::sin(10.0), x[1] - std::cos(10.0));
    };
    double ratio = err(0.1) / err(0.05);
    if (!(ratio >= 12 && ratio <= 20))
        o.fail("ratio " + std::to_string(ratio));
    else
        o.detail = "ratio " + std::to_string(ratio);
    return o;
}

std::string capture(const std::string& cmd, int* status)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        *status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    *status = pclose(p);
    return out;
}

Outcome determinism()
{
    Outcome o;
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(LIEQUAD_FIXTURES)) {
        if (entry.path().extension() != ".json")
            continue;
        std::string cmd = std::string("\"") + LIEQUAD_BIN + "\" check \"" + entry.path().string() + "\" 2>/dev/null";
        int s1 = 0, s2 = 0;
        std::string a = capture(cmd, &s1), b = capture(cmd, &s2);
        ++files;
        if (a.empty() || a != b || s1 != s2)
            o.fail(entry.path().filename().string() + " output differs between runs");
    }
    if (files == 0)
        o.fail("no fixtures found");
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bracket oracle equivalence", bracket_oracle},
        {"bracket axioms and Leibniz defect", bracket_axioms},
        {"antihomomorphism and Reeb identities", antihomomorphism},
        {"constants of motion give symmetries", constant_implies_symmetry},
        {"theorem checker fixtures", theorem_fixtures},
        {"solvability engine", solvability_engine},
        {"quadrature trajectories match RK4", quadrature_vs_rk4},
        {"contact dissipation law", dissipation_law},
        {"RK4 convergence order", rk4_order},
        {"deterministic check output", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].first;
        if (!o.detail.empty())
            std::cout << " (" << o.detail << ")";
        std::cout << '\n';
        failed += !o.ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
