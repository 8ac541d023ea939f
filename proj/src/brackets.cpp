#include "liequad/brackets.hpp"

#include "liequad/errors.hpp"

namespace liequad {

namespace {

void require_on(const PhaseGeometry& g, const ScalarField& f)
{
    if (!f.geometry || !(*f.geometry == g))
        throw GeometryMismatch("function does not live on this geometry");
}

}  // namespace

Expr bracket(const PhaseGeometry& g, const Expr& f, const Expr& h)
{
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const std::size_t q = g.q(i), p = g.p(i);
        terms.push_back(differentiate(f, q) * differentiate(h, p));
        terms.push_back(-(differentiate(f, p) * differentiate(h, q)));
    }
    if (g.has_contact_form()) {
        const std::size_t z = *g.z();
        Expr fz = differentiate(f, z);
        Expr hz = differentiate(h, z);
        // f_z (p h_p - h) - h_z (p f_p - f)
        std::vector<Expr> ph{-h}, pf{-f};
        for (std::size_t i = 0; i < g.n(); ++i) {
            Expr p = Expr::variable(g.p(i));
            ph.push_back(p * differentiate(h, g.p(i)));
            pf.push_back(p * differentiate(f, g.p(i)));
        }
        terms.push_back(fz * Expr::sum(std::move(ph)));
        terms.push_back(-(hz * Expr::sum(std::move(pf))));
    }
    return simplify(Expr::sum(std::move(terms)));
}

ScalarField bracket(const PhaseGeometry& g, const ScalarField& f, const ScalarField& h)
{
    require_on(g, f);
    require_on(g, h);
    return ScalarField{f.geometry, bracket(g, f.expr, h.expr)};
}

Expr bracket_intrinsic(const PhaseGeometry& g, const Expr& f, const Expr& h)
{
    Expr xhf = hamiltonian_vector_field(g, h).apply(f);
    if (!g.has_contact_form())
        return xhf;
    Expr rh = VectorField::unit(g.chart_ptr(), *g.z()).apply(h);
    return simplify(xhf + f * rh);
}

ScalarField bracket_intrinsic(const PhaseGeometry& g, const ScalarField& f, const ScalarField& h)
{
    require_on(g, f);
    require_on(g, h);
    return ScalarField{f.geometry, bracket_intrinsic(g, f.expr, h.expr)};
}

Expr evolution_derivative(const HamiltonianSystem& sys, const Expr& f)
{
    const PhaseGeometry& g = *sys.geometry;
    std::vector<Expr> terms{bracket(g, f, sys.H)};
    if (g.has_contact_form())
        terms.push_back(-(f * differentiate(sys.H, *g.z())));
    if (auto t = g.t())
        terms.push_back(differentiate(f, *t));
    return simplify(Expr::sum(std::move(terms)));
}

ScalarField evolution_derivative(const HamiltonianSystem& sys, const ScalarField& f)
{
    require_on(*sys.geometry, f);
    return ScalarField{f.geometry, evolution_derivative(sys, f.expr)};
}

Answer is_constant_of_motion(const HamiltonianSystem& sys, const Expr& f)
{
    return answer_from_zero(is_identically_zero(evolution_derivative(sys, f)));
}

Answer is_constant_of_motion(const HamiltonianSystem& sys, const ScalarField& f)
{
    require_on(*sys.geometry, f);
    return is_constant_of_motion(sys, f.expr);
}

}  // namespace liequad
