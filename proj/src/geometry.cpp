#include "liequad/geometry.hpp"

#include "liequad/errors.hpp"

namespace liequad {

std::string_view to_string(GeometryKind kind)
{
    switch (kind) {
    case GeometryKind::Symplectic: return "symplectic";
    case GeometryKind::Cosymplectic: return "cosymplectic";
    case GeometryKind::Contact: return "contact";
    case GeometryKind::Cocontact: return "cocontact";
    }
    return "?";
}

std::optional<GeometryKind> parse_geometry_kind(std::string_view name)
{
    for (auto k : {GeometryKind::Symplectic, GeometryKind::Cosymplectic, GeometryKind::Contact, GeometryKind::Cocontact})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

PhaseGeometry::PhaseGeometry(GeometryKind kind, std::size_t n)
    : kind_(kind), n_(n), offset_(kind == GeometryKind::Cocontact ? 1 : 0)
{
    if (n == 0)
        throw Error("degrees of freedom must be positive");
    std::vector<Coordinate> coords;
    if (kind == GeometryKind::Cocontact)
        coords.push_back({"t", CoordRole::Time});
    for (std::size_t i = 1; i <= n; ++i)
        coords.push_back({"q" + std::to_string(i), CoordRole::Position});
    for (std::size_t i = 1; i <= n; ++i)
        coords.push_back({"p" + std::to_string(i), CoordRole::Momentum});
    if (kind == GeometryKind::Cosymplectic)
        coords.push_back({"t", CoordRole::Time});
    if (kind == GeometryKind::Contact || kind == GeometryKind::Cocontact)
        coords.push_back({"z", CoordRole::Contact});
    chart_ = std::make_shared<const CoordinateSystem>(std::move(coords));
}

std::size_t PhaseGeometry::q(std::size_t i) const
{
    if (i >= n_)
        throw Error("position index out of range");
    return offset_ + i;
}

std::size_t PhaseGeometry::p(std::size_t i) const
{
    if (i >= n_)
        throw Error("momentum index out of range");
    return offset_ + n_ + i;
}

std::optional<std::size_t> PhaseGeometry::t() const
{
    if (kind_ == GeometryKind::Cosymplectic)
        return 2 * n_;
    if (kind_ == GeometryKind::Cocontact)
        return 0;
    return std::nullopt;
}

std::optional<std::size_t> PhaseGeometry::z() const
{
    if (kind_ == GeometryKind::Contact)
        return 2 * n_;
    if (kind_ == GeometryKind::Cocontact)
        return 2 * n_ + 1;
    return std::nullopt;
}

GeometryPtr make_geometry(GeometryKind kind, std::size_t n)
{
    return std::make_shared<const PhaseGeometry>(kind, n);
}

ScalarField make_scalar(const GeometryPtr& g, std::string_view text)
{
    return ScalarField{g, parse(text, g->chart())};
}

// ---------------------------------------------------------------------------

VectorField::VectorField(ChartPtr chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components))
{
    if (!chart_ || chart_->dim() != components_.size())
        throw Error("vector field component count does not match the chart dimension");
}

VectorField VectorField::zero(ChartPtr chart)
{
    std::vector<Expr> c(chart->dim(), Expr(0L));
    return VectorField(std::move(chart), std::move(c));
}

VectorField VectorField::unit(ChartPtr chart, std::size_t i)
{
    std::vector<Expr> c(chart->dim(), Expr(0L));
    c.at(i) = Expr(1L);
    return VectorField(std::move(chart), std::move(c));
}

Expr VectorField::apply(const Expr& f) const
{
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].is_zero() || !depends_on(f, i))
            continue;
        terms.push_back(components_[i] * differentiate(f, i));
    }
    return simplify(Expr::sum(std::move(terms)));
}

ZeroTest VectorField::is_zero() const
{
    ZeroTest z = ZeroTest::Zero;
    for (const auto& c : components_) {
        z = combine(z, is_identically_zero(c));
        if (z == ZeroTest::NonZero)
            break;
    }
    return z;
}

std::vector<double> VectorField::evaluate_at(std::span<const double> point) const
{
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto& c : components_)
        out.push_back(evaluate(c, point, *chart_));
    return out;
}

std::string VectorField::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < components_.size(); ++i)
        out += (i ? ", " : "") + liequad::to_string(components_[i], *chart_);
    return out + ")";
}

void require_same_chart(const VectorField& a, const VectorField& b)
{
    if (a.chart() != b.chart() && !(*a.chart() == *b.chart()))
        throw GeometryMismatch("vector fields live on different charts");
}

VectorField operator+(const VectorField& a, const VectorField& b)
{
    require_same_chart(a, b);
    std::vector<Expr> c;
    for (std::size_t i = 0; i < a.dim(); ++i)
        c.push_back(simplify(a[i] + b[i]));
    return VectorField(a.chart(), std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b)
{
    require_same_chart(a, b);
    std::vector<Expr> c;
    for (std::size_t i = 0; i < a.dim(); ++i)
        c.push_back(simplify(a[i] - b[i]));
    return VectorField(a.chart(), std::move(c));
}

VectorField operator*(const Expr& s, const VectorField& v)
{
    std::vector<Expr> c;
    for (const auto& x : v.components())
        c.push_back(simplify(s * x));
    return VectorField(v.chart(), std::move(c));
}

// ---------------------------------------------------------------------------

HamiltonianSystem make_system(const GeometryPtr& g, std::string_view hamiltonian)
{
    return HamiltonianSystem{g, parse(hamiltonian, g->chart())};
}

VectorField hamiltonian_vector_field(const PhaseGeometry& g, const Expr& f)
{
    const std::size_t n = g.n();
    std::vector<Expr> c(g.dim(), Expr(0L));
    if (!g.has_contact_form()) {
        for (std::size_t i = 0; i < n; ++i) {
            c[g.q(i)] = differentiate(f, g.p(i));
            c[g.p(i)] = simplify(-differentiate(f, g.q(i)));
        }
        return VectorField(g.chart_ptr(), std::move(c));
    }
    const std::size_t z = *g.z();
    Expr fz = differentiate(f, z);
    std::vector<Expr> z_terms{-f};
    for (std::size_t i = 0; i < n; ++i) {
        Expr p = Expr::variable(g.p(i));
        Expr fp = differentiate(f, g.p(i));
        c[g.q(i)] = fp;
        c[g.p(i)] = simplify(-(differentiate(f, g.q(i)) + p * fz));
        z_terms.push_back(p * fp);
    }
    c[z] = simplify(Expr::sum(std::move(z_terms)));
    return VectorField(g.chart_ptr(), std::move(c));
}

VectorField hamiltonian_vector_field(const PhaseGeometry& g, const ScalarField& f)
{
    if (!f.geometry || !(*f.geometry == g))
        throw GeometryMismatch("function does not live on this geometry");
    return hamiltonian_vector_field(g, f.expr);
}

std::vector<std::pair<std::string, VectorField>> reeb_fields(const PhaseGeometry& g)
{
    std::vector<std::pair<std::string, VectorField>> out;
    switch (g.kind()) {
    case GeometryKind::Symplectic:
        break;
    case GeometryKind::Cosymplectic:
        out.emplace_back("R", VectorField::unit(g.chart_ptr(), *g.t()));
        break;
    case GeometryKind::Contact:
        out.emplace_back("R", VectorField::unit(g.chart_ptr(), *g.z()));
        break;
    case GeometryKind::Cocontact:
        out.emplace_back("R_z", VectorField::unit(g.chart_ptr(), *g.z()));
        out.emplace_back("R_t", VectorField::unit(g.chart_ptr(), *g.t()));
        break;
    }
    return out;
}

VectorField dynamics_field(const HamiltonianSystem& sys)
{
    const PhaseGeometry& g = *sys.geometry;
    VectorField x = hamiltonian_vector_field(g, sys.H);
    if (auto t = g.t())
        return x + VectorField::unit(g.chart_ptr(), *t);
    return x;
}

std::vector<std::pair<std::string, Expr>> equations_of_motion(const HamiltonianSystem& sys)
{
    VectorField v = dynamics_field(sys);
    std::vector<std::pair<std::string, Expr>> out;
    for (std::size_t i = 0; i < v.dim(); ++i)
        out.emplace_back(sys.geometry->chart()[i].name, v[i]);
    return out;
}

Expr contact_form(const PhaseGeometry& g, const VectorField& v)
{
    if (!g.has_contact_form())
        throw GeometryMismatch("geometry has no contact form");
    std::vector<Expr> terms{v[*g.z()]};
    for (std::size_t i = 0; i < g.n(); ++i)
        terms.push_back(-(Expr::variable(g.p(i)) * v[g.q(i)]));
    return simplify(Expr::sum(std::move(terms)));
}

Expr time_form(const PhaseGeometry& g, const VectorField& v)
{
    auto t = g.t();
    if (!t)
        throw GeometryMismatch("geometry has no time form");
    return v[*t];
}

}  // namespace liequad
