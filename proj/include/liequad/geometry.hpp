#pragma once

#include "liequad/expr.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liequad {

enum class GeometryKind { Symplectic, Cosymplectic, Contact, Cocontact };

std::string_view to_string(GeometryKind kind);
/// Accepts the lowercase names "symplectic", "cosymplectic", "contact", "cocontact".
std::optional<GeometryKind> parse_geometry_kind(std::string_view name);

/// A phase space in Darboux coordinates. Chart layouts:
///   symplectic   (q1..qn, p1..pn)
///   cosymplectic (q1..qn, p1..pn, t)
///   contact      (q1..qn, p1..pn, z)
///   cocontact    (t, q1..qn, p1..pn, z)
class PhaseGeometry {
public:
    PhaseGeometry(GeometryKind kind, std::size_t n);

    GeometryKind kind() const { return kind_; }
    std::size_t n() const { return n_; }
    std::size_t dim() const { return chart_->dim(); }
    const CoordinateSystem& chart() const { return *chart_; }
    const ChartPtr& chart_ptr() const { return chart_; }

    /// Chart indices; i is 0-based.
    std::size_t q(std::size_t i) const;
    std::size_t p(std::size_t i) const;
    std::optional<std::size_t> t() const;
    std::optional<std::size_t> z() const;

    bool has_contact_form() const { return kind_ == GeometryKind::Contact || kind_ == GeometryKind::Cocontact; }

    bool operator==(const PhaseGeometry& o) const { return kind_ == o.kind_ && n_ == o.n_; }

private:
    GeometryKind kind_;
    std::size_t n_;
    std::size_t offset_;  // index of q1
    ChartPtr chart_;
};

using GeometryPtr = std::shared_ptr<const PhaseGeometry>;

GeometryPtr make_geometry(GeometryKind kind, std::size_t n);

struct ScalarField {
    GeometryPtr geometry;
    Expr expr;
};

/// Parses text over the geometry's chart.
ScalarField make_scalar(const GeometryPtr& g, std::string_view text);

/// Components over a chart, one per coordinate. Charts are compared by value.
class VectorField {
public:
    VectorField(ChartPtr chart, std::vector<Expr> components);

    static VectorField zero(ChartPtr chart);
    /// Coordinate field d/dx^i.
    static VectorField unit(ChartPtr chart, std::size_t i);

    const ChartPtr& chart() const { return chart_; }
    std::size_t dim() const { return components_.size(); }
    const std::vector<Expr>& components() const { return components_; }
    const Expr& operator[](std::size_t i) const { return components_.at(i); }

    /// Directional derivative v(f), simplified.
    Expr apply(const Expr& f) const;

    /// Componentwise zero test.
    ZeroTest is_zero() const;

    std::vector<double> evaluate_at(std::span<const double> point) const;

    std::string to_string() const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const Expr& s, const VectorField& v);

private:
    ChartPtr chart_;
    std::vector<Expr> components_;
};

/// Throws GeometryMismatch unless both fields live on equal charts.
void require_same_chart(const VectorField& a, const VectorField& b);

struct HamiltonianSystem {
    GeometryPtr geometry;
    Expr H;
};

HamiltonianSystem make_system(const GeometryPtr& g, std::string_view hamiltonian);

/// X_f by the Darboux formula of the geometry. In contact and cocontact charts
/// X_f = (df/dp, -(df/dq + p df/dz), p df/dp - f); note that X_1 = -R there.
VectorField hamiltonian_vector_field(const PhaseGeometry& g, const Expr& f);
VectorField hamiltonian_vector_field(const PhaseGeometry& g, const ScalarField& f);

/// [] / [("R", d/dt)] / [("R", d/dz)] / [("R_z", d/dz), ("R_t", d/dt)].
std::vector<std::pair<std::string, VectorField>> reeb_fields(const PhaseGeometry& g);

/// X_H, plus the time Reeb field for cosymplectic and cocontact geometries.
VectorField dynamics_field(const HamiltonianSystem& sys);

/// Right-hand sides paired with coordinate names, in chart order.
std::vector<std::pair<std::string, Expr>> equations_of_motion(const HamiltonianSystem& sys);

/// theta(v) = v_z - p_i v_{q^i} in contact-type charts.
Expr contact_form(const PhaseGeometry& g, const VectorField& v);
/// eta(v) = v_t in cosymplectic and cocontact charts.
Expr time_form(const PhaseGeometry& g, const VectorField& v);

}  // namespace liequad
