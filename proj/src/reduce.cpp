#include "liequad/reduce.hpp"

#include "liequad/symmetry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <random>

namespace liequad {

NotStraightenable::NotStraightenable(std::vector<std::string> probes)
    : ReductionError([&] {
          std::string msg = "no catalog case straightens the field";
          for (const auto& p : probes)
              msg += "; " + p;
          return msg;
      }()),
      probes_(std::move(probes))
{
}

// ---------------------------------------------------------------------------
// quadrature

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx), f2 = f(c + dx);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1)
            gauss += kWg[j / 2] * (f1 + f2);
    }
    Panel p{a, b, kron * h, std::fabs((kron - gauss) * h)};
    if (!std::isfinite(p.value))
        throw QuadratureError("integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    return p;
}

}  // namespace

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol)
{
    if (a == b)
        return 0.0;
    std::priority_queue<Panel> panels;
    Panel first = gk15(f, a, b);
    double total = first.value, err = first.error;
    panels.push(first);
    for (int iter = 0; iter < 2000; ++iter) {
        if (err <= std::max(abs_tol, rel_tol * std::fabs(total)))
            return total;
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel l = gk15(f, worst.a, mid), r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        panels.push(l);
        panels.push(r);
    }
    if (err <= 1e3 * std::max(abs_tol, rel_tol * std::fabs(total)))
        return total;
    throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
}

// ---------------------------------------------------------------------------
// straightening

namespace {

ChartPtr generic_chart(std::size_t d)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= d; ++i)
        names.push_back("y" + std::to_string(i));
    return std::make_shared<const CoordinateSystem>(CoordinateSystem::generic(names));
}

Expr var(std::size_t i) { return Expr::variable(i); }

Rational rsign(double x) { return Rational(x < 0 ? -1 : 1); }

std::optional<std::pair<Rational, Rational>> linear_coeffs(const Expr& e, std::size_t i)
{
    auto a = as_constant(differentiate(e, i));
    if (!a)
        return std::nullopt;
    auto b = as_constant(e - Expr(*a) * var(i));
    if (!b)
        return std::nullopt;
    return std::make_pair(*a, *b);
}

std::pair<Rational, Expr> split_coefficient(const Expr& e)
{
    if (e.is_constant())
        return {e.value(), Expr(1L)};
    if (e.kind() == Expr::Kind::Product && e.operands().front().is_constant()) {
        std::vector<Expr> rest(e.operands().begin() + 1, e.operands().end());
        return {e.operands().front().value(), Expr::product(std::move(rest))};
    }
    return {Rational(1), e};
}

// Target layout: kept source coordinates (outside `moved`), then the invariants, then
// the straightened coordinate.
struct Layout {
    std::size_t d = 0;
    std::vector<std::size_t> kept;
    std::vector<Expr> kept_map;  // source id -> target variable (kept coordinates only)
    std::size_t first_invariant = 0;

    Layout(std::size_t dim, const std::vector<std::size_t>& moved) : d(dim), kept_map(dim)
    {
        for (std::size_t k = 0; k < dim; ++k)
            if (std::find(moved.begin(), moved.end(), k) == moved.end()) {
                kept_map[k] = var(kept.size());
                kept.push_back(k);
            } else {
                kept_map[k] = var(k);  // unused placeholder
            }
        first_invariant = kept.size();
    }
    Expr inv(std::size_t m) const { return var(first_invariant + m); }
    Expr last() const { return var(d - 1); }

    // Assemble forward (target order) and inverse (source order).
    CoordinateChange build(const std::vector<Expr>& invariants, const Expr& straight,
                           const std::vector<std::pair<std::size_t, Expr>>& moved_inverse, ChartPtr source,
                           std::string name) const
    {
        CoordinateChange c;
        c.source = std::move(source);
        c.target = generic_chart(d);
        for (std::size_t k : kept)
            c.forward.push_back(var(k));
        for (const auto& e : invariants)
            c.forward.push_back(simplify(e));
        c.forward.push_back(simplify(straight));
        c.inverse.assign(d, Expr(0L));
        for (std::size_t m = 0; m < kept.size(); ++m)
            c.inverse[kept[m]] = var(m);
        for (const auto& [k, e] : moved_inverse)
            c.inverse[k] = simplify(e);
        c.catalog_case = std::move(name);
        return c;
    }
};

std::vector<Rational> rational_nullspace_basis_row(const std::vector<std::vector<Rational>>& m, std::size_t n,
                                                   std::vector<std::vector<Rational>>& basis)
{
    // RREF of m (rows x n), then one basis vector per free column
    std::vector<std::vector<Rational>> r = m;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < r.size(); ++col) {
        std::size_t p = rank;
        while (p < r.size() && r[p][col] == 0)
            ++p;
        if (p == r.size())
            continue;
        std::swap(r[p], r[rank]);
        Rational inv = 1 / r[rank][col];
        for (auto& x : r[rank])
            x *= inv;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i == rank || r[i][col] == 0)
                continue;
            Rational f = r[i][col];
            for (std::size_t c = 0; c < n; ++c)
                r[i][c] -= f * r[rank][c];
        }
        pivots.push_back(col);
        ++rank;
    }
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            continue;
        std::vector<Rational> v(n);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r[i][free];
        basis.push_back(std::move(v));
    }
    return {};
}

std::optional<std::vector<std::vector<Rational>>> rational_inverse(std::vector<std::vector<Rational>> a)
{
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col] == 0)
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[p], a[col]);
        std::swap(inv[p], inv[col]);
        Rational f = 1 / a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] *= f;
            inv[col][c] *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            Rational g = a[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= g * a[col][c];
                inv[r][c] -= g * inv[col][c];
            }
        }
    }
    return inv;
}

// Scales a rational vector to a primitive integer vector with a positive leading entry.
std::vector<Rational> primitive(std::vector<Rational> v)
{
    mpz_class l = 1;
    for (const auto& x : v)
        if (x != 0)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    mpz_class g = 0;
    for (auto& x : v) {
        x *= l;
        if (x != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    Rational lead = 0;
    for (const auto& x : v)
        if (x != 0) {
            lead = x;
            break;
        }
    if (g != 0) {
        Rational s = Rational(lead < 0 ? -1 : 1) / Rational(g);
        for (auto& x : v)
            x *= s;
    }
    return v;
}

struct Straightener {
    const VectorField& u;
    std::vector<double> x0;
    std::size_t d;
    std::vector<std::size_t> support;
    std::vector<std::string> probes;

    Straightener(const VectorField& field, std::span<const double> point)
        : u(field), x0(point.begin(), point.end()), d(field.dim())
    {
        for (std::size_t i = 0; i < d; ++i)
            if (is_identically_zero(u[i]) != ZeroTest::Zero)
                support.push_back(i);
    }

    // Certification: pushforward, round trip, Jacobian determinant.
    bool certify(CoordinateChange& c)
    {
        const std::string tag = c.catalog_case + ": ";
        // pushforward u(F_a) = delta
        bool sampled = false;
        for (std::size_t a = 0; a < d; ++a) {
            Expr res = u.apply(c.forward[a]) - Expr(a + 1 == d ? 1L : 0L);
            ZeroTest z = is_identically_zero(res);
            if (z == ZeroTest::NonZero) {
                probes.push_back(tag + "pushforward check failed for target coordinate " + std::to_string(a + 1));
                return false;
            }
            if (z == ZeroTest::Unknown) {
                if (!sampled_zero(res)) {
                    probes.push_back(tag + "pushforward residual is numerically nonzero");
                    return false;
                }
                sampled = true;
            }
        }
        c.pushforward_exact = !sampled;
        // round trip on a box around x0
        double scale = 1.0;
        for (double v : x0)
            scale = std::max(scale, std::fabs(v));
        const double half = 1e-2 * scale;
        std::mt19937_64 rng(0xb0c5);
        std::uniform_real_distribution<double> unif(-half, half);
        int good = 0;
        for (int attempt = 0; attempt < 200 && good < 50; ++attempt) {
            std::vector<double> x = x0;
            if (attempt > 0)
                for (auto& xi : x)
                    xi += unif(rng);
            try {
                std::vector<double> y(d), back(d);
                for (std::size_t a = 0; a < d; ++a)
                    y[a] = evaluate(c.forward[a], x);
                for (std::size_t a = 0; a < d; ++a)
                    back[a] = evaluate(c.inverse[a], y);
                for (std::size_t a = 0; a < d; ++a)
                    if (!(std::fabs(back[a] - x[a]) <= 1e-9 * (1.0 + std::fabs(x[a])))) {
                        probes.push_back(tag + "inverse map does not undo the forward map near the working point");
                        return false;
                    }
                ++good;
            } catch (const DomainError&) {
                if (attempt == 0) {
                    probes.push_back(tag + "forward or inverse map undefined at the working point");
                    return false;
                }
            }
        }
        if (good < 10) {
            probes.push_back(tag + "too few valid round-trip samples");
            return false;
        }
        Eigen::MatrixXd j(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        try {
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    j(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                        evaluate(differentiate(c.forward[a], b), x0);
        } catch (const DomainError&) {
            probes.push_back(tag + "Jacobian undefined at the working point");
            return false;
        }
        if (!(std::fabs(j.determinant()) > 1e-6)) {
            probes.push_back(tag + "Jacobian determinant vanishes at the working point");
            return false;
        }
        return true;
    }

    bool sampled_zero(const Expr& e) const
    {
        double scale = 1.0;
        for (double v : x0)
            scale = std::max(scale, std::fabs(v));
        std::mt19937_64 rng(0x5a3d);
        std::uniform_real_distribution<double> unif(-0.1 * scale, 0.1 * scale);
        int good = 0;
        for (int attempt = 0; attempt < 200 && good < 25; ++attempt) {
            std::vector<double> x = x0;
            for (auto& xi : x)
                xi += unif(rng);
            try {
                double v = evaluate(e, x);
                ++good;
                if (!(std::fabs(v) <= 1e-9))
                    return false;
            } catch (const DomainError&) {
            }
        }
        return good >= 10;
    }

    std::optional<CoordinateChange> translation()
    {
        // constant vector
        std::vector<Rational> c(d);
        bool constant = true;
        for (std::size_t i : support) {
            auto v = as_constant(u[i]);
            if (!v) {
                constant = false;
                break;
            }
            c[i] = *v;
        }
        if (constant) {
            const std::size_t lead = support.front();
            Layout lay(d, support);
            std::vector<Expr> inv;
            std::vector<std::pair<std::size_t, Expr>> back;
            back.emplace_back(lead, Expr(c[lead]) * lay.last());
            std::size_t m = 0;
            for (std::size_t j : support) {
                if (j == lead)
                    continue;
                inv.push_back(var(j) - Expr(Rational(c[j] / c[lead])) * var(lead));
                back.emplace_back(j, lay.inv(m++) + Expr(c[j]) * lay.last());
            }
            auto cc = lay.build(inv, var(lead) / Expr(c[lead]), back, u.chart(), "translation");
            if (certify(cc))
                return cc;
            return std::nullopt;
        }
        if (support.size() == 1 && !depends_on(u[support[0]], support[0])) {
            const std::size_t i = support[0];
            Layout lay(d, support);
            const Expr& g = u[i];
            Expr g_target = substitute(g, lay.kept_map);
            auto cc = lay.build({}, var(i) / g, {{i, g_target * lay.last()}}, u.chart(), "translation");
            if (certify(cc))
                return cc;
            return std::nullopt;
        }
        probes.push_back("translation: components are not constant");
        return std::nullopt;
    }

    std::optional<CoordinateChange> separable()
    {
        if (support.size() != 1) {
            probes.push_back("separable: more than one nonzero component");
            return std::nullopt;
        }
        const std::size_t i = support[0];
        const Expr g = simplify(u[i]);
        for (std::size_t v : free_variables(g))
            if (v != i) {
                probes.push_back("separable: the component depends on other coordinates");
                return std::nullopt;
            }
        Layout lay(d, support);
        const Expr x = var(i);
        const Expr y = lay.last();
        const double xi0 = x0[i];
        auto finish = [&](const Expr& phi, const Expr& inverse, const std::string& kind) -> std::optional<CoordinateChange> {
            auto cc = lay.build({}, phi, {{i, inverse}}, u.chart(), "separable:" + kind);
            if (certify(cc))
                return cc;
            return std::nullopt;
        };
        auto [c, rest] = split_coefficient(g);
        // power c x^k, k != 1
        {
            std::optional<Rational> k;
            if (rest.kind() == Expr::Kind::Power && rest.base().kind() == Expr::Kind::Variable &&
                rest.base().variable_id() == i)
                k = rest.exponent();
            if (k && *k != 1) {
                const Rational e = 1 - *k;
                Expr phi = pow(x, e) / Expr(Rational(c * e));
                if (is_integer(*k)) {
                    Rational s = rsign(xi0);
                    Rational s_e = is_integer(e) && e.get_num() % 2 == 0 ? Rational(1) : s;
                    Expr w = pow(Expr(Rational(s_e * c * e)) * y, Rational(1 / e));
                    return finish(phi, Expr(s) * w, "power");
                }
                return finish(phi, pow(Expr(Rational(c * e)) * y, Rational(1 / e)), "power");
            }
        }
        // exponential c exp(a x + b)
        if (rest.kind() == Expr::Kind::Function && rest.func() == Func::Exp) {
            if (auto ab = linear_coeffs(rest.argument(), i); ab && ab->first != 0) {
                const auto& [a, b] = *ab;
                Expr arg = Expr(a) * x + Expr(b);
                Expr phi = -apply(Func::Exp, -arg) / Expr(Rational(a * c));
                Expr inverse = (-apply(Func::Ln, Expr(Rational(-a * c)) * y) - Expr(b)) / Expr(a);
                return finish(phi, inverse, "exp");
            }
        }
        // linear a x + b
        if (auto ab = linear_coeffs(g, i); ab && ab->first != 0) {
            const auto& [a, b] = *ab;
            Rational s = rsign(to_double(a) * xi0 + to_double(b));
            Expr phi = apply(Func::Ln, Expr(s) * (Expr(a) * x + Expr(b))) / Expr(a);
            Expr inverse = (Expr(s) * apply(Func::Exp, Expr(a) * y) - Expr(b)) / Expr(a);
            return finish(phi, inverse, "linear");
        }
        // sine and cosine of a linear argument
        if (rest.kind() == Expr::Kind::Function && (rest.func() == Func::Sin || rest.func() == Func::Cos)) {
            if (auto ab = linear_coeffs(rest.argument(), i); ab && ab->first != 0) {
                const auto& [a, b] = *ab;
                const bool is_sin = rest.func() == Func::Sin;
                Expr theta = Expr(a) * x + Expr(b);
                const double th0 = to_double(a) * xi0 + to_double(b);
                const double t0 = is_sin ? (1 - std::cos(th0)) / std::sin(th0) : (1 + std::sin(th0)) / std::cos(th0);
                Rational s = rsign(t0);
                const double base = 2 * std::atan(std::fabs(t0) * to_double(s));
                const double pi = std::numbers::pi;
                long m = std::lround((th0 - base + (is_sin ? 0.0 : pi / 2)) / (2 * pi));
                Expr ratio = is_sin ? (Expr(1L) - apply(Func::Cos, theta)) / apply(Func::Sin, theta)
                                    : (Expr(1L) + apply(Func::Sin, theta)) / apply(Func::Cos, theta);
                Expr phi = apply(Func::Ln, Expr(s) * ratio) / Expr(Rational(a * c));
                Expr quarter_pi = apply(Func::Atan, Expr(1L));
                Expr th = Expr(2L) * apply(Func::Atan, Expr(s) * apply(Func::Exp, Expr(Rational(a * c)) * y)) +
                          Expr(8 * m - (is_sin ? 0 : 2)) * quarter_pi;
                return finish(phi, (th - Expr(b)) / Expr(a), is_sin ? "sin" : "cos");
            }
        }
        // reciprocal of a linear function
        {
            Expr h = simplify(Expr(1L) / g);
            if (auto ab = linear_coeffs(h, i); ab && ab->first != 0) {
                const auto& [al, be] = *ab;
                Rational sg = rsign(to_double(al) * xi0 + to_double(be));
                Expr phi = Expr(Rational(al / 2)) * pow(x, 2) + Expr(be) * x;
                Expr root = pow(Expr(Rational(be * be)) + Expr(Rational(2 * al)) * y, make_rational(1, 2));
                return finish(phi, (Expr(-be) + Expr(sg) * root) / Expr(al), "reciprocal");
            }
        }
        probes.push_back("separable: coefficient is not in the antiderivative table");
        return std::nullopt;
    }

    std::optional<CoordinateChange> linear()
    {
        std::vector<std::size_t> vars = support;
        for (std::size_t i : support)
            for (std::size_t v : free_variables(u[i]))
                if (std::find(vars.begin(), vars.end(), v) == vars.end())
                    vars.push_back(v);
        std::sort(vars.begin(), vars.end());
        const std::size_t r = vars.size();
        std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
        for (std::size_t p = 0; p < r; ++p) {
            const Expr& comp = u[vars[p]];
            std::vector<Expr> terms{comp};
            for (std::size_t q = 0; q < r; ++q) {
                auto c = as_constant(differentiate(comp, vars[q]));
                if (!c) {
                    probes.push_back("linear: component " + std::to_string(vars[p] + 1) + " is not linear");
                    return std::nullopt;
                }
                a[p][q] = *c;
                terms.push_back(-(Expr(*c) * var(vars[q])));
            }
            auto rest = as_constant(Expr::sum(std::move(terms)));
            if (!rest || *rest != 0) {
                probes.push_back("linear: component " + std::to_string(vars[p] + 1) + " is not homogeneous");
                return std::nullopt;
            }
        }
        bool diagonal = true;
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q)
                if (p != q && a[p][q] != 0)
                    diagonal = false;
        if (diagonal) {
            std::vector<std::vector<Rational>> w(r, std::vector<Rational>(r));
            std::vector<Rational> lambda(r);
            for (std::size_t p = 0; p < r; ++p) {
                w[p][p] = 1;
                lambda[p] = a[p][p];
            }
            return euler(vars, w, lambda, "euler");
        }
        // left eigenvectors with rational eigenvalues
        Eigen::MatrixXd ad(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q)
                ad(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = to_double(a[p][q]);
        Eigen::EigenSolver<Eigen::MatrixXd> es(ad);
        std::vector<Rational> eigenvalues;
        bool real_rational = true;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            auto ev = es.eigenvalues()(k);
            if (std::fabs(ev.imag()) > 1e-9) {
                real_rational = false;
                break;
            }
            auto q = std::fabs(ev.real()) < 1e-12 ? std::optional<Rational>(Rational(0)) : rationalize(ev.real(), 10000, 1e-8);
            if (!q) {
                real_rational = false;
                break;
            }
            if (std::find(eigenvalues.begin(), eigenvalues.end(), *q) == eigenvalues.end())
                eigenvalues.push_back(*q);
        }
        if (real_rational) {
            std::sort(eigenvalues.begin(), eigenvalues.end());
            std::vector<std::vector<Rational>> w;
            std::vector<Rational> lambda;
            for (const auto& ev : eigenvalues) {
                // rows of (A^T - ev I)
                std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r));
                for (std::size_t p = 0; p < r; ++p)
                    for (std::size_t q = 0; q < r; ++q)
                        m[p][q] = a[q][p] - (p == q ? ev : Rational(0));
                std::vector<std::vector<Rational>> basis;
                rational_nullspace_basis_row(m, r, basis);
                for (auto& b : basis) {
                    w.push_back(primitive(b));
                    lambda.push_back(ev);
                }
            }
            if (w.size() == r)
                return euler(vars, w, lambda, "linear");
            probes.push_back("linear: matrix is not diagonalizable over the rationals");
        } else {
            probes.push_back("linear: eigenvalues are not all rational");
        }
        if (r == 2 && a[0][0] == 0 && a[1][1] == 0 && a[0][1] * a[1][0] < 0)
            return rotation(vars[0], vars[1], a[0][1], Rational(-a[1][0]));
        return std::nullopt;
    }

    std::optional<CoordinateChange> euler(const std::vector<std::size_t>& vars, const std::vector<std::vector<Rational>>& w,
                                          const std::vector<Rational>& lambda, const std::string& name)
    {
        const std::size_t r = vars.size();
        std::vector<Expr> xi(r);
        std::vector<double> xi0(r, 0.0);
        for (std::size_t m = 0; m < r; ++m) {
            std::vector<Expr> terms;
            for (std::size_t q = 0; q < r; ++q)
                if (w[m][q] != 0) {
                    terms.push_back(Expr(w[m][q]) * var(vars[q]));
                    xi0[m] += to_double(w[m][q]) * x0[vars[q]];
                }
            xi[m] = Expr::sum(std::move(terms));
        }
        std::size_t k = r;
        for (std::size_t m = r; m-- > 0;)
            if (lambda[m] != 0) {
                k = m;
                break;
            }
        if (k == r) {
            probes.push_back(name + ": zero field");
            return std::nullopt;
        }
        if (xi0[k] == 0.0) {
            probes.push_back(name + ": working point lies on the singular hyperplane of the scaling");
            return std::nullopt;
        }
        auto winv = rational_inverse(w);
        if (!winv) {
            probes.push_back(name + ": eigenvector matrix is singular");
            return std::nullopt;
        }
        const Rational s = rsign(xi0[k]);
        Layout lay(d, vars);
        Expr sk = Expr(s) * xi[k];
        std::vector<Expr> invariants;
        std::vector<Expr> xi_back(r);
        xi_back[k] = Expr(s) * apply(Func::Exp, Expr(lambda[k]) * lay.last());
        std::size_t idx = 0;
        for (std::size_t m = 0; m < r; ++m) {
            if (m == k)
                continue;
            if (lambda[m] == 0) {
                invariants.push_back(xi[m]);
                xi_back[m] = lay.inv(idx);
            } else {
                invariants.push_back(xi[m] * pow(sk, Rational(-lambda[m] / lambda[k])));
                xi_back[m] = lay.inv(idx) * apply(Func::Exp, Expr(lambda[m]) * lay.last());
            }
            ++idx;
        }
        std::vector<std::pair<std::size_t, Expr>> back;
        for (std::size_t q = 0; q < r; ++q) {
            std::vector<Expr> terms;
            for (std::size_t m = 0; m < r; ++m)
                if ((*winv)[q][m] != 0)
                    terms.push_back(Expr((*winv)[q][m]) * xi_back[m]);
            back.emplace_back(vars[q], Expr::sum(std::move(terms)));
        }
        Expr straight = apply(Func::Ln, sk) / Expr(lambda[k]);
        auto cc = lay.build(invariants, straight, back, u.chart(), name);
        if (certify(cc))
            return cc;
        return std::nullopt;
    }

    // u = a x_j d/dx_i - b x_i d/dx_j with ab > 0.
    std::optional<CoordinateChange> rotation(std::size_t i, std::size_t j, const Rational& a, const Rational& b)
    {
        const Rational ab = a * b;
        const Rational half = make_rational(1, 2);
        Expr kappa = Expr(rsign(to_double(a))) * pow(Expr(ab), half);
        Layout lay(d, {i, j});
        Expr xi = var(i), xj = var(j);
        Expr inv_i = Expr(b) * pow(xi, 2) + Expr(a) * pow(xj, 2);
        Expr big_i = lay.inv(0);
        Expr psi = lay.last();
        Expr ri = pow(big_i / Expr(b), half);
        Expr rj = pow(big_i / Expr(a), half);
        const double wi = std::fabs(x0[i]) * std::sqrt(std::fabs(to_double(b)));
        const double wj = std::fabs(x0[j]) * std::sqrt(std::fabs(to_double(a)));
        Expr straight, back_i, back_j;
        if (wj >= wi) {
            Rational sigma = rsign(x0[j]);
            straight = apply(Func::Atan, pow(Expr(Rational(b / a)), half) * xi / xj) / kappa;
            back_i = Expr(sigma) * ri * apply(Func::Sin, kappa * psi);
            back_j = Expr(sigma) * rj * apply(Func::Cos, kappa * psi);
        } else {
            Rational sigma = rsign(x0[i]);
            straight = -apply(Func::Atan, pow(Expr(Rational(a / b)), half) * xj / xi) / kappa;
            back_i = Expr(sigma) * ri * apply(Func::Cos, kappa * psi);
            back_j = -(Expr(sigma) * rj * apply(Func::Sin, kappa * psi));
        }
        auto cc = lay.build({inv_i}, straight, {{i, back_i}, {j, back_j}}, u.chart(), "rotation");
        if (certify(cc))
            return cc;
        return std::nullopt;
    }

    CoordinateChange run()
    {
        if (support.empty())
            throw NotStraightenable({"zero field"});
        try {
            double norm = 0;
            for (std::size_t i : support)
                norm = std::max(norm, std::fabs(evaluate(u[i], x0)));
            if (!(norm > 1e-9))
                throw NotStraightenable({"the field has an equilibrium at the working point"});
        } catch (const DomainError& e) {
            throw NotStraightenable({std::string("the field is undefined at the working point: ") + e.what()});
        }
        if (auto c = translation())
            return *c;
        if (auto c = separable())
            return *c;
        if (auto c = linear())
            return *c;
        throw NotStraightenable(probes);
    }
};

}  // namespace

CoordinateChange straighten(const VectorField& u, std::span<const double> x0)
{
    if (x0.size() != u.dim())
        throw Error("working point has the wrong dimension");
    return Straightener(u, x0).run();
}

VectorField transform(const VectorField& w, const CoordinateChange& change)
{
    std::vector<Expr> c;
    for (const auto& f : change.forward)
        c.push_back(simplify(substitute(w.apply(f), change.inverse)));
    return VectorField(change.target, std::move(c));
}

ReductionStage reduce_once(const VectorField& v, const VectorField& u, std::span<const double> x0,
                           const std::vector<VectorField>& others)
{
    require_same_chart(u, v);
    Answer sym = is_symmetry(u, v);
    if (sym != Answer::Yes)
        throw ReductionError("the field to eliminate is not a symmetry of the system (verdict " +
                             std::string(to_string(sym)) + ")");
    CoordinateChange cc = straighten(u, x0);
    const std::size_t d = v.dim();
    const std::size_t last = d - 1;
    VectorField vbar = transform(v, cc);
    for (std::size_t a = 0; a < d; ++a) {
        ZeroTest z = is_identically_zero(differentiate(vbar[a], last));
        if (z != ZeroTest::Zero)
            throw DependenceResidual("reduced component " + std::to_string(a + 1) +
                                     " depends on the straightened coordinate (zero test " + std::string(to_string(z)) + ")");
    }
    ChartPtr reduced_chart = generic_chart(last);
    std::vector<Expr> comps(vbar.components().begin(), vbar.components().begin() + static_cast<long>(last));
    ReductionStage stage{cc, VectorField(reduced_chart, comps), vbar[last], {}};
    for (std::size_t k = 0; k < others.size(); ++k) {
        VectorField wbar = transform(others[k], cc);
        for (std::size_t a = 0; a < last; ++a) {
            ZeroTest z = is_identically_zero(differentiate(wbar[a], last));
            if (z != ZeroTest::Zero)
                throw DependenceResidual("remaining symmetry " + std::to_string(k + 1) +
                                         " does not descend: component " + std::to_string(a + 1) +
                                         " depends on the straightened coordinate");
        }
        std::vector<Expr> wc(wbar.components().begin(), wbar.components().begin() + static_cast<long>(last));
        VectorField projected(reduced_chart, wc);
        Answer s = is_symmetry(projected, stage.reduced);
        if (s != Answer::Yes)
            throw ReductionError("remaining symmetry " + std::to_string(k + 1) +
                                 " is not a symmetry of the reduced system (verdict " + std::string(to_string(s)) + ")");
        stage.remaining.push_back(std::move(projected));
    }
    return stage;
}

// ---------------------------------------------------------------------------
// solutions

namespace {

// Value of a one-dimensional integral s -> y0 + int_0^s f, cached at every evaluated
// parameter so later evaluations integrate only from the nearest anchor.
class AnchoredIntegral {
public:
    AnchoredIntegral(std::function<double(double)> f, double y0) : f_(std::move(f)) { cache_[0.0] = y0; }

    double at(double s)
    {
        auto it = cache_.find(s);
        if (it != cache_.end())
            return it->second;
        auto [a, va] = nearest(s);
        while (std::fabs(s - a) > kSpacing) {
            double next = a + (s > a ? kSpacing : -kSpacing);
            va += gauss_kronrod(f_, a, next);
            a = next;
            cache_[a] = va;
        }
        double v = va + gauss_kronrod(f_, a, s);
        cache_[s] = v;
        return v;
    }

private:
    static constexpr double kSpacing = 0.25;

    std::pair<double, double> nearest(double s) const
    {
        auto hi = cache_.lower_bound(s);
        if (hi == cache_.end())
            return *std::prev(hi);
        if (hi == cache_.begin())
            return *hi;
        auto lo = std::prev(hi);
        return (s - lo->first <= hi->first - s) ? *lo : *hi;
    }

    std::function<double(double)> f_;
    std::map<double, double> cache_;
};

class Solution {
public:
    virtual ~Solution() = default;
    virtual std::vector<double> at(double s) = 0;
    std::vector<bool> constant;
    std::vector<double> initial;
};

class CoreSolution : public Solution {
public:
    CoreSolution(const VectorField& v, std::vector<double> x0, std::vector<std::string>& log)
    {
        const std::size_t k = v.dim();
        initial = x0;
        constant.assign(k, false);
        plans_.resize(k);
        std::vector<bool> solved(k, false);
        for (std::size_t round = 0; round < k; ++round) {
            bool progress = false;
            for (std::size_t i = 0; i < k && !progress; ++i) {
                if (solved[i])
                    continue;
                auto vars = free_variables(v[i]);
                bool ready = std::all_of(vars.begin(), vars.end(), [&](std::size_t j) { return solved[j]; });
                if (!ready)
                    continue;
                Plan& p = plans_[i];
                p.rhs = v[i];
                bool const_inputs = std::all_of(vars.begin(), vars.end(), [&](std::size_t j) { return constant[j]; });
                if (auto c = as_constant(v[i]); c && *c == 0) {
                    p.kind = Plan::Constant;
                    constant[i] = true;
                    log.push_back("core: " + v.chart()->coordinates()[i].name + " is constant");
                } else if (const_inputs) {
                    p.kind = Plan::Linear;
                    p.rate = evaluate(v[i], x0);
                    log.push_back("core: " + v.chart()->coordinates()[i].name + " grows linearly");
                } else {
                    p.kind = Plan::Quadrature;
                    auto rhs = v[i];
                    p.integral = std::make_unique<AnchoredIntegral>(
                        [this, rhs](double s) { return evaluate(rhs, values_upto(s)); }, x0[i]);
                    log.push_back("core: " + v.chart()->coordinates()[i].name + " by quadrature");
                }
                order_.push_back(i);
                solved[i] = true;
                progress = true;
            }
            if (progress)
                continue;
            // one-dimensional autonomous equation y' = g(y), constants substituted
            for (std::size_t i = 0; i < k && !progress; ++i) {
                if (solved[i])
                    continue;
                auto vars = free_variables(v[i]);
                bool ok = std::all_of(vars.begin(), vars.end(),
                                      [&](std::size_t j) { return j == i || (solved[j] && constant[j]); });
                if (!ok)
                    continue;
                std::vector<Expr> subst;
                for (std::size_t j = 0; j < k; ++j)
                    subst.push_back(j == i ? Expr::variable(0) : Expr(from_double_exact(x0[j])));
                Plan& p = plans_[i];
                p.kind = Plan::Inverted;
                p.rhs = simplify(substitute(v[i], subst));
                p.y0 = x0[i];
                if (std::fabs(evaluate(p.rhs, std::vector<double>{x0[i]})) == 0.0) {
                    p.kind = Plan::Constant;
                    constant[i] = true;
                }
                log.push_back("core: " + v.chart()->coordinates()[i].name + " by inverted quadrature");
                order_.push_back(i);
                solved[i] = true;
                progress = true;
            }
            if (!progress)
                throw ReductionError("the remaining " + std::to_string(k) +
                                     "-dimensional system is not triangular; more symmetries are needed");
        }
    }

    std::vector<double> at(double s) override
    {
        std::vector<double> x = initial;
        for (std::size_t i : order_)
            x[i] = component(i, s, x);
        return x;
    }

private:
    struct Plan {
        enum Kind { Constant, Linear, Quadrature, Inverted } kind = Constant;
        Expr rhs;
        double rate = 0;
        double y0 = 0;
        std::unique_ptr<AnchoredIntegral> integral;
        std::map<double, double> inverted_cache;
    };

    // Values of all coordinates at s (only solved prefixes are meaningful).
    std::vector<double> values_upto(double s) { return at(s); }

    double component(std::size_t i, double s, const std::vector<double>&)
    {
        Plan& p = plans_[i];
        switch (p.kind) {
        case Plan::Constant: return initial[i];
        case Plan::Linear: return initial[i] + p.rate * s;
        case Plan::Quadrature: return p.integral->at(s);
        case Plan::Inverted: return inverted(p, s);
        }
        return 0;
    }

    // Solves int_{y_a}^{y} dy / g(y) = s - s_a by Newton from the nearest cached point.
    static double inverted(Plan& p, double s)
    {
        if (p.inverted_cache.empty())
            p.inverted_cache[0.0] = p.y0;
        auto it = p.inverted_cache.find(s);
        if (it != p.inverted_cache.end())
            return it->second;
        auto g = [&](double y) { return evaluate(p.rhs, std::vector<double>{y}); };
        auto hi = p.inverted_cache.lower_bound(s);
        auto anchor = hi == p.inverted_cache.end() ? std::prev(hi) : hi;
        if (hi != p.inverted_cache.end() && hi != p.inverted_cache.begin()) {
            auto lo = std::prev(hi);
            if (s - lo->first <= hi->first - s)
                anchor = lo;
        }
        double sa = anchor->first, ya = anchor->second;
        // march in short steps for robustness
        while (std::fabs(s - sa) > 1e-12) {
            double target = std::fabs(s - sa) > 0.05 ? sa + (s > sa ? 0.05 : -0.05) : s;
            double ds = target - sa;
            double y = ya + g(ya) * ds;
            bool converged = false;
            for (int iter = 0; iter < 60; ++iter) {
                double phi = gauss_kronrod([&](double eta) { return 1.0 / g(eta); }, ya, y) - ds;
                double step = phi * g(y);
                y -= step;
                if (std::fabs(step) <= 1e-14 * (1.0 + std::fabs(y))) {
                    converged = true;
                    break;
                }
            }
            if (!converged || !std::isfinite(y))
                throw QuadratureError("inverted quadrature did not converge at s = " + std::to_string(target));
            sa = target;
            ya = y;
            p.inverted_cache[sa] = ya;
        }
        return ya;
    }

    std::vector<Plan> plans_;
    std::vector<std::size_t> order_;
};

class LevelSolution : public Solution {
public:
    LevelSolution(std::unique_ptr<Solution> lower, const ReductionStage& stage, double y_last0)
        : lower_(std::move(lower)), inverse_(stage.change.inverse), rhs_(stage.quadrature_rhs), y0_(y_last0)
    {
        auto vars = free_variables(rhs_);
        if (auto c = as_constant(rhs_)) {
            mode_ = *c == 0 ? Mode::Constant : Mode::Linear;
            rate_ = to_double(*c);
        } else if (std::all_of(vars.begin(), vars.end(), [&](std::size_t j) { return lower_->constant[j]; })) {
            mode_ = Mode::Linear;
            rate_ = evaluate(rhs_, lower_->initial);
        } else {
            mode_ = Mode::Quadrature;
            integral_ = std::make_unique<AnchoredIntegral>([this](double s) { return evaluate(rhs_, lower_->at(s)); }, y0_);
        }
        std::vector<bool> target_const = lower_->constant;
        target_const.push_back(mode_ == Mode::Constant);
        for (const auto& e : inverse_) {
            auto v = free_variables(e);
            constant.push_back(std::all_of(v.begin(), v.end(), [&](std::size_t j) { return target_const[j]; }));
        }
        std::vector<double> y = lower_->initial;
        y.push_back(y0_);
        initial = map_back(y);
    }

    std::vector<double> at(double s) override
    {
        std::vector<double> y = lower_->at(s);
        switch (mode_) {
        case Mode::Constant: y.push_back(y0_); break;
        case Mode::Linear: y.push_back(y0_ + rate_ * s); break;
        case Mode::Quadrature: y.push_back(integral_->at(s)); break;
        }
        return map_back(y);
    }

private:
    enum class Mode { Constant, Linear, Quadrature };

    std::vector<double> map_back(const std::vector<double>& y) const
    {
        std::vector<double> x;
        x.reserve(inverse_.size());
        for (const auto& e : inverse_)
            x.push_back(evaluate(e, y));
        return x;
    }

    std::unique_ptr<Solution> lower_;
    std::vector<Expr> inverse_;
    Expr rhs_;
    double y0_;
    Mode mode_ = Mode::Constant;
    double rate_ = 0;
    std::unique_ptr<AnchoredIntegral> integral_;
};

}  // namespace

QuadratureTrajectory integrate_by_quadratures(const VectorField& v, const std::vector<VectorField>& symmetries,
                                              std::span<const double> x0, std::span<const double> t_grid)
{
    if (x0.size() != v.dim())
        throw Error("initial point has the wrong dimension");
    for (const auto& s : symmetries)
        require_same_chart(s, v);
    QuadratureTrajectory out;
    std::vector<ReductionStage> stages;
    std::vector<double> y_last0;
    VectorField cur = v;
    std::vector<double> point(x0.begin(), x0.end());
    std::vector<VectorField> remaining = symmetries;
    std::size_t index = 0;
    while (!remaining.empty()) {
        ++index;
        VectorField u = remaining.front();
        std::vector<VectorField> others(remaining.begin() + 1, remaining.end());
        ReductionStage stage = [&] {
            try {
                return reduce_once(cur, u, point, others);
            } catch (const NotStraightenable& e) {
                throw NotStraightenable([&] {
                    auto p = e.probes();
                    p.insert(p.begin(), "stage " + std::to_string(index));
                    return p;
                }());
            } catch (const DependenceResidual& e) {
                throw DependenceResidual("stage " + std::to_string(index) + ": " + e.what());
            } catch (const ReductionError& e) {
                throw ReductionError("stage " + std::to_string(index) + ": " + e.what());
            }
        }();
        std::vector<double> y;
        for (const auto& f : stage.change.forward)
            y.push_back(evaluate(f, point));
        out.log.push_back("stage " + std::to_string(index) + ": " + stage.change.catalog_case + " straightening, " +
                          std::to_string(cur.dim()) + " -> " + std::to_string(cur.dim() - 1) + " coordinates");
        y_last0.push_back(y.back());
        y.pop_back();
        point = std::move(y);
        cur = stage.reduced;
        remaining = stage.remaining;
        stages.push_back(std::move(stage));
    }
    std::unique_ptr<Solution> sol = std::make_unique<CoreSolution>(cur, point, out.log);
    for (std::size_t k = stages.size(); k-- > 0;)
        sol = std::make_unique<LevelSolution>(std::move(sol), stages[k], y_last0[k]);
    for (double t : t_grid) {
        out.times.push_back(t);
        try {
            out.states.push_back(sol->at(t));
        } catch (const DomainError& e) {
            throw QuadratureError("at parameter " + std::to_string(t) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace liequad
