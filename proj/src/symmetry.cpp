#include "liequad/symmetry.hpp"

#include "liequad/brackets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace liequad {

VectorField commutator(const VectorField& u, const VectorField& v)
{
    require_same_chart(u, v);
    std::vector<Expr> c;
    c.reserve(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
        c.push_back(simplify(u.apply(v[i]) - v.apply(u[i])));
    return VectorField(u.chart(), std::move(c));
}

Answer is_symmetry(const VectorField& u, const VectorField& v)
{
    return answer_from_zero(commutator(u, v).is_zero());
}

namespace {

bool z_free(const PhaseGeometry& g, const Expr& f)
{
    return is_identically_zero(differentiate(f, *g.z())) == ZeroTest::Zero;
}

}  // namespace

AntihomomorphismCheck check_antihomomorphism(const PhaseGeometry& g, const Expr& f, const Expr& h)
{
    if (g.has_contact_form()) {
        const char* reeb = g.kind() == GeometryKind::Contact ? "R" : "R_z";
        if (!z_free(g, f) || !z_free(g, h))
            throw InapplicableHypothesis(std::string("antihomomorphism identity requires ") + reeb + "f = " + reeb +
                                         "h = 0");
    }
    VectorField xfh = hamiltonian_vector_field(g, bracket(g, f, h));
    VectorField comm = commutator(hamiltonian_vector_field(g, f), hamiltonian_vector_field(g, h));
    VectorField residual = xfh + comm;
    return AntihomomorphismCheck{residual, answer_from_zero(residual.is_zero())};
}

std::vector<IdentityCheck> check_reeb_identities(const HamiltonianSystem& sys, const Expr& f)
{
    const PhaseGeometry& g = *sys.geometry;
    std::vector<IdentityCheck> out;
    VectorField xf = hamiltonian_vector_field(g, f);

    auto reeb_shift = [&](const std::string& name, std::size_t coord) {
        // X_{Rf} + [X_f, R]
        VectorField r = VectorField::unit(g.chart_ptr(), coord);
        VectorField res = hamiltonian_vector_field(g, differentiate(f, coord)) + commutator(xf, r);
        out.push_back({"X_{" + name + "f} + [X_f, " + name + "] = 0", answer_from_zero(res.is_zero()), ""});
    };
    if (g.kind() == GeometryKind::Cosymplectic)
        reeb_shift("R", *g.t());
    if (g.kind() == GeometryKind::Cocontact)
        reeb_shift("R_t", *g.t());

    const bool good = !g.has_contact_form() || z_free(g, sys.H);
    const bool f_free = !g.has_contact_form() || z_free(g, f);
    {
        IdentityCheck c{"[E_H, X_f] = 0", std::nullopt, ""};
        Answer com = is_constant_of_motion(sys, f);
        if (com != Answer::Yes)
            c.skip_reason = "f is not a constant of motion (" + std::string(to_string(com)) + ")";
        else if (!good)
            c.skip_reason = "H depends on z";
        else if (!f_free)
            c.skip_reason = "f depends on z";
        else
            c.verdict = is_symmetry(dynamics_field(sys), xf);
        out.push_back(std::move(c));
    }
    if (g.has_contact_form()) {
        const std::string name = g.kind() == GeometryKind::Contact ? "R" : "R_z";
        IdentityCheck c{"[" + name + ", X_H] = 0", std::nullopt, ""};
        if (!good)
            c.skip_reason = "H depends on z";
        else
            c.verdict = is_symmetry(VectorField::unit(g.chart_ptr(), *g.z()), hamiltonian_vector_field(g, sys.H));
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// level sets

void LevelSet::validate() const
{
    if (!geometry)
        throw Error("level set without geometry");
    if (functions.size() != values.size())
        throw ArityError("level set needs one value per function");
    if (functions.size() > geometry->dim())
        throw ArityError("more level-set functions than coordinates");
    for (const auto& x : points) {
        if (x.size() != geometry->dim())
            throw Error("witness point has the wrong dimension");
        for (std::size_t i = 0; i < functions.size(); ++i) {
            double v = evaluate(functions[i], x, geometry->chart());
            if (!(std::fabs(v - values[i]) <= 1e-9))
                throw Error("witness point is not on the level set (function " + std::to_string(i + 1) + ")");
        }
    }
}

namespace {

// Residual and Jacobian of f - alpha at x; false on a domain error.
bool residual_and_jacobian(const LevelSet& m, const std::vector<std::vector<Expr>>& grads, const std::vector<double>& x,
                           Eigen::VectorXd& r, Eigen::MatrixXd& j)
{
    const std::size_t k = m.functions.size(), d = x.size();
    r.resize(static_cast<Eigen::Index>(k));
    j.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d));
    try {
        for (std::size_t i = 0; i < k; ++i) {
            r(static_cast<Eigen::Index>(i)) = evaluate(m.functions[i], x) - m.values[i];
            for (std::size_t c = 0; c < d; ++c)
                j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = evaluate(grads[i][c], x);
        }
    } catch (const DomainError&) {
        return false;
    }
    return r.allFinite() && j.allFinite();
}

std::vector<std::vector<Expr>> gradients(const LevelSet& m)
{
    const std::size_t d = m.geometry->dim();
    std::vector<std::vector<Expr>> g;
    for (const auto& f : m.functions) {
        std::vector<Expr> row;
        for (std::size_t c = 0; c < d; ++c)
            row.push_back(differentiate(f, c));
        g.push_back(std::move(row));
    }
    return g;
}

}  // namespace

std::vector<std::vector<double>> find_level_set_points(const LevelSet& m, std::uint64_t seed, std::size_t count)
{
    const std::size_t d = m.geometry->dim();
    auto grads = gradients(m);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<std::vector<double>> found;
    for (int s = 0; s < 50 && found.size() < count; ++s) {
        std::vector<double> x(d);
        for (auto& xi : x)
            xi = unif(rng);
        Eigen::VectorXd r;
        Eigen::MatrixXd j;
        if (!residual_and_jacobian(m, grads, x, r, j))
            continue;
        bool converged = r.size() == 0 || r.lpNorm<Eigen::Infinity>() <= 1e-11;
        for (int it = 0; it < 100 && !converged; ++it) {
            Eigen::VectorXd step = j.completeOrthogonalDecomposition().solve(-r);
            double norm0 = r.norm();
            double lambda = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h) {
                std::vector<double> y(d);
                for (std::size_t c = 0; c < d; ++c)
                    y[c] = x[c] + lambda * step(static_cast<Eigen::Index>(c));
                Eigen::VectorXd r2;
                Eigen::MatrixXd j2;
                if (residual_and_jacobian(m, grads, y, r2, j2) && r2.norm() < norm0) {
                    x = std::move(y);
                    r = std::move(r2);
                    j = std::move(j2);
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!improved)
                break;
            converged = r.lpNorm<Eigen::Infinity>() <= 1e-11;
        }
        if (!converged)
            continue;
        bool distinct = true;
        for (const auto& p : found) {
            double dist = 0;
            for (std::size_t c = 0; c < d; ++c)
                dist = std::max(dist, std::fabs(p[c] - x[c]));
            if (dist < 1e-6)
                distinct = false;
        }
        if (distinct)
            found.push_back(std::move(x));
    }
    if (found.empty())
        throw NoPointFound("no point of the level set found from 50 Newton seeds");
    return found;
}

namespace {

std::optional<std::vector<Rational>> ideal_coefficients(const Expr& target, const LevelSet& m)
{
    const std::size_t k = m.functions.size();
    const std::size_t d = m.geometry->dim();
    std::mt19937_64 rng(0x7a11);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int attempt = 0; attempt < 200 && rows.size() < k + 10; ++attempt) {
        std::vector<double> x(d);
        for (auto& xi : x)
            xi = unif(rng);
        try {
            std::vector<double> row;
            for (std::size_t j = 0; j < k; ++j)
                row.push_back(evaluate(m.functions[j], x) - m.values[j]);
            double b = evaluate(target, x);
            if (!std::isfinite(b))
                continue;
            rows.push_back(std::move(row));
            rhs.push_back(b);
        } catch (const DomainError&) {
        }
    }
    if (rows.size() < k + 1)
        return std::nullopt;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < k; ++j)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = rows[r][j];
        b(static_cast<Eigen::Index>(r)) = rhs[r];
    }
    Eigen::VectorXd lambda = a.completeOrthogonalDecomposition().solve(b);
    std::vector<Rational> out;
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
        if (std::fabs(lambda(j)) < 1e-12) {
            out.emplace_back(0);
            continue;
        }
        auto q = rationalize(lambda(j));
        if (!q)
            return std::nullopt;
        out.push_back(*q);
    }
    // exact check: target - sum lambda_j f_j is the constant -sum lambda_j alpha_j
    std::vector<Expr> terms{target};
    double shift = 0;
    for (std::size_t j = 0; j < k; ++j) {
        terms.push_back(-(Expr(out[j]) * m.functions[j]));
        shift += to_double(out[j]) * m.values[j];
    }
    auto c = as_constant(Expr::sum(std::move(terms)));
    if (!c)
        return std::nullopt;
    if (std::fabs(to_double(*c) + shift) > 1e-12 * std::max(1.0, std::fabs(shift)))
        return std::nullopt;
    return out;
}

}  // namespace

Answer tangent_to_level_set(const VectorField& u, const LevelSet& m, std::vector<TangencyDetail>* detail)
{
    Answer total = Answer::Yes;
    for (std::size_t i = 0; i < m.functions.size(); ++i) {
        Expr uf = u.apply(m.functions[i]);
        Answer a;
        std::string tier;
        if (is_identically_zero(uf) == ZeroTest::Zero || ideal_coefficients(uf, m)) {
            a = Answer::Yes;
            tier = "ideal";
        } else if (auto c = as_constant(uf)) {
            a = Answer::No;
            tier = "constant";
        } else {
            if (m.points.empty())
                throw NoSamplePoints("tangency of a field to the level set needs witness points");
            a = Answer::Yes;
            tier = "sampled";
            for (const auto& x : m.points) {
                double v;
                try {
                    v = evaluate(uf, x);
                } catch (const DomainError&) {
                    a = combine(a, Answer::Unknown);
                    continue;
                }
                if (!(std::fabs(v) <= 1e-8))
                    a = Answer::No;
            }
        }
        if (detail)
            detail->push_back({tier, i});
        total = combine(total, a);
    }
    return total;
}

RankReport functional_independence_rank(const LevelSet& m, std::uint64_t seed)
{
    RankReport out;
    out.points = m.points.empty() ? find_level_set_points(m, seed) : m.points;
    auto grads = gradients(m);
    const std::size_t k = m.functions.size();
    out.rank = k;
    for (const auto& x : out.points) {
        Eigen::VectorXd r;
        Eigen::MatrixXd j;
        if (!residual_and_jacobian(m, grads, x, r, j))
            throw DomainError("Jacobian of the level-set functions at a witness point");
        for (Eigen::Index i = 0; i < j.rows(); ++i) {
            double n = j.row(i).norm();
            if (n > 0)
                j.row(i) /= n;
        }
        std::size_t rank = 0;
        if (k > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
            for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) > 1e-8)
                    ++rank;
        }
        out.ranks.push_back(rank);
        out.rank = std::min(out.rank, rank);
    }
    out.verdict = out.rank == k ? Answer::Yes : Answer::No;
    if (out.verdict == Answer::Yes)
        out.level_set_dim = m.geometry->dim() - k;
    return out;
}

}  // namespace liequad
