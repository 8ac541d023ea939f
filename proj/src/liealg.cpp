#include "liequad/liealg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace liequad {

void StructureConstants::set(std::size_t i, std::size_t j, std::size_t k, const Rational& v)
{
    at(i, j, k) = v;
    at(j, i, k) = -v;
}

bool StructureConstants::is_abelian() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool StructureConstants::is_antisymmetric() const
{
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j)
            for (std::size_t k = 0; k < m_; ++k)
                if ((*this)(i, j, k) != -(*this)(j, i, k))
                    return false;
    return true;
}

bool StructureConstants::satisfies_jacobi() const
{
    const auto& c = *this;
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j)
            for (std::size_t k = 0; k < m_; ++k)
                for (std::size_t l = 0; l < m_; ++l) {
                    Rational s = 0;
                    for (std::size_t n = 0; n < m_; ++n)
                        s += c(i, j, n) * c(n, k, l) + c(j, k, n) * c(n, i, l) + c(k, i, n) * c(n, j, l);
                    if (s != 0)
                        return false;
                }
    return true;
}

std::vector<Rational> StructureConstants::bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const
{
    std::vector<Rational> out(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < m_; ++j) {
            if (y[j] == 0)
                continue;
            Rational xy = x[i] * y[j];
            for (std::size_t k = 0; k < m_; ++k)
                if ((*this)(i, j, k) != 0)
                    out[k] += xy * (*this)(i, j, k);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t sample_dim(const std::vector<AlgebraElement>& elems)
{
    std::size_t d = 0;
    for (const auto& e : elems)
        for (const auto& c : e) {
            auto v = free_variables(c);
            if (!v.empty())
                d = std::max(d, *v.rbegin() + 1);
        }
    return d;
}

// Evaluates every element at x; false on a domain error.
bool eval_all(const std::vector<const AlgebraElement*>& elems, const std::vector<double>& x, std::vector<std::vector<double>>& out)
{
    out.clear();
    try {
        for (const auto* e : elems) {
            std::vector<double> v;
            for (const auto& c : *e) {
                double y = evaluate(c, x);
                if (!std::isfinite(y))
                    return false;
                v.push_back(y);
            }
            out.push_back(std::move(v));
        }
    } catch (const DomainError&) {
        return false;
    }
    return true;
}

}  // namespace

StructureConstants structure_constants(const std::vector<AlgebraElement>& basis, const BracketFn& bracket, std::uint64_t seed)
{
    const std::size_t m = basis.size();
    StructureConstants sc(m);
    if (m == 0)
        return sc;
    const std::size_t comps = basis.front().size();
    for (const auto& b : basis)
        if (b.size() != comps)
            throw Error("algebra elements have different component counts");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<AlgebraElement> brackets;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            pairs.emplace_back(i, j);
            brackets.push_back(bracket(basis[i], basis[j]));
            if (brackets.back().size() != comps)
                throw Error("bracket returned the wrong number of components");
        }

    std::vector<AlgebraElement> all = basis;
    all.insert(all.end(), brackets.begin(), brackets.end());
    const std::size_t dim = sample_dim(all);
    std::vector<const AlgebraElement*> ptrs;
    for (const auto& e : all)
        ptrs.push_back(&e);

    std::mt19937_64 rng(seed ^ 0x51a7c0de5eedULL);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const std::size_t wanted = m + 8;
    std::vector<std::vector<std::vector<double>>> samples;  // [point][element][component]
    for (int attempt = 0; attempt < 400 && samples.size() < wanted; ++attempt) {
        std::vector<double> x(dim);
        for (auto& xi : x)
            xi = unif(rng);
        std::vector<std::vector<double>> v;
        if (eval_all(ptrs, x, v))
            samples.push_back(std::move(v));
    }
    if (samples.size() < m + 5)
        throw Error("could not sample the algebra elements at enough points");

    const auto rows = static_cast<Eigen::Index>(samples.size() * comps);
    Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(m));
    for (std::size_t p = 0; p < samples.size(); ++p)
        for (std::size_t l = 0; l < comps; ++l)
            for (std::size_t b = 0; b < m; ++b)
                a(static_cast<Eigen::Index>(p * comps + l), static_cast<Eigen::Index>(b)) = samples[p][b][l];
    {
        Eigen::MatrixXd an = a;
        for (Eigen::Index c = 0; c < an.cols(); ++c) {
            double n = an.col(c).norm();
            if (n == 0)
                throw LinearlyDependentBasisError("basis element " + std::to_string(c + 1) + " vanishes");
            an.col(c) /= n;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(an);
        if (svd.singularValues().minCoeff() <= 1e-8)
            throw LinearlyDependentBasisError("basis elements are linearly dependent");
    }
    auto solver = a.completeOrthogonalDecomposition();

    for (std::size_t q = 0; q < pairs.size(); ++q) {
        const auto [i, j] = pairs[q];
        Eigen::VectorXd y(rows);
        for (std::size_t p = 0; p < samples.size(); ++p)
            for (std::size_t l = 0; l < comps; ++l)
                y(static_cast<Eigen::Index>(p * comps + l)) = samples[p][m + q][l];
        Eigen::VectorXd c = solver.solve(y);
        double resid = (a * c - y).lpNorm<Eigen::Infinity>();
        if (resid > 1e-7 * (1.0 + y.lpNorm<Eigen::Infinity>()))
            throw NotClosedError("bracket of elements " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " is not a constant combination of the basis",
                                 i, j);
        std::vector<Rational> cr(m);
        for (std::size_t k = 0; k < m; ++k) {
            double v = c(static_cast<Eigen::Index>(k));
            if (std::fabs(v) < 1e-10)
                continue;
            auto r = rationalize(v);
            if (!r)
                throw NotClosedError("structure constant c^" + std::to_string(k + 1) + "_" + std::to_string(i + 1) +
                                         std::to_string(j + 1) + " is not rational",
                                     i, j);
            cr[k] = *r;
        }
        // verify the residual
        ZeroTest z = ZeroTest::Zero;
        AlgebraElement residual;
        for (std::size_t l = 0; l < comps; ++l) {
            std::vector<Expr> terms{brackets[q][l]};
            for (std::size_t k = 0; k < m; ++k)
                if (cr[k] != 0)
                    terms.push_back(-(Expr(cr[k]) * basis[k][l]));
            residual.push_back(Expr::sum(std::move(terms)));
            z = combine(z, is_identically_zero(residual.back()));
        }
        if (z == ZeroTest::NonZero)
            throw NotClosedError("closure residual of elements " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " is nonzero",
                                 i, j);
        if (z == ZeroTest::Unknown) {
            std::mt19937_64 rng2(seed + 0x1234 + q);
            int good = 0;
            for (int attempt = 0; attempt < 200 && good < 25; ++attempt) {
                std::vector<double> x(dim);
                for (auto& xi : x)
                    xi = unif(rng2);
                try {
                    double worst = 0, scale = 1;
                    for (std::size_t l = 0; l < comps; ++l) {
                        worst = std::max(worst, std::fabs(evaluate(residual[l], x)));
                        scale = std::max(scale, std::fabs(evaluate(brackets[q][l], x)));
                    }
                    ++good;
                    if (!(worst <= 1e-9 * scale))
                        throw NotClosedError("closure residual of elements " + std::to_string(i + 1) + " and " +
                                                 std::to_string(j + 1) + " is numerically nonzero",
                                             i, j);
                } catch (const DomainError&) {
                }
            }
            if (good < 25)
                throw NotClosedError("closure residual could not be sampled", i, j);
            sc.numerically_verified = true;
        }
        for (std::size_t k = 0; k < m; ++k)
            if (cr[k] != 0)
                sc.set(i, j, k, cr[k]);
    }
    return sc;
}

// ---------------------------------------------------------------------------
// exact linear algebra

Subspace span_of(const std::vector<std::vector<Rational>>& vectors, std::size_t dim)
{
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : vectors)
        if (std::any_of(v.begin(), v.end(), [](const Rational& r) { return r != 0; }))
            rows.push_back(v);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[rank], rows[piv]);
        Rational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank])
            x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0)
                continue;
            Rational f = rows[r][col];
            for (std::size_t c = 0; c < dim; ++c)
                rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

bool in_span(const Subspace& s, const std::vector<Rational>& v)
{
    std::vector<Rational> r = v;
    for (const auto& row : s) {
        std::size_t lead = 0;
        while (lead < row.size() && row[lead] == 0)
            ++lead;
        if (lead == row.size() || r[lead] == 0)
            continue;
        Rational f = r[lead];
        for (std::size_t c = 0; c < r.size(); ++c)
            r[c] -= f * row[c];
    }
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
}

Subspace bracket_span(const StructureConstants& c, const Subspace& a, const Subspace& b)
{
    std::vector<std::vector<Rational>> vs;
    for (const auto& x : a)
        for (const auto& y : b)
            vs.push_back(c.bracket(x, y));
    return span_of(vs, c.dim());
}

namespace {

Subspace whole(std::size_t m)
{
    Subspace s;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> e(m);
        e[i] = 1;
        s.push_back(std::move(e));
    }
    return s;
}

void flag_rec(const StructureConstants& c, const Subspace& v, SolvableFlag& out)
{
    if (v.empty()) {
        out.subspaces.push_back({});
        return;
    }
    Subspace d = bracket_span(c, v, v);
    if (d.size() == v.size())
        throw NotSolvableError("the algebra is not solvable: [L,L] = L for a subalgebra of dimension " +
                               std::to_string(v.size()));
    std::size_t idx = v.size();
    for (std::size_t i = v.size(); i-- > 0;)
        if (!in_span(d, v[i])) {
            idx = i;
            break;
        }
    std::vector<std::vector<Rational>> gens(d.begin(), d.end());
    for (std::size_t j = 0; j < v.size() && gens.size() < v.size(); ++j) {
        if (j == idx)
            continue;
        Subspace cur = span_of(gens, c.dim());
        if (cur.size() == v.size() - 1)
            break;
        if (in_span(cur, v[j]))
            continue;
        auto trial = gens;
        trial.push_back(v[j]);
        if (in_span(span_of(trial, c.dim()), v[idx]))
            continue;
        gens = std::move(trial);
    }
    Subspace h = span_of(gens, c.dim());
    flag_rec(c, h, out);
    out.subspaces.push_back(v);
    out.adapted.push_back(v[idx]);
}

bool contained(const Subspace& a, const Subspace& b)
{
    for (const auto& x : a)
        if (!in_span(b, x))
            return false;
    return true;
}

}  // namespace

DerivedSeries derived_series(const StructureConstants& c)
{
    DerivedSeries s;
    Subspace cur = whole(c.dim());
    s.terms.push_back(cur);
    s.dims.push_back(cur.size());
    while (!cur.empty()) {
        Subspace next = bracket_span(c, cur, cur);
        if (next.size() == cur.size())
            return s;
        cur = std::move(next);
        s.terms.push_back(cur);
        s.dims.push_back(cur.size());
    }
    s.solvable = true;
    return s;
}

bool is_solvable(const StructureConstants& c)
{
    return derived_series(c).solvable;
}

SolvableFlag solvable_flag(const StructureConstants& c)
{
    SolvableFlag f;
    flag_rec(c, whole(c.dim()), f);
    return f;
}

bool verify_flag(const StructureConstants& c, const SolvableFlag& flag)
{
    if (flag.subspaces.size() != c.dim() + 1 || flag.adapted.size() != c.dim())
        return false;
    for (std::size_t i = 0; i < flag.subspaces.size(); ++i) {
        if (span_of(flag.subspaces[i], c.dim()).size() != i)
            return false;
        if (i == 0)
            continue;
        const Subspace& lo = flag.subspaces[i - 1];
        const Subspace& hi = flag.subspaces[i];
        if (!contained(lo, hi))
            return false;
        if (!contained(bracket_span(c, hi, lo), lo))
            return false;
        if (!in_span(hi, flag.adapted[i - 1]) || in_span(lo, flag.adapted[i - 1]))
            return false;
    }
    return true;
}

}  // namespace liequad
