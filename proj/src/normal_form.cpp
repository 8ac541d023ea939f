#include "normal_form.hpp"

#include "liequad/errors.hpp"

#include <cmath>
#include <random>

namespace liequad::nf {

namespace {

const Rational kHalf = make_rational(1, 2);

Rational rfloor(const Rational& r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

}  // namespace

int compare(const Atom& a, const Atom& b)
{
    if (a.kind != b.kind)
        return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
    case Atom::Kind::Var:
        return a.var < b.var ? -1 : (a.var > b.var ? 1 : 0);
    case Atom::Kind::Fn:
        if (a.func != b.func)
            return a.func < b.func ? -1 : 1;
        [[fallthrough]];
    case Atom::Kind::Pow:
        if (a.data == b.data)
            return 0;
        return liequad::compare(a.data->expr, b.data->expr);
    }
    return 0;
}

int lex(const Monomial& a, const Monomial& b)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = compare(a[i].atom, b[j].atom);
        if (c == 0) {
            int e = cmp(a[i].exp, b[j].exp);
            if (e != 0)
                return e > 0 ? 1 : -1;
            ++i;
            ++j;
        } else if (c < 0) {
            return sgn(a[i].exp) > 0 ? 1 : -1;
        } else {
            return sgn(b[j].exp) > 0 ? -1 : 1;
        }
    }
    if (i < a.size())
        return sgn(a[i].exp) > 0 ? 1 : -1;
    if (j < b.size())
        return sgn(b[j].exp) > 0 ? -1 : 1;
    return 0;
}

bool is_one(const Poly& p)
{
    return p.size() == 1 && p.begin()->first.empty() && p.begin()->second == 1;
}

namespace {

Poly constant_poly(const Rational& c)
{
    Poly p;
    if (c != 0)
        p.emplace(Monomial{}, c);
    return p;
}

RF constant_rf(const Rational& c)
{
    return RF{constant_poly(c), constant_poly(1)};
}

void add_term(Poly& p, const Monomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = p.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            p.erase(it);
    }
}

void add_into(Poly& p, const Poly& q, const Rational& scale = 1)
{
    for (const auto& [m, c] : q)
        add_term(p, m, scale == 1 ? c : Rational(c * scale));
}

Poly scaled(const Poly& p, const Rational& s)
{
    Poly out;
    if (s == 0)
        return out;
    for (const auto& [m, c] : p)
        out.emplace_hint(out.end(), m, c * s);
    return out;
}

Monomial merge(const Monomial& a, const Monomial& b)
{
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = compare(a[i].atom, b[j].atom);
        if (c == 0) {
            Rational e = a[i].exp + b[j].exp;
            if (e != 0)
                out.push_back({a[i].atom, e});
            ++i;
            ++j;
        } else if (c < 0) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i)
        out.push_back(a[i]);
    for (; j < b.size(); ++j)
        out.push_back(b[j]);
    return out;
}

Monomial inverse(const Monomial& m)
{
    Monomial out = m;
    for (auto& f : out)
        f.exp = -f.exp;
    return out;
}

bool needs_fix(const Monomial& m)
{
    int exps = 0;
    for (const auto& f : m) {
        if (f.atom.kind == Atom::Kind::Fn) {
            if (f.atom.func == Func::Exp) {
                if (++exps > 1 || f.exp != 1)
                    return true;
            } else if (f.atom.func == Func::Cos && f.exp >= 2) {
                return true;
            }
        } else if (f.atom.kind == Atom::Kind::Pow && f.exp >= 1) {
            return true;
        }
    }
    return false;
}

Poly fix_monomial(const Monomial& m, const Rational& c);

Poly mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m = merge(ma, mb);
            Rational c = ca * cb;
            if (needs_fix(m))
                add_into(out, fix_monomial(m, c));
            else
                add_term(out, m, c);
        }
    }
    return out;
}

Poly mul_monomial(const Poly& a, const Monomial& m, const Rational& c)
{
    Poly b;
    b.emplace(m, c);
    return mul(a, b);
}

Poly pow(const Poly& p, unsigned long k)
{
    Poly result = constant_poly(1);
    Poly base = p;
    while (k > 0) {
        if (k & 1UL)
            result = mul(result, base);
        k >>= 1;
        if (k > 0)
            base = mul(base, base);
    }
    return result;
}

Poly sub(const Poly& a, const Poly& b)
{
    Poly out = a;
    add_into(out, b, -1);
    return out;
}

std::shared_ptr<const AtomData> make_data(const RF& rf)
{
    return std::make_shared<const AtomData>(AtomData{to_expr(rf), rf});
}

Poly atom_poly(Atom atom, const Rational& exp)
{
    Poly p;
    Monomial m{{std::move(atom), exp}};
    if (needs_fix(m))
        return fix_monomial(m, 1);
    p.emplace(std::move(m), Rational(1));
    return p;
}

RF normalize(Poly num, Poly den);
RF make_pow(const RF& base, const Rational& r);
Poly make_exp(const RF& arg);

RF rf_mul(const RF& a, const RF& b)
{
    if (is_one(a.den) && is_one(b.den))
        return RF{mul(a.num, b.num), constant_poly(1)};
    return normalize(mul(a.num, b.num), mul(a.den, b.den));
}

RF rf_add(const RF& a, const RF& b)
{
    if (a.den == b.den) {
        Poly n = a.num;
        add_into(n, b.num);
        if (is_one(a.den))
            return RF{std::move(n), a.den};
        return normalize(std::move(n), a.den);
    }
    Poly n = mul(a.num, b.den);
    add_into(n, mul(b.num, a.den));
    return normalize(std::move(n), mul(a.den, b.den));
}

RF rf_pow_int(const RF& a, long k)
{
    if (k == 0)
        return constant_rf(1);
    if (k > 0) {
        if (is_one(a.den))
            return RF{pow(a.num, static_cast<unsigned long>(k)), a.den};
        return normalize(pow(a.num, static_cast<unsigned long>(k)), pow(a.den, static_cast<unsigned long>(k)));
    }
    if (a.num.empty())
        throw DomainError("division by zero");
    const auto m = static_cast<unsigned long>(-k);
    return normalize(pow(a.den, m), pow(a.num, m));
}

// Exact multivariate division with lex leading terms; only nonnegative quotients.
std::optional<Poly> try_divide(const Poly& num, const Poly& den)
{
    const auto& [ld, cd] = *den.begin();
    Poly r = num;
    Poly q;
    for (int iter = 0; iter < 200; ++iter) {
        if (r.empty())
            return q;
        const auto& [lr, cr] = *r.begin();
        Monomial t = merge(lr, inverse(ld));
        for (const auto& f : t)
            if (f.exp < 0)
                return std::nullopt;
        // every atom of ld must occur in lr
        for (const auto& f : ld) {
            bool found = false;
            for (const auto& g : lr)
                if (g.atom == f.atom) {
                    found = true;
                    break;
                }
            if (!found)
                return std::nullopt;
        }
        Rational c = cr / cd;
        Poly step = mul_monomial(den, t, c);
        if (step.empty() || lex(step.begin()->first, lr) != 0)
            return std::nullopt;
        add_term(q, t, c);
        r = sub(r, step);
    }
    return std::nullopt;
}

RF normalize(Poly num, Poly den)
{
    if (den.empty())
        throw DomainError("division by zero");
    if (num.empty())
        return constant_rf(0);
    if (den.size() == 1) {
        const auto& [m, c] = *den.begin();
        return RF{mul_monomial(num, inverse(m), Rational(1 / c)), constant_poly(1)};
    }
    // content: per-atom minimum exponent over all denominator terms (absent = 0)
    {
        std::map<Atom, Rational, decltype([](const Atom& a, const Atom& b) { return compare(a, b) < 0; })> lo;
        for (const auto& [m, c] : den)
            for (const auto& f : m)
                lo.try_emplace(f.atom, Rational(0));
        for (auto& [atom, e] : lo) {
            bool first = true;
            for (const auto& [m, c] : den) {
                Rational x = 0;
                for (const auto& f : m)
                    if (f.atom == atom) {
                        x = f.exp;
                        break;
                    }
                if (first || x < e)
                    e = x;
                first = false;
            }
        }
        Monomial g;
        for (const auto& [atom, e] : lo)
            if (e != 0)
                g.push_back({atom, e});
        if (!g.empty()) {
            Monomial gi = inverse(g);
            den = mul_monomial(den, gi, 1);
            num = mul_monomial(num, gi, 1);
            if (den.size() == 1)
                return normalize(std::move(num), std::move(den));
        }
    }
    Rational lc = den.begin()->second;
    if (lc != 1) {
        Rational inv = 1 / lc;
        den = scaled(den, inv);
        num = scaled(num, inv);
    }
    if (num.size() == den.size()) {
        auto i = num.begin();
        auto j = den.begin();
        Rational ratio = i->second / j->second;
        bool proportional = true;
        for (; i != num.end(); ++i, ++j) {
            if (!(i->first == j->first) || i->second != ratio * j->second) {
                proportional = false;
                break;
            }
        }
        if (proportional)
            return constant_rf(ratio);
    }
    if (auto q = try_divide(num, den))
        return RF{std::move(*q), constant_poly(1)};
    return RF{std::move(num), std::move(den)};
}

Atom fn_atom(Func f, std::shared_ptr<const AtomData> data)
{
    Atom a;
    a.kind = Atom::Kind::Fn;
    a.func = f;
    a.data = std::move(data);
    return a;
}

Poly fix_monomial(const Monomial& m, const Rational& c)
{
    Monomial rest;
    std::vector<Poly> extras;
    std::vector<const Factor*> exps;
    for (const auto& f : m) {
        if (f.atom.kind == Atom::Kind::Fn && f.atom.func == Func::Exp) {
            exps.push_back(&f);
        } else if (f.atom.kind == Atom::Kind::Fn && f.atom.func == Func::Cos && f.exp >= 2) {
            // cos^2 = 1 - sin^2
            Rational k = rfloor(Rational(f.exp / 2));
            Rational left = f.exp - 2 * k;
            if (left != 0)
                rest.push_back({f.atom, left});
            Poly one_minus_sin2 = constant_poly(1);
            add_term(one_minus_sin2, Monomial{{fn_atom(Func::Sin, f.atom.data), Rational(2)}}, -1);
            extras.push_back(pow(one_minus_sin2, k.get_num().get_ui()));
        } else if (f.atom.kind == Atom::Kind::Pow && f.exp >= 1) {
            Rational k = rfloor(f.exp);
            Rational left = f.exp - k;
            if (left != 0)
                rest.push_back({f.atom, left});
            extras.push_back(pow(f.atom.data->rf.num, k.get_num().get_ui()));
        } else {
            rest.push_back(f);
        }
    }
    Poly out;
    out.emplace(std::move(rest), c);
    for (const auto& e : extras)
        out = mul(out, e);
    if (!exps.empty()) {
        RF arg = constant_rf(0);
        for (const Factor* f : exps) {
            RF part = f->atom.data->rf;
            part.num = scaled(part.num, f->exp);
            arg = rf_add(arg, part);
        }
        out = mul(out, make_exp(arg));
    }
    return out;
}

Poly make_exp(const RF& arg)
{
    if (arg.num.empty())
        return constant_poly(1);
    RF rest = arg;
    Poly factor = constant_poly(1);
    if (is_one(arg.den)) {
        // exp(k ln B) = B^k for positive integer k
        for (const auto& [m, c] : arg.num) {
            if (m.size() == 1 && m[0].exp == 1 && m[0].atom.kind == Atom::Kind::Fn &&
                m[0].atom.func == Func::Ln && c > 0 && is_integer(c) && is_one(m[0].atom.data->rf.den)) {
                factor = mul(factor, pow(m[0].atom.data->rf.num, c.get_num().get_ui()));
                add_term(rest.num, m, -c);
            }
        }
        if (rest.num.empty())
            return factor;
    }
    Monomial m{{fn_atom(Func::Exp, make_data(rest)), Rational(1)}};
    return mul_monomial(factor, m, 1);
}

RF make_fn(Func f, const RF& arg)
{
    switch (f) {
    case Func::Sqrt:
        return make_pow(arg, kHalf);
    case Func::Exp:
        return RF{make_exp(arg), constant_poly(1)};
    case Func::Ln: {
        if (arg.num.size() == 1 && is_one(arg.den)) {
            const auto& [m, c] = *arg.num.begin();
            if (m.empty() && c == 1)
                return constant_rf(0);
            if (c == 1 && m.size() == 1 && m[0].exp == 1 && m[0].atom.kind == Atom::Kind::Fn &&
                m[0].atom.func == Func::Exp)
                return m[0].atom.data->rf;
        }
        return RF{atom_poly(fn_atom(Func::Ln, make_data(arg)), 1), constant_poly(1)};
    }
    case Func::Sin:
    case Func::Cos:
    case Func::Atan: {
        if (arg.num.empty())
            return constant_rf(f == Func::Cos ? 1 : 0);
        RF a = arg;
        Rational sign = 1;
        if (a.num.begin()->second < 0) {
            a.num = scaled(a.num, -1);
            if (f != Func::Cos)
                sign = -1;
        }
        return RF{scaled(atom_poly(fn_atom(f, make_data(a)), 1), sign), constant_poly(1)};
    }
    }
    throw std::logic_error("unhandled function");
}

Atom pow_atom(const Poly& base)
{
    Atom a;
    a.kind = Atom::Kind::Pow;
    a.data = make_data(RF{base, constant_poly(1)});
    return a;
}

RF make_pow(const RF& base, const Rational& r)
{
    if (is_integer(r))
        return rf_pow_int(base, r.get_num().get_si());
    if (base.num.empty()) {
        if (r < 0)
            throw DomainError("division by zero");
        return constant_rf(0);
    }
    if (!is_one(base.den))
        return rf_mul(make_pow(RF{base.num, constant_poly(1)}, r), make_pow(RF{base.den, constant_poly(1)}, Rational(-r)));
    const Poly& p = base.num;
    if (p.size() == 1) {
        const auto& [m, c] = *p.begin();
        bool distributable = c > 0;
        for (const auto& f : m) {
            Rational prod = f.exp * r;
            if (is_integer(f.exp) && f.exp.get_num() % 2 == 0 && is_integer(prod) && prod.get_num() % 2 != 0)
                distributable = false;
        }
        if (distributable) {
            // c^r: integer part times an exact root or a Pow atom with exponent in (0,1)
            Rational k = rfloor(r);
            Rational frac = r - k;
            RF out = rf_pow_int(constant_rf(c), k.get_num().get_si());
            mpz_class num_pow, den_pow;
            mpz_pow_ui(num_pow.get_mpz_t(), c.get_num_mpz_t(), frac.get_num().get_ui());
            mpz_pow_ui(den_pow.get_mpz_t(), c.get_den_mpz_t(), frac.get_num().get_ui());
            Rational cf(num_pow, den_pow);
            cf.canonicalize();
            if (auto root = exact_root(cf, frac.get_den().get_si()))
                out.num = scaled(out.num, *root);
            else
                out = rf_mul(out, RF{atom_poly(pow_atom(constant_poly(c)), frac), constant_poly(1)});
            Monomial scaled_m = m;
            for (auto& f : scaled_m)
                f.exp *= r;
            Poly mp;
            if (needs_fix(scaled_m))
                mp = fix_monomial(scaled_m, 1);
            else
                mp.emplace(std::move(scaled_m), Rational(1));
            return rf_mul(out, RF{std::move(mp), constant_poly(1)});
        }
    }
    if (r > 0) {
        Rational k = rfloor(r);
        Rational frac = r - k;
        Poly out = atom_poly(pow_atom(p), frac);
        if (k > 0)
            out = mul(out, pow(p, k.get_num().get_ui()));
        return RF{std::move(out), constant_poly(1)};
    }
    return RF{atom_poly(pow_atom(p), r), constant_poly(1)};
}

Expr atom_expr(const Atom& a)
{
    switch (a.kind) {
    case Atom::Kind::Var: return Expr::variable(a.var);
    case Atom::Kind::Fn: return Expr::function(a.func, a.data->expr);
    case Atom::Kind::Pow: return a.data->expr;
    }
    return Expr();
}

}  // namespace

Expr to_expr(const Poly& p)
{
    std::vector<Expr> terms;
    terms.reserve(p.size());
    for (const auto& [m, c] : p) {
        std::vector<Expr> factors;
        factors.reserve(m.size() + 1);
        factors.emplace_back(c);
        for (const auto& f : m)
            factors.push_back(Expr::power(atom_expr(f.atom), f.exp));
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

Expr to_expr(const RF& r)
{
    if (is_one(r.den))
        return to_expr(r.num);
    return Expr::product({to_expr(r.num), Expr::power(to_expr(r.den), -1)});
}

RF normal_form(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return constant_rf(e.value());
    case Expr::Kind::Variable: {
        Atom a;
        a.kind = Atom::Kind::Var;
        a.var = e.variable_id();
        return RF{atom_poly(a, 1), constant_poly(1)};
    }
    case Expr::Kind::Sum: {
        RF acc = constant_rf(0);
        for (const auto& t : e.operands())
            acc = rf_add(acc, normal_form(t));
        return acc;
    }
    case Expr::Kind::Product: {
        Poly num = constant_poly(1);
        Poly den = constant_poly(1);
        for (const auto& f : e.operands()) {
            RF r = normal_form(f);
            if (r.num.empty())
                return constant_rf(0);
            num = mul(num, r.num);
            if (!is_one(r.den))
                den = mul(den, r.den);
        }
        if (is_one(den))
            return RF{std::move(num), std::move(den)};
        return normalize(std::move(num), std::move(den));
    }
    case Expr::Kind::Power:
        return make_pow(normal_form(e.base()), e.exponent());
    case Expr::Kind::Function:
        return make_fn(e.func(), normal_form(e.argument()));
    }
    throw std::logic_error("unhandled expression kind");
}

}  // namespace liequad::nf

namespace liequad {

Expr simplify(const Expr& e)
{
    return nf::to_expr(nf::normal_form(e));
}

std::optional<Rational> as_constant(const Expr& e)
{
    nf::RF r = nf::normal_form(e);
    if (!nf::is_one(r.den))
        return std::nullopt;
    if (r.num.empty())
        return Rational(0);
    if (r.num.size() == 1 && r.num.begin()->first.empty())
        return r.num.begin()->second;
    return std::nullopt;
}

bool is_rational_function(const Expr& e)
{
    nf::RF r = nf::normal_form(e);
    for (const nf::Poly* p : {&r.num, &r.den})
        for (const auto& [m, c] : *p)
            for (const auto& f : m)
                if (f.atom.kind != nf::Atom::Kind::Var || !is_integer(f.exp))
                    return false;
    return true;
}

ZeroTest is_identically_zero(const Expr& e)
{
    Expr probe = e;
    try {
        nf::RF r = nf::normal_form(e);
        if (r.num.empty())
            return ZeroTest::Zero;
        bool only_vars = true;
        for (const auto& [m, c] : r.num)
            for (const auto& f : m)
                if (f.atom.kind != nf::Atom::Kind::Var)
                    only_vars = false;
        if (only_vars)
            return ZeroTest::NonZero;
        probe = nf::to_expr(r.num);
    } catch (const DomainError&) {
        // nowhere-defined forms fall through to sampling
    }
    auto vars = free_variables(probe);
    const std::size_t dim = vars.empty() ? 0 : *vars.rbegin() + 1;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<double> x(dim);
    int good = 0;
    for (int attempt = 0; attempt < 200 && good < 25; ++attempt) {
        for (auto& xi : x)
            xi = unif(rng);
        double v;
        try {
            v = evaluate(probe, x);
        } catch (const DomainError&) {
            continue;
        }
        if (!std::isfinite(v))
            continue;
        ++good;
        if (std::fabs(v) > 1e-8)
            return ZeroTest::NonZero;
    }
    return ZeroTest::Unknown;
}

}  // namespace liequad
