#include "liequad/expr.hpp"

#include "liequad/errors.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace liequad {

// ---------------------------------------------------------------------------
// coordinates

CoordinateSystem::CoordinateSystem(std::vector<Coordinate> coordinates)
    : coordinates_(std::move(coordinates))
{
    for (std::size_t i = 0; i < coordinates_.size(); ++i) {
        if (coordinates_[i].name.empty())
            throw Error("empty coordinate name");
        for (std::size_t j = 0; j < i; ++j)
            if (coordinates_[i].name == coordinates_[j].name)
                throw Error("duplicate coordinate name '" + coordinates_[i].name + "'");
    }
}

CoordinateSystem CoordinateSystem::generic(const std::vector<std::string>& names)
{
    std::vector<Coordinate> coords;
    coords.reserve(names.size());
    for (const auto& n : names)
        coords.push_back({n, CoordRole::Generic});
    return CoordinateSystem(std::move(coords));
}

std::optional<std::size_t> CoordinateSystem::find(std::string_view name) const
{
    for (std::size_t i = 0; i < coordinates_.size(); ++i)
        if (coordinates_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t CoordinateSystem::index_of(std::string_view name) const
{
    auto i = find(name);
    if (!i)
        throw Error("no coordinate named '" + std::string(name) + "'");
    return *i;
}

std::string_view func_name(Func f)
{
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sqrt: return "sqrt";
    case Func::Atan: return "atan";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// nodes

struct Expr::Node {
    Kind kind = Kind::Constant;
    Rational value;  // constant value or power exponent
    std::size_t var = 0;
    Func func = Func::Sin;
    std::vector<Expr> children;
};

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(long c) : Expr(Rational(c)) {}

Expr::Expr(const Rational& c)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = c;
    node_ = std::move(n);
}

Expr Expr::constant(const Rational& c)
{
    return Expr(c);
}

Expr Expr::variable(std::size_t id)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->var = id;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms)
{
    std::vector<Expr> flat;
    Rational c = 0;
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& s : t.operands()) {
                if (s.is_constant())
                    c += s.value();
                else
                    flat.push_back(s);
            }
        } else if (t.is_constant()) {
            c += t.value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (c != 0)
        flat.emplace_back(c);
    if (flat.empty())
        return Expr(0L);
    if (flat.size() == 1)
        return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->children = std::move(flat);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors)
{
    std::vector<Expr> flat;
    Rational c = 1;
    for (auto& f : factors) {
        if (f.kind() == Kind::Product) {
            for (const auto& s : f.operands()) {
                if (s.is_constant())
                    c *= s.value();
                else
                    flat.push_back(s);
            }
        } else if (f.is_constant()) {
            c *= f.value();
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (c == 0)
        return Expr(0L);
    if (c != 1)
        flat.insert(flat.begin(), Expr(c));
    if (flat.empty())
        return Expr(1L);
    if (flat.size() == 1)
        return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->children = std::move(flat);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, const Rational& exponent)
{
    if (exponent == 0)
        return Expr(1L);
    if (exponent == 1)
        return base;
    if (base.is_constant() && is_integer(exponent) && (base.value() != 0 || exponent > 0)) {
        mpz_class num, den;
        const long e = std::labs(exponent.get_num().get_si());
        mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), static_cast<unsigned long>(e));
        Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
        r.canonicalize();
        return Expr(r);
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->value = exponent;
    n->children.push_back(std::move(base));
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::function(Func f, Expr argument)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Function;
    n->func = f;
    n->children.push_back(std::move(argument));
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_zero() const { return is_constant() && node_->value == 0; }

bool Expr::is_one() const { return is_constant() && node_->value == 1; }

const Rational& Expr::value() const
{
    if (node_->kind != Kind::Constant)
        throw std::logic_error("Expr::value on a non-constant");
    return node_->value;
}

std::size_t Expr::variable_id() const
{
    if (node_->kind != Kind::Variable)
        throw std::logic_error("Expr::variable_id on a non-variable");
    return node_->var;
}

const std::vector<Expr>& Expr::operands() const { return node_->children; }

const Expr& Expr::base() const
{
    if (node_->kind != Kind::Power)
        throw std::logic_error("Expr::base on a non-power");
    return node_->children.front();
}

const Rational& Expr::exponent() const
{
    if (node_->kind != Kind::Power)
        throw std::logic_error("Expr::exponent on a non-power");
    return node_->value;
}

Func Expr::func() const
{
    if (node_->kind != Kind::Function)
        throw std::logic_error("Expr::func on a non-function");
    return node_->func;
}

const Expr& Expr::argument() const
{
    if (node_->kind != Kind::Function)
        throw std::logic_error("Expr::argument on a non-function");
    return node_->children.front();
}

int compare(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_)
        return 0;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind)
        return x.kind < y.kind ? -1 : 1;
    switch (x.kind) {
    case Expr::Kind::Constant:
        return cmp(x.value, y.value) < 0 ? -1 : (cmp(x.value, y.value) > 0 ? 1 : 0);
    case Expr::Kind::Variable:
        return x.var < y.var ? -1 : (x.var > y.var ? 1 : 0);
    case Expr::Kind::Power: {
        int c = cmp(x.value, y.value);
        if (c != 0)
            return c < 0 ? -1 : 1;
        break;
    }
    case Expr::Kind::Function:
        if (x.func != y.func)
            return x.func < y.func ? -1 : 1;
        break;
    default:
        break;
    }
    const std::size_t n = std::min(x.children.size(), y.children.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(x.children[i], y.children[i]);
        if (c != 0)
            return c;
    }
    if (x.children.size() != y.children.size())
        return x.children.size() < y.children.size() ? -1 : 1;
    return 0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator-(const Expr& a) { return Expr::product({Expr(-1L), a}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }

Expr operator/(const Expr& a, const Expr& b)
{
    if (b.is_constant()) {
        if (b.value() == 0)
            throw DomainError("division by zero");
        return Expr::product({a, Expr(Rational(1 / b.value()))});
    }
    return Expr::product({a, Expr::power(b, -1)});
}

Expr pow(const Expr& base, const Rational& exponent) { return Expr::power(base, exponent); }

Expr apply(Func f, const Expr& argument) { return Expr::function(f, argument); }

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
public:
    Parser(std::string_view text, const CoordinateSystem& coords) : text_(text), coords_(coords) {}

    Expr parse_all()
    {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum()
    {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = lhs + parse_product();
            else if (accept('-'))
                lhs = lhs - parse_product();
            else
                return lhs;
        }
    }

    Expr parse_product()
    {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = lhs * parse_unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr rhs = parse_unary();
                if (rhs.is_constant() && rhs.value() == 0)
                    throw SyntaxError("division by the literal zero", at);
                lhs = lhs / rhs;
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary()
    {
        if (accept('-'))
            return -parse_unary();
        if (accept('+'))
            return parse_unary();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (accept('^')) {
            std::size_t at = pos_;
            Expr exponent = parse_unary();  // right-associative
            auto c = as_constant(exponent);
            if (!c)
                throw SyntaxError("exponent must be a rational constant", at);
            return pow(base, *c);
        }
        return base;
    }

    Expr parse_primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            if (!accept(')'))
                throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    Expr parse_number()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ((text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
                ++pos_;
            if (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
                while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
                    ++pos_;
            } else {
                pos_ = save;
            }
        }
        try {
            return Expr(parse_decimal(text_.substr(start, pos_ - start)));
        } catch (const std::invalid_argument& e) {
            throw SyntaxError(e.what(), start);
        }
    }

    Expr parse_identifier()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            static const std::pair<const char*, Func> table[] = {
                {"sin", Func::Sin}, {"cos", Func::Cos}, {"exp", Func::Exp},
                {"ln", Func::Ln}, {"sqrt", Func::Sqrt},
            };
            for (const auto& [fname, f] : table) {
                if (name == fname) {
                    ++pos_;
                    Expr arg = parse_sum();
                    if (!accept(')'))
                        throw SyntaxError("expected ')' after argument of " + name, pos_);
                    return apply(f, arg);
                }
            }
            throw UnknownIdentifierError(name, start);
        }
        auto id = coords_.find(name);
        if (!id)
            throw UnknownIdentifierError(name, start);
        return Expr::variable(*id);
    }

    std::string_view text_;
    const CoordinateSystem& coords_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const CoordinateSystem& coords)
{
    return Parser(text, coords).parse_all();
}

// ---------------------------------------------------------------------------
// calculus

namespace {

Expr derivative_raw(const Expr& e, std::size_t v)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return Expr(0L);
    case Expr::Kind::Variable:
        return Expr(e.variable_id() == v ? 1L : 0L);
    case Expr::Kind::Sum: {
        std::vector<Expr> terms;
        for (const auto& t : e.operands())
            if (depends_on(t, v))
                terms.push_back(derivative_raw(t, v));
        return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
        const auto& fs = e.operands();
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (!depends_on(fs[i], v))
                continue;
            std::vector<Expr> factors;
            for (std::size_t j = 0; j < fs.size(); ++j)
                factors.push_back(j == i ? derivative_raw(fs[j], v) : fs[j]);
            terms.push_back(Expr::product(std::move(factors)));
        }
        return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
        const Rational& r = e.exponent();
        return Expr::product({Expr(r), Expr::power(e.base(), Rational(r - 1)), derivative_raw(e.base(), v)});
    }
    case Expr::Kind::Function: {
        const Expr& a = e.argument();
        Expr da = derivative_raw(a, v);
        if (da.is_zero())
            return Expr(0L);
        switch (e.func()) {
        case Func::Sin: return apply(Func::Cos, a) * da;
        case Func::Cos: return -(apply(Func::Sin, a) * da);
        case Func::Exp: return e * da;
        case Func::Ln: return da * Expr::power(a, -1);
        case Func::Sqrt: return Expr::product({Expr(make_rational(1, 2)), Expr::power(a, make_rational(-1, 2)), da});
        case Func::Atan: return da * Expr::power(Expr(1L) + Expr::power(a, 2), -1);
        }
    }
    }
    return Expr(0L);
}

}  // namespace

Expr differentiate(const Expr& e, std::size_t var)
{
    if (!depends_on(e, var))
        return Expr(0L);
    return simplify(derivative_raw(e, var));
}

Expr substitute(const Expr& e, std::span<const Expr> replacements)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return e;
    case Expr::Kind::Variable:
        return e.variable_id() < replacements.size() ? replacements[e.variable_id()] : e;
    case Expr::Kind::Sum: {
        std::vector<Expr> out;
        for (const auto& t : e.operands())
            out.push_back(substitute(t, replacements));
        return Expr::sum(std::move(out));
    }
    case Expr::Kind::Product: {
        std::vector<Expr> out;
        for (const auto& t : e.operands())
            out.push_back(substitute(t, replacements));
        return Expr::product(std::move(out));
    }
    case Expr::Kind::Power:
        return Expr::power(substitute(e.base(), replacements), e.exponent());
    case Expr::Kind::Function:
        return apply(e.func(), substitute(e.argument(), replacements));
    }
    return e;
}

namespace {

void collect_variables(const Expr& e, std::set<std::size_t>& out)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return;
    case Expr::Kind::Variable:
        out.insert(e.variable_id());
        return;
    case Expr::Kind::Power:
        collect_variables(e.base(), out);
        return;
    case Expr::Kind::Function:
        collect_variables(e.argument(), out);
        return;
    default:
        for (const auto& c : e.operands())
            collect_variables(c, out);
    }
}

}  // namespace

std::set<std::size_t> free_variables(const Expr& e)
{
    std::set<std::size_t> out;
    collect_variables(e, out);
    return out;
}

bool depends_on(const Expr& e, std::size_t var)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return false;
    case Expr::Kind::Variable:
        return e.variable_id() == var;
    case Expr::Kind::Power:
        return depends_on(e.base(), var);
    case Expr::Kind::Function:
        return depends_on(e.argument(), var);
    default:
        for (const auto& c : e.operands())
            if (depends_on(c, var))
                return true;
        return false;
    }
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double eval_rec(const Expr& e, std::span<const double> x, const CoordinateSystem* names)
{
    auto fail = [&]() -> double {
        throw DomainError(names ? to_string(e, *names) : to_string(e));
    };
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return to_double(e.value());
    case Expr::Kind::Variable:
        if (e.variable_id() >= x.size())
            throw Error("evaluation point does not assign coordinate " + std::to_string(e.variable_id()));
        return x[e.variable_id()];
    case Expr::Kind::Sum: {
        double s = 0;
        for (const auto& t : e.operands())
            s += eval_rec(t, x, names);
        return s;
    }
    case Expr::Kind::Product: {
        double p = 1;
        for (const auto& t : e.operands())
            p *= eval_rec(t, x, names);
        return p;
    }
    case Expr::Kind::Power: {
        double b = eval_rec(e.base(), x, names);
        const Rational& r = e.exponent();
        if (is_integer(r)) {
            long k = r.get_num().get_si();
            if (k < 0 && b == 0.0)
                return fail();
            return std::pow(b, static_cast<double>(k));
        }
        if (b < 0.0 || (b == 0.0 && r < 0))
            return fail();
        if (r.get_den() == 2)
            return std::pow(std::sqrt(b), to_double(Rational(r * 2)));
        return std::pow(b, to_double(r));
    }
    case Expr::Kind::Function: {
        double a = eval_rec(e.argument(), x, names);
        switch (e.func()) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Atan: return std::atan(a);
        case Func::Ln:
            if (!(a > 0.0))
                return fail();
            return std::log(a);
        case Func::Sqrt:
            if (a < 0.0)
                return fail();
            return std::sqrt(a);
        }
    }
    }
    return 0.0;
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> point)
{
    return eval_rec(e, point, nullptr);
}

double evaluate(const Expr& e, std::span<const double> point, const CoordinateSystem& names)
{
    return eval_rec(e, point, &names);
}

// ---------------------------------------------------------------------------
// printing

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

struct Printer {
    const CoordinateSystem* names;

    std::string var(std::size_t id) const
    {
        if (names && id < names->dim())
            return (*names)[id].name;
        return "x" + std::to_string(id);
    }

    static bool negative_lead(const Expr& e)
    {
        if (e.is_constant())
            return e.value() < 0;
        if (e.kind() == Expr::Kind::Product)
            return e.operands().front().is_constant() && e.operands().front().value() < 0;
        return false;
    }

    // precedence of the printed form
    static int prec(const Expr& e)
    {
        switch (e.kind()) {
        case Expr::Kind::Constant:
            if (e.value() < 0)
                return kUnary;
            return is_integer(e.value()) ? kAtom : kProduct;
        case Expr::Kind::Variable:
        case Expr::Kind::Function:
            return kAtom;
        case Expr::Kind::Sum:
            return kSum;
        case Expr::Kind::Product:
            return negative_lead(e) ? kUnary : kProduct;
        case Expr::Kind::Power:
            return e.exponent() < 0 ? kProduct : kPower;
        }
        return kAtom;
    }

    std::string wrap(const Expr& e, int min_prec) const
    {
        std::string s = print(e);
        return prec(e) < min_prec ? "(" + s + ")" : s;
    }

    std::string print(const Expr& e) const
    {
        switch (e.kind()) {
        case Expr::Kind::Constant:
            return to_string(e.value());
        case Expr::Kind::Variable:
            return var(e.variable_id());
        case Expr::Kind::Function:
            return std::string(func_name(e.func())) + "(" + print(e.argument()) + ")";
        case Expr::Kind::Sum: {
            std::string out;
            bool first = true;
            for (const auto& t : e.operands()) {
                if (first) {
                    out = print(t);
                    first = false;
                } else if (negative_lead(t)) {
                    out += " - " + wrap(negate(t), kProduct);
                } else {
                    out += " + " + wrap(t, kProduct);
                }
            }
            return out;
        }
        case Expr::Kind::Power:
            if (e.exponent() < 0)
                return print_product({e});
            return print_power(e.base(), e.exponent());
        case Expr::Kind::Product:
            return print_product(e.operands());
        }
        return "?";
    }

    static Expr negate(const Expr& t)
    {
        if (t.is_constant())
            return Expr(Rational(-t.value()));
        std::vector<Expr> fs = t.operands();
        Rational c = -fs.front().value();
        fs.erase(fs.begin());
        if (c != 1)
            fs.insert(fs.begin(), Expr(c));
        return fs.size() == 1 ? fs.front() : Expr::product(std::move(fs));
    }

    std::string print_power(const Expr& base, const Rational& r) const
    {
        if (r == make_rational(1, 2))
            return "sqrt(" + print(base) + ")";
        std::string b = wrap(base, kAtom);
        if (base.is_constant() && base.value() >= 0 && is_integer(base.value()))
            b = print(base);
        if (is_integer(r) && r >= 0)
            return b + "^" + to_string(r);
        return b + "^(" + to_string(r) + ")";
    }

    std::string print_product(const std::vector<Expr>& factors) const
    {
        Rational coeff = 1;
        std::vector<std::string> num, den;
        for (const auto& f : factors) {
            if (f.is_constant()) {
                coeff *= f.value();
            } else if (f.kind() == Expr::Kind::Power && f.exponent() < 0) {
                Rational r = -f.exponent();
                den.push_back(r == 1 ? wrap(f.base(), kPower) : print_power(f.base(), r));
            } else {
                num.push_back(wrap(f, kPower));
            }
        }
        std::string sign = coeff < 0 ? "-" : "";
        Rational a = abs(coeff.get_num());
        Rational b = coeff.get_den();
        if (a != 1 || num.empty())
            num.insert(num.begin(), to_string(a));
        if (b != 1)
            den.insert(den.begin(), to_string(b));
        std::string out = sign;
        for (std::size_t i = 0; i < num.size(); ++i)
            out += (i ? "*" : "") + num[i];
        if (den.size() == 1) {
            out += "/" + den.front();
        } else if (den.size() > 1) {
            out += "/(";
            for (std::size_t i = 0; i < den.size(); ++i)
                out += (i ? "*" : "") + den[i];
            out += ")";
        }
        return out;
    }
};

}  // namespace

std::string to_string(const Expr& e, const CoordinateSystem& names)
{
    return Printer{&names}.print(e);
}

std::string to_string(const Expr& e)
{
    return Printer{nullptr}.print(e);
}

std::string_view to_string(ZeroTest z)
{
    switch (z) {
    case ZeroTest::Zero: return "Zero";
    case ZeroTest::NonZero: return "NonZero";
    case ZeroTest::Unknown: return "Unknown";
    }
    return "?";
}

ZeroTest combine(ZeroTest a, ZeroTest b)
{
    if (a == ZeroTest::NonZero || b == ZeroTest::NonZero)
        return ZeroTest::NonZero;
    if (a == ZeroTest::Unknown || b == ZeroTest::Unknown)
        return ZeroTest::Unknown;
    return ZeroTest::Zero;
}

}  // namespace liequad
