#include "liequad/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liequad {

bool is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

long floor_to_long(const Rational& r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

double to_double(const Rational& r)
{
    return r.get_d();
}

std::string to_string(const Rational& r)
{
    return r.get_str();
}

Rational parse_decimal(std::string_view text)
{
    std::string mantissa;
    long exponent = 0;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            mantissa.push_back(c);
            if (seen_point)
                --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (mantissa.empty())
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E')
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        ++i;
        long sign = 1;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        if (i == text.size())
            throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
        long e = 0;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9')
                throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
            e = e * 10 + (text[i] - '0');
            if (e > 10000)
                throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
        }
        exponent += sign * e;
    }
    mpz_class num(mantissa, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational r = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return r;
}

Rational from_double_exact(double x)
{
    if (!std::isfinite(x))
        throw std::invalid_argument("cannot convert a non-finite double to a rational");
    return Rational(x);
}

std::optional<Rational> rationalize(double x, long max_den, double tol)
{
    if (!std::isfinite(x))
        return std::nullopt;
    const double limit = tol * std::max(1.0, std::fabs(x));
    // convergents h_k / k_k
    double rem = x;
    long double h_prev = 1, h = std::floor(rem);
    long double k_prev = 0, k = 1;
    rem -= std::floor(rem);
    for (int iter = 0; iter < 64; ++iter) {
        if (std::fabs(static_cast<double>(h / k) - x) <= limit)
            break;
        if (rem < 1e-300)
            break;
        rem = 1.0 / rem;
        long double a = std::floor(rem);
        rem -= static_cast<double>(a);
        long double h_next = a * h + h_prev;
        long double k_next = a * k + k_prev;
        if (k_next > max_den)
            break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    if (std::fabs(static_cast<double>(h / k) - x) > limit)
        return std::nullopt;
    Rational r(mpz_class(static_cast<long>(h)), mpz_class(static_cast<long>(k)));
    r.canonicalize();
    return r;
}

std::optional<Rational> exact_root(const Rational& r, long q)
{
    if (q <= 0)
        return std::nullopt;
    if (q == 1)
        return r;
    if (sgn(r) < 0) {
        if (q % 2 == 0)
            return std::nullopt;
        auto pos = exact_root(-r, q);
        if (!pos)
            return std::nullopt;
        return Rational(-*pos);
    }
    mpz_class num_root, den_root;
    if (!mpz_root(num_root.get_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(q)))
        return std::nullopt;
    if (!mpz_root(den_root.get_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(q)))
        return std::nullopt;
    Rational out(num_root, den_root);
    out.canonicalize();
    return out;
}

}  // namespace liequad
