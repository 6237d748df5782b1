#include "toricjk/rational.hpp"

#include <cctype>

namespace toricjk {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto slash = s.find('/');
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : trim(s.substr(slash + 1));
    if (!is_integer_token(num) || !is_integer_token(den) || den.front() == '-' || den.front() == '+')
        throw ValidationError("not a rational number: \"" + std::string(text) + "\"");
    Integer d = parse_integer(den);
    if (d == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

RationalVector to_rational(const IntegerVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (const auto& z : v) out.emplace_back(z);
    return out;
}

IntegerVector clear_denominators(const RationalVector& v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntegerVector out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(Integer(q.get_num() * (l / q.get_den())));
    return out;
}

Integer gcd_of(const IntegerVector& v) {
    Integer g = 0;
    for (const auto& z : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    return g;
}

IntegerVector make_primitive(IntegerVector v) {
    Integer g = gcd_of(v);
    if (g > 1)
        for (auto& z : v) z /= g;
    return v;
}

Rational make_rational(long num, long den) {
    if (den == 0) throw ValidationError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace toricjk
