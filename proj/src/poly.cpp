#include "toricjk/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace toricjk {

// MultiPoly ------------------------------------------------------------------

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw ValidationError("variable index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(e);
}

MultiPoly MultiPoly::monomial(const Exponent& exp, const Rational& c) {
    MultiPoly p(exp.size());
    p.add_term(exp, c);
    return p;
}

MultiPoly MultiPoly::linear_form(const IntegerVector& w) {
    MultiPoly p(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        Exponent e(w.size(), 0);
        e[i] = 1;
        p.add_term(e, Rational(w[i]));
    }
    return p;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw InvariantError("polynomials in different numbers of variables");
}

Rational MultiPoly::coefficient(const Exponent& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& exp, const Rational& c) {
    if (exp.size() != nvars_) throw InvariantError("exponent vector has wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

namespace {

unsigned total_degree(const Exponent& e) {
    unsigned d = 0;
    for (unsigned a : e) d += a;
    return d;
}

}  // namespace

unsigned MultiPoly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

unsigned MultiPoly::min_degree() const {
    if (terms_.empty()) return 0;
    unsigned d = ~0u;
    for (const auto& [e, c] : terms_) d = std::min(d, total_degree(e));
    return d;
}

MultiPoly MultiPoly::homogeneous_part(unsigned d) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == d) out.terms_.emplace(e, c);
    return out;
}

bool MultiPoly::uses_variable(std::size_t index) const {
    for (const auto& [e, c] : terms_)
        if (e[index] != 0) return true;
    return false;
}

MultiPoly MultiPoly::compose_linear(const IntegerMatrix& m) const {
    if (m.rows() != nvars_) throw InvariantError("compose_linear: matrix rows must equal number of variables");
    const std::size_t out_vars = m.cols();
    std::vector<MultiPoly> forms;
    for (std::size_t i = 0; i < nvars_; ++i) {
        IntegerVector row(out_vars);
        for (std::size_t j = 0; j < out_vars; ++j) row[j] = m(i, j);
        forms.push_back(linear_form(row));
    }
    // powers[i][a] = forms[i]^a, filled lazily
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    auto power = [&](std::size_t i, unsigned a) -> const MultiPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(out_vars, 1));
        while (cache.size() <= a) cache.push_back(cache.back() * forms[i]);
        return cache[a];
    };
    MultiPoly out(out_vars);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = constant(out_vars, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] != 0) t = t * power(i, e[i]);
        out += t;
    }
    return out;
}

Rational MultiPoly::evaluate(const RationalVector& point) const {
    if (point.size() != nvars_) throw InvariantError("evaluate: point has wrong dimension");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned a = 0; a < e[i]; ++a) t *= point[i];
        s += t;
    }
    return s;
}

MultiPoly MultiPoly::drop_trailing_variables(std::size_t count) const {
    if (count > nvars_) throw InvariantError("drop_trailing_variables: too many variables");
    MultiPoly out(nvars_ - count);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = nvars_ - count; i < nvars_; ++i)
            if (e[i] != 0) throw InvariantError("drop_trailing_variables: variable x" + std::to_string(i + 1) + " occurs");
        out.terms_.emplace(Exponent(e.begin(), e.end() - static_cast<std::ptrdiff_t>(count)), c);
    }
    return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(nvars_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponent, Rational>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        const unsigned dx = total_degree(x.first), dy = total_degree(y.first);
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        const bool is_const = total_degree(e) == 0;
        bool need_star = false;
        if (is_const || mag != 1) {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << 'x' << (i + 1);
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

// Parsing --------------------------------------------------------------------

namespace {

class PolyParser {
  public:
    PolyParser(std::string_view text, std::size_t nvars) : nvars_(nvars) {
        // Normalize the unicode minus sign and strip whitespace.
        std::string s(text);
        for (std::size_t pos; (pos = s.find("\xE2\x88\x92")) != std::string::npos;) s.replace(pos, 3, "-");
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
        original_ = std::string(text);
    }

    MultiPoly parse() {
        MultiPoly out(nvars_);
        if (src_.empty()) fail("empty polynomial");
        bool first = true;
        while (pos_ < src_.size()) {
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            out += parse_term() * sign;
        }
        return out;
    }

  private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("class: " + what + " at position " + std::to_string(pos_) + " in \"" + original_ + "\"");
    }

    Integer parse_digits() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Integer(src_.substr(start, pos_ - start), 10);
    }

    MultiPoly parse_term() {
        MultiPoly term = MultiPoly::constant(nvars_, 1);
        for (;;) {
            term = term * parse_factor();
            if (peek() != '*') break;
            ++pos_;
        }
        return term;
    }

    MultiPoly parse_factor() {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer num = parse_digits();
            Integer den = 1;
            if (peek() == '/') {
                ++pos_;
                den = parse_digits();
                if (den == 0) fail("zero denominator");
            }
            Rational q(num, den);
            q.canonicalize();
            return MultiPoly::constant(nvars_, q);
        }
        if (peek() == 'x' || peek() == 'X') {
            ++pos_;
            Integer idx = parse_digits();
            if (idx < 1 || idx > static_cast<long>(nvars_))
                fail("variable x" + idx.get_str() + " out of range 1.." + std::to_string(nvars_));
            unsigned e = 1;
            if (peek() == '^') {
                ++pos_;
                Integer ez = parse_digits();
                if (ez > 10000) fail("exponent too large");
                e = static_cast<unsigned>(ez.get_ui());
            }
            return MultiPoly::variable(nvars_, idx.get_ui() - 1).pow(e);
        }
        fail(std::string("unexpected character '") + (peek() ? std::string(1, peek()) : std::string("end")) + "'");
    }

    std::size_t nvars_;
    std::string src_;
    std::string original_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text, std::size_t nvars) { return PolyParser(text, nvars).parse(); }

// ZPoly ----------------------------------------------------------------------

ZPoly::ZPoly(std::vector<MultiPoly> coeffs) : nvars_(coeffs.empty() ? 0 : coeffs.front().nvars()), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.nvars() != nvars_) throw InvariantError("ZPoly: coefficients in different rings");
    trim();
}

ZPoly ZPoly::linear(const MultiPoly& a, const MultiPoly& b) { return ZPoly(std::vector<MultiPoly>{a, b}); }

void ZPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

MultiPoly ZPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : MultiPoly(nvars_); }

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) nvars_ = o.nvars_;
    if (o.nvars_ != nvars_) throw InvariantError("ZPoly: coefficients in different rings");
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), MultiPoly(nvars_));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly(a.nvars_);
    if (a.nvars_ != b.nvars_) throw InvariantError("ZPoly: coefficients in different rings");
    std::vector<MultiPoly> out(a.coeffs_.size() + b.coeffs_.size() - 1, MultiPoly(a.nvars_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ZPoly(std::move(out));
}

std::string ZPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << '(' << coeffs_[i].to_string() << ')';
        if (i > 0) os << "*z^" << i;
    }
    return os.str();
}

// Line substitution and residues ---------------------------------------------

MultiPoly substitute_variables(const MultiPoly& p, const std::vector<MultiPoly>& images) {
    if (images.size() != p.nvars()) throw InvariantError("substitute_variables: need one image per variable");
    if (images.empty()) return p;
    const std::size_t out_vars = images.front().nvars();
    std::vector<std::vector<MultiPoly>> powers(images.size());
    auto power = [&](std::size_t i, unsigned a) -> const MultiPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(MultiPoly::constant(out_vars, 1));
        while (cache.size() <= a) cache.push_back(cache.back() * images[i]);
        return cache[a];
    };
    MultiPoly out(out_vars);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly t = MultiPoly::constant(out_vars, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t = t * power(i, e[i]);
        out += t;
    }
    return out;
}

ZPoly substitute_line(const MultiPoly& p, const IntegerVector& e) {
    const std::size_t k = p.nvars();
    if (e.size() != k) throw ValidationError("substitute_line: direction has wrong dimension");
    std::vector<ZPoly> lines;
    for (std::size_t i = 0; i < k; ++i)
        lines.push_back(ZPoly::linear(MultiPoly::variable(k, i), MultiPoly::constant(k, Rational(e[i]))));
    std::vector<std::vector<ZPoly>> powers(k);
    auto power = [&](std::size_t i, unsigned a) -> const ZPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(ZPoly(std::vector<MultiPoly>{MultiPoly::constant(k, 1)}));
        while (cache.size() <= a) cache.push_back(cache.back() * lines[i]);
        return cache[a];
    };
    ZPoly out(k);
    for (const auto& [exp, c] : p.terms()) {
        ZPoly t(std::vector<MultiPoly>{MultiPoly::constant(k, c)});
        for (std::size_t i = 0; i < k; ++i)
            if (exp[i] != 0) t = t * power(i, exp[i]);
        out += t;
    }
    return out;
}

namespace {

// Binomial coefficient C(n, r) as a rational.
Rational binomial(unsigned long n, unsigned long r) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, r);
    return Rational(b);
}

}  // namespace

MultiPoly total_residue(const ZPoly& numerator, std::span<const LinearFactor> factors) {
    std::size_t nvars = numerator.nvars();
    for (const auto& f : factors)
        if (!f.factor.is_zero()) nvars = f.factor.nvars();
    MultiPoly zero(nvars);

    unsigned long total_mult = 0;
    Rational scale = 1;
    std::vector<std::pair<MultiPoly, unsigned>> roots;  // (a / b, multiplicity) for factor a + b z
    for (const auto& f : factors) {
        if (f.multiplicity == 0) continue;
        if (f.factor.degree() != 1)
            throw InvariantError("total_residue: denominator factor " + f.factor.to_string() + " is not linear in z");
        const MultiPoly lead = f.factor.coeff(1);
        if (lead.term_count() != 1 || lead.degree() != 0)
            throw InvariantError("total_residue: leading z-coefficient of " + f.factor.to_string() +
                                 " is not a nonzero constant");
        if (f.factor.nvars() != nvars) throw InvariantError("total_residue: factors in different rings");
        const Rational b = lead.terms().begin()->second;
        Rational inv_b = 1 / b;
        roots.emplace_back(f.factor.coeff(0) * inv_b, f.multiplicity);
        total_mult += f.multiplicity;
        for (unsigned i = 0; i < f.multiplicity; ++i) scale *= inv_b;
    }
    if (numerator.is_zero()) return zero;
    if (!numerator.is_zero() && numerator.nvars() != nvars) throw InvariantError("total_residue: numerator in a different ring");

    const long deg = numerator.degree();
    const long order = deg - static_cast<long>(total_mult) + 1;  // highest series coefficient needed
    if (order < 0) return zero;

    // series[j] = coefficient of t^j in prod (1 + r t)^(-m), t = 1/z
    std::vector<MultiPoly> series(static_cast<std::size_t>(order) + 1, zero);
    series[0] = MultiPoly::constant(nvars, 1);
    for (const auto& [r, m] : roots) {
        std::vector<MultiPoly> factor_series(series.size(), zero);
        MultiPoly rpow = MultiPoly::constant(nvars, 1);
        for (std::size_t j = 0; j < series.size(); ++j) {
            Rational c = binomial(m + j - 1, j);
            if (j % 2 == 1) c = -c;
            factor_series[j] = rpow * c;
            if (j + 1 < series.size()) rpow = rpow * r;
        }
        std::vector<MultiPoly> next(series.size(), zero);
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (series[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < series.size(); ++j)
                if (!factor_series[j].is_zero()) next[i + j] += series[i] * factor_series[j];
        }
        series = std::move(next);
    }

    // coefficient of z^-1 in sum_p N_p z^(p - M) sum_j c_j z^(-j): j = p - M + 1
    MultiPoly out = zero;
    for (long p = static_cast<long>(total_mult) - 1; p <= deg; ++p) {
        if (p < 0) continue;
        const std::size_t j = static_cast<std::size_t>(p - static_cast<long>(total_mult) + 1);
        out += numerator.coeff(static_cast<std::size_t>(p)) * series[j];
    }
    return out * scale;
}

bool is_shift_invariant(const MultiPoly& p, const IntegerVector& e) { return substitute_line(p, e).degree() <= 0; }

MultiPoly restrict_off_direction(const MultiPoly& p, const IntegerMatrix& basis) {
    const std::size_t k = p.nvars();
    if (basis.rows() != k || basis.cols() != k) throw InvariantError("restrict_off_direction: basis has wrong shape");
    if (k == 0) throw InvariantError("restrict_off_direction: no direction in rank 0");
    MultiPoly q = p.compose_linear(basis);
    if (q.uses_variable(k - 1))
        throw InvariantError("restrict_off_direction: polynomial is not e-invariant: " + p.to_string());
    return q.drop_trailing_variables(1);
}

MultiPoly restrict_off_direction(const MultiPoly& p, const IntegerVector& e) {
    if (e.size() != p.nvars()) throw ValidationError("restrict_off_direction: direction has wrong dimension");
    return restrict_off_direction(p, hermite_extend(e));
}

}  // namespace toricjk
