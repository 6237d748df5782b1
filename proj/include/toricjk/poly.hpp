#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toricjk/linalg.hpp"
#include "toricjk/rational.hpp"

namespace toricjk {

using Exponent = std::vector<unsigned>;

/// Polynomial over Q in a fixed number of variables x1..xk, stored sparsely.
/// No zero coefficients are ever stored.
class MultiPoly {
  public:
    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    static MultiPoly monomial(const Exponent& exp, const Rational& c = 1);
    /// The linear form xi -> <w, xi>.
    static MultiPoly linear_form(const IntegerVector& w);

    /// Parses "3/2*x1^2*x2 - x3 + 4". Throws ValidationError naming the
    /// offending token.
    static MultiPoly parse(std::string_view text, std::size_t nvars);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(const Exponent& exp) const;
    void add_term(const Exponent& exp, const Rational& c);

    /// Highest / lowest total degree of a stored term (0 for the zero polynomial).
    unsigned degree() const;
    unsigned min_degree() const;
    bool is_homogeneous() const { return degree() == min_degree(); }
    MultiPoly homogeneous_part(unsigned d) const;

    /// True iff variable `index` appears in some term.
    bool uses_variable(std::size_t index) const;

    /// p(M y): x_i = sum_j M(i, j) y_j, result in M.cols() variables.
    MultiPoly compose_linear(const IntegerMatrix& m) const;
    /// Evaluation at a rational point.
    Rational evaluate(const RationalVector& point) const;
    /// Drops the last `count` variables; they must not occur.
    MultiPoly drop_trailing_variables(std::size_t count) const;

    MultiPoly pow(unsigned e) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

    std::string to_string() const;

  private:
    void check_compatible(const MultiPoly& o) const;

    std::size_t nvars_;
    std::map<Exponent, Rational> terms_;
};

/// Polynomial in z whose coefficients are MultiPolys: coeffs[i] multiplies z^i.
/// Trailing zero coefficients are trimmed.
class ZPoly {
  public:
    explicit ZPoly(std::size_t nvars = 0) : nvars_(nvars) {}
    explicit ZPoly(std::vector<MultiPoly> coeffs);

    /// a + b z
    static ZPoly linear(const MultiPoly& a, const MultiPoly& b);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// z-degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
    MultiPoly coeff(std::size_t i) const;  // zero beyond degree

    ZPoly& operator+=(const ZPoly& o);
    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    friend bool operator==(const ZPoly& a, const ZPoly& b) = default;

    std::string to_string() const;

  private:
    void trim();

    std::size_t nvars_;
    std::vector<MultiPoly> coeffs_;
};

/// p with x_i replaced by images[i]; all images share one ring.
MultiPoly substitute_variables(const MultiPoly& p, const std::vector<MultiPoly>& images);

/// p(xi + z e) expanded in powers of z.
ZPoly substitute_line(const MultiPoly& p, const IntegerVector& e);

struct LinearFactor {
    ZPoly factor;  // z-degree 1, leading coefficient a nonzero rational constant
    unsigned multiplicity = 1;
};

/// Sum of the residues over all poles of numerator / prod factor^mult, i.e.
/// minus the residue at infinity. Exact; the result is a polynomial.
MultiPoly total_residue(const ZPoly& numerator, std::span<const LinearFactor> factors);

/// Rewrites an e-shift invariant polynomial in the k-1 coordinates of the
/// quotient t/<e>, using the basis from hermite_extend(e). Throws
/// InvariantError if p still depends on the e direction.
MultiPoly restrict_off_direction(const MultiPoly& p, const IntegerVector& e);

/// Same, with an explicit unimodular matrix whose last column is e.
MultiPoly restrict_off_direction(const MultiPoly& p, const IntegerMatrix& basis);

/// p(xi + s e) == p(xi) as polynomials.
bool is_shift_invariant(const MultiPoly& p, const IntegerVector& e);

}  // namespace toricjk
