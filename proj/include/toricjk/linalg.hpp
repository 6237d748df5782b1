#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "toricjk/rational.hpp"

namespace toricjk {

/// Dense row-major integer matrix.
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_columns(std::span<const IntegerVector> columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntegerVector column(std::size_t c) const;
    IntegerMatrix transpose() const;

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& v);
RationalVector operator*(const IntegerMatrix& a, const RationalVector& v);

Integer dot(const IntegerVector& a, const IntegerVector& b);
Rational dot(const IntegerVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntegerMatrix& m);

/// Rank of a family of vectors of equal length.
std::size_t rank_of(std::span<const IntegerVector> vectors);
std::size_t rank_of(std::span<const RationalVector> vectors);

/// Unique solution of the square system sum_i c_i v_i = target, or nullopt
/// if the vectors are not a basis.
std::optional<RationalVector> solve_basis(std::span<const IntegerVector> vectors, const RationalVector& target);

/// Nonnegative rational coefficients c with sum_i c_i v_i = target, if any.
/// Exact two-phase simplex with Bland's rule.
std::optional<RationalVector> solve_nonneg_combination(std::span<const IntegerVector> vectors,
                                                       const RationalVector& target);

/// Integer matrix with determinant +-1 whose last column is v. The inverse
/// maps v to the last standard basis vector. Requires v primitive.
IntegerMatrix hermite_extend(const IntegerVector& v);

/// Inverse of a unimodular matrix (throws InvariantError if |det| != 1).
IntegerMatrix unimodular_inverse(const IntegerMatrix& u);

/// Primitive integer vector orthogonal to every input, first nonzero entry
/// positive. Inputs must have rank exactly k-1.
IntegerVector primitive_normal(std::span<const IntegerVector> span_vectors, std::size_t k);

/// True iff the integer span of the vectors is all of Z^k.
bool lattice_generates(std::span<const IntegerVector> vectors, std::size_t k);

/// Row-style Hermite normal form of the lattice spanned by the vectors
/// (nonzero rows only, upper triangular with positive pivots).
std::vector<IntegerVector> hermite_normal_form(std::span<const IntegerVector> vectors, std::size_t k);

// Linear programming over the rationals -------------------------------------

struct LinearProgram {
    // minimize cost . x  subject to  A x = b,  x >= 0
    std::vector<RationalVector> A;  // rows
    RationalVector b;
    RationalVector cost;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    RationalVector x;
    Rational value;
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace toricjk
