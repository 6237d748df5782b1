#include "toricjk/linalg.hpp"

#include <algorithm>
#include <utility>

namespace toricjk {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_columns(std::span<const IntegerVector> columns) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    IntegerMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw ValidationError("from_columns: ragged columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

IntegerVector IntegerMatrix::column(std::size_t c) const {
    IntegerVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw InvariantError("matrix product: shape mismatch");
    IntegerMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& v) {
    if (a.cols() != v.size()) throw InvariantError("matrix-vector product: shape mismatch");
    IntegerVector out(a.rows(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

RationalVector operator*(const IntegerMatrix& a, const RationalVector& v) {
    if (a.cols() != v.size()) throw InvariantError("matrix-vector product: shape mismatch");
    RationalVector out(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

Integer dot(const IntegerVector& a, const IntegerVector& b) {
    if (a.size() != b.size()) throw ValidationError("pairing of vectors with different lengths");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IntegerVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw ValidationError("pairing of vectors with different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw ValidationError("pairing of vectors with different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer determinant(const IntegerMatrix& input) {
    if (input.rows() != input.cols()) throw InvariantError("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntegerMatrix m = input;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<RationalVector>& rows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Rational lead = rows[r][c];
        for (auto& v : rows[r]) v /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank_of(std::span<const RationalVector> vectors) {
    if (vectors.empty()) return 0;
    std::vector<RationalVector> rows(vectors.begin(), vectors.end());
    return row_reduce(rows, rows.front().size()).size();
}

std::size_t rank_of(std::span<const IntegerVector> vectors) {
    std::vector<RationalVector> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) rows.push_back(to_rational(v));
    return rank_of(std::span<const RationalVector>(rows));
}

std::optional<RationalVector> solve_basis(std::span<const IntegerVector> vectors, const RationalVector& target) {
    const std::size_t k = target.size();
    if (vectors.size() != k) return std::nullopt;
    // Augmented system: rows indexed by coordinate, columns by vector.
    std::vector<RationalVector> rows(k, RationalVector(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (vectors[j].size() != k) throw ValidationError("vector length does not match target");
            rows[i][j] = vectors[j][i];
        }
        rows[i][k] = target[i];
    }
    auto pivots = row_reduce(rows, k);
    if (pivots.size() != k) return std::nullopt;
    RationalVector c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = rows[i][k];
    return c;
}

std::optional<RationalVector> solve_nonneg_combination(std::span<const IntegerVector> vectors,
                                                       const RationalVector& target) {
    const std::size_t k = target.size();
    for (const auto& v : vectors)
        if (v.size() != k) throw ValidationError("vector length does not match target dimension");
    LinearProgram lp;
    lp.A.assign(k, RationalVector(vectors.size()));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) lp.A[i][j] = vectors[j][i];
    lp.b = target;
    lp.cost.assign(vectors.size(), Rational(0));
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal) return std::nullopt;
    return res.x;
}

IntegerMatrix hermite_extend(const IntegerVector& v) {
    const std::size_t k = v.size();
    if (k == 0) throw ValidationError("hermite_extend: empty vector");
    if (gcd_of(v) != 1) throw ValidationError("hermite_extend: vector is zero or not primitive");

    // Reduce w = v to (0,...,0,1) by unimodular 2x2 steps on coordinates
    // (i, k-1); accumulate the inverse steps on the right of u.
    IntegerMatrix u = IntegerMatrix::identity(k);
    IntegerVector w = v;
    const std::size_t last = k - 1;
    for (std::size_t i = 0; i < last; ++i) {
        if (w[i] == 0) continue;
        Integer a = w[i], b = w[last], g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        // step = [[b/g, -a/g], [s, t]], inverse = [[t, a/g], [-s, b/g]]
        const Integer ag = a / g, bg = b / g;
        for (std::size_t r = 0; r < k; ++r) {
            Integer ci = u(r, i), ck = u(r, last);
            u(r, i) = ci * t - ck * s;
            u(r, last) = ci * ag + ck * bg;
        }
        w[i] = 0;
        w[last] = g;
    }
    if (w[last] == -1) {
        for (std::size_t r = 0; r < k; ++r) u(r, last) = -u(r, last);
        w[last] = 1;
    }
    if (w[last] != 1 || u.column(last) != v) throw InvariantError("hermite_extend: reduction failed");
    return u;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& u) {
    const std::size_t n = u.rows();
    Integer det = determinant(u);
    if (det != 1 && det != -1) throw InvariantError("unimodular_inverse: determinant is not +-1");
    std::vector<RationalVector> rows(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = u(i, j);
        rows[i][n + i] = 1;
    }
    row_reduce(rows, n);
    IntegerMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& q = rows[i][n + j];
            if (q.get_den() != 1) throw InvariantError("unimodular_inverse: non-integral inverse");
            inv(i, j) = q.get_num();
        }
    return inv;
}

IntegerVector primitive_normal(std::span<const IntegerVector> span_vectors, std::size_t k) {
    std::vector<RationalVector> rows;
    for (const auto& v : span_vectors) {
        if (v.size() != k) throw ValidationError("primitive_normal: vector length does not match rank");
        rows.push_back(to_rational(v));
    }
    auto pivots = rows.empty() ? std::vector<std::size_t>{} : row_reduce(rows, k);
    if (pivots.size() + 1 != k) throw PreconditionError("primitive_normal: vectors do not have rank k-1");

    std::size_t free_col = 0;
    while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
    RationalVector normal(k, Rational(0));
    normal[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) normal[pivots[i]] = -rows[i][free_col];

    IntegerVector e = make_primitive(clear_denominators(normal));
    for (const auto& z : e) {
        if (z == 0) continue;
        if (z < 0)
            for (auto& y : e) y = -y;
        break;
    }
    return e;
}

std::vector<IntegerVector> hermite_normal_form(std::span<const IntegerVector> vectors, std::size_t k) {
    std::vector<IntegerVector> rows;
    for (const auto& v : vectors) {
        if (v.size() != k) throw ValidationError("hermite_normal_form: vector length does not match rank");
        rows.push_back(v);
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
        // Euclid on column c among rows r..end until one nonzero remains.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = 0; j < k; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& z : rows[r]) z = -z;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            for (std::size_t j = 0; j < k; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool lattice_generates(std::span<const IntegerVector> vectors, std::size_t k) {
    auto hnf = hermite_normal_form(vectors, k);
    if (hnf.size() != k) return false;
    // Upper triangular with full rank: pivots sit on the diagonal.
    for (std::size_t i = 0; i < k; ++i)
        if (hnf[i][i] != 1) return false;
    return true;
}

}  // namespace toricjk
