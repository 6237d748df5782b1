#include <cstddef>
#include <vector>

#include "toricjk/linalg.hpp"

namespace toricjk {

namespace {

// Dense tableau: rows_[i] holds the constraint row (columns 0..n-1) and the
// right-hand side in column n. obj_ holds reduced costs and, in column n, the
// negated objective value.
class Tableau {
  public:
    Tableau(std::vector<RationalVector> rows, std::vector<std::size_t> basis, std::size_t ncols)
        : rows_(std::move(rows)), basis_(std::move(basis)), ncols_(ncols) {}

    void set_objective(const RationalVector& cost) {
        obj_.assign(ncols_ + 1, Rational(0));
        for (std::size_t j = 0; j < ncols_ && j < cost.size(); ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational cb = basis_[i] < cost.size() ? cost[basis_[i]] : Rational(0);
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= cb * rows_[i][j];
        }
    }

    // Bland's rule; columns >= allowed are never entered. Returns false if
    // the objective is unbounded below.
    bool optimize(std::size_t allowed) {
        for (;;) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j)
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == allowed) return true;

            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] <= 0) continue;
                Rational ratio = rows_[i][ncols_] / rows_[i][enter];
                if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_.size()) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = rows_[r][c];
        for (auto& v : rows_[r]) v /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            const Rational f = rows_[i][c];
            for (std::size_t j = 0; j <= ncols_; ++j) rows_[i][j] -= f * rows_[r][j];
        }
        if (obj_[c] != 0) {
            const Rational f = obj_[c];
            for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= f * rows_[r][j];
        }
        basis_[r] = c;
    }

    Rational objective_value() const { return -obj_[ncols_]; }

    // After phase I: pivot artificial columns (>= first_artificial) out of
    // the basis, dropping redundant rows.
    void expel_artificials(std::size_t first_artificial) {
        for (std::size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_artificial) {
                ++i;
                continue;
            }
            std::size_t col = first_artificial;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col == first_artificial) {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, col);
            ++i;
        }
    }

    RationalVector solution(std::size_t n) const {
        RationalVector x(n, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] < n) x[basis_[i]] = rows_[i][ncols_];
        return x;
    }

  private:
    std::vector<RationalVector> rows_;
    std::vector<std::size_t> basis_;
    std::size_t ncols_;
    RationalVector obj_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t m = lp.A.size();
    const std::size_t n = lp.cost.size();
    if (lp.b.size() != m) throw InvariantError("solve_lp: b has wrong length");
    for (const auto& row : lp.A)
        if (row.size() != n) throw InvariantError("solve_lp: constraint row has wrong length");

    const std::size_t ncols = n + m;
    std::vector<RationalVector> rows(m, RationalVector(ncols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = flip ? Rational(-lp.A[i][j]) : lp.A[i][j];
        rows[i][n + i] = 1;
        rows[i][ncols] = flip ? Rational(-lp.b[i]) : lp.b[i];
        basis[i] = n + i;
    }

    Tableau tab(std::move(rows), std::move(basis), ncols);
    RationalVector phase1(ncols, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
    tab.set_objective(phase1);
    tab.optimize(ncols);

    LpResult result;
    if (tab.objective_value() != 0) {
        result.status = LpStatus::infeasible;
        return result;
    }
    tab.expel_artificials(n);
    tab.set_objective(lp.cost);
    if (!tab.optimize(n)) {
        result.status = LpStatus::unbounded;
        return result;
    }
    result.status = LpStatus::optimal;
    result.x = tab.solution(n);
    result.value = 0;
    for (std::size_t j = 0; j < n; ++j) result.value += lp.cost[j] * result.x[j];
    return result;
}

}  // namespace toricjk
