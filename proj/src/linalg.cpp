#include "twistkit/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace twistkit {

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw NoSolution("no inverse of " + a.get_str() + " mod " + m.get_str());
  return r;
}

IntVector linear_solve_mod(const IntMatrix& M, const IntVector& b, const Int& p,
                           long P) {
  const size_t rows = M.size();
  const size_t cols = rows ? M[0].size() : 0;
  Int pP = int_pow(p, static_cast<unsigned long>(P));

  IntMatrix a(rows, IntVector(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    assert(M[i].size() == cols);
    for (size_t j = 0; j < cols; ++j) a[i][j] = mod_canonical(M[i][j], pP);
    a[i][cols] = mod_canonical(b[i], pP);
  }

  std::vector<size_t> pivot_row, pivot_col;
  std::vector<long> pivot_val;
  std::vector<bool> row_used(rows, false), col_used(cols, false);

  for (size_t step = 0; step < std::min(rows, cols); ++step) {
    // Full pivoting on minimal p-valuation.
    long best_v = P;
    size_t br = 0, bc = 0;
    for (size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      for (size_t j = 0; j < cols; ++j) {
        if (col_used[j] || a[i][j] == 0) continue;
        long v = valuation(a[i][j], p);
        if (v < best_v) {
          best_v = v;
          br = i;
          bc = j;
        }
      }
    }
    if (best_v >= P) break;  // remaining submatrix vanishes mod p^P

    row_used[br] = true;
    col_used[bc] = true;
    pivot_row.push_back(br);
    pivot_col.push_back(bc);
    pivot_val.push_back(best_v);

    // Normalize the pivot row so the pivot becomes p^v.
    Int unit = twistkit::div_exact(a[br][bc], int_pow(p, best_v));
    Int uinv = inverse_mod(unit, pP);
    for (size_t j = 0; j <= cols; ++j)
      a[br][j] = mod_canonical(a[br][j] * uinv, pP);

    // Eliminate the pivot column from all other unused rows (all their
    // entries have valuation >= v by pivot choice).
    Int pv = int_pow(p, best_v);
    for (size_t i = 0; i < rows; ++i) {
      if (i == br || row_used[i]) continue;
      if (a[i][bc] == 0) continue;
      Int factor = twistkit::div_exact(a[i][bc], pv);
      for (size_t j = 0; j <= cols; ++j)
        a[i][j] = mod_canonical(a[i][j] - factor * a[br][j], pP);
    }
  }

  // Inconsistency in untouched rows.
  for (size_t i = 0; i < rows; ++i) {
    if (row_used[i]) continue;
    if (a[i][cols] != 0) throw NoSolution("inconsistent row (rhs nonzero)");
  }

  IntVector x(cols, Int(0));
  // Back-substitute in reverse pivot order.
  for (size_t s = pivot_row.size(); s-- > 0;) {
    size_t r = pivot_row[s], c = pivot_col[s];
    Int rhs = a[r][cols];
    for (size_t j = 0; j < cols; ++j) {
      if (j == c) continue;
      if (a[r][j] != 0 && x[j] != 0) rhs -= a[r][j] * x[j];
    }
    rhs = mod_canonical(rhs, pP);
    Int pv = int_pow(p, pivot_val[s]);
    if (!divisible(rhs, pv))
      throw NoSolution("pivot valuation exceeds rhs valuation");
    x[c] = mod_canonical(twistkit::div_exact(rhs, pv), pP);
  }
  return x;
}

std::optional<IntVector> linear_solve_exact(const IntMatrix& M,
                                            const IntVector& b) {
  using Rat = mpq_class;
  const size_t rows = M.size();
  const size_t cols = rows ? M[0].size() : 0;
  std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) a[i][j] = Rat(M[i][j]);
    a[i][cols] = Rat(b[i]);
  }

  std::vector<long> pivot_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = r;
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[r]);
    Rat inv = 1 / a[r][c];
    for (size_t j = c; j <= cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }
  // Inconsistent?
  for (size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;
  // Unique solution required.
  for (size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0)
      throw Precondition("linear_solve_exact: rank-deficient system");

  IntVector x(cols);
  for (size_t c = 0; c < cols; ++c) {
    Rat v = a[static_cast<size_t>(pivot_of_col[c])][cols];
    v.canonicalize();
    if (v.get_den() != 1) return std::nullopt;  // non-integral solution
    x[c] = v.get_num();
  }
  return x;
}

}  // namespace twistkit
