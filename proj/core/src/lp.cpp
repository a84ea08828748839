#include "bfmd/lp.hpp"

#include <stdexcept>

namespace bfmd {

namespace {

// Working tableau in equality form A x = b, x >= 0, b >= 0, with a known
// basis. Columns: structural | slack/surplus | artificial.
struct Tableau {
  int m = 0;       // rows
  int ncols = 0;   // total columns
  int nstruct = 0; // structural columns
  int art0 = 0;    // first artificial column index
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<int> basis;  // basis[i] = column basic in row i

  void pivot(int row, int col) {
    const Rational p = a[row][col];
    for (int j = 0; j < ncols; ++j) a[row][j] /= p;
    b[row] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    basis[row] = col;
  }

  // Runs Bland-rule simplex for `maximize obj . x` restricted to columns
  // < limit. Returns false when unbounded.
  bool optimize(const std::vector<Rational>& obj, int limit) {
    for (;;) {
      // y = objective coefficients of the basic variables, then reduced
      // costs r_j = obj_j - y . A_j.
      int enter = -1;
      for (int j = 0; j < limit && enter < 0; ++j) {
        Rational r = obj[j];
        for (int i = 0; i < m; ++i) {
          const Rational& cb = obj[basis[i]];
          if (cb != 0 && a[i][j] != 0) r -= cb * a[i][j];
        }
        if (r > 0) enter = j;  // Bland: first improving column
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        const Rational ratio = b[i] / a[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded direction
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = static_cast<int>(lp.objective.size());
  if (static_cast<int>(lp.rels.size()) != m ||
      static_cast<int>(lp.rhs.size()) != m)
    throw std::invalid_argument("solve_lp: inconsistent row counts");
  for (const auto& row : lp.rows)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_lp: row width != #columns");

  // Normalize to b >= 0 (flip rows), then append one slack/surplus column per
  // inequality and one artificial column per >=/= row (and per <= row whose
  // slack starts negative — cannot happen after flipping).
  std::vector<std::vector<Rational>> rows = lp.rows;
  std::vector<Rel> rels = lp.rels;
  std::vector<Rational> rhs = lp.rhs;
  for (int i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (rels[i] == Rel::Le) rels[i] = Rel::Ge;
      else if (rels[i] == Rel::Ge) rels[i] = Rel::Le;
    }
  }

  int nslack = 0, nart = 0;
  for (int i = 0; i < m; ++i) {
    if (rels[i] != Rel::Eq) ++nslack;
    if (rels[i] != Rel::Le) ++nart;
  }

  Tableau t;
  t.m = m;
  t.nstruct = n;
  t.ncols = n + nslack + nart;
  t.art0 = n + nslack;
  t.a.assign(m, std::vector<Rational>(t.ncols, Rational(0)));
  t.b = rhs;
  t.basis.assign(m, -1);

  int slack = n, art = t.art0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = rows[i][j];
    if (rels[i] == Rel::Le) {
      t.a[i][slack] = 1;
      t.basis[i] = slack++;
    } else if (rels[i] == Rel::Ge) {
      t.a[i][slack] = -1;
      ++slack;
      t.a[i][art] = 1;
      t.basis[i] = art++;
    } else {
      t.a[i][art] = 1;
      t.basis[i] = art++;
    }
  }

  // Phase 1: drive artificials to zero.
  if (nart > 0) {
    std::vector<Rational> phase1(t.ncols, Rational(0));
    for (int j = t.art0; j < t.ncols; ++j) phase1[j] = -1;
    if (!t.optimize(phase1, t.ncols))
      throw std::logic_error("solve_lp: phase 1 unbounded");
    Rational infeas(0);
    for (int i = 0; i < m; ++i)
      if (t.basis[i] >= t.art0) infeas += t.b[i];
    if (infeas != 0) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Pivot any zero-valued basic artificial out; a row with no usable pivot
    // is redundant and can stay (its artificial is pinned to zero and is
    // excluded from phase 2 by the column limit below only if nonbasic, so
    // swap it out whenever any nonartificial coefficient is nonzero).
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < t.art0) continue;
      int col = -1;
      for (int j = 0; j < t.art0 && col < 0; ++j)
        if (t.a[i][j] != 0) col = j;
      if (col >= 0) t.pivot(i, col);
    }
  }

  // Phase 2 over non-artificial columns only. Rows still carrying a basic
  // artificial are redundant zero rows; they never change.
  std::vector<Rational> phase2(t.ncols, Rational(0));
  const bool maximize = lp.sense == Sense::Max;
  for (int j = 0; j < n; ++j)
    phase2[j] = maximize ? lp.objective[j] : -lp.objective[j];
  if (!t.optimize(phase2, t.art0)) {
    LpSolution sol;
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) sol.x[t.basis[i]] = t.b[i];
  sol.objective = 0;
  for (int j = 0; j < n; ++j)
    if (sol.x[j] != 0) sol.objective += lp.objective[j] * sol.x[j];
  for (int j = 0; j < n; ++j)
    if (sol.x[j] > 0) sol.support.emplace_back(j, sol.x[j]);
  return sol;
}

}  // namespace bfmd
