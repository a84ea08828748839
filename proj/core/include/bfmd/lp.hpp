// Exact linear programming over rationals: a dense two-phase primal simplex
// with Bland's anti-cycling rule. Every optimum it returns is attained at a
// basic feasible solution, so the number of nonzero structural variables
// never exceeds the number of rows — the vertex-support property several
// mechanism steps rely on falls out of the method.
#pragma once

#include <utility>
#include <vector>

#include "bfmd/rational.hpp"

namespace bfmd {

enum class Rel { Le, Ge, Eq };
enum class Sense { Max, Min };

/// Dense LP: optimize objective . x subject to rows[i] . x (rel_i) rhs[i],
/// x >= 0 componentwise.
struct LinearProgram {
  Sense sense = Sense::Max;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rel> rels;
  std::vector<Rational> rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;                        // full primal vector
  std::vector<std::pair<int, Rational>> support;  // (column, value > 0)
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace bfmd
