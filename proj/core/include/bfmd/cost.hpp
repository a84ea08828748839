// Seller cost functions. Each player owns a group of items and reports a
// monotone normalized cost table over local subsets of that group; the finite
// public class a player may report from is a list of such tables. Additivity
// and superadditivity are derived (and cached) at construction, not declared.
#pragma once

#include <stdexcept>
#include <vector>

#include "bfmd/rational.hpp"
#include "bfmd/subset.hpp"

namespace bfmd {

class CostFunction {
 public:
  /// `table[local]` is the cost of the local subset; must have 2^g entries
  /// (g = group size), entry 0 must be 0, all entries nonnegative and
  /// monotone under inclusion.
  CostFunction(int owner, int group_size, std::vector<Rational> table);

  int owner() const { return owner_; }
  int group_size() const { return group_size_; }
  bool additive() const { return additive_; }
  bool superadditive() const { return superadditive_; }

  const Rational& local_cost(Subset local) const { return table_[local]; }
  const std::vector<Rational>& table() const { return table_; }

  bool operator==(const CostFunction& o) const {
    return owner_ == o.owner_ && table_ == o.table_;
  }

 private:
  int owner_;
  int group_size_;
  std::vector<Rational> table_;
  bool additive_;
  bool superadditive_;
};

/// Finite public class of admissible cost reports for one player.
struct CostClass {
  int owner = 0;
  std::vector<CostFunction> members;  // pairwise distinct, same owner/size
};

/// One reported (or true) cost function per player.
using CostProfile = std::vector<CostFunction>;

}  // namespace bfmd
