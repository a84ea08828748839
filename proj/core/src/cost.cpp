#include "bfmd/cost.hpp"

namespace bfmd {

CostFunction::CostFunction(int owner, int group_size,
                           std::vector<Rational> table)
    : owner_(owner), group_size_(group_size), table_(std::move(table)) {
  if (owner < 0) throw std::invalid_argument("cost: bad owner");
  if (group_size < 0 || group_size > 20)
    throw std::invalid_argument("cost: bad group size");
  if (table_.size() != (std::size_t(1) << group_size))
    throw std::invalid_argument("cost: table must have 2^group_size entries");
  if (table_[0] != 0) throw std::invalid_argument("cost: c(empty) must be 0");
  for (Subset s = 0; s < table_.size(); ++s) {
    if (table_[s] < 0) throw std::invalid_argument("cost: negative entry");
    // Monotonicity: dropping any single element never increases cost.
    for (int e = 0; s >> e; ++e) {
      if (contains(s, e) && table_[s] < table_[s & ~(Subset(1) << e)])
        throw std::invalid_argument("cost: table not monotone");
    }
  }
  // Derived structure flags.
  additive_ = true;
  for (Subset s = 0; s < table_.size() && additive_; ++s) {
    Rational sum(0);
    for (int e = 0; s >> e; ++e)
      if (contains(s, e)) sum += table_[Subset(1) << e];
    if (table_[s] != sum) additive_ = false;
  }
  superadditive_ = true;
  // c(S u T) >= c(S) + c(T) for disjoint S, T: enumerate each union once via
  // submask pairs.
  for (Subset u = 0; u < table_.size() && superadditive_; ++u) {
    for (Subset s = u; s; s = (s - 1u) & u) {
      const Subset t = u & ~s;
      if (table_[u] < table_[s] + table_[t]) {
        superadditive_ = false;
        break;
      }
    }
  }
}

}  // namespace bfmd
