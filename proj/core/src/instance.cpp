#include "bfmd/instance.hpp"

#include "bfmd/classes.hpp"

namespace bfmd {

Instance::Instance(int n, std::vector<std::vector<int>> groups, Rational budget,
                   Valuation valuation, CostProfile true_costs,
                   std::vector<CostClass> cost_classes, bool no_overbidding,
                   std::map<std::string, std::string> meta)
    : n_(n),
      groups_(std::move(groups)),
      budget_(std::move(budget)),
      valuation_(std::move(valuation)),
      true_costs_(std::move(true_costs)),
      cost_classes_(std::move(cost_classes)),
      no_overbidding_(no_overbidding),
      meta_(std::move(meta)) {
  if (n_ < 1 || n_ > 20) throw std::invalid_argument("instance: bad n");
  if (groups_.empty()) throw std::invalid_argument("instance: no groups");
  owner_.assign(n_, -1);
  group_masks_.clear();
  zeta_ = 0;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    Subset mask = 0;
    if (groups_[i].empty())
      throw std::invalid_argument("instance: empty group " +
                                  std::to_string(i));
    for (int e : groups_[i]) {
      if (e < 0 || e >= n_)
        throw std::invalid_argument("instance: item id out of range");
      if (owner_[e] != -1)
        throw std::invalid_argument("instance: item " + std::to_string(e) +
                                    " in two groups");
      owner_[e] = static_cast<int>(i);
      mask |= Subset(1) << e;
    }
    group_masks_.push_back(mask);
    zeta_ = std::max(zeta_, static_cast<int>(groups_[i].size()));
  }
  for (int e = 0; e < n_; ++e)
    if (owner_[e] == -1)
      throw std::invalid_argument("instance: item " + std::to_string(e) +
                                  " unowned");
  if (budget_ <= 0) throw std::invalid_argument("instance: budget must be > 0");
  if (valuation_.n() != n_)
    throw std::invalid_argument("instance: valuation arity != n");

  const int k = this->k();
  if (static_cast<int>(true_costs_.size()) != k)
    throw std::invalid_argument("instance: need one true cost per player");
  if (static_cast<int>(cost_classes_.size()) != k)
    throw std::invalid_argument("instance: need one cost class per player");
  for (int i = 0; i < k; ++i) {
    const int g = static_cast<int>(groups_[i].size());
    if (true_costs_[i].owner() != i || true_costs_[i].group_size() != g)
      throw std::invalid_argument("instance: true_costs[" + std::to_string(i) +
                                  "] owner/arity mismatch");
    const CostClass& cls = cost_classes_[i];
    if (cls.owner != i || cls.members.empty())
      throw std::invalid_argument("instance: cost_classes[" +
                                  std::to_string(i) + "] owner/empty");
    bool found = false;
    for (std::size_t a = 0; a < cls.members.size(); ++a) {
      const CostFunction& f = cls.members[a];
      if (f.owner() != i || f.group_size() != g)
        throw std::invalid_argument("instance: class member owner/arity");
      for (std::size_t b = a + 1; b < cls.members.size(); ++b)
        if (f == cls.members[b])
          throw std::invalid_argument("instance: duplicate class member");
      if (f == true_costs_[i]) found = true;
    }
    if (!found)
      throw std::invalid_argument("instance: true cost of player " +
                                  std::to_string(i) + " not in its class");
  }

  if (no_overbidding_ && !all_singletons_affordable())
    throw std::invalid_argument(
        "instance: no_overbidding set but some class member prices a "
        "singleton above the budget");

  // Monotone flag and cheap declared classes are checked eagerly; the
  // max-of-additive cover property needs per-subset LPs and is left to
  // validate_class (cmd validate / the audit suites run it).
  if (valuation_.monotone()) {
    const ClassCheck mono = check_monotone(valuation_);
    if (!mono.ok)
      throw std::invalid_argument("instance: valuation not monotone: " +
                                  mono.witness);
  }
  const ValClass decl = valuation_.declared_class();
  if (decl != ValClass::Xos) {
    const ClassCheck cc = validate_class(valuation_, decl);
    if (!cc.ok)
      throw std::invalid_argument("instance: declared class " +
                                  val_class_name(decl) + " fails: " +
                                  cc.witness);
  }
}

Rational Instance::player_cost(const CostProfile& q, int player,
                               Subset s) const {
  return q[player].local_cost(
      global_to_local(s & group_masks_[player], group_masks_[player]));
}

Rational Instance::total_cost(const CostProfile& q, Subset s) const {
  Rational sum(0);
  for (int i = 0; i < k(); ++i) {
    if (s & group_masks_[i]) sum += player_cost(q, i, s);
  }
  return sum;
}

Subset Instance::side_mask(Subset player_set) const {
  Subset mask = 0;
  for (int i = 0; i < k(); ++i)
    if ((player_set >> i) & 1u) mask |= group_masks_[i];
  return mask;
}

bool Instance::all_singletons_affordable() const {
  for (int i = 0; i < k(); ++i) {
    for (const CostFunction& f : cost_classes_[i].members) {
      for (int j = 0; j < f.group_size(); ++j) {
        if (f.local_cost(Subset(1) << j) > budget_) return false;
      }
    }
  }
  return true;
}

}  // namespace bfmd
