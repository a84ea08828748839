#include "bfmd/classes.hpp"

#include <sstream>

#include "bfmd/lp.hpp"

namespace bfmd {

namespace {

std::string mask_str(Subset s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int e = 0; s >> e; ++e) {
    if (contains(s, e)) {
      if (!first) os << ",";
      os << e;
      first = false;
    }
  }
  os << "}";
  return os.str();
}

}  // namespace

ClassCheck check_monotone(const Valuation& v) {
  const Subset top = full_mask(v.n());
  for (Subset s = 1; s <= top && top; ++s) {
    for (int e = 0; s >> e; ++e) {
      if (!contains(s, e)) continue;
      const Subset t = s & ~(Subset(1) << e);
      if (v.value(s) < v.value(t))
        return {false, "v(" + mask_str(s) + ") < v(" + mask_str(t) + ")"};
    }
  }
  return {};
}

ClassCheck check_additive(const Valuation& v) {
  const Subset top = full_mask(v.n());
  for (Subset s = 1; s <= top && top; ++s) {
    Rational sum(0);
    for (int e = 0; s >> e; ++e)
      if (contains(s, e)) sum += v.value(Subset(1) << e);
    if (v.value(s) != sum)
      return {false, "v(" + mask_str(s) + ") != sum of singletons"};
  }
  return {};
}

ClassCheck check_submodular(const Valuation& v) {
  const int n = v.n();
  const Subset top = full_mask(n);
  for (Subset s = 0; s <= top && top; ++s) {
    for (int e = 0; e < n; ++e) {
      if (contains(s, e)) continue;
      for (int f = e + 1; f < n; ++f) {
        if (contains(s, f)) continue;
        const Subset se = s | (Subset(1) << e);
        const Subset sf = s | (Subset(1) << f);
        // Marginal of e shrinks when f is added first.
        if (v.value(se) - v.value(s) < v.value(se | sf) - v.value(sf))
          return {false, "exchange violated at S=" + mask_str(s) + " e=" +
                             std::to_string(e) + " f=" + std::to_string(f)};
      }
    }
  }
  return {};
}

ClassCheck check_subadditive(const Valuation& v) {
  const Subset top = full_mask(v.n());
  if (!top) return {};
  for (Subset s = 0; s <= top; ++s) {
    for (Subset t = 0; t <= top; ++t) {
      if (v.value(s | t) > v.value(s) + v.value(t))
        return {false, "v(" + mask_str(s | t) + ") > v(" + mask_str(s) +
                           ") + v(" + mask_str(t) + ")"};
      if (t == top) break;
    }
    if (s == top) break;
  }
  return {};
}

bool xos_feasible_at(const Valuation& v, Subset s) {
  if (s == 0) return true;
  // Variables: w_e = wp_e - wm_e for e in s (free weights, split in two).
  // Maximize w(s) subject to w(T) <= v(T) for all nonempty T inside s; the
  // bound at T = s caps the optimum at v(s), and feasibility of the
  // supporting-weight system is exactly "optimum == v(s)".
  const std::vector<int> items = items_of(s);
  const int d = static_cast<int>(items.size());
  LinearProgram lp;
  lp.sense = Sense::Max;
  lp.objective.assign(2 * d, Rational(0));
  for (int j = 0; j < d; ++j) {
    lp.objective[2 * j] = 1;
    lp.objective[2 * j + 1] = -1;
  }
  for (Subset tl = 1; tl < (Subset(1) << d); ++tl) {
    std::vector<Rational> row(2 * d, Rational(0));
    Subset t = 0;
    for (int j = 0; j < d; ++j) {
      if ((tl >> j) & 1u) {
        row[2 * j] = 1;
        row[2 * j + 1] = -1;
        t |= Subset(1) << items[j];
      }
    }
    lp.rows.push_back(std::move(row));
    lp.rels.push_back(Rel::Le);
    lp.rhs.push_back(v.value(t));
  }
  const LpSolution sol = solve_lp(lp);
  return sol.status == LpStatus::Optimal && sol.objective == v.value(s);
}

ClassCheck check_xos(const Valuation& v) {
  const Subset top = full_mask(v.n());
  for (Subset s = 1; s <= top && top; ++s) {
    if (!xos_feasible_at(v, s))
      return {false, "no supporting weights at S=" + mask_str(s)};
  }
  return {};
}

ClassCheck validate_class(const Valuation& v, ValClass declared) {
  if (v.monotone()) {
    ClassCheck mono = check_monotone(v);
    if (!mono.ok) {
      mono.witness = "monotone flag: " + mono.witness;
      return mono;
    }
  }
  switch (declared) {
    case ValClass::Additive: return check_additive(v);
    case ValClass::Submodular: return check_submodular(v);
    case ValClass::Xos: return check_xos(v);
    case ValClass::Subadditive: return check_subadditive(v);
  }
  return {};
}

}  // namespace bfmd
