// Deterministic instance generators. Random draws funnel through a single
// mt19937_64 stream per call so an (arguments) pair pins the instance
// bit-for-bit; all meta maps record how the instance was made.
#include "bfmd/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace bfmd {

namespace {

std::vector<Rational> additive_table(const std::vector<Rational>& weights) {
  int g = static_cast<int>(weights.size());
  std::vector<Rational> table(std::size_t(1) << g, Rational(0));
  for (Subset s = 1; s < (Subset(1) << g); ++s) {
    Rational sum(0);
    for (int j = 0; j < g; ++j)
      if (contains(s, j)) sum += weights[j];
    table[s] = sum;
  }
  return table;
}

Rational rat_pow(const Rational& base, int exp) {
  Rational out(1);
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::string rat_str(const Rational& x) { return format_rational(x); }

}  // namespace

Instance gen_det_overbid(const Rational& alpha) {
  if (alpha < 1)
    throw std::invalid_argument("gen_det_overbid: alpha must be >= 1");
  Valuation v = Valuation::from_additive({alpha, Rational(1)});
  CostFunction cheap(0, 2, additive_table({Rational(1), Rational(0)}));
  CostFunction trap(0, 2, additive_table({Rational(2), Rational(1)}));
  return Instance(2, {{0, 1}}, Rational(1), v, {cheap},
                  {CostClass{0, {cheap, trap}}}, false,
                  {{"family", "det_overbid"}, {"alpha", rat_str(alpha)}});
}

Instance gen_rand_overbid(int n, const Rational& eps) {
  if (n < 1) throw std::invalid_argument("gen_rand_overbid: n must be >= 1");
  if (eps <= 0)
    throw std::invalid_argument("gen_rand_overbid: eps must be positive");
  Rational ratio = Rational(1) + Rational(n) / eps;
  std::vector<Rational> values(n);
  for (int j = 0; j < n; ++j) values[j] = rat_pow(ratio, n - 1 - j);
  Rational prohibitive = Rational(1) + Rational(n) * rat_pow(ratio, n);
  std::vector<CostFunction> members;
  for (int m = 0; m < n; ++m) {
    std::vector<Rational> w(n, Rational(0));
    for (int j = 0; j < m; ++j) w[j] = prohibitive;
    w[m] = Rational(1);
    members.emplace_back(0, n, additive_table(w));
  }
  std::vector<int> group(n);
  for (int j = 0; j < n; ++j) group[j] = j;
  return Instance(n, {group}, Rational(1), Valuation::from_additive(values),
                  {members[0]}, {CostClass{0, members}}, false,
                  {{"family", "rand_overbid"},
                   {"n", std::to_string(n)},
                   {"eps", rat_str(eps)}});
}

Instance gen_los_nob(int n) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("gen_los_nob: n must be a power of two");
  std::vector<Rational> ones(n, Rational(1));
  std::vector<CostFunction> members;
  for (int price = 1; price <= n; price *= 2) {
    std::vector<Rational> w(n, Rational(price));
    members.emplace_back(0, n, additive_table(w));
  }
  std::vector<int> group(n);
  for (int j = 0; j < n; ++j) group[j] = j;
  return Instance(n, {group}, Rational(n), Valuation::from_additive(ones),
                  {members[0]}, {CostClass{0, members}}, true,
                  {{"family", "los_nob"}, {"n", std::to_string(n)}});
}

Instance gen_phi() {
  Valuation v = Valuation::from_additive({Rational(1), Rational(1618, 1000)});
  CostFunction a(0, 2, additive_table({Rational(1), Rational(2)}));
  CostFunction b(0, 2, additive_table({Rational(3, 2), Rational(1, 2)}));
  return Instance(2, {{0, 1}}, Rational(2), v, {a}, {CostClass{0, {a, b}}},
                  true,
                  {{"family", "phi"}, {"phi_surrogate", "1618/1000"}});
}

Instance gen_anari(int n, unsigned long long seed, int grid) {
  if (n < 1 || n > 20)
    throw std::invalid_argument("gen_anari: n out of range");
  if (grid < 2) throw std::invalid_argument("gen_anari: grid must be >= 2");
  const Rational ebar(2718, 1000);  // rational stand-in for e
  auto cost_at = [&](const Rational& u) {
    if (u <= Rational(1) / ebar) return Rational(0);
    return Rational(1) - Rational(1) / (ebar * u);
  };
  Rational mean(0);
  for (int r = 0; r < grid; ++r) mean += cost_at(Rational(r, grid));
  mean /= grid;
  Rational budget = Rational(n) * mean;
  if (budget == 0) budget = Rational(1);

  std::mt19937_64 rng(seed);
  auto draw = [&] {
    return cost_at(Rational(static_cast<long long>(rng() % grid), grid));
  };
  std::vector<std::vector<int>> groups(n);
  std::vector<CostFunction> truth;
  std::vector<CostClass> classes;
  std::vector<Rational> ones(n, Rational(1));
  for (int i = 0; i < n; ++i) {
    groups[i] = {i};
    Rational c1 = draw(), c2 = draw();
    CostFunction first(i, 1, {Rational(0), c1});
    CostClass cls{i, {first}};
    if (c2 != c1) cls.members.emplace_back(i, 1, std::vector<Rational>{
                                                     Rational(0), c2});
    truth.push_back(first);
    classes.push_back(std::move(cls));
  }
  bool nob = true;
  for (const auto& cls : classes)
    for (const auto& m : cls.members)
      if (m.local_cost(1) > budget) nob = false;
  return Instance(n, groups, budget, Valuation::from_additive(ones), truth,
                  classes, nob,
                  {{"family", "anari"},
                   {"seed", std::to_string(seed)},
                   {"grid", std::to_string(grid)},
                   {"e_surrogate", "2718/1000"}});
}

namespace {

std::vector<Rational> random_cost_table(std::mt19937_64& rng, int g,
                                        CostFamily family) {
  switch (family) {
    case CostFamily::Additive: {
      std::vector<Rational> w(g);
      for (auto& x : w) x = Rational(1 + static_cast<int>(rng() % 8));
      return additive_table(w);
    }
    case CostFamily::Superadditive: {
      std::vector<Rational> w(g);
      for (auto& x : w) x = Rational(1 + static_cast<int>(rng() % 6));
      Rational synergy(static_cast<int>(rng() % 4));
      std::vector<Rational> table = additive_table(w);
      for (Subset s = 0; s < (Subset(1) << g); ++s) {
        int sz = popcount(s);
        table[s] += synergy * Rational(sz * (sz - 1) / 2);
      }
      return table;
    }
    case CostFamily::Monotone: {
      std::vector<Rational> table(std::size_t(1) << g, Rational(0));
      std::vector<Subset> order;
      for (Subset s = 1; s < (Subset(1) << g); ++s) order.push_back(s);
      std::sort(order.begin(), order.end(), [](Subset a, Subset b) {
        return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
      });
      for (Subset s : order) {
        Rational floor_cost(0);
        for (int j = 0; j < g; ++j)
          if (contains(s, j))
            floor_cost = std::max(floor_cost, table[s & ~bit(j)]);
        int bump = popcount(s) == 1 ? 1 + static_cast<int>(rng() % 5)
                                    : static_cast<int>(rng() % 5);
        table[s] = floor_cost + Rational(bump);
      }
      return table;
    }
  }
  throw std::invalid_argument("unknown cost family");
}

Valuation random_valuation(std::mt19937_64& rng, int n, ValClass family) {
  switch (family) {
    case ValClass::Additive: {
      std::vector<Rational> w(n);
      for (auto& x : w) x = Rational(static_cast<int>(rng() % 8));
      return Valuation::from_additive(w);
    }
    case ValClass::Submodular: {
      // weighted coverage: item e covers a random nonempty ground subset
      int m = n + 2;
      std::vector<Rational> uw(m);
      for (auto& x : uw) x = Rational(1 + static_cast<int>(rng() % 5));
      std::vector<unsigned> covers(n, 0);
      for (int e = 0; e < n; ++e) {
        for (int j = 0; j < m; ++j)
          if (rng() & 1u) covers[e] |= 1u << j;
        if (covers[e] == 0) covers[e] = 1u << (rng() % m);
      }
      std::vector<Rational> table(std::size_t(1) << n, Rational(0));
      for (Subset s = 1; s < (Subset(1) << n); ++s) {
        unsigned covered = 0;
        for (int e = 0; e < n; ++e)
          if (contains(s, e)) covered |= covers[e];
        Rational sum(0);
        for (int j = 0; j < m; ++j)
          if (covered & (1u << j)) sum += uw[j];
        table[s] = sum;
      }
      return Valuation::from_table(n, std::move(table), ValClass::Submodular,
                                   true);
    }
    case ValClass::Xos: {
      int clauses = 2 + static_cast<int>(rng() % 2);
      std::vector<std::vector<Rational>> cl(clauses);
      for (auto& c : cl) {
        c.resize(n);
        for (auto& x : c) x = Rational(static_cast<int>(rng() % 7));
      }
      return Valuation::from_xos(n, std::move(cl), ValClass::Xos, true);
    }
    case ValClass::Subadditive: {
      // symmetric subadditive closure of a random monotone size profile
      std::vector<Rational> g(n + 1, Rational(0)), f(n + 1, Rational(0));
      for (int i = 1; i <= n; ++i)
        g[i] = g[i - 1] + Rational(1 + static_cast<int>(rng() % 3));
      for (int i = 1; i <= n; ++i) {
        f[i] = g[i];
        for (int j = 1; j < i; ++j)
          f[i] = std::min(f[i], Rational(f[j] + f[i - j]));
      }
      std::vector<Rational> table(std::size_t(1) << n);
      for (Subset s = 0; s < (Subset(1) << n); ++s) table[s] = f[popcount(s)];
      return Valuation::from_table(n, std::move(table),
                                   ValClass::Subadditive, true);
    }
  }
  throw std::invalid_argument("unknown valuation family");
}

}  // namespace

Instance gen_random(const RandomSpec& spec) {
  if (spec.n < 1 || spec.n > 10)
    throw std::invalid_argument("gen_random: n must lie in [1, 10]");
  if (spec.k < 1 || spec.k > std::min(6, spec.n))
    throw std::invalid_argument("gen_random: k must lie in [1, min(6, n)]");
  if (spec.class_size < 1)
    throw std::invalid_argument("gen_random: class_size must be >= 1");
  if (spec.budget_fraction <= 0)
    throw std::invalid_argument("gen_random: budget fraction must be > 0");
  std::mt19937_64 rng(spec.seed);

  std::vector<std::vector<int>> groups(spec.k);
  for (int e = 0; e < spec.n; ++e) {
    int owner = e < spec.k ? e : static_cast<int>(rng() % spec.k);
    groups[owner].push_back(e);
  }

  Valuation v = random_valuation(rng, spec.n, spec.valuation);

  std::vector<CostClass> classes;
  for (int i = 0; i < spec.k; ++i) {
    int g = static_cast<int>(groups[i].size());
    CostClass cls{i, {}};
    for (int m = 0; m < spec.class_size; ++m) {
      for (int attempt = 0;; ++attempt) {
        std::vector<Rational> table = random_cost_table(rng, g, spec.costs);
        bool fresh = std::none_of(
            cls.members.begin(), cls.members.end(),
            [&](const CostFunction& o) { return o.table() == table; });
        if (fresh) {
          cls.members.emplace_back(i, g, std::move(table));
          break;
        }
        if (attempt > 1000)
          throw std::logic_error("gen_random: cannot draw distinct members");
      }
    }
    classes.push_back(std::move(cls));
  }

  CostProfile truth;
  for (const auto& cls : classes) truth.push_back(cls.members[0]);
  Rational total(0);
  for (int i = 0; i < spec.k; ++i)
    total += truth[i].local_cost(full_mask(
        static_cast<int>(groups[i].size())));
  Rational budget(ceil_rat(total * spec.budget_fraction));
  if (budget < 1) budget = Rational(1);

  std::map<std::string, std::string> meta{
      {"family", "random"},
      {"seed", std::to_string(spec.seed)},
      {"valuation", val_class_name(spec.valuation)},
      {"costs", spec.costs == CostFamily::Additive        ? "additive"
                : spec.costs == CostFamily::Superadditive ? "superadditive"
                                                          : "monotone"}};
  if (spec.no_overbidding) {
    // cap singleton prices at the budget (rebuilding additive tables from
    // capped weights) so the no-overbidding flag is honest
    for (auto& cls : classes) {
      int g = cls.members[0].group_size();
      std::vector<CostFunction> capped;
      for (const auto& member : cls.members) {
        std::vector<Rational> table = member.table();
        if (spec.costs == CostFamily::Additive) {
          std::vector<Rational> w(g);
          for (int j = 0; j < g; ++j)
            w[j] = std::min(table[bit(j)], budget);
          table = additive_table(w);
        } else {
          for (int j = 0; j < g; ++j)
            table[bit(j)] = std::min(table[bit(j)], budget);
        }
        bool fresh = std::none_of(
            capped.begin(), capped.end(),
            [&](const CostFunction& o) { return o.table() == table; });
        if (fresh) capped.emplace_back(cls.owner, g, std::move(table));
      }
      cls.members = std::move(capped);
    }
    truth.clear();
    for (const auto& cls : classes) truth.push_back(cls.members[0]);
    meta["nob_capped"] = "1";
  }

  return Instance(spec.n, groups, budget, v, truth, classes,
                  spec.no_overbidding, meta);
}

}  // namespace bfmd
