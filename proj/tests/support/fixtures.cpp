#include "fixtures.hpp"

#include <array>
#include <utility>

namespace bfmd::testing {

CostFunction additive_cost(int owner, const std::vector<Rational>& weights) {
  const int g = static_cast<int>(weights.size());
  std::vector<Rational> table(std::size_t(1) << g, Rational(0));
  for (Subset s = 1; s < (Subset(1) << g); ++s)
    for (int j = 0; j < g; ++j)
      if ((s >> j) & 1u) table[s] += weights[j];
  return CostFunction(owner, g, std::move(table));
}

Instance make_i0() {
  const std::vector<Rational> table = {
      Rational(0), Rational(4), Rational(2), Rational(6),
      Rational(3), Rational(7), Rational(5), Rational(8),
      Rational(1), Rational(5), Rational(3), Rational(7),
      Rational(4), Rational(8), Rational(6), Rational(9)};
  Valuation v =
      Valuation::from_table(4, table, ValClass::Submodular, true);

  CostProfile truth = {additive_cost(0, {Rational(2), Rational(1)}),
                       additive_cost(1, {Rational(2), Rational(1)})};
  CostClass c0{0,
               {truth[0], additive_cost(0, {Rational(1), Rational(2)})}};
  CostClass c1{1,
               {truth[1], additive_cost(1, {Rational(3), Rational(1)})}};
  return Instance(4, {{0, 1}, {2, 3}}, Rational(3), std::move(v),
                  std::move(truth), {std::move(c0), std::move(c1)}, true,
                  {{"family", "worked_example"}});
}

Instance make_replay_control() {
  Valuation v = Valuation::from_additive({Rational(2), Rational(1)});
  CostProfile truth = {additive_cost(0, {Rational(4), Rational(1)})};
  CostClass cls{
      0, {truth[0], additive_cost(0, {Rational(5), Rational(4)})}};
  return Instance(2, {{0, 1}}, Rational(4), std::move(v), std::move(truth),
                  {std::move(cls)}, false, {{"family", "replay_control"}});
}

Instance make_cover_gap() {
  std::vector<Rational> table(8, Rational(1));
  table[0] = Rational(0);
  table[7] = Rational(2);
  Valuation v =
      Valuation::from_table(3, table, ValClass::Subadditive, true);
  CostProfile truth;
  std::vector<CostClass> classes;
  for (int i = 0; i < 3; ++i) {
    truth.push_back(additive_cost(i, {Rational(0)}));
    classes.push_back(
        CostClass{i, {truth[i], additive_cost(i, {Rational(1)})}});
  }
  return Instance(3, {{0}, {1}, {2}}, Rational(3), std::move(v),
                  std::move(truth), std::move(classes), true,
                  {{"family", "cover_gap"}});
}

const std::vector<Instance>& core_corpus() {
  static const std::vector<Instance> corpus = [] {
    std::vector<Instance> out;
    struct Shape {
      int n, k, class_size;
    };
    const std::array<Shape, 10> shapes = {{{2, 1, 2},
                                           {3, 1, 3},
                                           {2, 2, 2},
                                           {3, 2, 2},
                                           {3, 3, 2},
                                           {4, 2, 2},
                                           {4, 2, 3},
                                           {4, 3, 2},
                                           {5, 2, 2},
                                           {5, 3, 2}}};
    unsigned long long seed = 1;
    for (int round = 0; round < 5; ++round) {
      for (const Shape& sh : shapes) {
        RandomSpec spec;
        spec.n = sh.n;
        spec.k = sh.k;
        spec.valuation = ValClass::Additive;
        spec.costs = CostFamily::Additive;
        spec.class_size = sh.class_size;
        spec.seed = seed++;
        spec.no_overbidding = true;
        out.push_back(gen_random(spec));
      }
    }
    return out;
  }();
  return corpus;
}

const std::vector<Instance>& extra_corpus() {
  static const std::vector<Instance> corpus = [] {
    std::vector<Instance> out;
    unsigned long long seed = 1001;
    auto add = [&](ValClass v, CostFamily c, int n, int k, bool nob,
                   int copies) {
      for (int i = 0; i < copies; ++i) {
        RandomSpec spec;
        spec.n = n;
        spec.k = k;
        spec.valuation = v;
        spec.costs = c;
        spec.class_size = 2;
        spec.seed = seed++;
        spec.no_overbidding = nob;
        out.push_back(gen_random(spec));
      }
    };
    add(ValClass::Submodular, CostFamily::Additive, 4, 2, true, 3);
    add(ValClass::Xos, CostFamily::Additive, 4, 2, true, 2);
    add(ValClass::Xos, CostFamily::Superadditive, 4, 2, true, 2);
    add(ValClass::Xos, CostFamily::Monotone, 4, 2, false, 3);
    add(ValClass::Additive, CostFamily::Monotone, 4, 2, false, 2);
    add(ValClass::Additive, CostFamily::Superadditive, 4, 2, true, 3);
    add(ValClass::Subadditive, CostFamily::Additive, 4, 2, true, 2);
    add(ValClass::Subadditive, CostFamily::Superadditive, 3, 2, true, 1);
    out.push_back(make_i0());
    out.push_back(make_cover_gap());
    out.push_back(gen_phi());
    out.push_back(gen_det_overbid(Rational(2)));
    out.push_back(gen_los_nob(2));
    out.push_back(gen_anari(3, 7, 8));
    out.push_back(gen_rand_overbid(3, Rational(1, 2)));
    return out;
  }();
  return corpus;
}

const std::vector<Instance>& full_corpus() {
  static const std::vector<Instance> corpus = [] {
    std::vector<Instance> out = core_corpus();
    const std::vector<Instance>& extra = extra_corpus();
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  }();
  return corpus;
}

}  // namespace bfmd::testing
