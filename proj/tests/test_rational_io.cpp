// Rational encoding, instance construction invariants, JSON round trips,
// and the valuation class validators.
#include <stdexcept>

#include "doctest.h"

#include "bfmd/classes.hpp"
#include "bfmd/io.hpp"
#include "fixtures.hpp"

using namespace bfmd;
using bfmd::testing::additive_cost;
using bfmd::testing::make_i0;

namespace {

template <class F>
std::string thrown_message(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

bool mentions(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("rational parse and canonical format") {
  CHECK(*parse_rational("3/1") == Rational(3));
  CHECK(*parse_rational("3") == Rational(3));
  CHECK(*parse_rational("-2/4") == Rational(-1, 2));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("x/2").has_value());
  CHECK(!parse_rational("1.5").has_value());
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK(format_rational(Rational(-1, 2)) == "-1/2");
  CHECK(*parse_rational(format_rational(Rational(22, 7))) == Rational(22, 7));
}

TEST_CASE("integer rounding and logs") {
  CHECK(floor_rat(Rational(7, 2)) == 3);
  CHECK(floor_rat(Rational(-7, 2)) == -4);
  CHECK(ceil_rat(Rational(7, 2)) == 4);
  CHECK(ceil_rat(Rational(-7, 2)) == -3);
  CHECK(floor_rat(Rational(4)) == 4);
  CHECK(floor_log2(Int(1)) == 0);
  CHECK(floor_log2(Int(5)) == 2);
  CHECK(ceil_log2(Int(1)) == 0);
  CHECK(ceil_log2(Int(4)) == 2);
  CHECK(ceil_log2(Int(5)) == 3);
}

TEST_CASE("subset helpers") {
  CHECK(full_mask(3) == 7u);
  CHECK(popcount(0b1011u) == 3);
  CHECK(bit(2) == 4u);
  CHECK(items_of(0b1010u) == std::vector<int>{1, 3});
  const Subset group = 0b1100u;  // items 2 and 3
  CHECK(global_to_local(0b0100u, group) == 0b01u);
  CHECK(global_to_local(0b1000u, group) == 0b10u);
  CHECK(local_to_global(0b11u, group) == group);
}

TEST_CASE("cost function flags") {
  const CostFunction add = additive_cost(0, {Rational(2), Rational(1)});
  CHECK(add.additive());
  CHECK(add.superadditive());

  // strictly superadditive: pair costs more than the sum of singletons
  const CostFunction sup(0, 2,
                         {Rational(0), Rational(1), Rational(1), Rational(3)});
  CHECK(!sup.additive());
  CHECK(sup.superadditive());

  // subadditive pair: neither flag
  const CostFunction sub(0, 2,
                         {Rational(0), Rational(2), Rational(2), Rational(3)});
  CHECK(!sub.additive());
  CHECK(!sub.superadditive());
}

TEST_CASE("valuation class validators") {
  // additive weights are XOS
  Valuation add = Valuation::from_additive(
      {Rational(4), Rational(2), Rational(3), Rational(1)});
  CHECK(validate_class(add, ValClass::Xos).ok);
  CHECK(validate_class(add, ValClass::Additive).ok);

  // |S| with the top set bumped to 3 breaks subadditivity (3 > 1 + 1)
  Valuation bad = Valuation::from_table(
      2, {Rational(0), Rational(1), Rational(1), Rational(3)},
      ValClass::Subadditive, true);
  const ClassCheck failed = validate_class(bad, ValClass::Subadditive);
  CHECK(!failed.ok);
  CHECK(!failed.witness.empty());

  // the worked market's table is submodular but not additive
  Valuation i0 = make_i0().valuation();
  CHECK(validate_class(i0, ValClass::Submodular).ok);
  CHECK(validate_class(i0, ValClass::Xos).ok);
  CHECK(!validate_class(i0, ValClass::Additive).ok);

  CHECK(val_class_implies(ValClass::Additive, ValClass::Subadditive));
  CHECK(!val_class_implies(ValClass::Subadditive, ValClass::Xos));
}

TEST_CASE("instance construction invariants") {
  Instance i0 = make_i0();
  CHECK(i0.n() == 4);
  CHECK(i0.k() == 2);
  CHECK(i0.zeta() == 2);
  CHECK(i0.group_mask(0) == 0b0011u);
  CHECK(i0.group_mask(1) == 0b1100u);
  CHECK(i0.owner_of(2) == 1);
  CHECK(i0.value(0b0011u) == 6);
  CHECK(i0.true_total_cost(0b0011u) == 3);
  CHECK(i0.player_cost(i0.true_costs(), 1, 0b0110u) == 2);
  CHECK(i0.side_mask(0b10u) == 0b1100u);
  CHECK(i0.all_singletons_affordable());
  CHECK(i0.no_overbidding());

  // overlapping groups rejected
  Valuation v = Valuation::from_additive({Rational(1), Rational(1)});
  CostProfile truth = {additive_cost(0, {Rational(1), Rational(1)})};
  std::vector<CostClass> cls = {CostClass{0, {truth[0]}}};
  CHECK_THROWS_AS(Instance(2, {{0, 1}, {1}}, Rational(1), v, truth, cls,
                           false, {}),
                  std::invalid_argument);

  // true cost missing from its class rejected
  CostProfile other = {additive_cost(0, {Rational(2), Rational(2)})};
  CHECK_THROWS_AS(Instance(2, {{0, 1}}, Rational(1), v, other, cls, false,
                           {}),
                  std::invalid_argument);

  // no-overbidding flag asserted but a member overbids
  std::vector<CostClass> heavy = {
      CostClass{0, {truth[0], additive_cost(0, {Rational(9), Rational(1)})}}};
  CHECK_THROWS_AS(Instance(2, {{0, 1}}, Rational(1), v, truth, heavy, true,
                           {}),
                  std::invalid_argument);

  // declared class must validate: the bumped-top table is not subadditive
  Valuation bad = Valuation::from_table(
      2, {Rational(0), Rational(1), Rational(1), Rational(3)},
      ValClass::Subadditive, true);
  CHECK_THROWS_AS(Instance(2, {{0, 1}}, Rational(4), bad, truth,
                           {CostClass{0, {truth[0]}}}, false, {}),
                  std::invalid_argument);
}

TEST_CASE("serialize then parse round trips") {
  const std::vector<Instance> cases = {make_i0(),
                                       bfmd::testing::make_cover_gap()};
  for (const Instance& inst : cases) {
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(serialize_instance(back) == text);
    CHECK(instance_digest(back) == instance_digest(inst));
    CHECK(back.value(full_mask(back.n())) ==
          inst.value(full_mask(inst.n())));
  }
}

TEST_CASE("parse diagnostics carry field paths") {
  CHECK(mentions(thrown_message([] { parse_instance("{}"); }), "root.n"));
  CHECK(mentions(
      thrown_message([] { parse_instance(R"({"n":1,"groups":[[0]]})"); }),
      "budget"));
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);

  // malformed rational inside a cost table names the table cell
  std::string text = serialize_instance(make_i0());
  const std::string needle = "\"1\": \"2/1\"";
  text.replace(text.find(needle), needle.size(), "\"1\": \"oops\"");
  CHECK(mentions(thrown_message([&] { parse_instance(text); }), "table"));
}

TEST_CASE("digest is stable across equal instances") {
  CHECK(instance_digest(make_i0()) == instance_digest(make_i0()));
  CHECK(instance_digest(make_i0()) !=
        instance_digest(bfmd::testing::make_replay_control()));
  CHECK(instance_digest(make_i0()).size() == 16);
}
