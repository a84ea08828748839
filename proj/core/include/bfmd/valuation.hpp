// Buyer valuations over item subsets: dense tables, additive weights, or
// clause lists (max over additive clauses). A dense 2^n table is always
// materialized at construction so evaluation is uniform and cheap at desk
// scale; the original payload is kept for serialization.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bfmd/rational.hpp"
#include "bfmd/subset.hpp"

namespace bfmd {

enum class ValClass { Additive, Submodular, Xos, Subadditive };

std::string val_class_name(ValClass c);
std::optional<ValClass> val_class_from_name(const std::string& name);

/// True when membership in `outer` is implied by membership in `inner`
/// (additive => submodular => xos => subadditive, for monotone normalized v).
bool val_class_implies(ValClass inner, ValClass outer);

enum class ValVariant { Table, Additive, XosClauses };

class Valuation {
 public:
  /// Dense table form; `table[mask]` is v(mask), must have 2^n entries.
  static Valuation from_table(int n, std::vector<Rational> table,
                              ValClass declared, bool monotone);
  /// Additive form with one weight per item.
  static Valuation from_additive(std::vector<Rational> weights);
  /// Max-of-additive-clauses form; clause weights may be negative as long as
  /// the induced set function satisfies the declared class.
  static Valuation from_xos(int n, std::vector<std::vector<Rational>> clauses,
                            ValClass declared, bool monotone);

  int n() const { return n_; }
  ValVariant variant() const { return variant_; }
  ValClass declared_class() const { return declared_; }
  bool monotone() const { return monotone_; }

  const Rational& value(Subset s) const { return table_[s]; }

  const std::vector<Rational>& dense_table() const { return table_; }
  const std::vector<Rational>& additive_weights() const { return weights_; }
  const std::vector<std::vector<Rational>>& clauses() const { return clauses_; }

 private:
  Valuation() = default;

  int n_ = 0;
  ValVariant variant_ = ValVariant::Table;
  ValClass declared_ = ValClass::Subadditive;
  bool monotone_ = true;
  std::vector<Rational> table_;                 // dense, size 2^n
  std::vector<Rational> weights_;               // additive payload
  std::vector<std::vector<Rational>> clauses_;  // xos payload
};

}  // namespace bfmd
