#include "bfmd/valuation.hpp"

namespace bfmd {

std::string val_class_name(ValClass c) {
  switch (c) {
    case ValClass::Additive: return "additive";
    case ValClass::Submodular: return "submodular";
    case ValClass::Xos: return "xos";
    case ValClass::Subadditive: return "subadditive";
  }
  return "?";
}

std::optional<ValClass> val_class_from_name(const std::string& name) {
  if (name == "additive") return ValClass::Additive;
  if (name == "submodular") return ValClass::Submodular;
  if (name == "xos") return ValClass::Xos;
  if (name == "subadditive") return ValClass::Subadditive;
  return std::nullopt;
}

bool val_class_implies(ValClass inner, ValClass outer) {
  return static_cast<int>(inner) <= static_cast<int>(outer);
}

Valuation Valuation::from_table(int n, std::vector<Rational> table,
                                ValClass declared, bool monotone) {
  if (n < 0 || n > 20) throw std::invalid_argument("valuation: bad n");
  if (table.size() != (std::size_t(1) << n))
    throw std::invalid_argument("valuation: table must have 2^n entries");
  if (table[0] != 0)
    throw std::invalid_argument("valuation: v(empty) must be 0");
  Valuation v;
  v.n_ = n;
  v.variant_ = ValVariant::Table;
  v.declared_ = declared;
  v.monotone_ = monotone;
  v.table_ = std::move(table);
  return v;
}

Valuation Valuation::from_additive(std::vector<Rational> weights) {
  const int n = static_cast<int>(weights.size());
  if (n > 20) throw std::invalid_argument("valuation: bad n");
  for (const auto& w : weights)
    if (w < 0) throw std::invalid_argument("valuation: additive weight < 0");
  std::vector<Rational> table(std::size_t(1) << n, Rational(0));
  for (Subset s = 1; s < table.size(); ++s) {
    const int e = std::countr_zero(s);
    table[s] = table[s & (s - 1u)] + weights[e];
  }
  Valuation v;
  v.n_ = n;
  v.variant_ = ValVariant::Additive;
  v.declared_ = ValClass::Additive;
  v.monotone_ = true;
  v.table_ = std::move(table);
  v.weights_ = std::move(weights);
  return v;
}

Valuation Valuation::from_xos(int n, std::vector<std::vector<Rational>> clauses,
                              ValClass declared, bool monotone) {
  if (n < 0 || n > 20) throw std::invalid_argument("valuation: bad n");
  if (clauses.empty()) throw std::invalid_argument("valuation: no clauses");
  for (const auto& a : clauses)
    if (static_cast<int>(a.size()) != n)
      throw std::invalid_argument("valuation: clause length != n");
  std::vector<Rational> table(std::size_t(1) << n, Rational(0));
  for (Subset s = 1; s < table.size(); ++s) {
    bool first = true;
    for (const auto& a : clauses) {
      Rational sum(0);
      for (int e = 0; s >> e; ++e)
        if (contains(s, e)) sum += a[e];
      if (first || sum > table[s]) table[s] = sum;
      first = false;
    }
  }
  if (table[0] != 0) throw std::invalid_argument("valuation: v(empty) != 0");
  Valuation v;
  v.n_ = n;
  v.variant_ = ValVariant::XosClauses;
  v.declared_ = declared;
  v.monotone_ = monotone;
  v.table_ = std::move(table);
  v.clauses_ = std::move(clauses);
  return v;
}

}  // namespace bfmd
