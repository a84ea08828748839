#include "bfmd/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bfmd {

namespace {

using Json = nlohmann::ordered_json;

Rational rat_field(const Json& j, const std::string& path) {
  if (!j.is_string())
    throw ParseError(path + ": expected a \"p/q\" string");
  const auto r = parse_rational(j.get<std::string>());
  if (!r) throw ParseError(path + ": malformed rational");
  return *r;
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(path + "." + key + " missing");
  return j.at(key);
}

std::vector<Rational> table_field(const Json& j, int bits,
                                  const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const std::size_t size = std::size_t(1) << bits;
  std::vector<Rational> out(size, Rational(0));
  std::vector<bool> seen(size, false);
  for (const auto& [key, val] : j.items()) {
    std::size_t mask = 0;
    try {
      mask = std::stoul(key);
    } catch (...) {
      throw ParseError(path + "." + key + ": key is not a bitmask");
    }
    if (mask >= size)
      throw ParseError(path + "." + key + ": bitmask out of range");
    out[mask] = rat_field(val, path + "." + key);
    seen[mask] = true;
  }
  for (std::size_t m = 0; m < size; ++m)
    if (!seen[m])
      throw ParseError(path + "." + std::to_string(m) + " missing");
  return out;
}

CostFunction cost_field(const Json& j, int owner, int group_size,
                        const std::string& path) {
  const Json& tab = field(j, "table", path);
  return CostFunction(owner, group_size,
                      table_field(tab, group_size, path + ".table"));
}

Json table_json(const std::vector<Rational>& table) {
  Json out = Json::object();
  for (std::size_t m = 0; m < table.size(); ++m)
    out[std::to_string(m)] = format_rational(table[m]);
  return out;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("root: expected an object");

  const Json& jn = field(root, "n", "root");
  if (!jn.is_number_integer()) throw ParseError("n: expected an integer");
  const int n = jn.get<int>();

  const Json& jg = field(root, "groups", "root");
  if (!jg.is_array()) throw ParseError("groups: expected an array");
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < jg.size(); ++i) {
    const Json& g = jg.at(i);
    if (!g.is_array())
      throw ParseError("groups." + std::to_string(i) + ": expected an array");
    std::vector<int> ids;
    for (const auto& e : g) {
      if (!e.is_number_integer())
        throw ParseError("groups." + std::to_string(i) + ": non-integer item");
      ids.push_back(e.get<int>());
    }
    groups.push_back(std::move(ids));
  }

  const Rational budget = rat_field(field(root, "budget", "root"), "budget");

  const Json& jv = field(root, "valuation", "root");
  const Json& jvar = field(jv, "variant", "valuation");
  if (!jvar.is_string()) throw ParseError("valuation.variant: expected string");
  const std::string variant = jvar.get<std::string>();

  ValClass declared = ValClass::Additive;
  bool monotone = true;
  if (variant != "additive") {
    const Json& jd = field(jv, "declared_class", "valuation");
    if (!jd.is_string())
      throw ParseError("valuation.declared_class: expected string");
    const auto dc = val_class_from_name(jd.get<std::string>());
    if (!dc) throw ParseError("valuation.declared_class: unknown class");
    declared = *dc;
    const Json& jm = field(jv, "monotone", "valuation");
    if (!jm.is_boolean())
      throw ParseError("valuation.monotone: expected boolean");
    monotone = jm.get<bool>();
  }

  Valuation val = [&]() -> Valuation {
    if (variant == "table") {
      return Valuation::from_table(
          n, table_field(field(jv, "table", "valuation"), n,
                         "valuation.table"),
          declared, monotone);
    }
    if (variant == "additive") {
      const Json& jw = field(jv, "weights", "valuation");
      if (!jw.is_array() || static_cast<int>(jw.size()) != n)
        throw ParseError("valuation.weights: expected array of n rationals");
      std::vector<Rational> w;
      for (std::size_t e = 0; e < jw.size(); ++e)
        w.push_back(rat_field(jw.at(e),
                              "valuation.weights." + std::to_string(e)));
      return Valuation::from_additive(std::move(w));
    }
    if (variant == "xos") {
      const Json& jc = field(jv, "clauses", "valuation");
      if (!jc.is_array() || jc.empty())
        throw ParseError("valuation.clauses: expected nonempty array");
      std::vector<std::vector<Rational>> clauses;
      for (std::size_t a = 0; a < jc.size(); ++a) {
        const Json& row = jc.at(a);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
          throw ParseError("valuation.clauses." + std::to_string(a) +
                           ": expected array of n rationals");
        std::vector<Rational> cl;
        for (std::size_t e = 0; e < row.size(); ++e)
          cl.push_back(rat_field(row.at(e), "valuation.clauses." +
                                                std::to_string(a) + "." +
                                                std::to_string(e)));
        clauses.push_back(std::move(cl));
      }
      return Valuation::from_xos(n, std::move(clauses), declared, monotone);
    }
    throw ParseError("valuation.variant: unknown variant \"" + variant + "\"");
  }();

  const Json& jt = field(root, "true_costs", "root");
  if (!jt.is_array() || jt.size() != groups.size())
    throw ParseError("true_costs: expected one entry per player");
  CostProfile true_costs;
  for (std::size_t i = 0; i < jt.size(); ++i) {
    true_costs.push_back(cost_field(jt.at(i), static_cast<int>(i),
                                    static_cast<int>(groups[i].size()),
                                    "true_costs." + std::to_string(i)));
  }

  const Json& jcls = field(root, "cost_classes", "root");
  if (!jcls.is_array() || jcls.size() != groups.size())
    throw ParseError("cost_classes: expected one entry per player");
  std::vector<CostClass> classes;
  for (std::size_t i = 0; i < jcls.size(); ++i) {
    const Json& members = jcls.at(i);
    const std::string path = "cost_classes." + std::to_string(i);
    if (!members.is_array() || members.empty())
      throw ParseError(path + ": expected nonempty array");
    CostClass cls;
    cls.owner = static_cast<int>(i);
    for (std::size_t a = 0; a < members.size(); ++a) {
      cls.members.push_back(cost_field(members.at(a), static_cast<int>(i),
                                       static_cast<int>(groups[i].size()),
                                       path + "." + std::to_string(a)));
    }
    classes.push_back(std::move(cls));
  }

  const Json& jnob = field(root, "no_overbidding", "root");
  if (!jnob.is_boolean())
    throw ParseError("no_overbidding: expected boolean");

  std::map<std::string, std::string> meta;
  if (root.contains("meta")) {
    const Json& jm = root.at("meta");
    if (!jm.is_object()) throw ParseError("meta: expected object");
    for (const auto& [key, val2] : jm.items()) {
      if (!val2.is_string()) throw ParseError("meta." + key + ": string only");
      meta[key] = val2.get<std::string>();
    }
  }

  return Instance(n, std::move(groups), budget, std::move(val),
                  std::move(true_costs), std::move(classes),
                  jnob.get<bool>(), std::move(meta));
}

std::string serialize_instance(const Instance& inst) {
  Json root = Json::object();
  root["n"] = inst.n();
  Json groups = Json::array();
  for (const auto& g : inst.groups()) groups.push_back(g);
  root["groups"] = std::move(groups);
  root["budget"] = format_rational(inst.budget());

  const Valuation& v = inst.valuation();
  Json jv = Json::object();
  switch (v.variant()) {
    case ValVariant::Table:
      jv["variant"] = "table";
      jv["table"] = table_json(v.dense_table());
      break;
    case ValVariant::Additive: {
      jv["variant"] = "additive";
      Json w = Json::array();
      for (const auto& x : v.additive_weights())
        w.push_back(format_rational(x));
      jv["weights"] = std::move(w);
      break;
    }
    case ValVariant::XosClauses: {
      jv["variant"] = "xos";
      Json cl = Json::array();
      for (const auto& row : v.clauses()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(format_rational(x));
        cl.push_back(std::move(r));
      }
      jv["clauses"] = std::move(cl);
      break;
    }
  }
  if (v.variant() != ValVariant::Additive) {
    jv["declared_class"] = val_class_name(v.declared_class());
    jv["monotone"] = v.monotone();
  }
  root["valuation"] = std::move(jv);

  Json jt = Json::array();
  for (const CostFunction& f : inst.true_costs()) {
    Json e = Json::object();
    e["table"] = table_json(f.table());
    jt.push_back(std::move(e));
  }
  root["true_costs"] = std::move(jt);

  Json jcls = Json::array();
  for (const CostClass& cls : inst.cost_classes()) {
    Json members = Json::array();
    for (const CostFunction& f : cls.members) {
      Json e = Json::object();
      e["table"] = table_json(f.table());
      members.push_back(std::move(e));
    }
    jcls.push_back(std::move(members));
  }
  root["cost_classes"] = std::move(jcls);

  root["no_overbidding"] = inst.no_overbidding();
  Json jm = Json::object();
  for (const auto& [key, val2] : inst.meta()) jm[key] = val2;
  root["meta"] = std::move(jm);

  return root.dump(2) + "\n";
}

std::string instance_digest(const Instance& inst) {
  const std::string text = serialize_instance(inst);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_instance(text.str());
}

}  // namespace bfmd
