#include "bfmd/rational.hpp"

#include <cctype>

namespace bfmd {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_integer_token(text)) return std::nullopt;
      return Rational(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    return Rational(Int(num), d);
  } catch (...) {
    return std::nullopt;
  }
}

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Int floor_rat(const Rational& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Int ceil_rat(const Rational& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

int floor_log2(Int n) {
  int l = 0;
  while (n > 1) {
    n >>= 1;
    ++l;
  }
  return l;
}

int ceil_log2(Int n) {
  int l = floor_log2(n);
  return (Int(1) << l) == n ? l : l + 1;
}

}  // namespace bfmd
