#include "exotic/rational.hpp"

#include <stdexcept>

namespace exotic {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_pow(const Rational& base, int exponent) {
  Rational r = 1;
  Rational b = base;
  bool invert = exponent < 0;
  unsigned e = static_cast<unsigned>(invert ? -exponent : exponent);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  if (invert) r = 1 / r;
  return r;
}

}  // namespace exotic
