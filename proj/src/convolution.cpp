#include "exotic/convolution.hpp"

#include <algorithm>

#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"

namespace exotic {

Coproduct parse_coproduct(std::string_view name) {
  if (name == "deshuffle") return Coproduct::deshuffle;
  if (name == "deshuffle-aroma-linear") return Coproduct::deshuffle_aroma_linear;
  if (name == "bck") return Coproduct::bck;
  if (name == "cem") return Coproduct::cem;
  if (name == "cem-reduced") return Coproduct::cem_reduced;
  throw std::invalid_argument("unknown coproduct: " + std::string(name));
}

std::string_view coproduct_name(Coproduct c) {
  switch (c) {
    case Coproduct::deshuffle: return "deshuffle";
    case Coproduct::deshuffle_aroma_linear: return "deshuffle-aroma-linear";
    case Coproduct::bck: return "bck";
    case Coproduct::cem: return "cem";
    case Coproduct::cem_reduced: return "cem-reduced";
  }
  return "?";
}

namespace {

int common_truncation(const Functional& a, const Functional& b) {
  int t = std::min(a.truncation(), b.truncation());
  if (t == kNoTruncation) throw std::invalid_argument("convolution needs a truncation order");
  return t;
}

Rational linear_clump_value(const Functional& a, const ClumpedForest& p) {
  static const Forest bullet = parse("b");
  const Forest* other = nullptr;
  for (const Forest& c : p.components()) {
    if (c == bullet) continue;
    if (other) return 0;
    other = &c;
  }
  if (other) return a(*other);
  return p.empty() ? Rational(0) : a(bullet);
}

Functional convolve_impl(Coproduct c, const Functional& a, const Functional& b, bool linear) {
  const int t = common_truncation(a, b);
  Functional out(t, false);
  for (const Forest& f : enumerate(t)) {
    Rational v = 0;
    if (c == Coproduct::cem || c == Coproduct::cem_reduced) {
      ClumpedTensor d = c == Coproduct::cem ? cem_coaction(f) : cem_coaction_reduced(f);
      for (const auto& [lr, k] : d.terms()) {
        Rational x = linear ? linear_clump_value(a, lr.first) : clumped_character(a, lr.first);
        if (x != 0) v += k * x * b(lr.second);
      }
    } else {
      ForestTensor d = c == Coproduct::bck ? bck_coproduct(f) : deshuffle(f, c == Coproduct::deshuffle_aroma_linear);
      for (const auto& [lr, k] : d.terms()) {
        Rational x = a(lr.first);
        if (x != 0) v += k * x * b(lr.second);
      }
    }
    out.set(f, v);
  }
  return out;
}

void require_hopf(Coproduct c) {
  if (c == Coproduct::cem || c == Coproduct::cem_reduced)
    throw std::invalid_argument("exp/log are defined for the deshuffle and BCK convolutions");
}

}  // namespace

Functional convolve(Coproduct c, const Functional& a, const Functional& b) {
  return convolve_impl(c, a, b, false);
}

Functional convolve_linear_left(Coproduct c, const Functional& a, const Functional& b) {
  return convolve_impl(c, a, b, true);
}

Functional exp_conv(Coproduct c, const Functional& a0) {
  require_hopf(c);
  if (a0(Forest()) != 0) throw std::invalid_argument("exp_conv: nonzero constant term");
  const int t = a0.truncation();
  if (t == kNoTruncation) throw std::invalid_argument("exp_conv needs a truncation order");
  Functional unit = delta_one();
  unit.set_truncation(t);
  Functional sum = unit;
  Functional power = unit;
  Rational fact = 1;
  for (int k = 1; k <= t; ++k) {
    power = convolve(c, power, a0);
    fact *= k;
    sum = sum + (1 / fact) * power;
  }
  return sum;
}

Functional log_conv(Coproduct c, const Functional& a) {
  require_hopf(c);
  if (a(Forest()) != 1) throw std::invalid_argument("log_conv: constant term must be 1");
  const int t = a.truncation();
  if (t == kNoTruncation) throw std::invalid_argument("log_conv needs a truncation order");
  Functional unit = delta_one();
  unit.set_truncation(t);
  Functional x = a - unit;
  Functional sum(t, false);
  Functional power = unit;
  for (int k = 1; k <= t; ++k) {
    power = convolve(c, power, x);
    sum = sum + Rational(k % 2 ? 1 : -1, k) * power;
  }
  return sum;
}

}  // namespace exotic
