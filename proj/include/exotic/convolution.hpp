#pragma once

#include <string_view>

#include "exotic/series.hpp"

namespace exotic {

enum class Coproduct { deshuffle, deshuffle_aroma_linear, bck, cem, cem_reduced };

Coproduct parse_coproduct(std::string_view name);
std::string_view coproduct_name(Coproduct c);

// (a (x) b) o Delta on every forest up to the common truncation. For the CEM
// coactions the left operand is extended to clumps as a character.
Functional convolve(Coproduct c, const Functional& a, const Functional& b);
// Left operand used linearly: it only sees clumps whose other components
// are single black vertices.
Functional convolve_linear_left(Coproduct c, const Functional& a, const Functional& b);

// Graded exponential and logarithm for the deshuffle and BCK convolutions.
Functional exp_conv(Coproduct c, const Functional& a0);
Functional log_conv(Coproduct c, const Functional& a);

}  // namespace exotic
