#pragma once

#include <string_view>
#include <vector>

#include "exotic/forest.hpp"

namespace exotic {

enum class Filter {
  all,        // exotic aromatic forests
  trees,      // Butcher trees: black vertices only, one root
  et,         // exotic trees: black root, no aromas
  eat,        // exotic aromatic trees: exactly one root
  aromas,     // no roots
  connected,  // primitive elements for concatenation
  no_aromas,  // exotic forests
};

inline constexpr int kDefaultEnumerationBound = 6;

Filter parse_filter(std::string_view name);
bool matches(const Forest& f, Filter filter);

// All exotic aromatic forests (black vertices, lianas) of order <= max_order
// passing the filter, sorted by order then canonical key.
std::vector<Forest> enumerate(int max_order, Filter filter = Filter::all,
                              int bound = kDefaultEnumerationBound);
// Forests of exactly the given order.
const std::vector<Forest>& forests_of_order(int order);

}  // namespace exotic
