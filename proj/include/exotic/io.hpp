#pragma once

#include <string>
#include <string_view>

#include "exotic/hopf.hpp"
#include "exotic/series.hpp"

namespace exotic {

enum class Format { text, latex, json };
Format parse_format(std::string_view name);

// text: one "coeff<TAB>forest" line per term ("0" when empty)
// latex: \frac{p}{q}\forest{key} + ...
// json: {"truncation": n|null, "terms": [{"forest": key, "coeff": "p/q"}]}
std::string format_series(const Series& s, Format f);
std::string format_tensor(const ForestTensor& t, Format f);
std::string format_tensor(const ClumpedTensor& t, Format f);

std::string series_to_json(const Series& s);
Series series_from_json(std::string_view text);

std::string latex_coefficient(const Rational& c, bool leading);

}  // namespace exotic
