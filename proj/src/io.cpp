#include "exotic/io.hpp"

#include <json.hpp>
#include <stdexcept>

namespace exotic {

using nlohmann::json;

Format parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "latex") return Format::latex;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format: " + std::string(name));
}

std::string latex_coefficient(const Rational& c, bool leading) {
  std::string sign = c < 0 ? "-" : (leading ? "" : "+");
  Rational a = abs(c);
  std::string body;
  if (a.get_den() == 1) body = a == 1 ? "" : a.get_num().get_str();
  else body = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
  return sign + body;
}

namespace {

std::string latex_forest(const std::string& key) {
  return key == "{}" ? std::string("\\mathbf{1}") : "\\forest{" + key + "}";
}

std::string latex_clumped(const ClumpedForest& p) {
  if (p.empty()) return "\\mathbf{1}";
  std::string out;
  const auto& comps = p.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) out += " \\cdot ";
    out += latex_forest(comps[i].key());
    if (!p.tags().empty()) out += std::string(" \\iota_{") + p.tags()[i] + "}";
  }
  return out;
}

template <class L, class KeyOf, class LatexOf>
std::string format_terms(const Tensor<L>& t, Format f, KeyOf key_of, LatexOf latex_of) {
  switch (f) {
    case Format::text: {
      if (t.terms().empty()) return "0\n";
      std::string out;
      for (const auto& [lr, c] : t.terms()) out += to_string(c) + "\t" + key_of(lr.first) + " (x) " + lr.second.key() + "\n";
      return out;
    }
    case Format::latex: {
      if (t.terms().empty()) return "0\n";
      std::string out;
      bool first = true;
      for (const auto& [lr, c] : t.terms()) {
        out += (first ? "" : " ") + latex_coefficient(c, first) + latex_of(lr.first) + " \\otimes " +
               latex_forest(lr.second.key());
        first = false;
      }
      return out + "\n";
    }
    case Format::json: {
      json terms = json::array();
      for (const auto& [lr, c] : t.terms())
        terms.push_back({{"left", key_of(lr.first)}, {"right", lr.second.key()}, {"coeff", to_string(c)}});
      return json{{"terms", terms}}.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace

std::string series_to_json(const Series& s) {
  json terms = json::array();
  for (const auto& [f, c] : s.terms()) terms.push_back({{"forest", f.key()}, {"coeff", to_string(c)}});
  json out{{"terms", terms}};
  out["truncation"] = s.truncation() == kNoTruncation ? json(nullptr) : json(s.truncation());
  return out.dump(2) + "\n";
}

Series series_from_json(std::string_view text) {
  json j = json::parse(text);
  Series s(j.contains("truncation") && !j["truncation"].is_null() ? j["truncation"].get<int>() : kNoTruncation);
  for (const auto& t : j.at("terms")) {
    const json& c = t.at("coeff");
    Rational q = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
    s.add(parse(t.at("forest").get<std::string>()), q);
  }
  return s;
}

std::string format_series(const Series& s, Format f) {
  switch (f) {
    case Format::text: {
      if (s.empty()) return "0\n";
      std::string out;
      for (const auto& [p, c] : s.terms()) out += to_string(c) + "\t" + p.key() + "\n";
      return out;
    }
    case Format::latex: {
      if (s.empty()) return "0\n";
      std::string out;
      bool first = true;
      for (const auto& [p, c] : s.terms()) {
        out += (first ? "" : " ") + latex_coefficient(c, first) + latex_forest(p.key());
        first = false;
      }
      return out + "\n";
    }
    case Format::json:
      return series_to_json(s);
  }
  return {};
}

std::string format_tensor(const ForestTensor& t, Format f) {
  return format_terms(
      t, f, [](const Forest& x) { return x.key(); }, [](const Forest& x) { return latex_forest(x.key()); });
}

std::string format_tensor(const ClumpedTensor& t, Format f) {
  return format_terms(
      t, f, [](const ClumpedForest& x) { return x.key(); }, [](const ClumpedForest& x) { return latex_clumped(x); });
}

}  // namespace exotic
