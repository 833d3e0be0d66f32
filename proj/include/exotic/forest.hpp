#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exotic {

class ForestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Deco : std::uint8_t { black, letter, liana };

struct Vertex {
  Deco deco = Deco::black;
  char letter = 'b';  // 'b' for black vertices
  int label = 0;      // liana label, 0 otherwise
  int parent = -1;    // successor, -1 if none
};

// Unvalidated graph used as input to canonicalize().
struct RawForest {
  std::vector<Vertex> v;
  std::vector<std::pair<int, int>> stolons;

  int add_black(int parent = -1) { return add({Deco::black, 'b', 0, parent}); }
  int add_letter(char c, int parent = -1) {
    return add({c == 'b' ? Deco::black : Deco::letter, c, 0, parent});
  }
  int add_liana(int label, int parent = -1) { return add({Deco::liana, '#', label, parent}); }
  int add(const Vertex& x) {
    v.push_back(x);
    return static_cast<int>(v.size()) - 1;
  }
  int max_label() const;
  // Appends a copy of other with its liana labels shifted out of the way.
  std::vector<int> append(const RawForest& other);
};

struct Grading {
  int order = 0;
  int num_roots = 0;
  int num_black = 0;
  int num_letters = 0;
  int num_lianas = 0;
  int num_stolons = 0;
  int num_edges = 0;
  int num_aromas = 0;
};

struct ForestData {
  RawForest raw;  // vertices in canonical (textual) order, labels 1..k
  std::string key;
  std::vector<int> partner;  // liana partner or -1
  std::vector<int> mate;     // stolon partner or -1
  std::vector<std::vector<int>> preds;
  std::vector<char> on_cycle;
  std::vector<int> roots;  // tree roots in textual order
  Grading grading;
};

class Forest {
 public:
  Forest();  // the empty forest
  explicit Forest(std::shared_ptr<const ForestData> d) : d_(std::move(d)) {}

  const std::string& key() const { return d_->key; }
  const ForestData& data() const { return *d_; }
  const RawForest& raw() const { return d_->raw; }
  const Vertex& vertex(int i) const { return d_->raw.v[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(d_->raw.v.size()); }
  int order() const { return d_->grading.order; }
  const Grading& grading() const { return d_->grading; }
  bool empty() const { return d_->raw.v.empty(); }
  bool is_black(int i) const { return vertex(i).deco == Deco::black; }
  bool is_liana(int i) const { return vertex(i).deco == Deco::liana; }
  // Vertices that can carry predecessors (black or letter).
  bool is_node(int i) const { return vertex(i).deco != Deco::liana; }

  // Single root, no aroma-free restriction.
  bool single_root() const { return d_->grading.num_roots == 1; }
  bool aroma_free() const { return d_->grading.num_aromas == 0; }
  // Exotic tree: one root, black root, no aromas.
  bool is_exotic_tree() const;
  // Butcher tree: one root, only black vertices, no aromas.
  bool is_plain_tree() const;
  bool has_letters() const { return d_->grading.num_letters > 0; }

  friend bool operator==(const Forest& a, const Forest& b) {
    return a.d_ == b.d_ || a.d_->key == b.d_->key;
  }
  friend bool operator!=(const Forest& a, const Forest& b) { return !(a == b); }
  // Graded order: by order, then canonical key.
  friend bool operator<(const Forest& a, const Forest& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.key() < b.key();
  }

 private:
  std::shared_ptr<const ForestData> d_;
};

struct ForestHash {
  std::size_t operator()(const Forest& f) const { return std::hash<std::string>()(f.key()); }
};

Forest parse(std::string_view text);
RawForest parse_raw(std::string_view text);
Forest canonicalize(const RawForest& raw);
const std::string& render(const Forest& f);
Grading grading(const Forest& f);

std::uint64_t symmetry_sigma(const Forest& f);

// Connected components, where lianas and stolons also connect vertices.
// These are the primitive factors of the concatenation product.
std::vector<Forest> factors(const Forest& f);
bool is_connected(const Forest& f);

Forest concat(const Forest& a, const Forest& b);
Forest concat(const std::vector<Forest>& parts);

// Restriction to a vertex subset; edges leaving the subset are cut and the
// cut vertices become roots. Lianas must not be split by the subset.
Forest induced(const Forest& f, const std::vector<char>& keep);

}  // namespace exotic
