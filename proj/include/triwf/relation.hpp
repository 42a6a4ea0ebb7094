#ifndef TRIWF_RELATION_HPP
#define TRIWF_RELATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace triwf {

// Carriers are {0..n-1} with n capped so a row fits in one machine word.
inline constexpr int kMaxNodes = 64;

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

enum class Color : int { A = 0, B = 1, C = 2 };
inline constexpr std::array<Color, 3> kColors{Color::A, Color::B, Color::C};

char color_name(Color c);
std::optional<Color> parse_color(std::string_view s);

/// Binary relation over {0..n-1}, stored as one 64-bit row per source node.
/// Bit v of row(u) is set iff the pair (u, v) is present.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n);
  Relation(int n, std::initializer_list<Edge> edges);
  Relation(int n, const std::vector<Edge>& edges);
  static Relation identity(int n);

  // Only rows [0, n) are live; copy just those.
  Relation(const Relation& other) { assign(other); }
  Relation& operator=(const Relation& other) {
    if (this != &other) assign(other);
    return *this;
  }

  int size() const { return n_; }
  bool empty() const;
  int edge_count() const;

  bool contains(NodeId u, NodeId v) const;
  void insert(NodeId u, NodeId v);

  std::uint64_t row(NodeId u) const { return rows_[static_cast<unsigned>(u)]; }
  void set_row(NodeId u, std::uint64_t bits) { rows_[static_cast<unsigned>(u)] = bits; }

  /// All pairs, sorted by (u, v).
  std::vector<Edge> edges() const;

  friend bool operator==(const Relation& r, const Relation& s) {
    if (r.n_ != s.n_) return false;
    for (int u = 0; u < r.n_; ++u)
      if (r.rows_[u] != s.rows_[u]) return false;
    return true;
  }
  friend bool operator!=(const Relation& r, const Relation& s) { return !(r == s); }

 private:
  void assign(const Relation& other) {
    n_ = other.n_;
    for (int u = 0; u < n_; ++u) rows_[u] = other.rows_[u];
  }
  void check_node(NodeId v) const;

  int n_ = 0;
  std::array<std::uint64_t, kMaxNodes> rows_;
};

/// Composition: result contains (x, z) iff x r y and y s z for some y
/// (left relation steps first).
Relation compose(const Relation& r, const Relation& s);

Relation unite(const Relation& r, const Relation& s);

/// reflexive = false: smallest transitive superset (paths of one or more steps).
/// reflexive = true: additionally contains (u, u) for every carrier node.
Relation closure(const Relation& r, bool reflexive);

bool is_subset(const Relation& r, const Relation& s);

/// True iff r has no directed cycle (self-loops count as cycles).
bool is_well_founded(const Relation& r);

/// Least simple cycle under (length, node-sequence) ordering, as the node
/// sequence v0, v1, ..., vk-1 with edges v0->v1->...->vk-1->v0. Empty result
/// iff r is acyclic.
std::optional<std::vector<NodeId>> find_cycle(const Relation& r);

/// Three relations ("colors") sharing one carrier. Colors may overlap.
struct TriGraph {
  TriGraph() = default;
  explicit TriGraph(int n) : a(n), b(n), c(n) {}
  TriGraph(Relation a_, Relation b_, Relation c_);

  int size() const { return a.size(); }
  const Relation& color(Color t) const;
  Relation& color(Color t);
  Relation union_all() const;

  Relation a, b, c;
};

bool operator==(const TriGraph& g, const TriGraph& h);

/// Bit u set iff some cycle of the union is reachable from u (nodes on
/// cycles included). Nonempty exactly when the union is not well-founded.
std::uint64_t immortal_mask(const TriGraph& g);
std::vector<NodeId> immortal_nodes(const TriGraph& g);

}  // namespace triwf

#endif  // TRIWF_RELATION_HPP
