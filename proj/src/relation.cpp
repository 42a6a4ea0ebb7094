#include "triwf/relation.hpp"

#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace triwf {

namespace {

constexpr std::uint64_t bit(NodeId v) { return std::uint64_t{1} << v; }

// Mask of nodes {lo..n-1}.
std::uint64_t mask_from(int lo, int n) {
  std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : (bit(n) - 1);
  std::uint64_t below = (lo == 0) ? 0 : (bit(lo) - 1);
  return all & ~below;
}

}  // namespace

char color_name(Color c) {
  switch (c) {
    case Color::A: return 'A';
    case Color::B: return 'B';
    case Color::C: return 'C';
  }
  return '?';
}

std::optional<Color> parse_color(std::string_view s) {
  if (s == "A") return Color::A;
  if (s == "B") return Color::B;
  if (s == "C") return Color::C;
  return std::nullopt;
}

Relation::Relation(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("carrier size must be nonnegative");
  if (n > kMaxNodes)
    throw std::invalid_argument("carrier size " + std::to_string(n) + " exceeds cap of " +
                                std::to_string(kMaxNodes) + " nodes");
  for (int u = 0; u < n_; ++u) rows_[u] = 0;
}

Relation::Relation(int n, std::initializer_list<Edge> edges) : Relation(n) {
  for (const Edge& e : edges) insert(e.first, e.second);
}

Relation::Relation(int n, const std::vector<Edge>& edges) : Relation(n) {
  for (const Edge& e : edges) insert(e.first, e.second);
}

Relation Relation::identity(int n) {
  Relation r(n);
  for (int u = 0; u < n; ++u) r.rows_[u] = bit(u);
  return r;
}

bool Relation::empty() const {
  for (int u = 0; u < n_; ++u)
    if (rows_[u]) return false;
  return true;
}

int Relation::edge_count() const {
  int k = 0;
  for (int u = 0; u < n_; ++u) k += std::popcount(rows_[u]);
  return k;
}

void Relation::check_node(NodeId v) const {
  if (v < 0 || v >= n_)
    throw std::out_of_range("node " + std::to_string(v) + " outside carrier of size " +
                            std::to_string(n_));
}

bool Relation::contains(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  return rows_[u] & bit(v);
}

void Relation::insert(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  rows_[u] |= bit(v);
}

std::vector<Edge> Relation::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    std::uint64_t m = rows_[u];
    while (m) {
      int v = std::countr_zero(m);
      m &= m - 1;
      out.emplace_back(u, v);
    }
  }
  return out;
}

Relation compose(const Relation& r, const Relation& s) {
  if (r.size() != s.size())
    throw std::invalid_argument("compose: carrier sizes differ (" + std::to_string(r.size()) +
                                " vs " + std::to_string(s.size()) + ")");
  const int n = r.size();
  Relation out(n);
  for (int u = 0; u < n; ++u) {
    std::uint64_t acc = 0;
    std::uint64_t m = r.row(u);
    while (m) {
      int y = std::countr_zero(m);
      m &= m - 1;
      acc |= s.row(y);
    }
    out.set_row(u, acc);
  }
  return out;
}

Relation unite(const Relation& r, const Relation& s) {
  if (r.size() != s.size())
    throw std::invalid_argument("unite: carrier sizes differ (" + std::to_string(r.size()) +
                                " vs " + std::to_string(s.size()) + ")");
  const int n = r.size();
  Relation out(n);
  for (int u = 0; u < n; ++u) out.set_row(u, r.row(u) | s.row(u));
  return out;
}

Relation closure(const Relation& r, bool reflexive) {
  const int n = r.size();
  Relation out = r;
  // Warshall: after pass k, row(u) holds all targets reachable through
  // intermediate nodes <= k. Result is the one-or-more-step closure.
  for (int k = 0; k < n; ++k) {
    const std::uint64_t via = out.row(k);
    for (int u = 0; u < n; ++u) {
      if (out.row(u) & bit(k)) out.set_row(u, out.row(u) | via);
    }
  }
  if (reflexive) {
    for (int u = 0; u < n; ++u) out.set_row(u, out.row(u) | bit(u));
  }
  return out;
}

bool is_subset(const Relation& r, const Relation& s) {
  if (r.size() != s.size())
    throw std::invalid_argument("is_subset: carrier sizes differ (" + std::to_string(r.size()) +
                                " vs " + std::to_string(s.size()) + ")");
  for (int u = 0; u < r.size(); ++u)
    if (r.row(u) & ~s.row(u)) return false;
  return true;
}

bool is_well_founded(const Relation& r) {
  const int n = r.size();
  // Peel sinks: nodes whose remaining successors are all gone. Everything
  // peels iff the relation is acyclic.
  std::uint64_t remaining = mask_from(0, n);
  while (remaining) {
    std::uint64_t removable = 0;
    std::uint64_t m = remaining;
    while (m) {
      int u = std::countr_zero(m);
      m &= m - 1;
      if ((r.row(u) & remaining) == 0) removable |= bit(u);
    }
    if (!removable) return false;
    remaining &= ~removable;
  }
  return true;
}

namespace {

// Shortest return distance from s to s using intermediate nodes >= s only.
// Returns 0 when no such cycle exists.
int restricted_cycle_length(const Relation& r, NodeId s) {
  const int n = r.size();
  const std::uint64_t allowed = mask_from(s, n);
  if (r.row(s) & bit(s)) return 1;
  std::uint64_t frontier = r.row(s) & allowed & ~bit(s);
  std::uint64_t seen = frontier;
  int depth = 1;
  while (frontier) {
    // Any frontier node with an edge back to s closes a cycle of depth+1.
    std::uint64_t m = frontier;
    std::uint64_t next = 0;
    while (m) {
      int v = std::countr_zero(m);
      m &= m - 1;
      if (r.row(v) & bit(s)) return depth + 1;
      next |= r.row(v) & allowed;
    }
    frontier = next & ~seen & ~bit(s);
    seen |= frontier;
    ++depth;
  }
  return 0;
}

// Lexicographically least simple cycle of exactly len edges starting at s,
// all other nodes > s. dist_to_s[v] prunes branches that cannot return in
// the remaining steps.
bool lex_min_cycle_dfs(const Relation& r, NodeId s, int len, const std::vector<int>& dist_to_s,
                       std::uint64_t used, std::vector<NodeId>& path) {
  const NodeId cur = path.back();
  const int placed = static_cast<int>(path.size()) - 1;
  if (placed == len - 1) return r.contains(cur, s);
  std::uint64_t m = r.row(cur) & ~used & mask_from(s + 1, r.size());
  while (m) {
    int v = std::countr_zero(m);
    m &= m - 1;
    if (dist_to_s[v] == 0 || dist_to_s[v] > len - placed - 1) continue;
    path.push_back(v);
    if (lex_min_cycle_dfs(r, s, len, dist_to_s, used | bit(v), path)) return true;
    path.pop_back();
  }
  return false;
}

// BFS distance to s over edges restricted to nodes >= s; 0 = unreachable
// (distance of s to itself is not defined here, callers special-case it).
std::vector<int> distances_to(const Relation& r, NodeId s) {
  const int n = r.size();
  std::vector<int> dist(n, 0);
  std::uint64_t allowed = mask_from(s, n);
  std::uint64_t reached = bit(s);
  std::uint64_t frontier = bit(s);
  int depth = 0;
  while (frontier) {
    ++depth;
    std::uint64_t next = 0;
    std::uint64_t m = allowed & ~reached;
    while (m) {
      int v = std::countr_zero(m);
      m &= m - 1;
      if (r.row(v) & frontier) next |= bit(v);
    }
    std::uint64_t nm = next;
    while (nm) {
      int v = std::countr_zero(nm);
      nm &= nm - 1;
      dist[v] = depth;
    }
    reached |= next;
    frontier = next;
  }
  return dist;
}

}  // namespace

std::optional<std::vector<NodeId>> find_cycle(const Relation& r) {
  const int n = r.size();
  int best = std::numeric_limits<int>::max();
  std::vector<int> cyc_len(n, 0);
  for (NodeId s = 0; s < n; ++s) {
    cyc_len[s] = restricted_cycle_length(r, s);
    if (cyc_len[s] > 0 && cyc_len[s] < best) best = cyc_len[s];
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  for (NodeId s = 0; s < n; ++s) {
    if (cyc_len[s] != best) continue;
    std::vector<int> dist = distances_to(r, s);
    std::vector<NodeId> path{s};
    if (lex_min_cycle_dfs(r, s, best, dist, bit(s), path)) return path;
  }
  return std::nullopt;  // unreachable: some start must realize the girth
}

TriGraph::TriGraph(Relation a_, Relation b_, Relation c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
  if (a.size() != b.size() || a.size() != c.size())
    throw std::invalid_argument("TriGraph: colors must share one carrier size");
}

const Relation& TriGraph::color(Color t) const {
  switch (t) {
    case Color::A: return a;
    case Color::B: return b;
    case Color::C: return c;
  }
  throw std::invalid_argument("bad color");
}

Relation& TriGraph::color(Color t) {
  switch (t) {
    case Color::A: return a;
    case Color::B: return b;
    case Color::C: return c;
  }
  throw std::invalid_argument("bad color");
}

Relation TriGraph::union_all() const {
  const int n = size();
  Relation out(n);
  for (int u = 0; u < n; ++u) out.set_row(u, a.row(u) | b.row(u) | c.row(u));
  return out;
}

bool operator==(const TriGraph& g, const TriGraph& h) {
  return g.a == h.a && g.b == h.b && g.c == h.c;
}

std::uint64_t immortal_mask(const TriGraph& g) {
  const int n = g.size();
  const Relation paths = closure(g.union_all(), false);
  std::uint64_t on_cycle = 0;
  for (int v = 0; v < n; ++v)
    if (paths.row(v) & bit(v)) on_cycle |= bit(v);
  std::uint64_t out = 0;
  for (int u = 0; u < n; ++u)
    if (paths.row(u) & on_cycle) out |= bit(u);
  return out;
}

std::vector<NodeId> immortal_nodes(const TriGraph& g) {
  std::vector<NodeId> out;
  std::uint64_t m = immortal_mask(g);
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace triwf
