#include "triwf/chains.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace triwf {

namespace {

constexpr std::uint64_t bit(NodeId v) { return std::uint64_t{1} << v; }

bool node_ok(const TriGraph& g, NodeId v) { return v >= 0 && v < g.size(); }

bool step_in_graph(const TriGraph& g, const Step& s) {
  return node_ok(g, s.from) && node_ok(g, s.to) && g.color(s.color).contains(s.from, s.to);
}

bool monochrome(const std::vector<Step>& cycle) {
  for (const Step& s : cycle)
    if (s.color != cycle.front().color) return false;
  return true;
}

// Lexicographically least among the shortest paths from x to z over rel,
// one step minimum, as a node sequence x..z. Empty when z is unreachable.
std::vector<NodeId> lex_shortest_path(const Relation& rel, NodeId x, NodeId z) {
  const int n = rel.size();
  std::vector<std::vector<NodeId>> best(n);
  best[x] = {x};
  std::vector<NodeId> level{x};
  for (int depth = 1; depth <= n && !level.empty(); ++depth) {
    // Close into z from the current level before expanding: paths of length
    // `depth`. Handles z == x (a genuine return, never the empty path).
    const std::vector<NodeId>* close = nullptr;
    for (NodeId u : level) {
      if (!rel.contains(u, z)) continue;
      if (close == nullptr || best[u] < *close) close = &best[u];
    }
    if (close != nullptr) {
      std::vector<NodeId> out = *close;
      out.push_back(z);
      return out;
    }
    std::vector<NodeId> next;
    for (NodeId v = 0; v < n; ++v) {
      if (!best[v].empty() || v == x) continue;
      const std::vector<NodeId>* via = nullptr;
      for (NodeId u : level) {
        if (!rel.contains(u, v)) continue;
        if (via == nullptr || best[u] < *via) via = &best[u];
      }
      if (via != nullptr) {
        best[v] = *via;
        best[v].push_back(v);
        next.push_back(v);
      }
    }
    level = std::move(next);
  }
  return {};
}

Color edge_color(const TriGraph& g, NodeId u, NodeId v) {
  for (Color t : kColors)
    if (g.color(t).contains(u, v)) return t;
  throw std::logic_error("edge_color: pair not present in any color");
}

std::vector<Step> steps_from_nodes(const std::vector<NodeId>& nodes, Color uniform) {
  std::vector<Step> out;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    out.push_back({nodes[i], uniform, nodes[i + 1]});
  return out;
}

// Cover of (x, z) by A composed with the reflexive-transitive union closure:
// an A-step to w then a union path w..z, shortest first, node sequence ties.
std::vector<Step> au_star_cover(const TriGraph& g, NodeId x, NodeId z) {
  const Relation u = g.union_all();
  std::vector<NodeId> best_nodes;
  std::uint64_t m = g.a.row(x);
  while (m) {
    NodeId w = std::countr_zero(m);
    m &= m - 1;
    std::vector<NodeId> nodes{x, w};
    if (w != z) {
      std::vector<NodeId> tail = lex_shortest_path(u, w, z);
      if (tail.empty()) continue;
      nodes.insert(nodes.end(), tail.begin() + 1, tail.end());
    }
    if (best_nodes.empty() || nodes.size() < best_nodes.size() ||
        (nodes.size() == best_nodes.size() && nodes < best_nodes))
      best_nodes = std::move(nodes);
  }
  if (best_nodes.empty()) return {};
  std::vector<Step> steps;
  steps.push_back({best_nodes[0], Color::A, best_nodes[1]});
  for (std::size_t i = 1; i + 1 < best_nodes.size(); ++i)
    steps.push_back({best_nodes[i], edge_color(g, best_nodes[i], best_nodes[i + 1]),
                     best_nodes[i + 1]});
  return steps;
}

std::vector<Step> b_plus_cover(const TriGraph& g, NodeId x, NodeId z) {
  std::vector<NodeId> nodes = lex_shortest_path(g.b, x, z);
  return steps_from_nodes(nodes, Color::B);
}

std::vector<Step> single_edge_cover(const TriGraph& g, Color t, NodeId x, NodeId z) {
  if (g.color(t).contains(x, z)) return {{x, t, z}};
  return {};
}

// Replaces `removed` steps at index pos (wrapping past the end) by `ins`.
// When the removal wraps, the result starts at the first surviving step.
std::vector<Step> splice_cycle(const std::vector<Step>& cyc, int pos, int removed,
                               const std::vector<Step>& ins) {
  const int len = static_cast<int>(cyc.size());
  if (pos < 0 || pos >= len || removed < 1 || removed > len)
    throw std::invalid_argument("splice: position or length outside the cycle");
  std::vector<Step> out;
  if (pos + removed <= len) {
    out.insert(out.end(), cyc.begin(), cyc.begin() + pos);
    out.insert(out.end(), ins.begin(), ins.end());
    out.insert(out.end(), cyc.begin() + pos + removed, cyc.end());
  } else {
    const int head = pos + removed - len;
    out.insert(out.end(), cyc.begin() + head, cyc.begin() + pos);
    out.insert(out.end(), ins.begin(), ins.end());
  }
  return out;
}

std::optional<int> find_swallow_pos(const std::vector<Step>& cyc) {
  const int len = static_cast<int>(cyc.size());
  for (int i = 0; i < len; ++i) {
    if (cyc[i].color != Color::A && cyc[(i + 1) % len].color == Color::A) return i;
  }
  return std::nullopt;
}

std::optional<int> find_cb_pos(const std::vector<Step>& cyc) {
  const int len = static_cast<int>(cyc.size());
  for (int i = 0; i < len; ++i) {
    if (cyc[i].color == Color::C && cyc[(i + 1) % len].color == Color::B) return i;
  }
  return std::nullopt;
}

struct Detour {
  int pos = 0;      // index of the C-step whose source starts the detour
  int removed = 0;  // cyclic step count replaced, up to the whole cycle
  std::vector<Step> steps;
};

// First C-step whose source has a one-or-more-step B-path to some node of
// the cycle; shortest such path, ties by node sequence, smallest removal.
std::optional<Detour> find_b_detour(const TriGraph& g, const std::vector<Step>& cyc) {
  const int len = static_cast<int>(cyc.size());
  for (int i = 0; i < len; ++i) {
    if (cyc[i].color != Color::C) continue;
    const NodeId x = cyc[i].from;
    std::vector<NodeId> best;
    for (int j = 0; j < len; ++j) {
      std::vector<NodeId> p = lex_shortest_path(g.b, x, cyc[j].from);
      if (p.empty()) continue;
      if (best.empty() || p.size() < best.size() || (p.size() == best.size() && p < best))
        best = std::move(p);
    }
    if (best.empty()) continue;
    const NodeId target = best.back();
    int removed = 0;
    for (int o = 1; o <= len; ++o) {
      if (cyc[(i + o) % len].from == target) {
        removed = o;
        break;
      }
    }
    if (removed == 0) throw std::logic_error("detour target left the cycle (bug)");
    return Detour{i, removed, steps_from_nodes(best, Color::B)};
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(const Step& s) {
  return std::to_string(s.from) + " -" + color_name(s.color) + "-> " + std::to_string(s.to);
}

const char* to_string(RewriteKind k) {
  switch (k) {
    case RewriteKind::SwallowA: return "swallow-A";
    case RewriteKind::PreferBDetour: return "prefer-B-detour";
    case RewriteKind::ContractCB: return "contract-CB";
    case RewriteKind::EraseB: return "erase-B";
  }
  return "?";
}

bool validate_lasso(const TriGraph& g, const Lasso& l) {
  if (l.cycle.empty()) return false;
  for (const Step& s : l.stem)
    if (!step_in_graph(g, s)) return false;
  for (const Step& s : l.cycle)
    if (!step_in_graph(g, s)) return false;
  for (std::size_t i = 0; i + 1 < l.stem.size(); ++i)
    if (l.stem[i].to != l.stem[i + 1].from) return false;
  if (!l.stem.empty() && l.stem.back().to != l.cycle.front().from) return false;
  const std::size_t len = l.cycle.size();
  for (std::size_t i = 0; i < len; ++i)
    if (l.cycle[i].to != l.cycle[(i + 1) % len].from) return false;
  return true;
}

Lasso construct_greedy_chain(const TriGraph& g, NodeId start) {
  if (!node_ok(g, start)) throw std::invalid_argument("greedy chain: start node out of range");
  const std::uint64_t immortal = immortal_mask(g);
  if (!(immortal & bit(start)))
    throw std::invalid_argument("greedy chain: start node " + std::to_string(start) +
                                " is not immortal");

  std::vector<NodeId> visited_at(g.size(), -1);
  std::vector<Step> steps;
  NodeId cur = start;
  visited_at[cur] = 0;
  for (;;) {
    // A-step to an immortal node when possible, else B then C; smallest
    // successor within the chosen color.
    std::optional<Step> chosen;
    for (Color t : kColors) {
      std::uint64_t m = g.color(t).row(cur) & immortal;
      if (m) {
        chosen = Step{cur, t, std::countr_zero(m)};
        break;
      }
    }
    // An immortal node always has an immortal successor.
    if (!chosen.has_value()) throw std::logic_error("greedy chain stuck at an immortal node (bug)");
    steps.push_back(*chosen);
    cur = chosen->to;
    if (visited_at[cur] >= 0) {
      const int p = visited_at[cur];
      // Steps before the repeat position form the stem; the rest is the cycle.
      std::vector<Step> stem(steps.begin(), steps.begin() + p);
      std::vector<Step> cycle(steps.begin() + p, steps.end());
      return Lasso{std::move(stem), std::move(cycle)};
    }
    visited_at[cur] = static_cast<int>(steps.size());
  }
}

ExtractionResult extract_monochrome(const TriGraph& g, const Lasso& l, CriterionId id) {
  if (id != CriterionId::THREE_OF_NINE && id != CriterionId::TRIPARTITE)
    throw std::invalid_argument("extract_monochrome supports THREE_OF_NINE and TRIPARTITE only");
  if (!criterion_holds(g, id))
    throw std::invalid_argument("extract_monochrome: criterion " + to_string(id) +
                                " does not hold on this graph");
  if (!validate_lasso(g, l)) throw std::invalid_argument("extract_monochrome: invalid lasso");

  const bool tripartite = (id == CriterionId::TRIPARTITE);
  std::vector<Step> cyc = l.cycle;
  ExtractionTrace trace;
  long long budget =
      static_cast<long long>(cyc.size()) * g.size() * g.size();

  auto apply = [&](RewriteKind kind, int pos, int removed, std::vector<Step> ins, int clause,
                   Edge covered) {
    trace.push_back({kind, pos, removed, ins, clause, covered});
    cyc = splice_cycle(cyc, pos, removed, ins);
  };

  while (!monochrome(cyc)) {
    if (budget-- <= 0)
      throw std::logic_error("extract_monochrome: rewrite budget exhausted (bug)");
    const int len = static_cast<int>(cyc.size());

    if (auto i = find_swallow_pos(cyc)) {
      // x -B|C-> y -A-> z becomes a single covered step (or a covering path).
      const NodeId x = cyc[*i].from;
      const NodeId z = cyc[(*i + 1) % len].to;
      std::vector<Step> ins = single_edge_cover(g, Color::B, x, z);
      if (ins.empty()) ins = single_edge_cover(g, Color::C, x, z);
      if (ins.empty())
        ins = tripartite ? au_star_cover(g, x, z) : single_edge_cover(g, Color::A, x, z);
      if (ins.empty()) throw std::logic_error("swallow-A: no cover despite criterion holding");
      apply(RewriteKind::SwallowA, *i, 2, std::move(ins), 0, {x, z});
      continue;
    }

    // No A-steps remain and the cycle mixes B and C.
    if (tripartite) {
      if (auto d = find_b_detour(g, cyc)) {
        const Edge covered{cyc[d->pos].from, d->steps.back().to};
        apply(RewriteKind::PreferBDetour, d->pos, d->removed, d->steps, 1, covered);
        continue;
      }
    }

    auto i = find_cb_pos(cyc);
    if (!i) throw std::logic_error("extract_monochrome: no rewrite applies (bug)");
    const NodeId x = cyc[*i].from;
    const NodeId z = cyc[(*i + 1) % len].to;
    std::vector<Step> ins = single_edge_cover(g, Color::C, x, z);
    if (tripartite) {
      if (ins.empty()) ins = b_plus_cover(g, x, z);
      if (ins.empty()) ins = au_star_cover(g, x, z);
    } else {
      if (ins.empty()) ins = single_edge_cover(g, Color::B, x, z);
      if (ins.empty()) ins = single_edge_cover(g, Color::A, x, z);
    }
    if (ins.empty()) throw std::logic_error("CB rewrite: no cover despite criterion holding");
    const int clause = tripartite ? 1 : 0;
    apply(tripartite ? RewriteKind::EraseB : RewriteKind::ContractCB, *i, 2, std::move(ins),
          clause, {x, z});
  }

  ExtractionResult result{Lasso{{}, cyc}, std::move(trace), cyc.front().color};
  if (!validate_lasso(g, result.lasso))
    throw std::logic_error("extract_monochrome produced an invalid lasso (bug)");
  return result;
}

std::optional<std::pair<Color, std::vector<NodeId>>> monochrome_cycle_oracle(const TriGraph& g) {
  for (Color t : kColors) {
    if (auto cyc = find_cycle(g.color(t))) return std::make_pair(t, *cyc);
  }
  return std::nullopt;
}

std::vector<Step> replay_trace(const std::vector<Step>& cycle, const ExtractionTrace& trace) {
  std::vector<Step> cyc = cycle;
  for (const RewriteRecord& rec : trace) cyc = splice_cycle(cyc, rec.pos, rec.removed, rec.inserted);
  return cyc;
}

}  // namespace triwf
