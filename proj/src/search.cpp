#include "triwf/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace triwf {

namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// Chunk masks per color that decode to an acyclic relation, ascending.
std::vector<std::uint64_t> color_candidates(int n, bool include_self_loops, bool wf_only) {
  const int per_color = pair_slot_count(n, include_self_loops);
  if (per_color > 30)
    throw std::invalid_argument("exhaustive candidate space too large at " + std::to_string(n) +
                                " nodes");
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << per_color;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (!wf_only || is_well_founded(relation_from_chunk(n, m, include_self_loops)))
      out.push_back(m);
  }
  return out;
}

void run_workers(int workers, const std::function<void(int)>& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) threads.emplace_back(body, w);
  for (std::thread& t : threads) t.join();
}

struct Range {
  std::uint64_t lo, hi;
};

Range chunk_range(std::uint64_t total, int workers, int w) {
  return {total * w / workers, total * (w + 1) / workers};
}

void check_exhaustive_budget(const ScanConfig& cfg, int n, bool two_color) {
  const int bits = (two_color ? 2 : 3) * pair_slot_count(n, false);
  if (bits > cfg.exhaustive_bit_budget)
    throw std::invalid_argument("exhaustive scan at " + std::to_string(n) + " nodes spans 2^" +
                                std::to_string(bits) + " graphs, over the configured budget of 2^" +
                                std::to_string(cfg.exhaustive_bit_budget) +
                                "; raise the budget or sample instead");
}

void check_sample_config(const ScanConfig& cfg) {
  if (cfg.sample_count < 1)
    throw std::invalid_argument("sample mode requires sample_count >= 1");
}

bool colors_all_wf(const TriGraph& g) {
  return is_well_founded(g.a) && is_well_founded(g.b) && is_well_founded(g.c);
}

}  // namespace

int pair_slot_count(int n, bool include_self_loops) {
  return include_self_loops ? n * n : n * (n - 1);
}

int edge_slot_count(int n, bool include_self_loops) {
  return 3 * pair_slot_count(n, include_self_loops);
}

Relation relation_from_chunk(int n, std::uint64_t chunk, bool include_self_loops) {
  const int per_row = include_self_loops ? n : n - 1;
  if (n * per_row > 64) throw std::invalid_argument("chunk decoding supports up to 64 slots");
  Relation r(n);
  for (int u = 0; u < n; ++u) {
    const std::uint64_t row_bits = (chunk >> (u * per_row)) & low_mask(per_row);
    std::uint64_t row;
    if (include_self_loops) {
      row = row_bits;
    } else {
      // Re-open the skipped diagonal position.
      row = (row_bits & low_mask(u)) | ((row_bits >> u) << (u + 1));
    }
    r.set_row(u, row);
  }
  return r;
}

std::uint64_t chunk_from_relation(const Relation& r, bool include_self_loops) {
  const int n = r.size();
  const int per_row = include_self_loops ? n : n - 1;
  if (n * per_row > 64) throw std::invalid_argument("chunk encoding supports up to 64 slots");
  std::uint64_t chunk = 0;
  for (int u = 0; u < n; ++u) {
    const std::uint64_t row = r.row(u);
    std::uint64_t row_bits;
    if (include_self_loops) {
      row_bits = row;
    } else {
      row_bits = (row & low_mask(u)) | ((row >> (u + 1)) << u);
    }
    chunk |= row_bits << (u * per_row);
  }
  return chunk;
}

TriGraph graph_from_color_masks(int n, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                bool include_self_loops) {
  return TriGraph(relation_from_chunk(n, a, include_self_loops),
                  relation_from_chunk(n, b, include_self_loops),
                  relation_from_chunk(n, c, include_self_loops));
}

GraphEnumeration::GraphEnumeration(int n_, bool self_loops)
    : n(n_), include_self_loops(self_loops), bits(edge_slot_count(n_, self_loops)) {
  if (bits > 62)
    throw std::invalid_argument("enumeration space exceeds 2^62 graphs at " + std::to_string(n_) +
                                " nodes");
}

std::uint64_t GraphEnumeration::total() const { return std::uint64_t{1} << bits; }

TriGraph GraphEnumeration::at(std::uint64_t mask) const {
  const int per_color = pair_slot_count(n, include_self_loops);
  const std::uint64_t pm = low_mask(per_color);
  return graph_from_color_masks(n, mask & pm, (mask >> per_color) & pm,
                                (mask >> (2 * per_color)) & pm, include_self_loops);
}

std::uint64_t GraphEnumeration::mask_of(const TriGraph& g) const {
  const int per_color = pair_slot_count(n, include_self_loops);
  return chunk_from_relation(g.a, include_self_loops) |
         (chunk_from_relation(g.b, include_self_loops) << per_color) |
         (chunk_from_relation(g.c, include_self_loops) << (2 * per_color));
}

TriGraph sample_graph(int n, std::uint64_t seed, std::uint64_t index, bool two_color) {
  TriGraph g(n);
  int slot = 0;
  std::uint64_t word = 0;
  const int colors = two_color ? 2 : 3;
  for (int ci = 0; ci < colors; ++ci) {
    Relation& r = g.color(kColors[ci]);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        if (slot % 64 == 0) word = splitmix64_at(seed, index * 256 + slot / 64);
        if ((word >> (slot % 64)) & 1) r.insert(u, v);
        ++slot;
      }
    }
  }
  return g;
}

ScanReport soundness_scan(const ScanConfig& cfg, CriterionId id, int workers) {
  const auto t0 = Clock::now();
  const Criterion& crit = criterion(id);
  if (!crit.sound)
    throw std::invalid_argument(to_string(id) +
                                " is not a sound criterion; use the counterexample search");
  const bool two_color = (id == CriterionId::JUMPING_AB);

  ScanReport rep;
  rep.ids = {id};
  rep.config = cfg;

  if (cfg.mode == ScanMode::Exhaustive) {
    check_exhaustive_budget(cfg, cfg.n, two_color);
    const int per_color = pair_slot_count(cfg.n, false);
    const std::vector<std::uint64_t> wf = color_candidates(cfg.n, false, true);
    const std::vector<std::uint64_t> clist = two_color ? std::vector<std::uint64_t>{0} : wf;

    const int w_count = std::max(1, std::min<int>(workers, static_cast<int>(clist.size())));
    std::vector<std::vector<TriGraph>> found(w_count);
    run_workers(w_count, [&](int w) {
      const Range range = chunk_range(clist.size(), w_count, w);
      for (std::uint64_t ci = range.lo; ci < range.hi; ++ci) {
        for (std::uint64_t b : wf) {
          for (std::uint64_t a : wf) {
            TriGraph g = graph_from_color_masks(cfg.n, a, b, clist[ci], false);
            if (!criterion_holds(g, crit)) continue;
            if (is_well_founded(g.union_all())) continue;
            found[w].push_back(std::move(g));
          }
        }
      }
    });
    for (auto& part : found)
      for (TriGraph& g : part) rep.counterexamples.push_back(std::move(g));
    rep.graphs_examined = std::uint64_t{1} << ((two_color ? 2 : 3) * per_color);
  } else {
    check_sample_config(cfg);
    rep.generator = kGeneratorName;
    const int w_count = std::max(
        1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(cfg.sample_count,
                                                                           1024))));
    std::vector<std::vector<TriGraph>> found(w_count);
    run_workers(w_count, [&](int w) {
      const Range range = chunk_range(cfg.sample_count, w_count, w);
      for (std::uint64_t i = range.lo; i < range.hi; ++i) {
        TriGraph g = sample_graph(cfg.n, cfg.seed, i, two_color);
        if (!colors_all_wf(g)) continue;
        if (!criterion_holds(g, crit)) continue;
        if (is_well_founded(g.union_all())) continue;
        found[w].push_back(std::move(g));
      }
    });
    for (auto& part : found)
      for (TriGraph& g : part) rep.counterexamples.push_back(std::move(g));
    rep.graphs_examined = cfg.sample_count;
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

namespace {

// First graph in canonical order (by raw rank) satisfying the
// counterexample predicate at exactly n nodes, or nothing.
std::optional<std::pair<std::uint64_t, TriGraph>> first_hit_at(int n,
                                                               const Criterion& crit,
                                                               bool two_color, int workers) {
  const int per_color = pair_slot_count(n, false);
  const std::vector<std::uint64_t> wf = color_candidates(n, false, true);
  const std::vector<std::uint64_t> clist = two_color ? std::vector<std::uint64_t>{0} : wf;

  const int w_count = std::max(1, std::min<int>(workers, static_cast<int>(clist.size())));
  std::vector<std::optional<std::pair<std::uint64_t, TriGraph>>> hits(w_count);
  std::atomic<int> best_chunk{std::numeric_limits<int>::max()};

  run_workers(w_count, [&](int w) {
    const Range range = chunk_range(clist.size(), w_count, w);
    for (std::uint64_t ci = range.lo; ci < range.hi; ++ci) {
      if (best_chunk.load(std::memory_order_relaxed) < w) return;
      const std::uint64_t c = clist[ci];
      for (std::uint64_t b : wf) {
        for (std::uint64_t a : wf) {
          TriGraph g = graph_from_color_masks(n, a, b, c, false);
          if (!criterion_holds(g, crit)) continue;
          if (is_well_founded(g.union_all())) continue;
          const std::uint64_t rank =
              a | (b << per_color) | (c << (2 * per_color));
          hits[w] = std::make_pair(rank, std::move(g));
          int expect = best_chunk.load(std::memory_order_relaxed);
          while (w < expect && !best_chunk.compare_exchange_weak(expect, w)) {
          }
          return;
        }
      }
    }
  });
  for (auto& h : hits)
    if (h.has_value()) return h;
  return std::nullopt;
}

}  // namespace

ScanReport counterexample_scan(const ScanConfig& cfg, CriterionId id, int workers) {
  const auto t0 = Clock::now();
  const Criterion& crit = criterion(id);
  const bool two_color = (id == CriterionId::JUMPING_AB);

  ScanReport rep;
  rep.ids = {id};
  rep.config = cfg;

  if (cfg.mode == ScanMode::Exhaustive) {
    check_exhaustive_budget(cfg, cfg.n, two_color);  // slot count grows with n
    for (int n = 1; n <= cfg.n; ++n) {
      auto hit = first_hit_at(n, crit, two_color, workers);
      if (hit.has_value()) {
        rep.graphs_examined += hit->first + 1;
        rep.counterexamples.push_back(std::move(hit->second));
        break;
      }
      rep.graphs_examined += std::uint64_t{1}
                             << ((two_color ? 2 : 3) * pair_slot_count(n, false));
    }
  } else {
    check_sample_config(cfg);
    rep.generator = kGeneratorName;
    const int w_count = std::max(
        1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(cfg.sample_count,
                                                                           1024))));
    std::vector<std::optional<std::pair<std::uint64_t, TriGraph>>> hits(w_count);
    std::atomic<int> best_chunk{std::numeric_limits<int>::max()};
    run_workers(w_count, [&](int w) {
      const Range range = chunk_range(cfg.sample_count, w_count, w);
      for (std::uint64_t i = range.lo; i < range.hi; ++i) {
        if (best_chunk.load(std::memory_order_relaxed) < w) return;
        TriGraph g = sample_graph(cfg.n, cfg.seed, i, two_color);
        if (!colors_all_wf(g)) continue;
        if (!criterion_holds(g, crit)) continue;
        if (is_well_founded(g.union_all())) continue;
        hits[w] = std::make_pair(i, std::move(g));
        int expect = best_chunk.load(std::memory_order_relaxed);
        while (w < expect && !best_chunk.compare_exchange_weak(expect, w)) {
        }
        return;
      }
    });
    rep.graphs_examined = cfg.sample_count;
    for (auto& h : hits) {
      if (h.has_value()) {
        rep.graphs_examined = h->first + 1;
        rep.counterexamples.push_back(std::move(h->second));
        break;
      }
    }
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

std::optional<TriGraph> find_counterexample(const ScanConfig& cfg, CriterionId id, int workers) {
  ScanReport rep = counterexample_scan(cfg, id, workers);
  if (rep.counterexamples.empty()) return std::nullopt;
  return rep.counterexamples.front();
}

ScanReport compare_criteria(const ScanConfig& cfg, CriterionId left, CriterionId right,
                            int workers) {
  const auto t0 = Clock::now();
  const Criterion& lcrit = criterion(left);
  const Criterion& rcrit = criterion(right);
  const bool two_color =
      (left == CriterionId::JUMPING_AB || right == CriterionId::JUMPING_AB);

  ScanReport rep;
  rep.ids = {left, right};
  rep.config = cfg;

  struct Part {
    std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
    std::optional<TriGraph> left_only;
    std::optional<TriGraph> right_only;
  };

  auto classify = [&](const TriGraph& g, Part& part) {
    const bool l = criterion_holds(g, lcrit);
    const bool r = criterion_holds(g, rcrit);
    ++part.counts[l ? (r ? 0 : 1) : (r ? 2 : 3)];
    if (l && !r && !part.left_only.has_value()) part.left_only = g;
    if (r && !l && !part.right_only.has_value()) part.right_only = g;
  };

  if (cfg.mode == ScanMode::Exhaustive) {
    check_exhaustive_budget(cfg, cfg.n, two_color);
    const std::vector<std::uint64_t> colors =
        color_candidates(cfg.n, false, cfg.require_colors_wf);
    const std::vector<std::uint64_t> clist =
        two_color ? std::vector<std::uint64_t>{0} : colors;
    const int per_color = pair_slot_count(cfg.n, false);

    const int w_count = std::max(1, std::min<int>(workers, static_cast<int>(clist.size())));
    std::vector<Part> parts(w_count);
    run_workers(w_count, [&](int w) {
      const Range range = chunk_range(clist.size(), w_count, w);
      for (std::uint64_t ci = range.lo; ci < range.hi; ++ci) {
        for (std::uint64_t b : colors) {
          for (std::uint64_t a : colors) {
            classify(graph_from_color_masks(cfg.n, a, b, clist[ci], false), parts[w]);
          }
        }
      }
    });
    for (const Part& p : parts) {
      for (int k = 0; k < 4; ++k) rep.counts[k] += p.counts[k];
      if (!rep.left_only_witness.has_value() && p.left_only.has_value())
        rep.left_only_witness = p.left_only;
      if (!rep.right_only_witness.has_value() && p.right_only.has_value())
        rep.right_only_witness = p.right_only;
    }
    rep.graphs_examined = std::uint64_t{1} << ((two_color ? 2 : 3) * per_color);
  } else {
    check_sample_config(cfg);
    rep.generator = kGeneratorName;
    const int w_count = std::max(
        1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(cfg.sample_count,
                                                                           1024))));
    std::vector<Part> parts(w_count);
    run_workers(w_count, [&](int w) {
      const Range range = chunk_range(cfg.sample_count, w_count, w);
      for (std::uint64_t i = range.lo; i < range.hi; ++i) {
        TriGraph g = sample_graph(cfg.n, cfg.seed, i, two_color);
        if (cfg.require_colors_wf && !colors_all_wf(g)) continue;
        classify(g, parts[w]);
      }
    });
    for (const Part& p : parts) {
      for (int k = 0; k < 4; ++k) rep.counts[k] += p.counts[k];
      if (!rep.left_only_witness.has_value() && p.left_only.has_value())
        rep.left_only_witness = p.left_only;
      if (!rep.right_only_witness.has_value() && p.right_only.has_value())
        rep.right_only_witness = p.right_only;
    }
    rep.graphs_examined = cfg.sample_count;
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

}  // namespace triwf
