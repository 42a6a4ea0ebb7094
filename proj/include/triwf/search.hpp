#ifndef TRIWF_SEARCH_HPP
#define TRIWF_SEARCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triwf/criteria.hpp"
#include "triwf/relation.hpp"

namespace triwf {

/// Fixed pseudo-random stream: splitmix64 finalizer over an indexed
/// sequence, so any position can be drawn independently of the others.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr const char* kGeneratorName = "splitmix64";

/// Number of ordered pairs per color: n*(n-1), or n*n with self-loops.
int pair_slot_count(int n, bool include_self_loops);
/// Total edge slots across the three colors.
int edge_slot_count(int n, bool include_self_loops);

/// Decode one color from its pair-slot chunk (row-major, targets ascending,
/// u==v skipped unless self-loops are included).
Relation relation_from_chunk(int n, std::uint64_t chunk, bool include_self_loops);
std::uint64_t chunk_from_relation(const Relation& r, bool include_self_loops);

TriGraph graph_from_color_masks(int n, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                bool include_self_loops);

/// Canonical enumeration: the graph with mask m has color chunks
/// a = low bits, then b, then c; masks ascend in canonical order.
struct GraphEnumeration {
  GraphEnumeration(int n, bool include_self_loops = false);
  std::uint64_t total() const;  // 2^bits; bits must stay below 63
  TriGraph at(std::uint64_t mask) const;
  std::uint64_t mask_of(const TriGraph& g) const;

  int n;
  bool include_self_loops;
  int bits;
};

/// Uniform draw over the no-self-loop enumeration space: sample `index` of
/// the stream identified by `seed`. With two_color set, color C is empty and
/// the draw is uniform over the two-color subspace.
TriGraph sample_graph(int n, std::uint64_t seed, std::uint64_t index, bool two_color = false);

enum class ScanMode { Exhaustive, Sample };

struct ScanConfig {
  int n = 3;
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  // Honored by compare_criteria; soundness and counterexample scans always
  // restrict to well-founded colors, which their verdicts require anyway.
  bool require_colors_wf = true;
  // Largest exhaustive space, in raw bits: 18 covers three colors at n = 3.
  int exhaustive_bit_budget = 18;
};

struct ScanReport {
  std::vector<CriterionId> ids;
  ScanConfig config;
  std::uint64_t graphs_examined = 0;
  /// Graphs with well-founded colors where the criterion holds but the
  /// union is cyclic, in canonical order.
  std::vector<TriGraph> counterexamples;
  // compare_criteria only: graphs counted by (left holds, right holds) as
  // both / left-only / right-only / neither, and the first one-sided
  // witnesses in canonical (or sample) order.
  std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
  std::optional<TriGraph> left_only_witness;
  std::optional<TriGraph> right_only_witness;
  std::string generator;
  std::int64_t elapsed_ms = 0;
};

/// Scans for violations of a sound criterion: graphs whose colors are all
/// well-founded, where the criterion holds, yet the union has a cycle.
/// Expected to find none. Unsound ids are a usage error.
ScanReport soundness_scan(const ScanConfig& cfg, CriterionId id, int workers = 1);

/// Searches (n ascending from 1 to cfg.n when exhaustive, then bitmask
/// ascending) for the first graph with well-founded colors where the
/// criterion holds and the union is cyclic.
ScanReport counterexample_scan(const ScanConfig& cfg, CriterionId id, int workers = 1);
std::optional<TriGraph> find_counterexample(const ScanConfig& cfg, CriterionId id,
                                            int workers = 1);

/// Classifies every scanned graph by which of the two criteria hold,
/// keeping the first witness in each one-sided direction.
ScanReport compare_criteria(const ScanConfig& cfg, CriterionId left, CriterionId right,
                            int workers = 1);

}  // namespace triwf

#endif  // TRIWF_SEARCH_HPP
