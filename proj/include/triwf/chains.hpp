#ifndef TRIWF_CHAINS_HPP
#define TRIWF_CHAINS_HPP

#include <optional>
#include <string>
#include <vector>

#include "triwf/criteria.hpp"
#include "triwf/relation.hpp"

namespace triwf {

struct Step {
  NodeId from;
  Color color;
  NodeId to;
  friend bool operator==(const Step&, const Step&) = default;
};

std::string to_string(const Step& s);

/// Finite stem plus a nonempty cycle of colored steps; the folded form of an
/// eventually periodic infinite chain. Steps chain along the stem, from the
/// stem end into the cycle, and around the cycle back to its own start.
struct Lasso {
  std::vector<Step> stem;
  std::vector<Step> cycle;
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

enum class RewriteKind { SwallowA, PreferBDetour, ContractCB, EraseB };
const char* to_string(RewriteKind k);

/// One cycle rewrite: the `removed` steps at index `pos` (wrapping) were
/// replaced by `inserted`. `covered` is the pair justifying the rewrite and
/// `clause` the index of the criterion clause whose right side covers it
/// (detours are covered by the CB clause's B-path alternative).
struct RewriteRecord {
  RewriteKind kind;
  int pos = 0;
  int removed = 0;
  std::vector<Step> inserted;
  int clause = 0;
  Edge covered{0, 0};
};

using ExtractionTrace = std::vector<RewriteRecord>;

struct ExtractionResult {
  Lasso lasso;  // empty stem; monochrome cycle
  ExtractionTrace trace;
  Color color;  // the color of every cycle step
};

bool validate_lasso(const TriGraph& g, const Lasso& l);

/// Walk from `start`, preferring A-steps whenever an A-successor is
/// immortal, otherwise a B- or C-step to an immortal node (color order then
/// smallest node breaks ties). The walk folds into a lasso at the first
/// repeated node. `start` must be immortal.
Lasso construct_greedy_chain(const TriGraph& g, NodeId start);

/// Rewrite the lasso cycle into a single-color cycle using the clauses of
/// THREE_OF_NINE or TRIPARTITE, which must hold on g. The stem is dropped:
/// it plays the role of the discarded finite prefix. Rewrites stop within a
/// budget of |cycle| * n^2 steps; exhausting it indicates a bug and throws
/// std::logic_error.
ExtractionResult extract_monochrome(const TriGraph& g, const Lasso& l, CriterionId id);

/// Direct per-color cycle search, used as an independent check on
/// extraction: first color in A, B, C order containing a cycle.
std::optional<std::pair<Color, std::vector<NodeId>>> monochrome_cycle_oracle(const TriGraph& g);

/// Mechanically re-applies trace records to the cycle of an input lasso.
std::vector<Step> replay_trace(const std::vector<Step>& cycle, const ExtractionTrace& trace);

}  // namespace triwf

#endif  // TRIWF_CHAINS_HPP
