#ifndef TRIWF_CRITERIA_HPP
#define TRIWF_CRITERIA_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triwf/relation.hpp"

namespace triwf {

/// Relational expression over the atoms A, B, C with union, composition,
/// and the two closures. Construct-only; evaluated against a TriGraph.
class RelExpr {
 public:
  static RelExpr atom(Color c);
  static RelExpr unite(std::vector<RelExpr> parts);  // at least one part
  static RelExpr compose(RelExpr lhs, RelExpr rhs);
  static RelExpr star(RelExpr inner);  // reflexive-transitive closure
  static RelExpr plus(RelExpr inner);  // transitive closure

  Relation eval(const TriGraph& g) const;
  std::string to_string() const;

  bool operator==(const RelExpr& other) const;

 private:
  enum class Kind { Atom, Union, Compose, Star, Plus };
  RelExpr(Kind k, Color a, std::vector<RelExpr> kids)
      : kind_(k), atom_(a), children_(std::move(kids)) {}

  bool needs_parens_in_compose() const { return kind_ == Kind::Union; }

  Kind kind_;
  Color atom_;
  std::vector<RelExpr> children_;
};

/// lhs subset-of rhs, checked pointwise against a graph.
struct InclusionClause {
  RelExpr lhs;
  RelExpr rhs;
  std::string to_string() const;
};

enum class CriterionId {
  RAMSEY,
  THREE_OF_NINE,
  TRIPARTITE,
  JUMPING_AB,
  JUMPING_V1,
  JUMPING_V2,
  F1,
  F2,
  F3,
};

inline constexpr std::array<CriterionId, 9> kAllCriteria{
    CriterionId::RAMSEY,     CriterionId::THREE_OF_NINE, CriterionId::TRIPARTITE,
    CriterionId::JUMPING_AB, CriterionId::JUMPING_V1,    CriterionId::JUMPING_V2,
    CriterionId::F1,         CriterionId::F2,            CriterionId::F3,
};

std::string to_string(CriterionId id);
std::optional<CriterionId> parse_criterion_id(std::string_view s);

struct Criterion {
  CriterionId id;
  std::vector<InclusionClause> clauses;
  // true for the criteria that guarantee union well-foundedness when all
  // colors are well-founded; false for the three refuted hypotheses.
  bool sound;
};

/// The immutable builtin table: five sound union criteria, the two-relation
/// jumping criterion, and the three refuted hypotheses F1..F3.
const std::vector<Criterion>& builtin_criteria();
const Criterion& criterion(CriterionId id);

struct Violation {
  Edge pair;
  int clause = 0;
};

struct CriterionReport {
  CriterionId id;
  bool holds = false;
  // Every uncovered pair, ordered by (clause index, pair).
  std::vector<Violation> violations;
  std::array<bool, 3> colors_wf{false, false, false};
  bool union_wf = false;
};

Relation eval_expr(const RelExpr& e, const TriGraph& g);

/// Full evaluation with violation list and well-foundedness flags.
/// JUMPING_AB is defined for two relations only: a nonempty C is a usage
/// error (std::invalid_argument).
CriterionReport evaluate_criterion(const TriGraph& g, CriterionId id);

/// Clause check only, stopping at the first uncovered pair. Same usage
/// rules as evaluate_criterion.
bool criterion_holds(const TriGraph& g, const Criterion& crit);
bool criterion_holds(const TriGraph& g, CriterionId id);

bool is_transitive(const Relation& r);

/// First monochrome self-loop in color order A, B, C then node order.
/// When the colors are transitive, THREE_OF_NINE holds, and the union is
/// cyclic, a self-loop is guaranteed to exist.
std::optional<std::pair<Color, NodeId>> clique_witness(const TriGraph& g);

}  // namespace triwf

#endif  // TRIWF_CRITERIA_HPP
