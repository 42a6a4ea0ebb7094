#include "triwf/criteria.hpp"

#include <bit>
#include <stdexcept>

namespace triwf {

RelExpr RelExpr::atom(Color c) { return RelExpr(Kind::Atom, c, {}); }

RelExpr RelExpr::unite(std::vector<RelExpr> parts) {
  if (parts.empty()) throw std::invalid_argument("union expression needs at least one part");
  return RelExpr(Kind::Union, Color::A, std::move(parts));
}

RelExpr RelExpr::compose(RelExpr lhs, RelExpr rhs) {
  std::vector<RelExpr> kids;
  kids.push_back(std::move(lhs));
  kids.push_back(std::move(rhs));
  return RelExpr(Kind::Compose, Color::A, std::move(kids));
}

RelExpr RelExpr::star(RelExpr inner) {
  std::vector<RelExpr> kids;
  kids.push_back(std::move(inner));
  return RelExpr(Kind::Star, Color::A, std::move(kids));
}

RelExpr RelExpr::plus(RelExpr inner) {
  std::vector<RelExpr> kids;
  kids.push_back(std::move(inner));
  return RelExpr(Kind::Plus, Color::A, std::move(kids));
}

Relation RelExpr::eval(const TriGraph& g) const {
  switch (kind_) {
    case Kind::Atom:
      return g.color(atom_);
    case Kind::Union: {
      Relation acc = children_[0].eval(g);
      for (std::size_t i = 1; i < children_.size(); ++i)
        acc = triwf::unite(acc, children_[i].eval(g));
      return acc;
    }
    case Kind::Compose:
      return triwf::compose(children_[0].eval(g), children_[1].eval(g));
    case Kind::Star:
      return closure(children_[0].eval(g), true);
    case Kind::Plus:
      return closure(children_[0].eval(g), false);
  }
  throw std::logic_error("bad expression kind");
}

std::string RelExpr::to_string() const {
  switch (kind_) {
    case Kind::Atom:
      return std::string(1, color_name(atom_));
    case Kind::Union: {
      std::string out = children_[0].to_string();
      for (std::size_t i = 1; i < children_.size(); ++i) out += "|" + children_[i].to_string();
      return out;
    }
    case Kind::Compose: {
      auto wrap = [](const RelExpr& e) {
        std::string s = e.to_string();
        return e.needs_parens_in_compose() ? "(" + s + ")" : s;
      };
      return wrap(children_[0]) + wrap(children_[1]);
    }
    case Kind::Star:
    case Kind::Plus: {
      std::string s = children_[0].to_string();
      if (children_[0].kind_ != Kind::Atom) s = "(" + s + ")";
      return s + (kind_ == Kind::Star ? "*" : "+");
    }
  }
  return "?";
}

bool RelExpr::operator==(const RelExpr& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::Atom) return atom_ == other.atom_;
  return children_ == other.children_;
}

std::string InclusionClause::to_string() const {
  return lhs.to_string() + " <= " + rhs.to_string();
}

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::RAMSEY: return "RAMSEY";
    case CriterionId::THREE_OF_NINE: return "THREE_OF_NINE";
    case CriterionId::TRIPARTITE: return "TRIPARTITE";
    case CriterionId::JUMPING_AB: return "JUMPING_AB";
    case CriterionId::JUMPING_V1: return "JUMPING_V1";
    case CriterionId::JUMPING_V2: return "JUMPING_V2";
    case CriterionId::F1: return "F1";
    case CriterionId::F2: return "F2";
    case CriterionId::F3: return "F3";
  }
  return "?";
}

std::optional<CriterionId> parse_criterion_id(std::string_view s) {
  for (CriterionId id : kAllCriteria)
    if (s == to_string(id)) return id;
  return std::nullopt;
}

namespace {

RelExpr A() { return RelExpr::atom(Color::A); }
RelExpr B() { return RelExpr::atom(Color::B); }
RelExpr C() { return RelExpr::atom(Color::C); }
RelExpr U() { return RelExpr::unite({A(), B(), C()}); }
RelExpr AB() { return RelExpr::unite({A(), B()}); }
RelExpr BC() { return RelExpr::unite({B(), C()}); }

std::vector<Criterion> make_builtin_table() {
  using E = RelExpr;
  std::vector<Criterion> out;

  // The union composed with itself stays inside the union.
  out.push_back({CriterionId::RAMSEY,
                 {{E::compose(U(), U()), U()}},
                 true});

  // BA | CA | CB <= A | B | C
  out.push_back({CriterionId::THREE_OF_NINE,
                 {{E::unite({E::compose(B(), A()), E::compose(C(), A()), E::compose(C(), B())}),
                   U()}},
                 true});

  // (B|C)A <= A(A|B|C)* | B | C   and   CB <= A(A|B|C)* | BB* | C
  out.push_back({CriterionId::TRIPARTITE,
                 {{E::compose(BC(), A()),
                   E::unite({E::compose(A(), E::star(U())), B(), C()})},
                  {E::compose(C(), B()),
                   E::unite({E::compose(A(), E::star(U())), E::compose(B(), E::star(B())), C()})}},
                 true});

  // Two-relation form: BA <= A(A|B)* | B, with C required empty.
  out.push_back({CriterionId::JUMPING_AB,
                 {{E::compose(B(), A()), E::unite({E::compose(A(), E::star(AB())), B()})}},
                 true});

  // BA <= A(A|B)* | B   and   C(A|B) <= (A|B)(A|B|C)* | C
  out.push_back({CriterionId::JUMPING_V1,
                 {{E::compose(B(), A()), E::unite({E::compose(A(), E::star(AB())), B()})},
                  {E::compose(C(), AB()),
                   E::unite({E::compose(AB(), E::star(U())), C()})}},
                 true});

  // CB <= B(B|C)* | C   and   (B|C)A <= A(A|B|C)* | B | C
  out.push_back({CriterionId::JUMPING_V2,
                 {{E::compose(C(), B()), E::unite({E::compose(B(), E::star(BC())), C()})},
                  {E::compose(BC(), A()),
                   E::unite({E::compose(A(), E::star(U())), B(), C()})}},
                 true});

  // Refuted: (B|C)A <= C   and   CB <= A | B(B|C)*
  out.push_back({CriterionId::F1,
                 {{E::compose(BC(), A()), C()},
                  {E::compose(C(), B()), E::unite({A(), E::compose(B(), E::star(BC()))})}},
                 false});

  // Refuted: (B|C)A <= C   and   CB <= B(A|B)*
  out.push_back({CriterionId::F2,
                 {{E::compose(BC(), A()), C()},
                  {E::compose(C(), B()), E::compose(B(), E::star(AB()))}},
                 false});

  // Refuted: BA | CB <= C   and   CA <= BA*
  out.push_back({CriterionId::F3,
                 {{E::unite({E::compose(B(), A()), E::compose(C(), B())}), C()},
                  {E::compose(C(), A()), E::compose(B(), E::star(A()))}},
                 false});

  return out;
}

void check_jumping_ab_usage(const TriGraph& g, CriterionId id) {
  if (id == CriterionId::JUMPING_AB && !g.c.empty())
    throw std::invalid_argument(
        "JUMPING_AB is a two-relation criterion: color C must be empty");
}

}  // namespace

const std::vector<Criterion>& builtin_criteria() {
  static const std::vector<Criterion> table = make_builtin_table();
  return table;
}

const Criterion& criterion(CriterionId id) {
  for (const Criterion& c : builtin_criteria())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown criterion id");
}

Relation eval_expr(const RelExpr& e, const TriGraph& g) { return e.eval(g); }

CriterionReport evaluate_criterion(const TriGraph& g, CriterionId id) {
  check_jumping_ab_usage(g, id);
  const Criterion& crit = criterion(id);
  CriterionReport report;
  report.id = id;
  for (std::size_t ci = 0; ci < crit.clauses.size(); ++ci) {
    const Relation lhs = crit.clauses[ci].lhs.eval(g);
    const Relation rhs = crit.clauses[ci].rhs.eval(g);
    for (int u = 0; u < lhs.size(); ++u) {
      std::uint64_t uncovered = lhs.row(u) & ~rhs.row(u);
      while (uncovered) {
        int v = std::countr_zero(uncovered);
        uncovered &= uncovered - 1;
        report.violations.push_back({{u, v}, static_cast<int>(ci)});
      }
    }
  }
  report.holds = report.violations.empty();
  for (Color t : kColors)
    report.colors_wf[static_cast<int>(t)] = is_well_founded(g.color(t));
  report.union_wf = is_well_founded(g.union_all());
  return report;
}

bool criterion_holds(const TriGraph& g, const Criterion& crit) {
  check_jumping_ab_usage(g, crit.id);
  for (const InclusionClause& clause : crit.clauses) {
    if (!is_subset(clause.lhs.eval(g), clause.rhs.eval(g))) return false;
  }
  return true;
}

bool criterion_holds(const TriGraph& g, CriterionId id) {
  return criterion_holds(g, criterion(id));
}

bool is_transitive(const Relation& r) { return is_subset(compose(r, r), r); }

std::optional<std::pair<Color, NodeId>> clique_witness(const TriGraph& g) {
  for (Color t : kColors) {
    const Relation& r = g.color(t);
    for (int u = 0; u < r.size(); ++u)
      if (r.contains(u, u)) return std::make_pair(t, u);
  }
  return std::nullopt;
}

}  // namespace triwf
