#include "triwf/report.hpp"

namespace triwf {

Json to_json(const TriGraph& g) {
  Json out;
  out["nodes"] = g.size();
  for (Color t : kColors) {
    Json edges = Json::array();
    for (const Edge& e : g.color(t).edges()) edges.push_back({e.first, e.second});
    out[std::string(1, color_name(t))] = std::move(edges);
  }
  return out;
}

Json to_json(const Step& s) {
  return Json{{"from", s.from}, {"color", std::string(1, color_name(s.color))}, {"to", s.to}};
}

Json to_json(const Lasso& l) {
  Json stem = Json::array();
  for (const Step& s : l.stem) stem.push_back(to_json(s));
  Json cycle = Json::array();
  for (const Step& s : l.cycle) cycle.push_back(to_json(s));
  return Json{{"stem", std::move(stem)}, {"cycle", std::move(cycle)}};
}

Json to_json(const RewriteRecord& r) {
  Json inserted = Json::array();
  for (const Step& s : r.inserted) inserted.push_back(to_json(s));
  return Json{{"kind", to_string(r.kind)},
              {"pos", r.pos},
              {"removed", r.removed},
              {"inserted", std::move(inserted)},
              {"clause", r.clause},
              {"covered", {r.covered.first, r.covered.second}}};
}

Json to_json(const CriterionReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations)
    violations.push_back({{"clause", v.clause}, {"from", v.pair.first}, {"to", v.pair.second}});
  return Json{{"criterion", to_string(r.id)},
              {"holds", r.holds},
              {"violations", std::move(violations)},
              {"colors_wf",
               {{"A", r.colors_wf[0]}, {"B", r.colors_wf[1]}, {"C", r.colors_wf[2]}}},
              {"union_wf", r.union_wf}};
}

Json to_json(const ScanReport& r) {
  Json out;
  Json ids = Json::array();
  for (CriterionId id : r.ids) ids.push_back(to_string(id));
  out["criteria"] = std::move(ids);
  out["nodes"] = r.config.n;
  out["mode"] = r.config.mode == ScanMode::Exhaustive ? "exhaustive" : "sample";
  if (r.config.mode == ScanMode::Sample) {
    out["samples"] = r.config.sample_count;
    out["seed"] = r.config.seed;
    out["generator"] = r.generator;
  }
  out["graphs_examined"] = r.graphs_examined;
  Json cexs = Json::array();
  for (const TriGraph& g : r.counterexamples) cexs.push_back(to_json(g));
  out["counterexamples"] = std::move(cexs);
  if (r.ids.size() == 2) {
    out["require_colors_wf"] = r.config.require_colors_wf;
    out["counts"] = Json{{"both", r.counts[0]},
                         {"left_only", r.counts[1]},
                         {"right_only", r.counts[2]},
                         {"neither", r.counts[3]}};
    out["left_only_witness"] =
        r.left_only_witness.has_value() ? to_json(*r.left_only_witness) : Json(nullptr);
    out["right_only_witness"] =
        r.right_only_witness.has_value() ? to_json(*r.right_only_witness) : Json(nullptr);
  }
  out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

Json tool_stamp() { return Json{{"name", kToolName}, {"version", kToolVersion}}; }

}  // namespace triwf
