#include "triwf/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>
#include <thread>

#include "triwf/chains.hpp"
#include "triwf/criteria.hpp"
#include "triwf/graph_io.hpp"
#include "triwf/relation.hpp"
#include "triwf/report.hpp"
#include "triwf/search.hpp"

namespace triwf::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CriterionId parse_id_or_throw(const std::string& name) {
  const std::optional<CriterionId> id = parse_criterion_id(name);
  if (!id.has_value())
    throw std::invalid_argument("unknown criterion '" + name +
                                "' (expected one of RAMSEY, THREE_OF_NINE, TRIPARTITE, "
                                "JUMPING_AB, JUMPING_V1, JUMPING_V2, F1, F2, F3)");
  return *id;
}

Json input_stamp(const std::string& path, const std::string& bytes) {
  return Json{{"path", path}, {"digest", content_digest(bytes)}};
}

void emit(const Json& payload, bool json, std::ostream& out, const std::string& text) {
  if (json)
    out << payload.dump(2) << "\n";
  else
    out << text;
}

std::string describe_graph_flags(const CriterionReport& rep) {
  std::ostringstream t;
  t << "colors well-founded: A=" << (rep.colors_wf[0] ? "yes" : "no")
    << " B=" << (rep.colors_wf[1] ? "yes" : "no") << " C=" << (rep.colors_wf[2] ? "yes" : "no")
    << "\nunion well-founded: " << (rep.union_wf ? "yes" : "no") << "\n";
  return t.str();
}

struct ScanOptions {
  std::string criterion;
  int nodes = 3;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int budget_bits = 18;
  int workers = 0;
};

int effective_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ScanConfig make_config(const ScanOptions& o) {
  ScanConfig cfg;
  cfg.n = o.nodes;
  cfg.mode = o.exhaustive ? ScanMode::Exhaustive : ScanMode::Sample;
  cfg.sample_count = o.samples;
  cfg.seed = o.seed;
  cfg.exhaustive_bit_budget = o.budget_bits;
  return cfg;
}

int do_check(const std::string& path, const std::string& criterion_name, bool json,
             std::ostream& out) {
  const std::string bytes = read_file(path);
  const TriGraph g = parse_graph(bytes);
  const CriterionId id = parse_id_or_throw(criterion_name);
  const CriterionReport rep = evaluate_criterion(g, id);

  Json payload = to_json(rep);
  payload["command"] = "check";
  payload["input"] = input_stamp(path, bytes);
  payload["tool"] = tool_stamp();

  std::ostringstream t;
  t << "criterion " << to_string(id) << ": " << (rep.holds ? "holds" : "fails") << "\n";
  for (const Violation& v : rep.violations)
    t << "  uncovered pair (" << v.pair.first << ", " << v.pair.second << ") in clause "
      << criterion(id).clauses[v.clause].to_string() << "\n";
  t << describe_graph_flags(rep);
  emit(payload, json, out, t.str());
  return rep.holds ? 0 : 1;
}

int do_witness(const std::string& path, const std::string& criterion_name, bool json,
               std::ostream& out) {
  const std::string bytes = read_file(path);
  const TriGraph g = parse_graph(bytes);

  Json payload;
  payload["command"] = "witness";
  payload["input"] = input_stamp(path, bytes);
  payload["tool"] = tool_stamp();

  const std::optional<std::vector<NodeId>> union_cycle = find_cycle(g.union_all());
  payload["union_cycle"] = union_cycle.has_value() ? Json(*union_cycle) : Json(nullptr);

  std::ostringstream t;
  if (union_cycle.has_value()) {
    t << "union cycle:";
    for (NodeId v : *union_cycle) t << " " << v;
    t << " (back to " << union_cycle->front() << ")\n";
  } else {
    t << "union is well-founded; no cycle\n";
  }

  if (criterion_name.empty()) {
    emit(payload, json, out, t.str());
    return union_cycle.has_value() ? 0 : 1;
  }

  const CriterionId id = parse_id_or_throw(criterion_name);
  if (id != CriterionId::THREE_OF_NINE && id != CriterionId::TRIPARTITE)
    throw std::invalid_argument(
        "witness extraction supports THREE_OF_NINE and TRIPARTITE only");
  payload["criterion"] = to_string(id);

  if (!criterion_holds(g, id)) {
    payload["criterion_holds"] = false;
    t << "criterion " << to_string(id) << " does not hold; no extraction\n";
    emit(payload, json, out, t.str());
    return 1;
  }
  payload["criterion_holds"] = true;

  const std::vector<NodeId> immortal = immortal_nodes(g);
  if (immortal.empty()) {
    payload["lasso"] = nullptr;
    t << "no immortal nodes; nothing to extract\n";
    emit(payload, json, out, t.str());
    return 1;
  }

  const Lasso lasso = construct_greedy_chain(g, immortal.front());
  const ExtractionResult ex = extract_monochrome(g, lasso, id);
  const auto oracle = monochrome_cycle_oracle(g);

  payload["start"] = immortal.front();
  payload["lasso"] = to_json(lasso);
  Json trace = Json::array();
  for (const RewriteRecord& rec : ex.trace) trace.push_back(to_json(rec));
  payload["extraction"] = Json{{"color", std::string(1, color_name(ex.color))},
                               {"lasso", to_json(ex.lasso)},
                               {"trace", std::move(trace)}};
  payload["oracle"] = oracle.has_value()
                          ? Json{{"color", std::string(1, color_name(oracle->first))},
                                 {"cycle", oracle->second}}
                          : Json(nullptr);

  t << "greedy lasso from " << immortal.front() << ":\n";
  for (const Step& s : lasso.stem) t << "  stem  " << to_string(s) << "\n";
  for (const Step& s : lasso.cycle) t << "  cycle " << to_string(s) << "\n";
  t << "monochrome color " << color_name(ex.color) << " after " << ex.trace.size()
    << " rewrite(s):\n";
  for (const Step& s : ex.lasso.cycle) t << "  cycle " << to_string(s) << "\n";
  emit(payload, json, out, t.str());
  return 0;
}

int do_scan(const ScanOptions& o, bool json, std::ostream& out) {
  const CriterionId id = parse_id_or_throw(o.criterion);
  const ScanConfig cfg = make_config(o);
  const int workers = effective_workers(o.workers);
  const bool sound = criterion(id).sound;

  const ScanReport rep =
      sound ? soundness_scan(cfg, id, workers) : counterexample_scan(cfg, id, workers);
  const bool expectation_met = sound == rep.counterexamples.empty();

  Json payload = to_json(rep);
  payload["command"] = "scan";
  payload["sound"] = sound;
  payload["expectation_met"] = expectation_met;
  payload["tool"] = tool_stamp();

  std::ostringstream t;
  t << "scan " << to_string(id) << " (" << (sound ? "sound" : "refuted hypothesis") << "), "
    << rep.graphs_examined << " graphs examined\n";
  if (sound) {
    t << (rep.counterexamples.empty() ? "no counterexample found (expected)\n"
                                      : "COUNTEREXAMPLE FOUND: the criterion is violated!\n");
  } else if (rep.counterexamples.empty()) {
    t << "no counterexample found in the scanned space\n";
  } else {
    t << "counterexample with " << rep.counterexamples.front().size() << " nodes:\n"
      << serialize_graph(rep.counterexamples.front());
  }
  emit(payload, json, out, t.str());
  return expectation_met ? 0 : 1;
}

int do_compare(const ScanOptions& o, const std::string& right_name, bool any_colors, bool json,
               std::ostream& out) {
  const CriterionId left = parse_id_or_throw(o.criterion);
  const CriterionId right = parse_id_or_throw(right_name);
  ScanConfig cfg = make_config(o);
  cfg.require_colors_wf = !any_colors;

  const ScanReport rep = compare_criteria(cfg, left, right, effective_workers(o.workers));

  Json payload = to_json(rep);
  payload["command"] = "compare";
  payload["tool"] = tool_stamp();

  std::ostringstream t;
  t << "compare " << to_string(left) << " vs " << to_string(right) << " over "
    << rep.graphs_examined << " graphs\n"
    << "  both hold: " << rep.counts[0] << "\n  only " << to_string(left) << ": " << rep.counts[1]
    << "\n  only " << to_string(right) << ": " << rep.counts[2] << "\n  neither: " << rep.counts[3]
    << "\n";
  if (rep.left_only_witness.has_value())
    t << "witness (" << to_string(left) << " only):\n" << serialize_graph(*rep.left_only_witness);
  if (rep.right_only_witness.has_value())
    t << "witness (" << to_string(right) << " only):\n"
      << serialize_graph(*rep.right_only_witness);
  emit(payload, json, out, t.str());
  return 0;
}

int do_fixtures(const std::string& dir, bool json, std::ostream& out) {
  const std::vector<std::string> paths = write_fixtures(dir);
  Json payload;
  payload["command"] = "fixtures";
  payload["tool"] = tool_stamp();
  Json files = Json::array();
  std::ostringstream t;
  for (const std::string& p : paths) {
    files.push_back(Json{{"path", p}, {"digest", content_digest(read_file(p))}});
    t << "wrote " << p << "\n";
  }
  payload["files"] = std::move(files);
  emit(payload, json, out, t.str());
  return 0;
}

int do_dot(const std::string& path, const std::string& out_path, bool json, std::ostream& out) {
  const std::string bytes = read_file(path);
  const TriGraph g = parse_graph(bytes);
  const std::string dot = to_dot(g);
  std::ofstream sink(out_path);
  if (!sink) throw std::runtime_error("cannot write '" + out_path + "'");
  sink << dot;
  sink.close();

  Json payload;
  payload["command"] = "dot";
  payload["input"] = input_stamp(path, bytes);
  payload["output"] = out_path;
  payload["tool"] = tool_stamp();
  emit(payload, json, out, "wrote " + out_path + "\n");
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"well-foundedness criteria for unions of three relations"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "emit a JSON report instead of text");

  std::string file, criterion_name, dir, out_path, right_name;
  ScanOptions scan_opts;
  bool any_colors = false;

  CLI::App* check = app.add_subcommand("check", "evaluate a criterion on a graph file");
  check->add_option("file", file)->required();
  check->add_option("--criterion", criterion_name)->required();

  CLI::App* witness =
      app.add_subcommand("witness", "union cycle; with a criterion, monochrome extraction");
  witness->add_option("file", file)->required();
  witness->add_option("--criterion", criterion_name);

  CLI::App* scan = app.add_subcommand("scan", "soundness or counterexample search");
  scan->add_option("--criterion", scan_opts.criterion)->required();
  scan->add_option("--nodes", scan_opts.nodes)->required();
  scan->add_flag("--exhaustive", scan_opts.exhaustive);
  scan->add_option("--samples", scan_opts.samples);
  scan->add_option("--seed", scan_opts.seed);
  scan->add_option("--budget-bits", scan_opts.budget_bits,
                   "largest exhaustive space, in raw bits");
  scan->add_option("--workers", scan_opts.workers, "0 = one per hardware thread");

  CLI::App* compare = app.add_subcommand("compare", "classify graphs by two criteria");
  compare->add_option("--left", scan_opts.criterion)->required();
  compare->add_option("--right", right_name)->required();
  compare->add_option("--nodes", scan_opts.nodes)->required();
  compare->add_flag("--exhaustive", scan_opts.exhaustive);
  compare->add_option("--samples", scan_opts.samples);
  compare->add_option("--seed", scan_opts.seed);
  compare->add_option("--budget-bits", scan_opts.budget_bits);
  compare->add_option("--workers", scan_opts.workers);
  compare->add_flag("--any-colors", any_colors,
                    "classify all graphs, not just those with well-founded colors");

  CLI::App* fixtures = app.add_subcommand("fixtures", "write the bundled example graphs");
  fixtures->add_option("--dir", dir)->required();

  CLI::App* dot = app.add_subcommand("dot", "render a graph file for graphviz");
  dot->add_option("file", file)->required();
  dot->add_option("--out", out_path)->required();

  // Lets --json appear after the subcommand name.
  for (CLI::App* sub : {check, witness, scan, compare, fixtures, dot}) sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("triwf");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return do_check(file, criterion_name, json, out);
    if (witness->parsed()) return do_witness(file, criterion_name, json, out);
    if (scan->parsed()) {
      if (scan_opts.exhaustive == (scan_opts.samples > 0))
        throw std::invalid_argument("choose exactly one of --exhaustive or --samples <k>");
      return do_scan(scan_opts, json, out);
    }
    if (compare->parsed()) {
      if (scan_opts.exhaustive == (scan_opts.samples > 0))
        throw std::invalid_argument("choose exactly one of --exhaustive or --samples <k>");
      return do_compare(scan_opts, right_name, any_colors, json, out);
    }
    if (fixtures->parsed()) return do_fixtures(dir, json, out);
    if (dot->parsed()) return do_dot(file, out_path, json, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace triwf::cli
