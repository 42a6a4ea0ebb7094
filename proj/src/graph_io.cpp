#include "triwf/graph_io.hpp"

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace triwf {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_comment_or_blank(std::string_view line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '#';
  }
  return true;
}

int parse_int(const std::string& tok, int line, const char* what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  return value;
}

}  // namespace

TriGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  TriGraph g;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const std::vector<std::string> tok = split_ws(line);
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "nodes")
        throw ParseError(lineno, "expected header 'nodes <n>' before any edges");
      const int n = parse_int(tok[1], lineno, "node count");
      if (n < 0) throw ParseError(lineno, "node count must be nonnegative");
      if (n > kMaxNodes)
        throw ParseError(lineno, "node count " + std::to_string(n) + " exceeds the cap of " +
                                     std::to_string(kMaxNodes));
      g = TriGraph(n);
      have_header = true;
      continue;
    }
    if (tok.size() != 3)
      throw ParseError(lineno, "expected edge line '<color> <u> <v>'");
    const std::optional<Color> color = parse_color(tok[0]);
    if (!color.has_value())
      throw ParseError(lineno, "unknown color '" + tok[0] + "' (expected A, B, or C)");
    const int u = parse_int(tok[1], lineno, "source node");
    const int v = parse_int(tok[2], lineno, "target node");
    if (u < 0 || u >= g.size() || v < 0 || v >= g.size())
      throw ParseError(lineno, "edge " + std::to_string(u) + " -> " + std::to_string(v) +
                                   " outside carrier of size " + std::to_string(g.size()));
    g.color(*color).insert(u, v);
  }
  if (!have_header) throw ParseError(lineno, "missing 'nodes <n>' header");
  return g;
}

std::string serialize_graph(const TriGraph& g) {
  std::ostringstream out;
  out << "nodes " << g.size() << "\n";
  for (Color t : kColors) {
    for (const Edge& e : g.color(t).edges())
      out << color_name(t) << " " << e.first << " " << e.second << "\n";
  }
  return out.str();
}

std::string to_dot(const TriGraph& g, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  for (int v = 0; v < g.size(); ++v) out << "  " << v << ";\n";
  struct Style {
    Color color;
    const char* attrs;
  };
  const Style styles[] = {
      {Color::A, "color=dodgerblue, style=solid"},
      {Color::B, "color=black, style=dotted"},
      {Color::C, "color=crimson, style=dashed"},
  };
  for (const Style& s : styles) {
    for (const Edge& e : g.color(s.color).edges())
      out << "  " << e.first << " -> " << e.second << " [" << s.attrs << ", label=\""
          << color_name(s.color) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

TriGraph fixture_g1() {
  return TriGraph(Relation(4, {{1, 3}}),
                  Relation(4, {{0, 1}, {3, 0}, {2, 3}}),
                  Relation(4, {{0, 3}, {1, 2}}));
}

TriGraph fixture_g2() {
  return TriGraph(Relation(3, {{1, 2}}),
                  Relation(3, {{0, 1}, {2, 0}}),
                  Relation(3, {{0, 2}}));
}

TriGraph fixture_g3() {
  return TriGraph(Relation(3, {{1, 2}, {2, 0}}),
                  Relation(3, {{0, 1}}),
                  Relation(3, {{0, 2}}));
}

std::vector<std::string> write_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::pair<const char*, TriGraph> fixtures[] = {
      {"G1.txt", fixture_g1()},
      {"G2.txt", fixture_g2()},
      {"G3.txt", fixture_g3()},
  };
  std::vector<std::string> paths;
  for (const auto& [name, graph] : fixtures) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << serialize_graph(graph);
    paths.push_back(path.string());
  }
  return paths;
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int i = 15; i >= 0; --i) out.push_back(hex[(h >> (4 * i)) & 0xF]);
  return out;
}

}  // namespace triwf
