#ifndef TRIWF_GRAPH_IO_HPP
#define TRIWF_GRAPH_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "triwf/relation.hpp"

namespace triwf {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Text format: '#' comment lines, one `nodes <n>` header, then edge lines
/// `<color> <u> <v>` with color in {A, B, C}. Duplicate edges are idempotent.
TriGraph parse_graph(std::string_view text);

/// Canonical form: header, then A, B, C edges each sorted by (u, v).
/// parse_graph(serialize_graph(g)) == g.
std::string serialize_graph(const TriGraph& g);

/// GraphViz rendering; colors are styled solid azure / dotted black /
/// dashed crimson for A / B / C.
std::string to_dot(const TriGraph& g, std::string_view name = "trigraph");

/// The three bundled counterexample graphs.
TriGraph fixture_g1();  // satisfies F1; 4 nodes
TriGraph fixture_g2();  // satisfies F2; 3 nodes
TriGraph fixture_g3();  // satisfies F3; 3 nodes

/// Writes G1.txt, G2.txt, G3.txt under dir; returns the file paths.
std::vector<std::string> write_fixtures(const std::string& dir);

/// FNV-1a 64-bit content digest, as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

}  // namespace triwf

#endif  // TRIWF_GRAPH_IO_HPP
