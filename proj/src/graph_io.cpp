#include "domlearn/graph_io.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace domlearn {

namespace {

bool dense_ids(const LabeledDigraph& g) {
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] != i) return false;
  }
  return true;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw std::invalid_argument("graph text line " + std::to_string(line_no) +
                              ": " + what);
}

std::size_t parse_field(const std::string& token, const std::string& key,
                        std::size_t line_no) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) malformed(line_no, "expected " + prefix);
  try {
    std::size_t pos = 0;
    const unsigned long value = std::stoul(token.substr(prefix.size()), &pos);
    if (pos != token.size() - prefix.size()) malformed(line_no, "bad number");
    return value;
  } catch (const std::logic_error&) {
    malformed(line_no, "bad number in " + token);
  }
}

VertexId parse_vertex(const std::string& token, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const unsigned long value = std::stoul(token, &pos);
    if (pos != token.size() || value > 0xffffffffUL) malformed(line_no, "bad vertex");
    return static_cast<VertexId>(value);
  } catch (const std::logic_error&) {
    malformed(line_no, "bad vertex '" + token + "'");
  }
}

}  // namespace

void write_graph_text(std::ostream& out, const LabeledDigraph& g) {
  out << "digraph k=" << g.alphabet_size() << " n=" << g.vertex_count() << '\n';
  if (!g.alphabet().has_default_names()) {
    out << "rights";
    for (const auto& name : g.alphabet().names()) out << ' ' << name;
    out << '\n';
  }
  if (!dense_ids(g)) {
    out << "vertices";
    for (VertexId v : g.vertices()) out << ' ' << v;
    out << '\n';
  }
  for (const Edge& e : g.edges()) {
    out << e.source << ' ' << g.alphabet().name(e.right) << ' ' << e.target
        << '\n';
  }
}

std::string to_text(const LabeledDigraph& g) {
  std::ostringstream out;
  write_graph_text(out, g);
  return out.str();
}

LabeledDigraph read_graph_text(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<std::string> names;
  std::vector<VertexId> vertices;
  bool have_vertices = false;
  std::vector<std::array<std::string, 3>> edge_lines;
  std::vector<std::size_t> edge_line_nos;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (!have_header) {
      if (first != "digraph") malformed(line_no, "expected 'digraph' header");
      std::string kt, nt;
      if (!(tokens >> kt >> nt)) malformed(line_no, "incomplete header");
      k = parse_field(kt, "k", line_no);
      n = parse_field(nt, "n", line_no);
      have_header = true;
      continue;
    }
    if (first == "rights") {
      std::string name;
      while (tokens >> name) names.push_back(name);
      continue;
    }
    if (first == "vertices") {
      std::string id;
      while (tokens >> id) vertices.push_back(parse_vertex(id, line_no));
      have_vertices = true;
      continue;
    }
    std::array<std::string, 3> edge{first, "", ""};
    std::string extra;
    if (!(tokens >> edge[1] >> edge[2]) || (tokens >> extra)) {
      malformed(line_no, "expected '<u> <right> <v>'");
    }
    edge_lines.push_back(edge);
    edge_line_nos.push_back(line_no);
  }
  if (!have_header) throw std::invalid_argument("graph text: missing header");

  Alphabet alphabet;
  if (names.empty()) {
    alphabet = Alphabet::with_size(k);
  } else {
    if (names.size() != k) malformed(line_no, "rights line does not list k names");
    alphabet = Alphabet(names);
  }
  if (!have_vertices) {
    for (std::size_t i = 0; i < n; ++i) vertices.push_back(static_cast<VertexId>(i));
  }
  if (vertices.size() != n) malformed(line_no, "vertex count does not match n");

  LabeledDigraph g(alphabet, vertices);
  if (g.vertex_count() != n) malformed(line_no, "duplicate vertex ids");
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    const auto& e = edge_lines[i];
    const VertexId u = parse_vertex(e[0], edge_line_nos[i]);
    const VertexId v = parse_vertex(e[2], edge_line_nos[i]);
    if (!g.has_vertex(u) || !g.has_vertex(v)) {
      malformed(edge_line_nos[i], "edge endpoint is not a vertex");
    }
    RightId a = 0;
    try {
      a = alphabet.index_of(e[1]);
    } catch (const std::invalid_argument&) {
      malformed(edge_line_nos[i], "unknown right '" + e[1] + "'");
    }
    if (!g.add_edge(u, a, v)) malformed(edge_line_nos[i], "duplicate edge");
  }
  return g;
}

LabeledDigraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return read_graph_text(in);
}

void write_graph_dot(std::ostream& out, const LabeledDigraph& g,
                     const std::string& name) {
  out << "digraph " << name << " {\n";
  for (VertexId v : g.vertices()) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) {
    out << "  " << e.source << " -> " << e.target << " [label=\""
        << g.alphabet().name(e.right) << "\"];\n";
  }
  out << "}\n";
}

std::string to_dot(const LabeledDigraph& g, const std::string& name) {
  std::ostringstream out;
  write_graph_dot(out, g, name);
  return out.str();
}

void write_policy_text(std::ostream& out, const DomainPolicy& policy) {
  write_graph_text(out, policy.summary);
  for (const auto& [v, x] : policy.assignment) {
    out << "pi " << v << ' ' << x << '\n';
  }
}

}  // namespace domlearn
