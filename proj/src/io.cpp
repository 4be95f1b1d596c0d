#include "nvd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

namespace nvd {
namespace {

// Splits on ASCII whitespace.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<NodeId> parse_id(std::string_view s) {
  NodeId v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

bool is_comment(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%';
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Reads "label value" records, resolving labels through `labels`.
template <class Fn>
void for_each_record(std::istream& in, const LabelMap& labels, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<char> seen(static_cast<std::size_t>(labels.size()), 0);
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (is_comment(tokens)) continue;
    if (tokens.size() != 2) {
      throw ParseError(lineno, "expected 'node value', got " +
                                   std::to_string(tokens.size()) + " fields");
    }
    auto id = labels.find(tokens[0]);
    if (!id) {
      throw ParseError(lineno, "unknown node label '" + std::string(tokens[0]) + "'");
    }
    if (seen[*id]) {
      throw ParseError(lineno, "node '" + std::string(tokens[0]) + "' listed twice");
    }
    seen[*id] = 1;
    fn(lineno, *id, tokens[1]);
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                  : what),
      line_(line) {}

LabelMap LabelMap::identity(NodeId n) {
  LabelMap map;
  for (NodeId i = 0; i < n; ++i) map.intern(std::to_string(i));
  return map;
}

NodeId LabelMap::intern(std::string_view label) {
  auto [it, inserted] = ids_.try_emplace(std::string(label), size());
  if (inserted) names_.emplace_back(label);
  return it->second;
}

std::optional<NodeId> LabelMap::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

LoadedGraph read_edge_list(std::istream& in, const EdgeListOptions& options) {
  LoadedGraph out;
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  NodeId declared_nodes = 0;
  NodeId max_id = -1;
  bool any_record = false;

  auto resolve = [&](std::string_view token) -> NodeId {
    if (options.labels == LabelMode::FirstAppearance) return out.labels.intern(token);
    auto id = parse_id(token);
    if (!id || *id == std::numeric_limits<NodeId>::max()) {
      throw ParseError(lineno, "node id '" + std::string(token) +
                                   "' is not a non-negative integer");
    }
    max_id = std::max(max_id, *id);
    return *id;
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (is_comment(tokens)) {
      if (options.labels == LabelMode::Integer && tokens.size() == 3 &&
          tokens[0] == "#" && tokens[1] == "nodes") {
        auto n = parse_id(tokens[2]);
        if (!n) throw ParseError(lineno, "malformed '# nodes' header");
        declared_nodes = *n;
      }
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError(lineno, "expected 'u v [w]', got " +
                                   std::to_string(tokens.size()) + " fields");
    }
    double w = 1.0;
    if (tokens.size() == 3) {
      auto parsed = parse_double(tokens[2]);
      if (!parsed || !std::isfinite(*parsed) || *parsed <= 0.0) {
        throw ParseError(lineno, "weight '" + std::string(tokens[2]) +
                                     "' is not a positive number");
      }
      if (!options.unweighted) w = *parsed;
    }
    const NodeId u = resolve(tokens[0]);
    const NodeId v = resolve(tokens[1]);
    any_record = true;
    edges.push_back({u, v, w});
  }
  if (!any_record && declared_nodes == 0) throw ParseError(0, "edge list is empty");

  NodeId n = out.labels.size();
  if (options.labels == LabelMode::Integer) {
    n = std::max(declared_nodes, max_id + 1);
    out.labels = LabelMap::identity(n);
  }
  out.graph = Graph::build(n, edges);
  if (options.unweighted) {
    // Merged duplicates must not accumulate weight either.
    std::vector<Edge> simple = out.graph.edges();
    for (Edge& e : simple) e.w = 1.0;
    out.graph = Graph::build(n, simple);
  }
  return out;
}

NodeVectorLoad read_node_vector(std::istream& in, const LabelMap& labels) {
  NodeVectorLoad out;
  out.values.assign(static_cast<std::size_t>(labels.size()), 0.0);
  NodeId present = 0;
  for_each_record(in, labels, [&](std::size_t lineno, NodeId id, std::string_view value) {
    auto v = parse_double(value);
    if (!v || !std::isfinite(*v)) {
      throw ParseError(lineno, "value '" + std::string(value) + "' is not a finite number");
    }
    out.values[id] = *v;
    ++present;
  });
  out.defaulted = labels.size() - present;
  return out;
}

TwoClassLabeling read_groups(std::istream& in, const LabelMap& labels) {
  TwoClassLabeling out;
  out.cls.assign(static_cast<std::size_t>(labels.size()), -1);
  std::vector<int> raw(out.cls.size(), -1);
  for_each_record(in, labels, [&](std::size_t, NodeId id, std::string_view cls) {
    auto it = std::find(out.names.begin(), out.names.end(), cls);
    if (it == out.names.end()) {
      out.names.emplace_back(cls);
      it = out.names.end() - 1;
    }
    raw[id] = static_cast<int>(it - out.names.begin());
  });
  if (out.names.size() > 2) {
    std::string listed;
    for (const auto& name : out.names) listed += (listed.empty() ? "" : ", ") + name;
    throw ParseError(0, "expected at most two classes, found " +
                            std::to_string(out.names.size()) + ": " + listed);
  }
  out.cls = std::move(raw);
  return out;
}

void write_graph(const Graph& g, std::ostream& out) {
  const NodeId n = g.num_nodes();
  if (g.degree(n - 1) == 0) out << "# nodes " << n << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.w != 1.0) out << ' ' << format_double(e.w);
    out << '\n';
  }
}

}  // namespace nvd
