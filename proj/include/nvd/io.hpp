#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nvd/graph.hpp"
#include "nvd/metrics.hpp"

namespace nvd {

// Thrown for malformed text input; `line()` is 1-based, 0 when the error is
// not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Bidirectional mapping between external node labels and dense ids.
class LabelMap {
 public:
  static LabelMap identity(NodeId n);

  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  NodeId size() const { return static_cast<NodeId>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
};

enum class LabelMode {
  FirstAppearance,  // any token is a label; ids in order of first appearance
  Integer,          // labels are non-negative integers used as ids directly
};

struct EdgeListOptions {
  bool unweighted = false;
  LabelMode labels = LabelMode::FirstAppearance;
};

struct LoadedGraph {
  Graph graph;
  LabelMap labels;
};

// Lines "u v [w]"; blank lines and lines starting with '#' or '%' are
// skipped, LF or CRLF endings. Direction is ignored, duplicates merged and
// self-loops dropped. In Integer mode a "# nodes N" line fixes the node
// count, so trailing isolated nodes survive a write/read round trip.
LoadedGraph read_edge_list(std::istream& in, const EdgeListOptions& options = {});

struct NodeVectorLoad {
  Vector values;
  NodeId defaulted = 0;  // nodes absent from the file, set to 0
};

// Lines "node value".
NodeVectorLoad read_node_vector(std::istream& in, const LabelMap& labels);

// Lines "node class". At most two distinct classes.
TwoClassLabeling read_groups(std::istream& in, const LabelMap& labels);

// Canonical edge list (u < v, sorted); the weight column appears only for
// weights other than 1. A "# nodes N" header is written only when the last
// node is isolated.
void write_graph(const Graph& g, std::ostream& out);

}  // namespace nvd
