#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bqmod/error.hpp"

namespace bqmod {

using Label = int;

// Record conventions, half-edges listed counter-clockwise:
//   positive crossing  (under-in, over-in, under-out, over-out)
//   negative crossing  (under-in, over-out, under-out, over-in)
//   marked vertex      bar separates {a, b} from {c, d}
enum class NodeKind { positive, negative, marked };

struct Node {
  NodeKind kind;
  std::array<Label, 4> half_edges;
  friend bool operator==(const Node&, const Node&) = default;
};

// A half-edge: slot `slot` (0..3, counter-clockwise) of node `node`.
struct Dart {
  int node;
  int slot;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

class MarkedGraphDiagram {
 public:
  // Validates every structural invariant; throws ValidationError.
  MarkedGraphDiagram(std::vector<Node> nodes, std::vector<Label> free_loops);
  MarkedGraphDiagram() : MarkedGraphDiagram({}, {}) {}

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Label>& free_loops() const noexcept { return loops_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  int crossing_count() const noexcept { return crossings_; }
  int marked_vertex_count() const noexcept { return static_cast<int>(nodes_.size()) - crossings_; }

  // Every semiarc label, free loops included, ascending.
  const std::vector<Label>& labels() const noexcept { return labels_; }
  bool is_free_loop(Label l) const;

  Label label(Dart d) const { return nodes_[static_cast<std::size_t>(d.node)].half_edges[static_cast<std::size_t>(d.slot)]; }
  bool incoming(Dart d) const { return (in_mask_[static_cast<std::size_t>(d.node)] >> d.slot) & 1u; }
  // Slot where the semiarc leaves its source node, and where it enters its target.
  Dart tail(Label l) const;
  Dart head(Label l) const;
  // The other end of the semiarc through `d`.
  Dart across(Dart d) const { return incoming(d) ? tail(label(d)) : head(label(d)); }

  // Faces of the rotation system, one per connected component of the graph.
  // Each face lists the darts traversed with the face on their right.
  std::vector<std::vector<Dart>> faces() const;
  // Node index -> connected component of the underlying 4-valent graph.
  std::vector<int> graph_components(int* count = nullptr) const;

  friend bool operator==(const MarkedGraphDiagram& a, const MarkedGraphDiagram& b) {
    return a.nodes_ == b.nodes_ && a.loops_ == b.loops_;
  }

 private:
  struct Ends {
    Dart tail;
    Dart head;
  };
  std::vector<Node> nodes_;
  std::vector<Label> loops_;
  std::vector<unsigned> in_mask_;
  std::map<Label, Ends> ends_;
  std::vector<Label> labels_;
  int crossings_ = 0;
};

// A diagram with no marked vertices.
class ClassicalLinkDiagram {
 public:
  explicit ClassicalLinkDiagram(MarkedGraphDiagram d);
  const MarkedGraphDiagram& diagram() const noexcept { return d_; }
  int link_components() const;

 private:
  MarkedGraphDiagram d_;
};

enum class Smoothing { along_bars, against_bars };
enum class Admissibility { yes, no, unknown };

MarkedGraphDiagram parse_mgd(std::string_view text);
std::string render_mgd(const MarkedGraphDiagram& d);

ClassicalLinkDiagram smooth(const MarkedGraphDiagram& d, Smoothing s);

// Connected components of the surface: crossings keep strands apart, marked
// vertices join all four half-edges. Free loops count one each.
int components(const MarkedGraphDiagram& d);
// Surface component index for every label, aligned with d.labels().
std::vector<int> surface_component_of_labels(const MarkedGraphDiagram& d, int* count = nullptr);

// Both smoothings are checked for being trivial links: "yes" when a bounded
// Reidemeister simplification removes every crossing, "no" when a small
// quandle coloring count certifies a nontrivial link, "unknown" otherwise.
Admissibility check_admissible(const MarkedGraphDiagram& d);

// Unknot-with-no-crossings test for a smoothing, with the same search.
bool simplifies_to_trivial(const ClassicalLinkDiagram& l);

// Euler characteristic of the whole surface; throws NotAdmissible.
int euler_characteristic(const MarkedGraphDiagram& d);

struct SurfaceComponent {
  std::vector<Label> labels;
  int euler_characteristic;
  int genus() const { return (2 - euler_characteristic) / 2; }
};
// Per-component data, ordered by smallest label; throws NotAdmissible.
std::vector<SurfaceComponent> surface_components(const MarkedGraphDiagram& d);

// Stable text form that equals for diagrams differing only by relabeling
// semiarcs and reordering records.
std::string canonical_form(const MarkedGraphDiagram& d);

}  // namespace bqmod
