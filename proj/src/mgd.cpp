#include "bqmod/mgd.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "text.hpp"
#include "union_find.hpp"

namespace bqmod {

namespace {

constexpr unsigned kPositiveIn = 0b0011;
constexpr unsigned kNegativeIn = 0b1001;
constexpr unsigned kUnknown = 0xFFu;

unsigned vertex_mask(int slot, bool in) {
  const bool even_in = (slot % 2 == 0) == in;
  return even_in ? 0b0101u : 0b1010u;
}

}  // namespace

MarkedGraphDiagram::MarkedGraphDiagram(std::vector<Node> nodes, std::vector<Label> free_loops)
    : nodes_(std::move(nodes)), loops_(std::move(free_loops)) {
  std::map<Label, std::vector<Dart>> occ;
  for (int i = 0; i < node_count(); ++i)
    for (int s = 0; s < 4; ++s) {
      const Label l = nodes_[i].half_edges[s];
      if (l <= 0) throw ValidationError("positive-labels", i, "label " + std::to_string(l) + " is not positive");
      occ[l].push_back({i, s});
    }
  std::set<Label> loop_set;
  for (Label l : loops_) {
    if (l <= 0) throw ValidationError("positive-labels", l, "free loop label is not positive");
    if (!loop_set.insert(l).second) throw ValidationError("label-uniqueness", l, "free loop listed twice");
    if (occ.count(l)) throw ValidationError("label-uniqueness", l, "free loop label also used at a node");
  }
  for (const auto& [l, ds] : occ)
    if (ds.size() != 2)
      throw ValidationError("4-regularity", l,
                            "label " + std::to_string(l) + " occurs " + std::to_string(ds.size()) + " times, expected 2");

  in_mask_.assign(nodes_.size(), kUnknown);
  for (int i = 0; i < node_count(); ++i) {
    if (nodes_[i].kind == NodeKind::positive) in_mask_[i] = kPositiveIn;
    if (nodes_[i].kind == NodeKind::negative) in_mask_[i] = kNegativeIn;
    if (nodes_[i].kind != NodeKind::marked) ++crossings_;
  }

  // Marked vertices carry no explicit orientation; it is forced along
  // semiarcs (one end in, one end out) and alternates around each vertex.
  auto assign = [&](int node, int slot, bool in, std::deque<int>& queue) {
    const unsigned m = vertex_mask(slot, in);
    if (in_mask_[node] == kUnknown) {
      in_mask_[node] = m;
      queue.push_back(node);
    } else if (in_mask_[node] != m) {
      throw ValidationError("orientation", node, "in/out roles cannot be made consistent at this vertex");
    }
  };
  auto propagate = [&](std::deque<int>& queue) {
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int s = 0; s < 4; ++s) {
        const bool in = (in_mask_[v] >> s) & 1u;
        for (const Dart& d : occ[nodes_[v].half_edges[s]]) {
          if (d.node == v && d.slot == s) continue;
          if (nodes_[d.node].kind != NodeKind::marked) continue;
          assign(d.node, d.slot, !in, queue);
        }
      }
    }
  };
  std::deque<int> queue;
  for (const auto& [l, ds] : occ) {
    const Dart a = ds[0], b = ds[1];
    const bool ma = nodes_[a.node].kind == NodeKind::marked, mb = nodes_[b.node].kind == NodeKind::marked;
    if (ma && !mb) assign(a.node, a.slot, !((in_mask_[b.node] >> b.slot) & 1u), queue);
    if (mb && !ma) assign(b.node, b.slot, !((in_mask_[a.node] >> a.slot) & 1u), queue);
  }
  propagate(queue);
  for (int i = 0; i < node_count(); ++i)
    if (in_mask_[i] == kUnknown) {
      assign(i, 0, true, queue);
      propagate(queue);
    }

  for (const auto& [l, ds] : occ) {
    const bool in0 = incoming(ds[0]), in1 = incoming(ds[1]);
    if (in0 == in1)
      throw ValidationError("orientation", l,
                            "semiarc " + std::to_string(l) + (in0 ? " enters" : " leaves") + " at both ends");
    ends_[l] = in0 ? Ends{ds[1], ds[0]} : Ends{ds[0], ds[1]};
  }

  labels_.reserve(occ.size() + loops_.size());
  for (const auto& kv : occ) labels_.push_back(kv.first);
  labels_.insert(labels_.end(), loops_.begin(), loops_.end());
  std::sort(labels_.begin(), labels_.end());

  int ncomp = 0;
  const auto comp = graph_components(&ncomp);
  std::vector<long> euler(static_cast<std::size_t>(ncomp), 0);
  for (int i = 0; i < node_count(); ++i) euler[comp[i]] += 1 - 2;  // V - E, four half-edges per node
  for (const auto& f : faces()) euler[comp[f.front().node]] += 1;
  for (int c = 0; c < ncomp; ++c)
    if (euler[c] != 2) {
      const int first = static_cast<int>(std::find(comp.begin(), comp.end(), c) - comp.begin());
      throw ValidationError("planarity", first,
                            "V - E + F = " + std::to_string(euler[c]) + " for the component containing this node");
    }
}

bool MarkedGraphDiagram::is_free_loop(Label l) const {
  return std::find(loops_.begin(), loops_.end(), l) != loops_.end();
}

Dart MarkedGraphDiagram::tail(Label l) const {
  auto it = ends_.find(l);
  if (it == ends_.end()) throw std::out_of_range("no semiarc " + std::to_string(l) + " at a node");
  return it->second.tail;
}

Dart MarkedGraphDiagram::head(Label l) const {
  auto it = ends_.find(l);
  if (it == ends_.end()) throw std::out_of_range("no semiarc " + std::to_string(l) + " at a node");
  return it->second.head;
}

std::vector<int> MarkedGraphDiagram::graph_components(int* count) const {
  UnionFind uf(nodes_.size());
  for (const auto& [l, e] : ends_) uf.unite(static_cast<std::size_t>(e.tail.node), static_cast<std::size_t>(e.head.node));
  std::vector<int> comp(nodes_.size(), -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto [it, fresh] = ids.emplace(uf.find(i), static_cast<int>(ids.size()));
    comp[i] = it->second;
  }
  if (count) *count = static_cast<int>(ids.size());
  return comp;
}

std::vector<std::vector<Dart>> MarkedGraphDiagram::faces() const {
  std::vector<std::array<bool, 4>> seen(nodes_.size(), {false, false, false, false});
  std::vector<std::vector<Dart>> out;
  for (int i = 0; i < node_count(); ++i)
    for (int s = 0; s < 4; ++s) {
      if (seen[i][s]) continue;
      std::vector<Dart> face;
      Dart d{i, s};
      while (!seen[d.node][d.slot]) {
        seen[d.node][d.slot] = true;
        face.push_back(d);
        const Dart a = across(d);
        d = Dart{a.node, (a.slot + 1) % 4};
      }
      out.push_back(std::move(face));
    }
  return out;
}

ClassicalLinkDiagram::ClassicalLinkDiagram(MarkedGraphDiagram d) : d_(std::move(d)) {
  if (d_.marked_vertex_count() != 0)
    throw ValidationError("classical", 0, "a classical link diagram has no marked vertices");
}

int ClassicalLinkDiagram::link_components() const { return components(d_); }

MarkedGraphDiagram parse_mgd(std::string_view input) {
  const auto lines = text::tokenize(input);
  if (lines.empty()) throw ParseError(1, 1, "missing 'mgd v1' header");
  const auto& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0].text != "mgd" || head.tokens[1].text != "v1")
    throw ParseError(head.number, head.tokens[0].column, "expected header 'mgd v1'");
  std::vector<Node> nodes;
  std::vector<Label> loops;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const std::string& kw = l.tokens[0].text;
    std::size_t want = 0;
    NodeKind kind{};
    if (kw == "X+") kind = NodeKind::positive, want = 4;
    else if (kw == "X-") kind = NodeKind::negative, want = 4;
    else if (kw == "V") kind = NodeKind::marked, want = 4;
    else if (kw == "O") want = 1;
    else throw ParseError(l.number, l.tokens[0].column, "unknown record '" + kw + "'");
    if (l.tokens.size() != want + 1) {
      const auto& at = l.tokens.size() > want + 1 ? l.tokens[want + 1] : l.tokens.back();
      throw ParseError(l.number, at.column, "'" + kw + "' takes " + std::to_string(want) + " label(s)");
    }
    std::vector<Label> vals;
    for (std::size_t k = 1; k < l.tokens.size(); ++k) {
      const auto v = text::to_int(l.tokens[k]);
      if (v <= 0 || v > 1'000'000'000) throw ParseError(l.number, l.tokens[k].column, "labels must be positive integers");
      vals.push_back(static_cast<Label>(v));
    }
    if (want == 1) loops.push_back(vals[0]);
    else nodes.push_back(Node{kind, {vals[0], vals[1], vals[2], vals[3]}});
  }
  return MarkedGraphDiagram(std::move(nodes), std::move(loops));
}

std::string render_mgd(const MarkedGraphDiagram& d) {
  std::ostringstream out;
  out << "mgd v1\n";
  for (const Node& n : d.nodes()) {
    out << (n.kind == NodeKind::positive ? "X+" : n.kind == NodeKind::negative ? "X-" : "V");
    for (Label l : n.half_edges) out << ' ' << l;
    out << '\n';
  }
  for (Label l : d.free_loops()) out << "O " << l << '\n';
  return out.str();
}

namespace {

std::size_t index_of(const std::vector<Label>& labels, Label l) {
  return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
}

}  // namespace

ClassicalLinkDiagram smooth(const MarkedGraphDiagram& d, Smoothing s) {
  const auto& labels = d.labels();
  UnionFind uf(labels.size());
  for (const Node& n : d.nodes()) {
    if (n.kind != NodeKind::marked) continue;
    auto join = [&](int i, int j) { uf.unite(index_of(labels, n.half_edges[i]), index_of(labels, n.half_edges[j])); };
    if (s == Smoothing::along_bars) join(0, 1), join(2, 3);
    else join(1, 2), join(3, 0);
  }
  std::vector<Node> nodes;
  std::vector<char> used(labels.size(), 0);
  for (const Node& n : d.nodes()) {
    if (n.kind == NodeKind::marked) continue;
    Node m = n;
    for (Label& l : m.half_edges) {
      const std::size_t root = uf.find(index_of(labels, l));
      used[root] = 1;
      l = labels[root];
    }
    nodes.push_back(m);
  }
  std::vector<Label> loops;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (uf.find(i) == i && !used[i]) loops.push_back(labels[i]);
  return ClassicalLinkDiagram(MarkedGraphDiagram(std::move(nodes), std::move(loops)));
}

std::vector<int> surface_component_of_labels(const MarkedGraphDiagram& d, int* count) {
  const auto& labels = d.labels();
  UnionFind uf(labels.size());
  for (const Node& n : d.nodes()) {
    auto join = [&](int i, int j) { uf.unite(index_of(labels, n.half_edges[i]), index_of(labels, n.half_edges[j])); };
    join(0, 2);
    join(1, 3);
    if (n.kind == NodeKind::marked) join(0, 1);
  }
  std::vector<int> out(labels.size());
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = ids.emplace(uf.find(i), static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  if (count) *count = static_cast<int>(ids.size());
  return out;
}

int components(const MarkedGraphDiagram& d) {
  int n = 0;
  surface_component_of_labels(d, &n);
  return n;
}

std::string canonical_form(const MarkedGraphDiagram& d) {
  int ncomp = 0;
  const auto comp = d.graph_components(&ncomp);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(ncomp));
  for (int i = 0; i < d.node_count(); ++i) members[comp[i]].push_back(i);

  // Encodes one component by breadth-first numbering from a starting dart.
  auto encode = [&](int start, int rot) {
    std::map<int, std::pair<int, int>> id;  // node -> (id, rotation)
    std::vector<int> order{start};
    id[start] = {0, rot};
    std::ostringstream code;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int v = order[k];
      const int r = id[v].second;
      const Node& n = d.node(v);
      unsigned in = 0;
      for (int j = 0; j < 4; ++j)
        if (d.incoming({v, (j + r) % 4})) in |= 1u << j;
      // Crossings: which local pair is over; vertices: which local pairs are joined along the bar.
      const int parity = (n.kind == NodeKind::marked ? 0 : 1) + r;
      code << (n.kind == NodeKind::marked ? 'V' : 'X') << in << (parity % 2) << ':';
      for (int j = 0; j < 4; ++j) {
        const Dart a = d.across({v, (j + r) % 4});
        auto it = id.find(a.node);
        if (it == id.end()) {
          it = id.emplace(a.node, std::pair{static_cast<int>(order.size()), a.slot}).first;
          order.push_back(a.node);
        }
        const int local = ((a.slot - it->second.second) % 4 + 4) % 4;
        code << it->second.first << '.' << local << ',';
      }
      code << ';';
    }
    return code.str();
  };

  std::vector<std::string> parts;
  for (const auto& m : members) {
    std::string best;
    for (int v : m)
      for (int r = 0; r < 4; ++r) {
        std::string c = encode(v, r);
        if (best.empty() || c < best) best = std::move(c);
      }
    parts.push_back(std::move(best));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += "[" + p + "]";
  out += "O" + std::to_string(d.free_loops().size());
  return out;
}

}  // namespace bqmod
