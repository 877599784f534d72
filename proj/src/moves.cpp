#include "bqmod/moves.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "union_find.hpp"

namespace bqmod {

namespace {

// A move side as a planar tangle in a disk. Node slots run counter-clockwise,
// boundary points are numbered counter-clockwise around the disk. A crossing
// lists which opposite pair is over ({0,2} or {1,3}); a vertex lists which
// adjacent pairs its bar joins ({0,1},{2,3} or {1,2},{3,0}).
struct TNode {
  bool vertex;
  int over;
  int pairing;
};
struct TEnd {
  int node;  // -1 for a boundary point
  int slot;  // boundary index when node is -1
};
struct Tangle {
  std::vector<TNode> nodes;
  std::vector<std::pair<TEnd, TEnd>> edges;
  int boundary = 0;
};
struct Variant {
  Tangle lhs;
  Tangle rhs;
};

constexpr TEnd P(int b) { return {-1, b}; }
constexpr TEnd S(int n, int s) { return {n, s}; }
TNode cross(int over) { return {false, over, 0}; }
TNode vert(int pairing) { return {true, 0, pairing}; }

Tangle arcs(int pairs) {
  Tangle t;
  t.boundary = 2 * pairs;
  for (int i = 0; i < pairs; ++i) t.edges.push_back({P(2 * i), P(2 * i + 1)});
  return t;
}

// One node whose slots 2 and 3 close up into a loop.
Tangle looped(TNode n) { return {{n}, {{S(0, 2), S(0, 3)}, {S(0, 0), P(0)}, {S(0, 1), P(1)}}, 2}; }

Tangle bigon(int over) {
  return {{cross(over), cross(over)},
          {{S(0, 0), S(1, 2)}, {S(0, 3), S(1, 3)}, {S(0, 1), P(3)}, {S(0, 2), P(0)}, {S(1, 0), P(1)}, {S(1, 1), P(2)}},
          4};
}

// Strand H (p3 -> p0) below the node Z where strands p4 -> p1 and p5 -> p2 meet.
Tangle triangle_below(TNode z, bool h_over) {
  const int h = h_over ? 0 : 1;
  return {{cross(h), cross(h), z},
          {{S(0, 0), S(1, 2)}, {S(0, 1), S(2, 2)}, {S(1, 1), S(2, 3)}, {S(0, 2), P(3)}, {S(0, 3), P(4)},
           {S(1, 0), P(0)}, {S(1, 3), P(5)}, {S(2, 0), P(1)}, {S(2, 1), P(2)}},
          6};
}

// The same strands with H moved above Z.
Tangle triangle_above(TNode z, bool h_over) {
  const int h = h_over ? 0 : 1;
  return {{cross(h), cross(h), z},
          {{S(2, 0), S(0, 3)}, {S(2, 1), S(1, 3)}, {S(1, 0), S(0, 2)}, {S(0, 0), P(0)}, {S(0, 1), P(1)},
           {S(1, 1), P(2)}, {S(1, 2), P(3)}, {S(2, 2), P(4)}, {S(2, 3), P(5)}},
          6};
}

Tangle crossing_then_vertex(int over, int pairing) {
  return {{cross(over), vert(pairing)},
          {{S(0, 0), S(1, 1)}, {S(0, 3), S(1, 2)}, {S(0, 1), P(1)}, {S(0, 2), P(2)}, {S(1, 0), P(0)}, {S(1, 3), P(3)}},
          4};
}

Tangle vertex_then_crossing(int over, int pairing) {
  return {{vert(pairing), cross(over)},
          {{S(0, 0), S(1, 1)}, {S(0, 3), S(1, 2)}, {S(0, 1), P(1)}, {S(0, 2), P(2)}, {S(1, 0), P(0)}, {S(1, 3), P(3)}},
          4};
}

Tangle vertex_pair_left() {
  return {{vert(1), vert(0)},
          {{S(0, 0), S(1, 2)}, {S(0, 1), P(5)}, {S(0, 2), P(0)}, {S(0, 3), P(1)}, {S(1, 0), P(3)}, {S(1, 1), P(4)},
           {S(1, 3), P(2)}},
          6};
}

Tangle vertex_pair_right() {
  return {{vert(0), vert(1)},
          {{S(0, 1), S(1, 3)}, {S(0, 0), P(3)}, {S(0, 2), P(1)}, {S(0, 3), P(2)}, {S(1, 0), P(4)}, {S(1, 1), P(5)},
           {S(1, 2), P(0)}},
          6};
}

// Two vertices whose lower legs cross in a 2x2 grid; `over` picks the band on top.
Tangle band_grid(int over) {
  return {{vert(1), vert(0), cross(over), cross(over), cross(over), cross(over)},
          {{S(0, 2), S(3, 1)}, {S(0, 3), S(2, 1)}, {S(1, 2), S(2, 0)}, {S(1, 3), S(4, 0)}, {S(2, 2), S(3, 0)},
           {S(2, 3), S(4, 1)}, {S(3, 3), S(5, 1)}, {S(4, 2), S(5, 0)}, {S(3, 2), P(0)}, {S(5, 2), P(1)},
           {S(5, 3), P(2)}, {S(4, 3), P(3)}, {S(1, 0), P(4)}, {S(1, 1), P(5)}, {S(0, 0), P(6)}, {S(0, 1), P(7)}},
          8};
}

Tangle mirrored(Tangle t) {
  for (auto& e : t.edges)
    for (TEnd* x : {&e.first, &e.second}) {
      if (x->node < 0) x->slot = (t.boundary - x->slot) % t.boundary;
      else x->slot = (4 - x->slot) % 4;
    }
  for (auto& n : t.nodes)
    if (n.vertex) n.pairing ^= 1;
  return t;
}

Tangle layer_flipped(Tangle t) {
  for (auto& n : t.nodes)
    if (!n.vertex) n.over ^= 1;
  return t;
}

Tangle bar_flipped(Tangle t) {
  for (auto& n : t.nodes)
    if (n.vertex) n.pairing ^= 1;
  return t;
}

void add_with(std::vector<Variant>& out, Tangle (*f)(Tangle)) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back({f(out[i].lhs), f(out[i].rhs)});
}

const std::vector<Variant>& variants(Move m) {
  static const std::map<Move, std::vector<Variant>> table = [] {
    std::map<Move, std::vector<Variant>> t;
    t[Move::g1] = {{arcs(1), looped(cross(0))}, {arcs(1), looped(cross(1))}};
    t[Move::g1p] = t[Move::g1];
    t[Move::g2] = {{arcs(2), bigon(0)}, {arcs(2), bigon(1)}};
    auto& g3 = t[Move::g3];
    for (bool h : {true, false})
      for (int z : {0, 1}) g3.push_back({triangle_below(cross(z), h), triangle_above(cross(z), h)});
    add_with(g3, mirrored);
    for (auto [move, h] : {std::pair{Move::g4, true}, std::pair{Move::g4p, false}}) {
      auto& g4 = t[move];
      for (int p : {0, 1}) g4.push_back({triangle_below(vert(p), h), triangle_above(vert(p), h)});
      add_with(g4, mirrored);
    }
    auto& g5 = t[Move::g5];
    for (int o : {0, 1})
      for (int p : {0, 1}) g5.push_back({crossing_then_vertex(o, p), vertex_then_crossing(o, p)});
    add_with(g5, mirrored);
    t[Move::g6] = {{arcs(1), looped(vert(0))}};
    t[Move::g6p] = {{arcs(1), looped(vert(1))}};
    auto& g7 = t[Move::g7];
    g7.push_back({vertex_pair_left(), vertex_pair_right()});
    add_with(g7, mirrored);
    add_with(g7, bar_flipped);
    auto& g8 = t[Move::g8];
    g8.push_back({band_grid(0), band_grid(1)});
    add_with(g8, mirrored);
    add_with(g8, bar_flipped);
    add_with(g8, layer_flipped);
    return t;
  }();
  return table.at(m);
}

bool is_creation(MoveId id) {
  if (id.direction != Direction::forward) return false;
  return id.move == Move::g1 || id.move == Move::g1p || id.move == Move::g2 || id.move == Move::g6 ||
         id.move == Move::g6p;
}

// ---------------------------------------------------------------------------
// Rewriting a site.

struct Stub {
  Dart outer{-1, -1};  // kept dart on the far side of the semiarc, if any
  int joined = -1;     // stub reached directly outside the site
  int dir = -1;        // 1: flow enters the site here, 0: leaves, -1: unknown
  Label label = 0;     // label carried by the outer part
};

struct Rewrite {
  std::vector<char> removed;
  std::vector<Stub> stubs;
  std::set<Label> cut;
  std::set<Label> removed_loops;
};

struct Rewritten {
  MarkedGraphDiagram diagram;
  int first_new;
};

std::optional<Rewritten> rewrite(const MarkedGraphDiagram& d, const Rewrite& rw, const Tangle& rhs) {
  const int n = d.node_count();
  const int k = static_cast<int>(rhs.nodes.size());
  const int nb = static_cast<int>(rw.stubs.size());
  const int kept_base = 0, new_base = 4 * n, stub_base = 4 * n + 4 * k, total = stub_base + nb;
  auto kept_port = [&](Dart x) { return kept_base + 4 * x.node + x.slot; };
  auto new_port = [&](int j, int s) { return new_base + 4 * j + s; };
  auto stub_port = [&](int b) { return stub_base + b; };

  struct Link {
    int a, b;
    Label label;
    int outer_of;  // stub for which this link lies on the outer side, or -1
    int outer_of2;
  };
  std::vector<Link> links;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  auto link = [&](int a, int b, Label l, int o1 = -1, int o2 = -1) {
    adj[a].push_back(static_cast<int>(links.size()));
    adj[b].push_back(static_cast<int>(links.size()));
    links.push_back({a, b, l, o1, o2});
  };

  for (Label l : d.labels()) {
    if (d.is_free_loop(l) || rw.cut.count(l)) continue;
    const Dart t = d.tail(l), h = d.head(l);
    if (!rw.removed[t.node] && !rw.removed[h.node]) link(kept_port(t), kept_port(h), l);
  }
  for (int b = 0; b < nb; ++b) {
    const Stub& s = rw.stubs[b];
    if (s.outer.node >= 0) link(kept_port(s.outer), stub_port(b), s.label, b);
    if (s.joined > b) link(stub_port(b), stub_port(s.joined), s.label, b, s.joined);
  }
  for (const auto& [x, y] : rhs.edges) {
    auto port = [&](TEnd e) { return e.node < 0 ? stub_port(e.slot) : new_port(e.node, e.slot); };
    link(port(x), port(y), 0);
  }

  auto is_terminal = [&](int p) { return p < stub_base; };
  for (int p = 0; p < total; ++p) {
    if (p < new_base && rw.removed[p / 4]) continue;
    if (adj[p].size() != (is_terminal(p) ? 1u : 2u)) throw std::logic_error("move pattern does not close up");
  }

  struct Path {
    int a = -1, b = -1;  // terminal ports; -1 for loops
    Label label = 0;
    std::optional<bool> flow;  // true: flow runs from a to b
    bool bad = false;
  };
  std::vector<Path> paths;
  std::vector<int> path_of(static_cast<std::size_t>(total), -1);
  std::vector<char> used_link(links.size(), 0);

  auto walk = [&](int start, Path& path, int id) {
    int cur = start;
    int via = -1;
    for (;;) {
      path_of[cur] = id;
      int next_link = -1;
      for (int li : adj[cur])
        if (!used_link[li] && li != via) {
          next_link = li;
          break;
        }
      if (next_link < 0) break;
      used_link[next_link] = 1;
      const Link& L = links[next_link];
      if (L.label && (!path.label || L.label < path.label)) path.label = L.label;
      const int nxt = L.a == cur ? L.b : L.a;
      if (!is_terminal(nxt)) {
        const int b = nxt - stub_base;
        const bool from_outer = L.outer_of == b || L.outer_of2 == b;
        if (rw.stubs[b].dir >= 0) {
          const bool f = from_outer ? rw.stubs[b].dir == 1 : rw.stubs[b].dir == 0;
          if (path.flow && *path.flow != f) path.bad = true;
          path.flow = f;
        }
      }
      via = next_link;
      cur = nxt;
      if (is_terminal(cur)) {
        path_of[cur] = id;
        path.b = cur;
        break;
      }
      if (cur == start) break;
    }
  };

  std::vector<int> terminals;
  for (int i = 0; i < n; ++i)
    if (!rw.removed[i])
      for (int s = 0; s < 4; ++s) terminals.push_back(kept_port({i, s}));
  for (int j = 0; j < k; ++j)
    for (int s = 0; s < 4; ++s) terminals.push_back(new_port(j, s));
  for (int p : terminals) {
    if (path_of[p] >= 0) continue;
    Path path;
    path.a = p;
    const int id = static_cast<int>(paths.size());
    walk(p, path, id);
    paths.push_back(path);
  }
  for (int b = 0; b < nb; ++b) {
    if (path_of[stub_port(b)] >= 0) continue;
    Path path;
    walk(stub_port(b), path, static_cast<int>(paths.size()));
    paths.push_back(path);
  }

  // Orientation: the flow bit of each path, constrained by kept ends, stubs,
  // and the pass-through rules at new nodes.
  std::vector<int> flow(paths.size(), -1);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    Path& p = paths[i];
    if (p.bad) return std::nullopt;
    if (p.a < 0 || p.b < 0 || !is_terminal(p.a)) continue;
    std::optional<bool> f = p.flow;
    auto fix = [&](bool v) {
      if (f && *f != v) p.bad = true;
      f = v;
    };
    if (p.a < new_base) fix(!d.incoming({(p.a - kept_base) / 4, p.a % 4}));
    if (p.b < new_base) fix(d.incoming({(p.b - kept_base) / 4, p.b % 4}));
    if (p.bad) return std::nullopt;
    if (f) flow[i] = *f ? 1 : 0;
  }
  // in(port) = flow ^ (port is the a end)
  auto port_in = [&](int port) -> int {
    const int pi = path_of[port];
    if (flow[pi] < 0) return -1;
    return paths[pi].a == port ? 1 - flow[pi] : flow[pi];
  };
  struct Constraint {
    int p, q;  // ports whose incoming flags must differ
  };
  std::vector<Constraint> cons;
  for (int j = 0; j < k; ++j) {
    if (rhs.nodes[j].vertex)
      for (int s = 0; s < 4; ++s) cons.push_back({new_port(j, s), new_port(j, (s + 1) % 4)});
    else
      for (int s = 0; s < 2; ++s) cons.push_back({new_port(j, s), new_port(j, s + 2)});
  }
  auto set_in = [&](int port, int in) {
    const int pi = path_of[port];
    flow[pi] = paths[pi].a == port ? 1 - in : in;
  };
  for (;;) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& c : cons) {
        const int a = port_in(c.p), b = port_in(c.q);
        if (a >= 0 && b >= 0) {
          if (a == b) return std::nullopt;
        } else if (a >= 0) {
          set_in(c.q, 1 - a), progress = true;
        } else if (b >= 0) {
          set_in(c.p, 1 - b), progress = true;
        }
      }
    }
    bool open = false;
    for (int j = 0; j < k && !open; ++j)
      for (int s = 0; s < 4; ++s)
        if (port_in(new_port(j, s)) < 0) {
          set_in(new_port(j, s), 1);
          open = true;
          break;
        }
    if (!open) break;
  }

  std::set<Label> taken;
  for (const Path& p : paths)
    if (p.label) taken.insert(p.label);
  for (Label l : d.free_loops())
    if (!rw.removed_loops.count(l)) taken.insert(l);
  Label fresh = 1;
  for (Path& p : paths)
    if (!p.label) {
      while (taken.count(fresh)) ++fresh;
      p.label = fresh;
      taken.insert(fresh);
    }

  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) {
    if (rw.removed[i]) continue;
    Node m = d.node(i);
    for (int s = 0; s < 4; ++s) m.half_edges[s] = paths[path_of[kept_port({i, s})]].label;
    nodes.push_back(m);
  }
  const int first_new = static_cast<int>(nodes.size());
  for (int j = 0; j < k; ++j) {
    const TNode& t = rhs.nodes[j];
    auto lab = [&](int s) { return paths[path_of[new_port(j, ((s % 4) + 4) % 4)]].label; };
    auto in = [&](int s) { return port_in(new_port(j, ((s % 4) + 4) % 4)) == 1; };
    if (t.vertex) {
      const int p = t.pairing;
      nodes.push_back(Node{NodeKind::marked, {lab(p), lab(p + 1), lab(p + 2), lab(p + 3)}});
    } else {
      int u = t.over == 1 ? 0 : 1;
      if (!in(u)) u += 2;
      const NodeKind kind = in(u + 1) ? NodeKind::positive : NodeKind::negative;
      nodes.push_back(Node{kind, {lab(u), lab(u + 1), lab(u + 2), lab(u + 3)}});
    }
  }
  std::vector<Label> loops;
  for (Label l : d.free_loops())
    if (!rw.removed_loops.count(l)) loops.push_back(l);
  for (const Path& p : paths)
    if (p.a < 0 || !is_terminal(p.a)) loops.push_back(p.label);

  try {
    return Rewritten{MarkedGraphDiagram(std::move(nodes), std::move(loops)), first_new};
  } catch (const ValidationError& e) {
    throw std::logic_error(std::string("move produced an invalid diagram: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Matching a tangle with nodes.

bool node_fits(const MarkedGraphDiagram& d, const TNode& t, int node, int rot) {
  const Node& n = d.node(node);
  if (t.vertex != (n.kind == NodeKind::marked)) return false;
  if (t.vertex) return (t.pairing + rot) % 2 == 0;
  return (t.over + rot) % 2 == 1;
}

std::vector<std::array<TEnd, 4>> partners(const Tangle& t) {
  std::vector<std::array<TEnd, 4>> out(t.nodes.size());
  for (const auto& [a, b] : t.edges) {
    if (a.node >= 0) out[a.node][a.slot] = b;
    if (b.node >= 0) out[b.node][b.slot] = a;
  }
  return out;
}

bool match(const MarkedGraphDiagram& d, const Tangle& t, std::vector<int>& nodes, std::vector<int>& rots) {
  const auto part = partners(t);
  const std::size_t k = t.nodes.size();
  if (nodes.size() != k || rots.size() != k) return false;
  std::set<int> used;
  for (std::size_t j = 0; j < k; ++j) {
    if (nodes[j] < 0 || nodes[j] >= d.node_count() || !used.insert(nodes[j]).second) return false;
    if (!node_fits(d, t.nodes[j], nodes[j], rots[j])) return false;
  }
  for (std::size_t j = 0; j < k; ++j)
    for (int s = 0; s < 4; ++s) {
      const TEnd e = part[j][s];
      if (e.node < 0) continue;
      const Dart a = d.across({nodes[j], (s + rots[j]) % 4});
      if (a.node != nodes[e.node] || a.slot != (e.slot + rots[e.node]) % 4) return false;
    }
  return true;
}

// Grows a match from template node 0 placed at (n0, r0).
bool grow(const MarkedGraphDiagram& d, const Tangle& t, int n0, int r0, std::vector<int>& nodes,
          std::vector<int>& rots) {
  const auto part = partners(t);
  const std::size_t k = t.nodes.size();
  nodes.assign(k, -1);
  rots.assign(k, 0);
  nodes[0] = n0;
  rots[0] = r0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int j = stack.back();
    stack.pop_back();
    for (int s = 0; s < 4; ++s) {
      const TEnd e = part[j][s];
      if (e.node < 0) continue;
      const Dart a = d.across({nodes[j], (s + rots[j]) % 4});
      const int rk = ((a.slot - e.slot) % 4 + 4) % 4;
      if (nodes[e.node] < 0) {
        nodes[e.node] = a.node;
        rots[e.node] = rk;
        stack.push_back(e.node);
      } else if (nodes[e.node] != a.node || rots[e.node] != rk) {
        return false;
      }
    }
  }
  for (int v : nodes)
    if (v < 0) return false;
  return match(d, t, nodes, rots);
}

Rewrite rewrite_for_match(const MarkedGraphDiagram& d, const Tangle& t, const std::vector<int>& nodes,
                          const std::vector<int>& rots) {
  Rewrite rw;
  rw.removed.assign(static_cast<std::size_t>(d.node_count()), 0);
  for (int v : nodes) rw.removed[v] = 1;
  rw.stubs.resize(static_cast<std::size_t>(t.boundary));
  std::map<Dart, int> stub_at;
  for (const auto& [a, b] : t.edges) {
    const TEnd in = a.node >= 0 ? a : b;
    const TEnd bd = a.node >= 0 ? b : a;
    if (bd.node >= 0 || in.node < 0) continue;
    stub_at[Dart{nodes[in.node], (in.slot + rots[in.node]) % 4}] = bd.slot;
  }
  for (const auto& [dart, b] : stub_at) {
    Stub& s = rw.stubs[b];
    s.dir = d.incoming(dart) ? 1 : 0;
    s.label = d.label(dart);
    const Dart o = d.across(dart);
    if (rw.removed[o.node]) s.joined = stub_at.at(o);
    else s.outer = o;
  }
  return rw;
}

// Stubs on both sides of a cut next to dart `c`: first the far side, then the near side.
void add_cut(const MarkedGraphDiagram& d, Dart c, Rewrite& rw) {
  if (c.node < 0) {
    const auto& loops = d.free_loops();
    const Label l = loops.at(static_cast<std::size_t>(c.slot / 2));
    const int base = static_cast<int>(rw.stubs.size());
    Stub far, near;
    far.joined = base + 1;
    near.joined = base;
    near.label = far.label = l;
    if (c.slot % 2) std::swap(far, near), far.joined = base + 1, near.joined = base;
    rw.stubs.push_back(far);
    rw.stubs.push_back(near);
    rw.removed_loops.insert(l);
    return;
  }
  const Label l = d.label(c);
  const bool out = !d.incoming(c);
  Stub far, near;
  far.outer = d.across(c);
  near.outer = c;
  // The flow enters the cut through the stub facing the tail.
  near.dir = out ? 1 : 0;
  far.dir = out ? 0 : 1;
  (out ? near : far).label = l;
  rw.stubs.push_back(far);
  rw.stubs.push_back(near);
  rw.cut.insert(l);
}

bool valid_dart(const MarkedGraphDiagram& d, Dart c) {
  if (c.node < 0) return c.slot >= 0 && c.slot < 2 * static_cast<int>(d.free_loops().size());
  return c.node < d.node_count() && c.slot >= 0 && c.slot < 4;
}

Label cut_label(const MarkedGraphDiagram& d, Dart c) {
  return c.node < 0 ? d.free_loops()[static_cast<std::size_t>(c.slot / 2)] : d.label(c);
}

bool same_face(const MarkedGraphDiagram& d, Dart a, Dart b) {
  for (const auto& f : d.faces()) {
    const bool ha = std::find(f.begin(), f.end(), a) != f.end();
    const bool hb = std::find(f.begin(), f.end(), b) != f.end();
    if (ha || hb) return ha && hb;
  }
  return false;
}

bool class_ok(MoveId id, const MarkedGraphDiagram& before, const std::vector<int>& matched, const Rewritten& r) {
  if (id.move != Move::g1 && id.move != Move::g1p) return true;
  const NodeKind k = id.direction == Direction::forward ? r.diagram.node(r.first_new).kind : before.node(matched[0]).kind;
  return (k == NodeKind::positive) == (id.move == Move::g1);
}

std::optional<Rewritten> attempt(const MarkedGraphDiagram& d, const MoveSite& site) {
  const auto& vs = variants(site.id.move);
  if (site.variant < 0 || site.variant >= static_cast<int>(vs.size())) return std::nullopt;
  const Variant& v = vs[static_cast<std::size_t>(site.variant)];
  const bool fwd = site.id.direction == Direction::forward;
  const Tangle& from = fwd ? v.lhs : v.rhs;
  const Tangle& to = fwd ? v.rhs : v.lhs;
  Rewrite rw;
  if (is_creation(site.id)) {
    const std::size_t want = site.id.move == Move::g2 ? 2 : 1;
    if (site.cuts.size() != want || !site.nodes.empty()) return std::nullopt;
    for (Dart c : site.cuts)
      if (!valid_dart(d, c)) return std::nullopt;
    if (want == 2) {
      const Dart a = site.cuts[0], b = site.cuts[1];
      if (cut_label(d, a) == cut_label(d, b)) return std::nullopt;
      if (a.node >= 0 && b.node >= 0 && !same_face(d, a, b)) return std::nullopt;
    }
    rw.removed.assign(static_cast<std::size_t>(d.node_count()), 0);
    for (Dart c : site.cuts) add_cut(d, c, rw);
  } else {
    std::vector<int> nodes = site.nodes, rots = site.rotations;
    if (!site.cuts.empty() || !match(d, from, nodes, rots)) return std::nullopt;
    rw = rewrite_for_match(d, from, nodes, rots);
  }
  auto out = rewrite(d, rw, to);
  if (!out || !class_ok(site.id, d, site.nodes, *out)) return std::nullopt;
  return out;
}

}  // namespace

std::string to_string(Move m) {
  switch (m) {
    case Move::g1: return "G1";
    case Move::g1p: return "G1'";
    case Move::g2: return "G2";
    case Move::g3: return "G3";
    case Move::g4: return "G4";
    case Move::g4p: return "G4'";
    case Move::g5: return "G5";
    case Move::g6: return "G6";
    case Move::g6p: return "G6'";
    case Move::g7: return "G7";
    case Move::g8: return "G8";
  }
  return "?";
}

std::string to_string(MoveId id) {
  return to_string(id.move) + (id.direction == Direction::forward ? " forward" : " backward");
}

const std::vector<MoveId>& all_moves() {
  static const std::vector<MoveId> all = [] {
    std::vector<MoveId> out;
    for (Move m : {Move::g1, Move::g1p, Move::g2, Move::g3, Move::g4, Move::g4p, Move::g5, Move::g6, Move::g6p,
                   Move::g7, Move::g8})
      for (Direction dir : {Direction::forward, Direction::backward}) out.push_back({m, dir});
    return out;
  }();
  return all;
}

std::vector<MoveSite> find_sites(const MarkedGraphDiagram& d, MoveId id) {
  std::vector<MoveSite> out;
  const auto& vs = variants(id.move);
  if (is_creation(id)) {
    std::vector<std::vector<Dart>> cut_sets;
    if (id.move == Move::g2) {
      for (const auto& f : d.faces())
        for (std::size_t a = 0; a < f.size(); ++a)
          for (std::size_t b = a + 1; b < f.size(); ++b)
            if (d.label(f[a]) != d.label(f[b])) cut_sets.push_back({f[a], f[b]});
      // A free loop has no position, so either side of it may face any face.
      const int loop_darts = 2 * static_cast<int>(d.free_loops().size());
      for (int i = 0; i < loop_darts; ++i) {
        for (int n = 0; n < d.node_count(); ++n)
          for (int s = 0; s < 4; ++s) cut_sets.push_back({Dart{n, s}, Dart{-1, i}});
        for (int j = (i / 2 + 1) * 2; j < loop_darts; ++j) cut_sets.push_back({Dart{-1, i}, Dart{-1, j}});
      }
    } else {
      for (int i = 0; i < d.node_count(); ++i)
        for (int s = 0; s < 4; ++s) cut_sets.push_back({Dart{i, s}});
      for (int i = 0; i < 2 * static_cast<int>(d.free_loops().size()); ++i) cut_sets.push_back({Dart{-1, i}});
    }
    for (const auto& cuts : cut_sets)
      for (int v = 0; v < static_cast<int>(vs.size()); ++v) {
        MoveSite site{id, v, {}, {}, cuts};
        // Only the kink sign needs checking; other creations always fit.
        if ((id.move == Move::g1 || id.move == Move::g1p) && !attempt(d, site)) continue;
        out.push_back(std::move(site));
      }
    return out;
  }

  std::set<std::pair<std::vector<int>, std::string>> seen;
  for (int v = 0; v < static_cast<int>(vs.size()); ++v) {
    const Tangle& from = id.direction == Direction::forward ? vs[v].lhs : vs[v].rhs;
    for (int n0 = 0; n0 < d.node_count(); ++n0)
      for (int r0 = 0; r0 < 4; ++r0) {
        std::vector<int> nodes, rots;
        if (!grow(d, from, n0, r0, nodes, rots)) continue;
        MoveSite site{id, v, nodes, rots, {}};
        auto result = attempt(d, site);
        if (!result) continue;
        std::vector<int> key = nodes;
        std::sort(key.begin(), key.end());
        if (!seen.emplace(key, canonical_form(result->diagram)).second) continue;
        out.push_back(std::move(site));
      }
  }
  return out;
}

MarkedGraphDiagram apply_move(const MarkedGraphDiagram& d, const MoveSite& site) {
  auto out = attempt(d, site);
  if (!out) throw InvalidSite(to_string(site.id) + ": site does not match the diagram");
  return std::move(out->diagram);
}

std::vector<WalkStep> random_walk(const MarkedGraphDiagram& d, int steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<WalkStep> out;
  MarkedGraphDiagram cur = d;
  for (int i = 0; i < steps; ++i) {
    std::vector<std::vector<MoveSite>> options;
    for (MoveId id : all_moves()) {
      auto sites = find_sites(cur, id);
      if (!sites.empty()) options.push_back(std::move(sites));
    }
    if (options.empty()) break;
    auto& sites = options[rng() % options.size()];
    MoveSite site = sites[rng() % sites.size()];
    cur = apply_move(cur, site);
    out.push_back({std::move(site), cur});
  }
  return out;
}

namespace detail {

namespace {

// Euler characteristic of the tangle closed off by a ring through its boundary points.
long closed_euler(const Tangle& t) {
  const int k = static_cast<int>(t.nodes.size());
  const int b = t.boundary;
  // Rotation lists: nodes have 4 slots; ring points have (next, inward, previous).
  std::vector<std::vector<std::pair<int, int>>> rot(static_cast<std::size_t>(k + b));
  for (int j = 0; j < k; ++j) rot[j].resize(4, {-1, -1});
  for (int i = 0; i < b; ++i) rot[k + i].resize(3, {-1, -1});
  auto id = [&](TEnd e) { return e.node < 0 ? std::pair{k + e.slot, 1} : std::pair{e.node, e.slot}; };
  for (const auto& [x, y] : t.edges) {
    const auto a = id(x), c = id(y);
    rot[a.first][a.second] = c;
    rot[c.first][c.second] = a;
  }
  for (int i = 0; i < b; ++i) {
    const int nx = k + (i + 1) % b, pv = k + (i + b - 1) % b;
    rot[k + i][0] = {nx, 2};
    rot[k + i][2] = {pv, 0};
  }
  long darts = 0, faces = 0;
  std::set<std::pair<int, int>> seen;
  for (int v = 0; v < k + b; ++v)
    for (int s = 0; s < static_cast<int>(rot[v].size()); ++s) {
      ++darts;
      if (seen.count({v, s})) continue;
      ++faces;
      std::pair<int, int> cur{v, s};
      while (!seen.count(cur)) {
        seen.insert(cur);
        const auto a = rot[cur.first][cur.second];
        if (a.first < 0) return -100;
        cur = {a.first, (a.second + 1) % static_cast<int>(rot[a.first].size())};
      }
    }
  return (k + b) - darts / 2 + faces;
}

// Which boundary points end up joined once every vertex is smoothed.
std::vector<std::size_t> boundary_partition(const Tangle& t, Smoothing sm) {
  const int k = static_cast<int>(t.nodes.size());
  UnionFind uf(static_cast<std::size_t>(4 * k + t.boundary));
  auto id = [&](TEnd e) { return static_cast<std::size_t>(e.node < 0 ? 4 * k + e.slot : 4 * e.node + e.slot); };
  for (const auto& [x, y] : t.edges) uf.unite(id(x), id(y));
  for (int j = 0; j < k; ++j) {
    const auto base = static_cast<std::size_t>(4 * j);
    if (!t.nodes[j].vertex) {
      uf.unite(base, base + 2);
      uf.unite(base + 1, base + 3);
      continue;
    }
    int p = t.nodes[j].pairing;
    if (sm == Smoothing::against_bars) p ^= 1;
    uf.unite(base + p, base + (p + 1) % 4);
    uf.unite(base + (p + 2) % 4, base + (p + 3) % 4);
  }
  std::vector<std::size_t> out;
  for (int i = 0; i < t.boundary; ++i) out.push_back(uf.find(static_cast<std::size_t>(4 * k + i)));
  // Normalize to first-occurrence numbering.
  std::map<std::size_t, std::size_t> ren;
  for (auto& x : out) x = ren.emplace(x, ren.size()).first->second;
  return out;
}

}  // namespace

std::vector<std::string> check_move_patterns() {
  std::vector<std::string> problems;
  for (MoveId id : all_moves()) {
    if (id.direction == Direction::backward) continue;
    const auto& vs = variants(id.move);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string where = to_string(id.move) + " variant " + std::to_string(i);
      for (const Tangle* t : {&vs[i].lhs, &vs[i].rhs})
        if (closed_euler(*t) != 2) problems.push_back(where + ": pattern is not a planar disk tangle");
      if (vs[i].lhs.boundary != vs[i].rhs.boundary) problems.push_back(where + ": boundary sizes differ");
      for (Smoothing sm : {Smoothing::along_bars, Smoothing::against_bars})
        if (boundary_partition(vs[i].lhs, sm) != boundary_partition(vs[i].rhs, sm))
          problems.push_back(where + ": smoothings connect the boundary differently");
    }
  }
  return problems;
}

std::optional<MarkedGraphDiagram> pattern_closure(MoveId id, std::size_t variant) {
  const auto& vs = variants(id.move);
  if (variant >= vs.size()) return std::nullopt;
  const Tangle& side = id.direction == Direction::forward ? vs[variant].lhs : vs[variant].rhs;
  const MarkedGraphDiagram empty;
  for (int shift : {0, 1}) {
    Rewrite rw;
    rw.stubs.resize(static_cast<std::size_t>(side.boundary));
    for (int b = 0; b < side.boundary; ++b) {
      const int q = (b - shift + side.boundary) % side.boundary;
      rw.stubs[static_cast<std::size_t>(b)].joined = ((q ^ 1) + shift) % side.boundary;
    }
    if (auto r = rewrite(empty, rw, side)) return r->diagram;
  }
  return std::nullopt;
}

}  // namespace detail

}  // namespace bqmod
