#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "bqmod/coloring.hpp"
#include "bqmod/mgd.hpp"
#include "bqmod/moves.hpp"

namespace bqmod {

namespace {

// Removes crossings with backward G1/G1'/G2 moves, using G3 moves to reach a
// reducible diagram when stuck. The budget counts G3 expansions.
MarkedGraphDiagram reduce(MarkedGraphDiagram d) {
  const std::vector<MoveId> reducing = {
      {Move::g1, Direction::backward}, {Move::g1p, Direction::backward}, {Move::g2, Direction::backward}};
  auto reduce_once = [&](const MarkedGraphDiagram& x) -> std::optional<MarkedGraphDiagram> {
    for (MoveId id : reducing) {
      auto sites = find_sites(x, id);
      if (!sites.empty()) return apply_move(x, sites.front());
    }
    return std::nullopt;
  };
  long budget = 10L * d.crossing_count() + 10;
  for (;;) {
    if (auto r = reduce_once(d)) {
      d = std::move(*r);
      continue;
    }
    if (d.crossing_count() == 0) return d;
    // Breadth-first over G3 rewrites until some diagram becomes reducible.
    std::set<std::string> seen{canonical_form(d)};
    std::vector<MarkedGraphDiagram> frontier{d};
    std::optional<MarkedGraphDiagram> found;
    while (!frontier.empty() && !found && budget > 0) {
      std::vector<MarkedGraphDiagram> next;
      for (const auto& x : frontier) {
        for (const auto& site : find_sites(x, {Move::g3, Direction::forward})) {
          if (--budget < 0) break;
          MarkedGraphDiagram y = apply_move(x, site);
          if (!seen.insert(canonical_form(y)).second) continue;
          if (reduce_once(y)) {
            found = std::move(y);
            break;
          }
          next.push_back(std::move(y));
        }
        if (found || budget < 0) break;
      }
      frontier = std::move(next);
    }
    if (!found) return d;
    d = std::move(*found);
  }
}

// Quandles for certificates: dihedral R_3, R_5, R_7 and the Alexander quandle Z_5 with t = 2.
const std::vector<Biquandle>& quandle_battery() {
  static const std::vector<Biquandle> battery = [] {
    std::vector<Biquandle> out;
    for (int n : {3, 5, 7}) out.push_back(alexander_biquandle(Modulus(n), n - 1, 1));
    out.push_back(alexander_biquandle(Modulus(5), 2, 1));
    return out;
  }();
  return battery;
}

bool certified_nontrivial(const MarkedGraphDiagram& d) {
  const int c = components(d);
  for (const Biquandle& q : quandle_battery()) {
    Count expect = 1;
    for (int i = 0; i < c; ++i) expect *= static_cast<Count>(q.size());
    if (counting_invariant(d, q) != expect) return true;
  }
  return false;
}

}  // namespace

bool simplifies_to_trivial(const ClassicalLinkDiagram& l) { return reduce(l.diagram()).crossing_count() == 0; }

Admissibility check_admissible(const MarkedGraphDiagram& d) {
  bool all_trivial = true;
  for (Smoothing s : {Smoothing::along_bars, Smoothing::against_bars}) {
    const ClassicalLinkDiagram l = smooth(d, s);
    if (simplifies_to_trivial(l)) continue;
    if (certified_nontrivial(l.diagram())) return Admissibility::no;
    all_trivial = false;
  }
  return all_trivial ? Admissibility::yes : Admissibility::unknown;
}

namespace {

// Per surface component: components of each smoothing minus saddles.
std::vector<SurfaceComponent> compute_components(const MarkedGraphDiagram& d) {
  if (check_admissible(d) == Admissibility::no)
    throw NotAdmissible("a smoothing of the diagram is not a trivial link");
  int count = 0;
  const auto comp = surface_component_of_labels(d, &count);
  const auto& labels = d.labels();
  auto comp_of = [&](Label l) {
    return comp[static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin())];
  };
  std::vector<SurfaceComponent> out(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < labels.size(); ++i) out[comp[i]].labels.push_back(labels[i]);
  for (auto& c : out) c.euler_characteristic = 0;
  for (const Node& n : d.nodes())
    if (n.kind == NodeKind::marked) --out[comp_of(n.half_edges[0])].euler_characteristic;
  for (Smoothing s : {Smoothing::along_bars, Smoothing::against_bars}) {
    const MarkedGraphDiagram l = smooth(d, s).diagram();
    int lc = 0;
    const auto lcomp = surface_component_of_labels(l, &lc);
    // Each smoothed circle keeps its smallest label, which lies in one surface component.
    std::vector<int> first(static_cast<std::size_t>(lc), -1);
    for (std::size_t i = 0; i < l.labels().size(); ++i)
      if (first[lcomp[i]] < 0) first[lcomp[i]] = l.labels()[i];
    for (int f : first) ++out[comp_of(f)].euler_characteristic;
  }
  return out;
}

}  // namespace

int euler_characteristic(const MarkedGraphDiagram& d) {
  int chi = 0;
  for (const auto& c : compute_components(d)) chi += c.euler_characteristic;
  return chi;
}

std::vector<SurfaceComponent> surface_components(const MarkedGraphDiagram& d) { return compute_components(d); }

}  // namespace bqmod
