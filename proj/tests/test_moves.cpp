#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bqmod/catalog.hpp"
#include "bqmod/invariant.hpp"
#include "bqmod/moves.hpp"
#include "support.hpp"

using namespace bqmod;

namespace {

MoveId reverse(MoveId id) {
  return {id.move, id.direction == Direction::forward ? Direction::backward : Direction::forward};
}

bool undoable(const MarkedGraphDiagram& before, const MarkedGraphDiagram& after, MoveId id) {
  const std::string want = canonical_form(before);
  for (const auto& site : find_sites(after, reverse(id)))
    if (canonical_form(apply_move(after, site)) == want) return true;
  return false;
}

struct Fingerprint {
  std::vector<Count> counting;
  std::vector<InvariantPolynomial> polys;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint_of(const MarkedGraphDiagram& d) {
  Fingerprint f;
  for (const auto& x : {test::swap2(), test::x3()}) f.counting.push_back(counting_invariant(d, x));
  for (const auto& m : {test::z5_ex42(), test::z5_table(), test::z3_m1(), test::z3_m2()})
    f.polys.push_back(module_polynomial(d, m.base(), m));
  return f;
}

}  // namespace

TEST_CASE("built-in move patterns are consistent") { CHECK(detail::check_move_patterns().empty()); }

TEST_CASE("move names") {
  CHECK(all_moves().size() == 22);
  CHECK(to_string(MoveId{Move::g4p, Direction::backward}) == "G4' backward");
  CHECK(to_string(Move::g8) == "G8");
}

TEST_CASE("no reidemeister-two site on a free loop") {
  CHECK(find_sites(parse_mgd("mgd v1\nO 1\n"), {Move::g2, Direction::backward}).empty());
  CHECK(find_sites(parse_mgd("mgd v1\nO 1\n"), {Move::g2, Direction::forward}).empty());
}

TEST_CASE("reidemeister two can link two free loops") {
  const auto d = parse_mgd("mgd v1\nO 1\nO 2\n");
  const auto sites = find_sites(d, {Move::g2, Direction::forward});
  REQUIRE_FALSE(sites.empty());
  for (const auto& site : sites) {
    const auto after = apply_move(d, site);
    CHECK(after.crossing_count() == 2);
    CHECK(after.free_loops().empty());
    CHECK(undoable(d, after, site.id));
  }
}

TEST_CASE("kink creation sites cover every semiarc") {
  for (const auto& name : catalog::list()) {
    const auto& d = test::entry(name);
    for (Move m : {Move::g1, Move::g1p}) {
      const auto sites = find_sites(d, {m, Direction::forward});
      CHECK(sites.size() >= d.labels().size());
    }
  }
}

TEST_CASE("reidemeister two forward then backward restores the diagram") {
  const auto& d = test::entry("6_1^{0,1}");
  const auto sites = find_sites(d, {Move::g2, Direction::forward});
  REQUIRE_FALSE(sites.empty());
  for (const auto& site : sites) {
    const auto after = apply_move(d, site);
    CHECK(after.crossing_count() == d.crossing_count() + 2);
    CHECK(undoable(d, after, site.id));
  }
}

TEST_CASE("every move at every site is undone by its reverse") {
  for (const std::string name : {"unknot_S2", "2_1", "unlink_T2_S2", "6_1^{0,1}", "8_1^{1,1}"}) {
    CAPTURE(name);
    const auto& d = test::entry(name);
    for (const MoveId id : all_moves())
      for (const auto& site : find_sites(d, id)) {
        CAPTURE(to_string(id));
        const auto after = apply_move(d, site);
        CHECK(undoable(d, after, id));
      }
  }
}

TEST_CASE("moves keep diagrams valid and invariants fixed") {
  std::vector<MarkedGraphDiagram> starts;
  for (const auto& name : catalog::list()) starts.push_back(test::entry(name));
  // Longer diagrams from a short walk expose the sites that need crossings and vertices together.
  for (const auto& step : random_walk(test::entry("6_1^{0,1}"), 8, 3)) starts.push_back(step.result);
  for (const MoveId id : all_moves())
    for (std::size_t v = 0;; ++v) {
      const auto c = detail::pattern_closure(id, v);
      if (!c) break;
      starts.push_back(*c);
    }
  std::vector<bool> seen(all_moves().size(), false);
  for (const auto& d : starts) {
    const Fingerprint before = fingerprint_of(d);
    const bool small = d.node_count() <= 8;
    for (std::size_t k = 0; k < all_moves().size(); ++k) {
      const MoveId id = all_moves()[k];
      auto sites = find_sites(d, id);
      seen[k] = seen[k] || !sites.empty();
      if (!small && sites.size() > 3) sites.resize(3);
      for (const auto& site : sites) {
        CAPTURE(to_string(id));
        const auto after = apply_move(d, site);
        CHECK(parse_mgd(render_mgd(after)) == after);
        CHECK(check_admissible(after) != Admissibility::no);
        CHECK(fingerprint_of(after) == before);
      }
    }
  }
  for (std::size_t k = 0; k < all_moves().size(); ++k) {
    CAPTURE(to_string(all_moves()[k]));
    CHECK(seen[k]);
  }
}

TEST_CASE("closed-up patterns carry their own site") {
  for (const MoveId id : all_moves()) {
    CAPTURE(to_string(id));
    bool any = false;
    for (std::size_t v = 0; v < 16; ++v) {
      const auto c = detail::pattern_closure(id, v);
      if (!c) continue;
      CHECK(check_admissible(*c) == Admissibility::yes);
      for (const auto& site : find_sites(*c, id)) {
        any = true;
        CHECK(undoable(*c, apply_move(*c, site), id));
      }
    }
    CHECK(any);
  }
  CHECK_FALSE(detail::pattern_closure({Move::g6, Direction::forward}, 1));
}

TEST_CASE("adding a vertex with a trivial loop to the torus") {
  const auto& d = test::entry("2_1");
  const auto before = fingerprint_of(d);
  for (Move m : {Move::g6, Move::g6p}) {
    const auto sites = find_sites(d, {m, Direction::forward});
    REQUIRE_FALSE(sites.empty());
    const auto after = apply_move(d, sites.front());
    CHECK(after.marked_vertex_count() == 3);
    CHECK(after.crossing_count() == d.crossing_count());
    CHECK(fingerprint_of(after) == before);
    CHECK(euler_characteristic(after) == 0);
  }
}

TEST_CASE("random walks") {
  const auto& d = test::entry("6_1^{0,1}");
  CHECK(random_walk(d, 0, 1).empty());
  const auto a = random_walk(d, 20, 1);
  const auto b = random_walk(d, 20, 1);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].site == b[i].site);
    CHECK(a[i].result == b[i].result);
  }
  CHECK(fingerprint_of(a.back().result) == fingerprint_of(d));
  const auto c = random_walk(d, 20, 2);
  bool differs = false;
  for (std::size_t i = 0; i < c.size(); ++i) differs = differs || !(c[i].site == a[i].site);
  CHECK(differs);
}

TEST_CASE("label allocation is deterministic and leaves outside labels alone") {
  const auto& d = test::entry("8_1");
  for (const MoveId id : all_moves())
    for (const auto& site : find_sites(d, id)) {
      const auto once = apply_move(d, site);
      CHECK(apply_move(d, site) == once);
      std::set<Label> touched;
      for (int n : site.nodes)
        for (Label l : d.node(n).half_edges) touched.insert(l);
      for (const Dart& c : site.cuts)
        if (c.node >= 0) touched.insert(d.label(c));
      for (Label l : d.labels())
        if (!touched.count(l)) CHECK(std::binary_search(once.labels().begin(), once.labels().end(), l));
    }
}

TEST_CASE("sites that do not fit are rejected") {
  const auto& d = test::entry("2_1");
  MoveSite bogus{{Move::g3, Direction::forward}, 0, {0, 1, 2}, {0, 0, 0}, {}};
  CHECK_THROWS_AS(apply_move(d, bogus), InvalidSite);
  const auto sites = find_sites(test::entry("6_1^{0,1}"), {Move::g2, Direction::forward});
  REQUIRE_FALSE(sites.empty());
  CHECK_THROWS_AS(apply_move(parse_mgd("mgd v1\nO 1\n"), sites.front()), InvalidSite);
}

TEST_CASE("fresh labels avoid free loops kept by the rewrite") {
  const auto d = parse_mgd(
      "mgd v1\nX- 4 17 16 7\nX- 17 4 9 18\nX- 16 1 2 14\nX- 1 5 6 2\nX+ 15 5 18 8\nX- 13 7 14 6\nX+ 8 9 13 15\nO 3\n");
  const auto sites = find_sites(d, {Move::g3, Direction::forward});
  REQUIRE_FALSE(sites.empty());
  for (const auto& site : sites) {
    const auto after = apply_move(d, site);
    CHECK(after.free_loops().size() == 1);
    CHECK(undoable(d, after, site.id));
  }
}
