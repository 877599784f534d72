#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bqmod/mgd.hpp"

namespace bqmod {

// Local moves on marked graph diagrams. G1-G3 are the Reidemeister moves,
// G4/G4' pass a strand over/under a marked vertex, G5 moves a crossing through
// a vertex, G6/G6' add or remove a vertex with a trivial loop (bar meeting
// the loop pair or splitting it), G7 slides two adjacent vertices past each
// other, and G8 changes which of two crossing bands lies on top.
// Forward adds structure for G1, G2, G6, G6'; for the others both directions
// are the two sides of the move.
enum class Move { g1, g1p, g2, g3, g4, g4p, g5, g6, g6p, g7, g8 };
enum class Direction { forward, backward };

struct MoveId {
  Move move;
  Direction direction;
  friend bool operator==(const MoveId&, const MoveId&) = default;
};

std::string to_string(MoveId id);
std::string to_string(Move m);
const std::vector<MoveId>& all_moves();

struct MoveSite {
  MoveId id;
  int variant = 0;
  std::vector<int> nodes;      // matched nodes, in pattern order
  std::vector<int> rotations;  // slot offset of each matched node
  // Creation sites: the semiarcs are cut next to these darts, on the side to
  // their right. A free loop is written as {-1, 2 * index + side}.
  std::vector<Dart> cuts;
  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

// Sites in a deterministic order.
std::vector<MoveSite> find_sites(const MarkedGraphDiagram& d, MoveId id);

// Throws InvalidSite when the site does not fit the diagram.
MarkedGraphDiagram apply_move(const MarkedGraphDiagram& d, const MoveSite& site);

struct WalkStep {
  MoveSite site;
  MarkedGraphDiagram result;
};

// Each step picks a move uniformly among those with a site, then a site
// uniformly. The same seed reproduces the same walk.
std::vector<WalkStep> random_walk(const MarkedGraphDiagram& d, int steps, std::uint64_t seed);

namespace detail {
// Consistency checks of the built-in move patterns; empty when all pass.
std::vector<std::string> check_move_patterns();
// The site side of a pattern variant closed up by arcs outside the disk, when
// some planar closure is consistently oriented.
std::optional<MarkedGraphDiagram> pattern_closure(MoveId id, std::size_t variant);
}  // namespace detail

}  // namespace bqmod
