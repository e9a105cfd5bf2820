#pragma once

// Flat node diagrams left over by the parity expansions, their graphical
// Reidemeister II reduction, and canonical ids.
//
// A node has four half-edges at rotation positions 0..3 (counterclockwise).
// A curve passes a node entering at `in_pos` and leaving at in_pos + 2.
// Detour moves are implicit: only the rotation system is stored.

#include "vkinv/knotio.hpp"
#include "vkinv/state.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vk {

struct FlatPassage {
  int node = 0;
  int in_pos = 0;
  std::string word;  // cusp letters on the edge leaving this passage

  int out_pos() const { return (in_pos + 2) % 4; }
  friend bool operator==(const FlatPassage&, const FlatPassage&) = default;
};

struct FlatCurve {
  std::vector<FlatPassage> passages;
  std::string word;  // cusp word of a node-free closed curve
  friend bool operator==(const FlatCurve&, const FlatCurve&) = default;
};

struct FlatDiagram {
  std::vector<FlatCurve> curves;

  std::vector<int> nodes() const;  // sorted distinct node ids
  /// Throws unless every node is passed exactly twice on transverse strands.
  void validate() const;
};

struct GraphicalReduction {
  std::vector<std::string> factors;  // canonical ids of connected pieces, sorted
  std::vector<int> circles;          // arrow numbers of node-free curves
};

/// Node pairs (u < v) that bound a bigon face whose two edges carry no
/// cusps. With `slide_cusps` any bigon qualifies and its cusps move onto
/// the merged strands.
std::vector<std::pair<int, int>> removable_pairs(const FlatDiagram& f, bool slide_cusps = false);

/// Deletes both nodes of a bigon, splicing the strands and their cusp words.
FlatDiagram remove_pair(const FlatDiagram& f, int u, int v);

/// Greedy reduction (always the smallest removable pair), then splits into
/// connected pieces and canonicalizes each.
GraphicalReduction reduce_graphical(FlatDiagram f, bool slide_cusps = false);

/// Canonical id of a connected diagram: the lexicographically least encoding
/// over curve order, basepoints and per-curve directions.
std::string canonical_id(const FlatDiagram& connected);

/// Diagram described by a canonical id (any valid encoding is accepted).
FlatDiagram parse_flat_id(std::string_view id);

/// Number of nodes named in an id.
int node_count(std::string_view id);

/// Curves of one state that pass through the crossings in `nodes`; the
/// other crossings are smoothed by `choice`. Node ids are crossing indices.
FlatDiagram node_curves(const PlanarDiagram& d, std::uint64_t choice, std::uint64_t nodes, bool keep_cusps);
FlatDiagram node_curves(const Smoother& sm, std::uint64_t choice, std::uint64_t nodes, bool keep_cusps);

/// Every classical crossing of `d` becomes a node.
FlatDiagram graphify(const PlanarDiagram& d);

/// Genus of the surface carrying a connected flat diagram.
int flat_genus(const FlatDiagram& f);

}  // namespace vk
