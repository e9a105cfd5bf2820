#pragma once

// Smoothing a diagram at every classical crossing. Shared by the state sums
// and the cube complexes.
//
// Every arc has two ends: its tail (where it leaves a crossing through slot
// j or k) and its head (where it enters through slot i or l). A smoothing
// pairs up the four ends at each crossing:
//   plain   (X with 0, Y with 1):  i-j and k-l
//   cusped  (X with 1, Y with 0):  l->i and j->k, directed
//   node    (pass-through):        i-k and l-j
// Following a loop along a directed connection emits 'T', against it 'H'.

#include "vkinv/knotio.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vk {

constexpr int kMaxTracedCrossings = 32;

struct CuspReduction {
  int p = 0;                 // arrow number
  std::optional<int> order;  // k with p = 2^(k-1) * odd, when p > 0
};

/// Cyclic reduction of a cusp word in <T, H | TT, HH>.
CuspReduction reduce_cusp_word(std::string_view w);
/// Linear (non-cyclic) reduction, used on edges between graphical nodes.
std::string reduce_cusp_word_linear(std::string_view w);
/// 2-adic order plus one of p > 0.
int arrow_order(int p);
/// Reverses a cusp word and swaps T <-> H (the word seen from the other side).
std::string reverse_cusp_word(std::string_view w);

struct StateLoop {
  std::uint64_t arcs = 0;  // bit (a-1) set when arc a lies on the loop
  std::string cusp_word;   // raw letters, in traversal order
  int p = 0;
  int order = 0;  // 0 when p == 0

  int min_arc() const;  // 0 for free loops
};

struct ResolvedState {
  std::uint64_t choice = 0;
  std::vector<StateLoop> loops;  // sorted by min_arc, free loops last
};

/// Precomputed end-pairing tables for one diagram.
class Smoother {
 public:
  explicit Smoother(const PlanarDiagram& d);

  const PlanarDiagram& diagram() const { return *d_; }
  int crossings() const { return n_; }

  /// Bit c of `choice` is the smoothing at crossing c; bits of `nodes` turn
  /// crossings into pass-through nodes (their choice bit is ignored).
  /// Loops touching a node are not reported; see trace_node_curves.
  void loops(std::uint64_t choice, std::uint64_t nodes, std::vector<StateLoop>& out, bool keep_words = true) const;

  /// Partner end and traversal letter for end e under the given smoothing.
  struct Link {
    int partner;
    char letter;  // 'T', 'H' or 0
  };
  Link link(int end, std::uint64_t choice) const;

  static int head_end(int arc) { return 2 * (arc - 1) + 1; }
  static int tail_end(int arc) { return 2 * (arc - 1); }
  static int arc_of(int end) { return end / 2 + 1; }

  // crossing and slot holding each end
  int crossing_of_end(int end) const { return end_crossing_[end]; }
  int slot_of_end(int end) const { return end_slot_[end]; }
  int end_at(int crossing, int slot) const { return ends_[crossing][slot]; }
  static int through(int slot) { return (slot + 2) % 4; }

 private:
  const PlanarDiagram* d_;
  int n_;
  std::vector<int> end_crossing_, end_slot_;
  // per crossing: ends at slots i, j, k, l
  std::vector<std::array<int, 4>> ends_;
};

ResolvedState resolve_state(const PlanarDiagram& d, std::uint64_t choice);

}  // namespace vk
