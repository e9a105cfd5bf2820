#pragma once

// Diagram codes for virtual knots and links: planar-diagram (PD) and signed
// Gauss codes, crossing parity, the parity filtration, and the carrier
// surface genus. Virtual crossings are never stored; only classical
// crossings appear in a code.

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vk {

/// Raised for malformed or inconsistent diagram codes. `position` is the
/// character offset in the input text when the error is syntactic, -1 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long position = -1)
      : std::runtime_error(position >= 0 ? what + " at position " + std::to_string(position) : what),
        position_(position) {}
  long position() const noexcept { return position_; }

 private:
  long position_;
};

enum class Sign { Positive, Negative };

inline int sign_value(Sign s) { return s == Sign::Positive ? 1 : -1; }
inline Sign opposite(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

/// Slot positions inside a crossing record X[i,j,k,l] / Y[i,j,k,l], listed
/// counterclockwise. Strands run i -> k and l -> j. In X the strand i -> k
/// passes under, in Y it passes over, so Y is X with the crossing switched.
enum Slot : int { kSlotI = 0, kSlotJ = 1, kSlotK = 2, kSlotL = 3 };

/// Incoming slot of the under-strand.
inline int under_slot(Sign s) { return s == Sign::Positive ? kSlotI : kSlotL; }

struct Crossing {
  Sign sign = Sign::Positive;  // X = positive, Y = negative
  std::array<int, 4> slots{};  // arc labels (i, j, k, l)

  int i() const { return slots[kSlotI]; }
  int j() const { return slots[kSlotJ]; }
  int k() const { return slots[kSlotK]; }
  int l() const { return slots[kSlotL]; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Inclusive range of consecutive arc labels forming one link component.
struct ArcRange {
  int first = 0;
  int last = 0;
  int size() const { return last - first + 1; }
  bool contains(int arc) const { return arc >= first && arc <= last; }
  friend bool operator==(const ArcRange&, const ArcRange&) = default;
};

/// A validated planar diagram. Construct through `PlanarDiagram::make` or
/// `parse_pd`; the constructor path checks every structural invariant.
class PlanarDiagram {
 public:
  PlanarDiagram() = default;

  /// Validates the crossing list and infers components by strand-following.
  static PlanarDiagram make(std::vector<Crossing> crossings, int free_loops);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<ArcRange>& components() const { return components_; }
  int free_loops() const { return free_loops_; }

  std::size_t crossing_count() const { return crossings_.size(); }
  int arc_count() const { return 2 * static_cast<int>(crossings_.size()); }
  int positive_count() const;
  int negative_count() const;
  int writhe() const { return positive_count() - negative_count(); }

  /// Index of the component containing `arc`.
  int component_of(int arc) const;
  /// Arc following `arc` along the orientation of its component.
  int next_arc(int arc) const;

  friend bool operator==(const PlanarDiagram&, const PlanarDiagram&) = default;

 private:
  std::vector<Crossing> crossings_;
  std::vector<ArcRange> components_;
  int free_loops_ = 0;
};

enum class Pass { Over, Under };

struct GaussEntry {
  Pass pass = Pass::Over;
  int id = 0;
  Sign sign = Sign::Positive;
  friend bool operator==(const GaussEntry&, const GaussEntry&) = default;
};

/// Signed oriented Gauss code. An empty component is a crossing-free loop.
struct GaussCode {
  std::vector<std::vector<GaussEntry>> components;

  /// Throws ParseError unless every id appears exactly twice, once over and
  /// once under, with matching signs.
  void validate() const;
  std::vector<int> crossing_ids() const;
  friend bool operator==(const GaussCode&, const GaussCode&) = default;
};

/// Chord diagram view of a Gauss code: per component, the cyclic sequence of
/// crossing ids, and one signed chord (over -> under) per crossing.
struct ChordDiagram {
  struct Mark {
    int component = 0;
    int position = 0;
  };
  struct Chord {
    int id = 0;
    Sign sign = Sign::Positive;
    Mark over;
    Mark under;
  };
  std::vector<std::vector<int>> core_circles;
  std::vector<Chord> chords;
};

enum class ParityClass { Even, Odd, Link };

std::string to_string(ParityClass p);

// ---- parsing and serialization -------------------------------------------

PlanarDiagram parse_pd(std::string_view text);
std::string serialize_pd(const PlanarDiagram& d);

GaussCode parse_gauss(std::string_view text);
std::string serialize_gauss(const GaussCode& g);

GaussCode pd_to_gauss(const PlanarDiagram& d);
PlanarDiagram gauss_to_pd(const GaussCode& g);
ChordDiagram chord_diagram(const GaussCode& g);

/// Accepts either a PD code or a Gauss code, detected by the `PD[` prefix.
PlanarDiagram parse_diagram(std::string_view text);

// ---- parity and filtration ------------------------------------------------

/// Parity of every crossing id. Self-crossings count only the self-crossing
/// labels of their own component between the two occurrences.
std::map<int, ParityClass> crossing_parity(const GaussCode& g);

/// Parity indexed by crossing position in the PD list.
std::vector<ParityClass> crossing_parity(const PlanarDiagram& d);

/// Arc-label shortcut for knots: a crossing is odd iff i - j is odd.
std::vector<ParityClass> crossing_parity_from_labels(const PlanarDiagram& d);

/// Deletes every odd self-crossing and every link crossing (they become
/// virtual), relabelling arcs. Components left without crossings become
/// free loops.
PlanarDiagram filtration_step(const PlanarDiagram& d);

/// D_0, D_1, ... up to the first fixed point of `filtration_step`.
std::vector<PlanarDiagram> filtration(const PlanarDiagram& d);

/// Genus of the closed orientable surface carrying the diagram, summed over
/// connected pieces of the underlying 4-valent graph.
int carrier_genus(const PlanarDiagram& d);

// ---- Reidemeister insertions (test utilities) -----------------------------

/// Inserts a first Reidemeister kink on `arc`. `over_first` selects whether
/// the strand passes over before under along its orientation.
PlanarDiagram insert_r1(const PlanarDiagram& d, int arc, Sign sign, bool over_first = false);

/// Turns one free loop into a one-crossing kink diagram component.
PlanarDiagram insert_r1_on_free_loop(const PlanarDiagram& d, Sign sign, bool over_first = false);

struct R2Options {
  bool a_over = true;        // strand on arc_a passes over both new crossings
  bool parallel = true;      // strand b meets the new crossings in the same order as strand a
  Sign first_sign = Sign::Positive;  // sign of the first crossing met by strand a
};

/// Inserts a second Reidemeister pair between the strands on `arc_a` and
/// `arc_b` (which may coincide). The new crossings are appended.
PlanarDiagram insert_r2(const PlanarDiagram& d, int arc_a, int arc_b, const R2Options& opts = {});

}  // namespace vk
