#pragma once

// Z2 cube complexes for Khovanov homology and the two arrow
// categorifications, their reduction by Gaussian elimination, and the
// Poincare polynomials built from the survivors.

#include "vkinv/algebra.hpp"
#include "vkinv/knotio.hpp"
#include "vkinv/skein.hpp"
#include "vkinv/state.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vk {

constexpr int kDefaultMaxCrossings = 16;

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when d^2 != 0; names the square that fails.
class DifferentialError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Flavor { Khovanov, ArrowFull, ArrowSimple };

std::string to_string(Flavor f);

/// Everything the differential must preserve besides the homological degree.
/// For Khovanov only j is used; ArrowSimple keeps a1 mod 2 in `vg`.
struct BlockKey {
  int j = 0;
  std::vector<int> mg;                   // distinct arrow numbers p > 0
  std::vector<std::pair<int, int>> vg;   // sorted by k, nonzero
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
  friend bool operator==(const BlockKey&, const BlockKey&) = default;
};

struct CubeState {
  std::uint64_t choice = 0;
  int height = 0;
  std::vector<StateLoop> loops;
  std::vector<int> mg;
  std::uint32_t first = 0;  // index of its first generator
};

struct Generator {
  std::uint32_t state = 0;
  std::uint32_t labels = 0;  // bit b set: loop b is labelled X
  int height = 0;
  int block = 0;
};

struct ChainComplex {
  Flavor flavor = Flavor::Khovanov;
  int n_plus = 0;
  int n_minus = 0;
  std::vector<CubeState> states;
  std::vector<Generator> generators;
  std::vector<BlockKey> blocks;
  std::vector<std::vector<std::uint32_t>> edges;  // sorted targets per generator

  std::size_t edge_count() const;
  int homological(const Generator& g) const { return g.height - n_minus; }
  const BlockKey& key(const Generator& g) const { return blocks[g.block]; }
};

struct CubeOptions {
  Engine engine = Engine::Parallel;
  int max_crossings = kDefaultMaxCrossings;
  bool check_d2 = true;
};

/// Whole cube with all enhanced states and the projected differential.
ChainComplex build_cube(const PlanarDiagram& d, Flavor flavor, const CubeOptions& opts = {});

/// Throws DifferentialError unless every two-step path count is even.
void check_d_squared(const ChainComplex& c);

/// Multi-degree (i, j, mg, vg) of a surviving class.
struct HomologyDegree {
  int i = 0;
  BlockKey key;
  friend auto operator<=>(const HomologyDegree&, const HomologyDegree&) = default;
  friend bool operator==(const HomologyDegree&, const HomologyDegree&) = default;
};

using DimensionMap = std::map<HomologyDegree, long long>;

/// Gaussian elimination. Without a seed edges are picked by the fixed rule
/// (highest head, then lowest tail index, then lowest head index); a seed
/// picks uniformly at random instead. Returns surviving generator indices.
std::vector<std::uint32_t> reduce_complex(const ChainComplex& c, std::optional<std::uint64_t> seed = std::nullopt);

DimensionMap survivor_dimensions(const ChainComplex& c, const std::vector<std::uint32_t>& survivors);

/// dim C - rank d_out - rank d_in per block and height.
DimensionMap rank_homology(const ChainComplex& c);

/// Poincare polynomial in Dimension context.
Polynomial poincare(const ChainComplex& c, const DimensionMap& dims);

Polynomial kh(const PlanarDiagram& d, const CubeOptions& opts = {});
Polynomial akh(const PlanarDiagram& d, const CubeOptions& opts = {});
/// Simplified categorification; odd a1 is recorded as a vg(1,1) factor.
Polynomial akh_simple(const PlanarDiagram& d, const CubeOptions& opts = {});
Polynomial homology(const PlanarDiagram& d, Flavor f, const CubeOptions& opts = {});

/// kh / akh of the diagram after `level` filtration steps.
Polynomial parity_kh(const PlanarDiagram& d, int level = 1, const CubeOptions& opts = {});
Polynomial parity_akh(const PlanarDiagram& d, int level = 1, const CubeOptions& opts = {});

/// Supported diagonals c = j - 2i.
int thickness(const Polynomial& p);
int width(const Polynomial& p);

}  // namespace vk
