#include "vkinv/skein.hpp"

#include <omp.h>

#include <map>
#include <tuple>

namespace vk {

namespace {

enum class Mode { Bracket, Arrow, ParityBracket, ParityArrow };

bool tracks_cusps(Mode m) { return m == Mode::Arrow || m == Mode::ParityArrow; }
bool is_parity(Mode m) { return m == Mode::ParityBracket || m == Mode::ParityArrow; }

// Everything a state contributes, before expanding d^loops.
struct StateKey {
  int a = 0;
  int loops = 0;
  std::vector<int> arrows;  // p > 0, sorted
  std::vector<std::string> graphical;

  auto tie() const { return std::tie(a, loops, arrows, graphical); }
  friend bool operator<(const StateKey& x, const StateKey& y) { return x.tie() < y.tie(); }
};

using KeyCounts = std::map<StateKey, long long>;

// Spreads the bits of `sub` over the positions listed in `slots`.
std::uint64_t deposit(std::uint64_t sub, const std::vector<int>& slots) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < slots.size(); ++b)
    if ((sub >> b) & 1u) out |= std::uint64_t{1} << slots[b];
  return out;
}

StateKey evaluate_state(const Smoother& sm, std::uint64_t choice, std::uint64_t nodes, Mode mode,
                        std::vector<StateLoop>& scratch) {
  StateKey key;
  const int n = sm.crossings();
  for (int c = 0; c < n; ++c) {
    if ((nodes >> c) & 1u) continue;
    key.a += ((choice >> c) & 1u) ? -1 : 1;
  }
  sm.loops(choice, nodes, scratch, false);
  // a loop is worth K_p when p > 0 and d otherwise
  auto add_loop = [&](int p) {
    if (p > 0 && tracks_cusps(mode))
      key.arrows.push_back(p);
    else
      ++key.loops;
  };
  for (const StateLoop& l : scratch) add_loop(l.p);
  if (is_parity(mode) && nodes != 0) {
    GraphicalReduction r = reduce_graphical(node_curves(sm, choice, nodes, tracks_cusps(mode)));
    key.graphical = std::move(r.factors);
    for (int p : r.circles) add_loop(p);
  }
  std::sort(key.arrows.begin(), key.arrows.end());
  return key;
}

Polynomial expand(const KeyCounts& counts) {
  Polynomial out;
  std::vector<Polynomial> dpow{Polynomial::constant(1)};
  const Polynomial d = Polynomial::loop_value();
  for (const auto& [key, count] : counts) {
    while (static_cast<int>(dpow.size()) <= key.loops) dpow.push_back(dpow.back() * d);
    Monomial m;
    m.a = key.a;
    m.arrow = key.arrows;
    m.graphical = key.graphical;
    out += dpow[key.loops].shifted(m) * Integer(count);
  }
  return out;
}

struct Setup {
  std::uint64_t nodes = 0;
  std::vector<int> free_bits;  // crossings that are smoothed
};

Setup setup(const PlanarDiagram& d, Mode mode) {
  Setup s;
  if (is_parity(mode)) s.nodes = node_mask(d);
  for (int c = 0; c < static_cast<int>(d.crossing_count()); ++c)
    if (!((s.nodes >> c) & 1u)) s.free_bits.push_back(c);
  return s;
}

Polynomial state_sum_parallel(const PlanarDiagram& d, Mode mode) {
  const Smoother sm(d);
  const Setup st = setup(d, mode);
  const long long total = 1LL << st.free_bits.size();
  KeyCounts merged;
#pragma omp parallel
  {
    KeyCounts local;
    std::vector<StateLoop> scratch;
#pragma omp for schedule(static)
    for (long long s = 0; s < total; ++s) {
      const std::uint64_t choice = deposit(static_cast<std::uint64_t>(s), st.free_bits);
      ++local[evaluate_state(sm, choice, st.nodes, mode, scratch)];
    }
#pragma omp critical
    for (auto& [k, v] : local) merged[k] += v;
  }
  return expand(merged);
}

// Reference path: one polynomial product per state, no batching.
Polynomial state_sum_serial(const PlanarDiagram& d, Mode mode) {
  const Smoother sm(d);
  const Setup st = setup(d, mode);
  const long long total = 1LL << st.free_bits.size();
  const Polynomial dval = Polynomial::loop_value();
  Polynomial sum;
  std::vector<StateLoop> scratch;
  for (long long s = 0; s < total; ++s) {
    const std::uint64_t choice = deposit(static_cast<std::uint64_t>(s), st.free_bits);
    StateKey key = evaluate_state(sm, choice, st.nodes, mode, scratch);
    Polynomial term = Polynomial::A(key.a);
    for (int i = 0; i < key.loops; ++i) term *= dval;
    for (int p : key.arrows) term *= Polynomial::K(p);
    for (const auto& g : key.graphical) term *= Polynomial::D(g);
    sum += term;
  }
  return sum;
}

Polynomial state_sum(const PlanarDiagram& d, Mode mode, Engine e) {
  return e == Engine::Parallel ? state_sum_parallel(d, mode) : state_sum_serial(d, mode);
}

}  // namespace

Polynomial writhe_factor(int writhe) {
  // (-A)^(-3w)
  Polynomial f = Polynomial::A(-3 * writhe);
  return (writhe % 2 == 0) ? f : -f;
}

std::uint64_t node_mask(const PlanarDiagram& d) {
  auto parity = crossing_parity(d);
  std::uint64_t mask = 0;
  for (std::size_t c = 0; c < parity.size(); ++c)
    if (parity[c] != ParityClass::Even) mask |= std::uint64_t{1} << c;
  return mask;
}

FlatDiagram node_diagram(const PlanarDiagram& d, std::uint64_t choice, bool arrows) {
  return node_curves(d, choice, node_mask(d), arrows);
}

Polynomial collapse_cusped_coefficients(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Monomial k = m;
    k.graphical.clear();
    for (const auto& id : m.graphical) {
      GraphicalReduction r = reduce_graphical(parse_flat_id(id), true);
      if (r.factors.empty() && r.circles.size() == 1 && r.circles[0] > 0)
        k.arrow.push_back(r.circles[0]);
      else
        k.graphical.push_back(id);
    }
    std::sort(k.arrow.begin(), k.arrow.end());
    out.add_term(k, c);
  }
  return out;
}

Polynomial bracket(const PlanarDiagram& d, Engine e) { return state_sum(d, Mode::Bracket, e); }

Polynomial normalized_bracket(const PlanarDiagram& d, Engine e) { return writhe_factor(d.writhe()) * bracket(d, e); }

Polynomial jones(const PlanarDiagram& d, Engine e) { return bracket_to_jones(normalized_bracket(d, e)); }

Polynomial arrow(const PlanarDiagram& d, Engine e) { return state_sum(d, Mode::Arrow, e); }

Polynomial normalized_arrow(const PlanarDiagram& d, Engine e) { return writhe_factor(d.writhe()) * arrow(d, e); }

Polynomial parity_bracket(const PlanarDiagram& d, Engine e) {
  return writhe_factor(d.writhe()) * state_sum(d, Mode::ParityBracket, e);
}

Polynomial parity_arrow(const PlanarDiagram& d, Engine e) {
  return writhe_factor(d.writhe()) * state_sum(d, Mode::ParityArrow, e);
}

}  // namespace vk
