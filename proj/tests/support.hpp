#pragma once

// Shared fixtures, random diagrams and the independent oracles used by the
// unit tests and the acceptance binary.
//
// The oracles re-trace every state from the raw crossing records with their
// own end-pairing tables, so they share no code with the Smoother.

#include "vkinv/algebra.hpp"
#include "vkinv/genus.hpp"
#include "vkinv/graphical.hpp"
#include "vkinv/homology.hpp"
#include "vkinv/knotio.hpp"
#include "vkinv/skein.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace vkt {

using namespace vk;

#ifndef VKINV_DATA_DIR
#define VKINV_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) { return std::string(VKINV_DATA_DIR) + "/" + name; }

struct Fixture {
  std::string name;
  std::string code;
};

inline std::vector<Fixture> load_fixtures(const std::string& file = "fixtures.tsv") {
  std::ifstream in(data_path(file));
  std::vector<Fixture> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    out.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return out;
}

inline PlanarDiagram fixture(const std::string& name) {
  for (const auto& f : load_fixtures())
    if (f.name == name) return parse_diagram(f.code);
  throw std::runtime_error("no fixture " + name);
}

inline CoefficientRegistry registry() { return CoefficientRegistry::load(data_path("registry.tsv")); }

inline constexpr Flavor kFlavors[] = {Flavor::Khovanov, Flavor::ArrowFull, Flavor::ArrowSimple};

// ---- published values ------------------------------------------------------

inline const char* kKh21 = "(q^6+q^4)t^2 + (q^4+q^2) t + q^3 + q";
inline const char* kBracket21 = "(A^4 + A^6 - A^10)(-A^2 - A^-2)";
inline const char* kAkh31 =
    "vg(2,1) K[2]/(q^3 t) + vg(1,2) K[1]/q^3 + vg(2,-1) K[2]/(q t) + q vg(1,-2) K[1] + 2 K[1]/q";
inline const char* kParityAkhTop =
    "vg(2,1) K[2]/(q^3 t)+vg(1,2) K[1]/q^3+vg(2,-1) K[2]/(q t)+q vg(1,-2) K[1]+2 K[1]/q";
inline const char* kParityAkhBottom =
    "q^3 t vg(2,-1) K[2]+q^3 vg(1,-2) K[1]+q t vg(2,1) K[2]+vg(1,2) K[1]/q+2 q K[1]";
inline const char* kKh5129 = "1/(q^5 t^2)+1/(q^3 t^2)+1/(q^3 t)+q^2 t+1/q^2+1/(q t)+q+1/q+t+1";
inline const char* kArrow5129 = "-A^10+A^6-A^4 K2-2 A^2 K1^2-A^2 K1+K1/A^2+2 A^2-K2";
inline const char* kAkh5267 =
    "vg(2,1) K[2]/(q^3 t)+2 vg(1,2) K[1]/q^3+q^2 t vg(1,-1) K[1]+vg(1,1) K[1]/q^2+q t vg(2,-1) K[2]"
    "+vg(2,-1) K[2]/(q t)+t vg(2,1) K[2]/q+2 q vg(1,-2) K[1]+t vg(1,1) K[1]+vg(1,-1) K[1]+4 K[1]/q"
    "+1/(q^5 t^2)+1/(q^3 t^2)+2/(q^3 t)+2/(q t)";
inline const char* kAkh5129Extra = "q t+t/q+q+1/q";
inline const char* kParityKh49 = "1/(q^6 t^2)+1/(q^4 t^2)+1/(q^4 t)+1/q^3+1/(q^2 t)+1/q";
inline const char* kParityBracket472 = "-A^4 - A^2 + D2[1] - 2 - A^-2 - A^-4";
inline const char* kParityArrow470 = "D2[3] A^8 + 2 K1 A^6 - A^6 - A^2";
inline const char* kArrow55 =
    "A^10 K1^2 - A^10 K1 - 3 A^6 K1^2 + 3 A^6 K1 + A^6 - A^-6 - 2 A^4 K2 - 3 A^2 K1 + K1/A^2 + 2 A^2";
inline const char* kParityArrow55 = "-A^4 D4[1] - A^6 - 2 A^2 - A^-2";

// ---- random diagrams ---------------------------------------------------------

/// Random signed Gauss code with n crossings spread over `components` circles
/// (each circle gets at least one passage when possible), converted to PD.
inline PlanarDiagram random_diagram(std::mt19937_64& rng, int n, int components = 1) {
  for (;;) {
    std::vector<int> slots;
    for (int c = 1; c <= n; ++c) slots.insert(slots.end(), {c, c});
    std::shuffle(slots.begin(), slots.end(), rng);
    GaussCode g;
    g.components.resize(components);
    std::vector<std::size_t> cuts;
    for (int c = 1; c < components; ++c) cuts.push_back(std::uniform_int_distribution<std::size_t>(0, slots.size())(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<bool> first(n + 1, true);
    std::vector<bool> over_first(n + 1), negative(n + 1);
    for (int c = 1; c <= n; ++c) {
      over_first[c] = rng() & 1u;
      negative[c] = rng() & 1u;
    }
    std::size_t comp = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      while (comp < cuts.size() && s >= cuts[comp]) ++comp;
      const int id = slots[s];
      const bool over = first[id] == over_first[id];
      first[id] = false;
      g.components[comp].push_back({over ? Pass::Over : Pass::Under, id, negative[id] ? Sign::Negative : Sign::Positive});
    }
    try {
      return gauss_to_pd(g);
    } catch (const ParseError&) {
      continue;
    }
  }
}

/// One random first or second Reidemeister insertion.
inline PlanarDiagram random_move(std::mt19937_64& rng, const PlanarDiagram& d) {
  const Sign s = (rng() & 1u) ? Sign::Positive : Sign::Negative;
  if (d.arc_count() == 0) return insert_r1_on_free_loop(d, s, rng() & 1u);
  std::uniform_int_distribution<int> arc(1, d.arc_count());
  if (rng() % 3 == 0) return insert_r1(d, arc(rng), s, rng() & 1u);
  R2Options o;
  o.a_over = rng() & 1u;
  o.parallel = rng() & 1u;
  o.first_sign = s;
  return insert_r2(d, arc(rng), arc(rng), o);
}

// ---- oracle: state tracing from raw crossing records ---------------------------

/// Arrow numbers of the loops of one state (free loops give 0). Bit c of
/// `choice`: X takes the cusped smoothing on 1, Y on 0.
inline std::vector<int> oracle_loops(const PlanarDiagram& d, std::uint64_t choice) {
  const int arcs = d.arc_count();
  // end 2a is the tail of arc a+1, end 2a+1 its head
  auto tail = [](int arc) { return 2 * (arc - 1); };
  auto head = [](int arc) { return 2 * (arc - 1) + 1; };
  std::vector<int> partner(2 * arcs, -1);
  std::vector<char> letter(2 * arcs, 0);  // emitted when leaving this end toward its partner
  for (std::size_t c = 0; c < d.crossing_count(); ++c) {
    const Crossing& x = d.crossings()[c];
    const int ei = head(x.i()), ej = tail(x.j()), ek = tail(x.k()), el = head(x.l());
    const bool bit = (choice >> c) & 1u;
    const bool cusped = (x.sign == Sign::Positive) == bit;
    auto join = [&](int a, int b, char ab, char ba) {
      partner[a] = b, partner[b] = a;
      letter[a] = ab, letter[b] = ba;
    };
    if (cusped) {
      join(el, ei, 'T', 'H');  // directed l -> i
      join(ej, ek, 'T', 'H');  // directed j -> k
    } else {
      join(ei, ej, 0, 0);
      join(ek, el, 0, 0);
    }
  }
  std::vector<bool> seen(2 * arcs, false);
  std::vector<int> out;
  for (int start = 0; start < 2 * arcs; ++start) {
    if (seen[start]) continue;
    std::string w;
    int e = start;
    do {
      seen[e] = true;
      const int other = e ^ 1;  // walk along the arc
      seen[other] = true;
      const int next = partner[other];
      if (letter[other]) w += letter[other];
      e = next;
    } while (e != start);
    std::string st;
    for (char ch : w) {
      if (!st.empty() && st.back() == ch)
        st.pop_back();
      else
        st.push_back(ch);
    }
    std::size_t lo = 0, hi = st.size();
    while (hi - lo >= 2 && st[lo] == st[hi - 1]) ++lo, --hi;
    out.push_back(static_cast<int>((hi - lo) / 2));
  }
  for (int f = 0; f < d.free_loops(); ++f) out.push_back(0);
  return out;
}

inline int oracle_a_exponent(const PlanarDiagram& d, std::uint64_t choice) {
  const int n = static_cast<int>(d.crossing_count());
  const int ones = std::popcount(choice);
  return (n - ones) - ones;
}

/// Normalized arrow polynomial: loops with p > 0 count K_p, the rest d.
inline Polynomial oracle_arrow(const PlanarDiagram& d, bool with_arrows = true) {
  const int n = static_cast<int>(d.crossing_count());
  const Polynomial dv = Polynomial::loop_value();
  Polynomial sum;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Polynomial term = Polynomial::A(oracle_a_exponent(d, s));
    for (int p : oracle_loops(d, s)) term *= (with_arrows && p > 0) ? Polynomial::K(p) : dv;
    sum += term;
  }
  return writhe_factor(d.writhe()) * sum;
}

/// Euler characteristic side of the categorifications: every loop carries
/// q + q^-1; with `arrows` each state is tagged by K_p for the distinct p > 0.
inline Polynomial oracle_q_bracket(const PlanarDiagram& d, bool arrows) {
  const int n = static_cast<int>(d.crossing_count());
  const Polynomial loop = Polynomial::q(1) + Polynomial::q(-1);
  Polynomial sum;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const int h = std::popcount(s);
    Polynomial term = Polynomial::q(h) * Integer(h % 2 ? -1 : 1);
    std::set<int> mg;
    for (int p : oracle_loops(d, s)) {
      term *= loop;
      if (p > 0) mg.insert(p);
    }
    if (arrows)
      for (int p : mg) term *= Polynomial::K(p);
    sum += term;
  }
  const int np = d.positive_count(), nm = d.negative_count();
  return sum * Polynomial::q(np - 2 * nm) * Integer(nm % 2 ? -1 : 1);
}

/// Graded Euler characteristic of a Poincare polynomial (t -> -1, vg dropped).
inline Polynomial euler(const Polynomial& poincare) { return specialize_t_minus_one(drop_vg(poincare)); }

// ---- oracle: exhaustive graphical reduction ---------------------------------

/// Every normal form reachable by removing bigon pairs in any order.
inline std::set<std::vector<std::string>> exhaustive_normal_forms(const FlatDiagram& f) {
  std::set<std::vector<std::string>> out;
  std::set<std::string> visited;
  std::function<void(const FlatDiagram&)> go = [&](const FlatDiagram& g) {
    auto pairs = removable_pairs(g);
    if (pairs.empty()) {
      GraphicalReduction r = reduce_graphical(g);
      std::vector<std::string> key = r.factors;
      std::vector<int> circles = r.circles;
      std::sort(circles.begin(), circles.end());
      for (int p : circles) key.push_back("circle:" + std::to_string(p));
      out.insert(key);
      return;
    }
    for (auto [u, v] : pairs) {
      FlatDiagram h = remove_pair(g, u, v);
      // memoize on a cheap fingerprint of the remaining node set and words
      std::string fp;
      for (const auto& c : h.curves) {
        fp += '|';
        for (const auto& p : c.passages) fp += std::to_string(p.node) + ":" + std::to_string(p.in_pos) + p.word + ",";
        fp += c.word;
      }
      if (visited.insert(fp).second) go(h);
    }
  };
  go(f);
  return out;
}

}  // namespace vkt
