#include "vkinv/homology.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace vk {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Khovanov: return "khovanov";
    case Flavor::ArrowFull: return "arrow_full";
    default: return "arrow_simple";
  }
}

std::size_t ChainComplex::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

namespace {

BlockKey generator_key(const CubeState& s, std::uint32_t labels, int n_plus, int n_minus, Flavor f) {
  BlockKey key;
  const int loops = static_cast<int>(s.loops.size());
  const int lambda = loops - 2 * std::popcount(labels);
  key.j = s.height + lambda + n_plus - 2 * n_minus;
  if (f == Flavor::Khovanov) return key;
  std::map<int, int> vg;
  for (int b = 0; b < loops; ++b) {
    const StateLoop& l = s.loops[b];
    if (l.p == 0) continue;
    vg[l.order] += ((labels >> b) & 1u) ? 1 : -1;
  }
  if (f == Flavor::ArrowSimple) {
    auto it = vg.find(1);
    if (it != vg.end() && it->second % 2 != 0) key.vg.emplace_back(1, 1);
    return key;
  }
  key.mg = s.mg;
  for (auto [k, n] : vg)
    if (n != 0) key.vg.emplace_back(k, n);
  return key;
}

// How the loops of a state turn into the loops of its neighbour across one crossing.
struct EdgeShape {
  std::vector<int> carry;  // loop index in the target for untouched loops, -1 for touched
  std::vector<int> from, to;
};

EdgeShape edge_shape(const CubeState& s, const CubeState& t, std::uint64_t crossing_arcs) {
  EdgeShape e;
  e.carry.assign(s.loops.size(), -1);
  for (std::size_t a = 0; a < s.loops.size(); ++a) {
    const StateLoop& l = s.loops[a];
    if (l.arcs & crossing_arcs) {
      e.from.push_back(static_cast<int>(a));
      continue;
    }
    if (l.arcs == 0) {
      // free loops sit at the end in the same order
      e.carry[a] = static_cast<int>(t.loops.size() - (s.loops.size() - a));
      continue;
    }
    for (std::size_t b = 0; b < t.loops.size(); ++b)
      if (t.loops[b].arcs == l.arcs) {
        e.carry[a] = static_cast<int>(b);
        break;
      }
  }
  for (std::size_t b = 0; b < t.loops.size(); ++b)
    if (t.loops[b].arcs & crossing_arcs) e.to.push_back(static_cast<int>(b));
  return e;
}

// Images of one labelling under m / Delta / eta.
void local_images(const EdgeShape& e, std::uint32_t labels, std::vector<std::uint32_t>& out) {
  out.clear();
  std::uint32_t base = 0;
  for (std::size_t a = 0; a < e.carry.size(); ++a)
    if (e.carry[a] >= 0 && ((labels >> a) & 1u)) base |= 1u << e.carry[a];
  if (e.from.size() == 2 && e.to.size() == 1) {
    const bool x1 = (labels >> e.from[0]) & 1u, x2 = (labels >> e.from[1]) & 1u;
    if (x1 && x2) return;
    out.push_back(base | ((x1 || x2) ? 1u << e.to[0] : 0u));
  } else if (e.from.size() == 1 && e.to.size() == 2) {
    const std::uint32_t m1 = 1u << e.to[0], m2 = 1u << e.to[1];
    if ((labels >> e.from[0]) & 1u) {
      out.push_back(base | m1 | m2);
    } else {
      out.push_back(base | m1);
      out.push_back(base | m2);
    }
  }
  // single cycle: zero map
}

std::uint64_t crossing_arc_mask(const PlanarDiagram& d, int c) {
  std::uint64_t m = 0;
  for (int a : d.crossings()[c].slots) m |= std::uint64_t{1} << (a - 1);
  return m;
}

}  // namespace

ChainComplex build_cube(const PlanarDiagram& d, Flavor flavor, const CubeOptions& opts) {
  const int n = static_cast<int>(d.crossing_count());
  if (n > opts.max_crossings)
    throw SizeLimitError(std::to_string(n) + " crossings exceeds the limit of " + std::to_string(opts.max_crossings));
  // a state has at most n + (#components) loops; labels live in 32 bits
  if (n + static_cast<int>(d.components().size()) + d.free_loops() > 31)
    throw SizeLimitError("too many loops for 32-bit labellings");
  const bool par = opts.engine == Engine::Parallel;
  const Smoother sm(d);

  ChainComplex c;
  c.flavor = flavor;
  c.n_plus = d.positive_count();
  c.n_minus = d.negative_count();
  const long long total = 1LL << n;
  c.states.resize(total);

#pragma omp parallel for schedule(dynamic, 16) if (par)
  for (long long s = 0; s < total; ++s) {
    CubeState& st = c.states[s];
    st.choice = static_cast<std::uint64_t>(s);
    st.height = std::popcount(st.choice);
    sm.loops(st.choice, 0, st.loops, false);
    for (const StateLoop& l : st.loops)
      if (l.p > 0) st.mg.push_back(l.p);
    std::sort(st.mg.begin(), st.mg.end());
    st.mg.erase(std::unique(st.mg.begin(), st.mg.end()), st.mg.end());
  }

  std::uint64_t count = 0;
  for (auto& st : c.states) {
    st.first = static_cast<std::uint32_t>(count);
    count += std::uint64_t{1} << st.loops.size();
    if (count > UINT32_MAX) throw SizeLimitError("too many generators");
  }
  c.generators.resize(count);

  std::vector<BlockKey> keys(count);
#pragma omp parallel for schedule(dynamic, 16) if (par)
  for (long long s = 0; s < total; ++s) {
    const CubeState& st = c.states[s];
    const std::uint32_t labellings = 1u << st.loops.size();
    for (std::uint32_t lab = 0; lab < labellings; ++lab) {
      Generator& g = c.generators[st.first + lab];
      g.state = static_cast<std::uint32_t>(s);
      g.labels = lab;
      g.height = st.height;
      keys[st.first + lab] = generator_key(st, lab, c.n_plus, c.n_minus, flavor);
    }
  }
  {
    std::vector<BlockKey> uniq = keys;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t g = 0; g < count; ++g)
      c.generators[g].block =
          static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), keys[g]) - uniq.begin());
    c.blocks = std::move(uniq);
  }

  std::vector<std::uint64_t> arc_masks(n);
  for (int x = 0; x < n; ++x) arc_masks[x] = crossing_arc_mask(d, x);

  c.edges.assign(count, {});
#pragma omp parallel for schedule(dynamic, 16) if (par)
  for (long long s = 0; s < total; ++s) {
    const CubeState& st = c.states[s];
    std::vector<std::uint32_t> images;
    for (int x = 0; x < n; ++x) {
      if ((st.choice >> x) & 1u) continue;
      const CubeState& tt = c.states[st.choice | (std::uint64_t{1} << x)];
      const EdgeShape shape = edge_shape(st, tt, arc_masks[x]);
      const std::uint32_t labellings = 1u << st.loops.size();
      for (std::uint32_t lab = 0; lab < labellings; ++lab) {
        const std::uint32_t g = st.first + lab;
        local_images(shape, lab, images);
        for (std::uint32_t img : images) {
          const std::uint32_t h = tt.first + img;
          // projection onto the preserved gradings
          if (c.generators[h].block == c.generators[g].block) c.edges[g].push_back(h);
        }
      }
    }
    const std::uint32_t labellings = 1u << st.loops.size();
    for (std::uint32_t lab = 0; lab < labellings; ++lab) {
      auto& e = c.edges[st.first + lab];
      std::sort(e.begin(), e.end());
    }
  }

  if (opts.check_d2) check_d_squared(c);
  return c;
}

void check_d_squared(const ChainComplex& c) {
  const long long count = static_cast<long long>(c.generators.size());
  std::string failure;
#pragma omp parallel
  {
    std::vector<std::uint32_t> two;
#pragma omp for schedule(dynamic, 64)
    for (long long g = 0; g < count; ++g) {
      two.clear();
      for (std::uint32_t m : c.edges[g])
        for (std::uint32_t h : c.edges[m]) two.push_back(h);
      std::sort(two.begin(), two.end());
      for (std::size_t a = 0; a < two.size();) {
        std::size_t b = a;
        while (b < two.size() && two[b] == two[a]) ++b;
        if ((b - a) % 2 != 0) {
#pragma omp critical
          if (failure.empty()) {
            const Generator& x = c.generators[g];
            const Generator& y = c.generators[two[a]];
            std::ostringstream os;
            os << "d^2 != 0 (" << to_string(c.flavor) << "): state " << c.states[x.state].choice << " labels "
               << x.labels << " reaches state " << c.states[y.state].choice << " labels " << y.labels << " "
               << (b - a) << " times";
            failure = os.str();
          }
        }
        a = b;
      }
    }
  }
  if (!failure.empty()) throw DifferentialError(failure);
}

std::vector<std::uint32_t> reduce_complex(const ChainComplex& c, std::optional<std::uint64_t> seed) {
  const std::size_t count = c.generators.size();
  std::vector<std::set<std::uint32_t>> out(count), in(count);
  int max_height = 0;
  for (std::uint32_t g = 0; g < count; ++g) {
    max_height = std::max(max_height, c.generators[g].height);
    for (std::uint32_t h : c.edges[g]) {
      out[g].insert(h);
      in[h].insert(g);
    }
  }
  std::vector<char> alive(count, 1);

  auto toggle = [&](std::uint32_t u, std::uint32_t w) {
    if (out[u].erase(w)) {
      in[w].erase(u);
    } else {
      out[u].insert(w);
      in[w].insert(u);
    }
  };
  // Cancels x -> y; returns the tails whose out-sets changed.
  auto cancel = [&](std::uint32_t x, std::uint32_t y) {
    std::vector<std::uint32_t> us, ws;
    for (std::uint32_t u : in[y])
      if (u != x) us.push_back(u);
    for (std::uint32_t w : out[x])
      if (w != y) ws.push_back(w);
    for (std::uint32_t v : {x, y}) {
      for (std::uint32_t w : out[v]) in[w].erase(v);
      for (std::uint32_t u : in[v]) out[u].erase(v);
      out[v].clear();
      in[v].clear();
      alive[v] = 0;
    }
    for (std::uint32_t u : us)
      for (std::uint32_t w : ws) toggle(u, w);
    return us;
  };

  if (seed) {
    std::mt19937_64 rng(*seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
    for (;;) {
      all.clear();
      for (std::uint32_t g = 0; g < count; ++g)
        for (std::uint32_t h : out[g]) all.emplace_back(g, h);
      if (all.empty()) break;
      auto [x, y] = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
      cancel(x, y);
    }
  } else {
    std::vector<std::vector<std::uint32_t>> by_height(max_height + 1);
    for (std::uint32_t g = 0; g < count; ++g) by_height[c.generators[g].height].push_back(g);
    for (int h = max_height; h >= 1; --h) {
      std::set<std::uint32_t> pending;
      for (std::uint32_t x : by_height[h - 1])
        if (!out[x].empty()) pending.insert(x);
      while (!pending.empty()) {
        const std::uint32_t x = *pending.begin();
        const std::uint32_t y = *out[x].begin();
        pending.erase(x);
        for (std::uint32_t u : cancel(x, y)) {
          if (out[u].empty())
            pending.erase(u);
          else
            pending.insert(u);
        }
      }
    }
  }

  std::vector<std::uint32_t> survivors;
  for (std::uint32_t g = 0; g < count; ++g)
    if (alive[g]) survivors.push_back(g);
  return survivors;
}

DimensionMap survivor_dimensions(const ChainComplex& c, const std::vector<std::uint32_t>& survivors) {
  DimensionMap dims;
  for (std::uint32_t g : survivors) {
    const Generator& x = c.generators[g];
    ++dims[HomologyDegree{c.homological(x), c.key(x)}];
  }
  return dims;
}

namespace {

// Rank over Z2 of a dense bit matrix, destroying it.
int z2_rank(std::vector<std::vector<std::uint64_t>>& rows, int cols) {
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    const int w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && (rows[r][w] & bit))
        for (std::size_t k = w; k < rows[r].size(); ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace

DimensionMap rank_homology(const ChainComplex& c) {
  // members[block][height] = generators, and each generator's column index
  const int nblocks = static_cast<int>(c.blocks.size());
  int max_height = 0;
  for (const auto& g : c.generators) max_height = std::max(max_height, g.height);
  std::vector<std::vector<std::vector<std::uint32_t>>> members(
      nblocks, std::vector<std::vector<std::uint32_t>>(max_height + 1));
  std::vector<int> column(c.generators.size());
  for (std::uint32_t g = 0; g < c.generators.size(); ++g) {
    auto& bucket = members[c.generators[g].block][c.generators[g].height];
    column[g] = static_cast<int>(bucket.size());
    bucket.push_back(g);
  }

  std::vector<std::vector<long long>> dims(nblocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (int b = 0; b < nblocks; ++b) {
    std::vector<int> rank(max_height + 2, 0);  // rank of d leaving height h
    for (int h = 0; h < max_height; ++h) {
      const auto& src = members[b][h];
      const int cols = static_cast<int>(members[b][h + 1].size());
      if (src.empty() || cols == 0) continue;
      std::vector<std::vector<std::uint64_t>> rows(src.size(), std::vector<std::uint64_t>((cols + 63) / 64, 0));
      for (std::size_t r = 0; r < src.size(); ++r)
        for (std::uint32_t t : c.edges[src[r]]) rows[r][column[t] / 64] |= std::uint64_t{1} << (column[t] % 64);
      rank[h] = z2_rank(rows, cols);
    }
    dims[b].assign(max_height + 1, 0);
    for (int h = 0; h <= max_height; ++h)
      dims[b][h] = static_cast<long long>(members[b][h].size()) - rank[h] - (h > 0 ? rank[h - 1] : 0);
  }

  DimensionMap out;
  for (int b = 0; b < nblocks; ++b)
    for (int h = 0; h <= max_height; ++h)
      if (dims[b][h] > 0) out[HomologyDegree{h - c.n_minus, c.blocks[b]}] = dims[b][h];
  return out;
}

Polynomial poincare(const ChainComplex&, const DimensionMap& dims) {
  Polynomial p(Coefficients::Dimension);
  for (const auto& [deg, n] : dims) {
    if (n == 0) continue;
    Monomial m;
    m.t = deg.i;
    m.q = deg.key.j;
    m.arrow = deg.key.mg;
    m.vg = deg.key.vg;
    p.add_term(m, Integer(n));
  }
  return p;
}

Polynomial homology(const PlanarDiagram& d, Flavor f, const CubeOptions& opts) {
  ChainComplex c = build_cube(d, f, opts);
  return poincare(c, survivor_dimensions(c, reduce_complex(c)));
}

Polynomial kh(const PlanarDiagram& d, const CubeOptions& opts) { return homology(d, Flavor::Khovanov, opts); }
Polynomial akh(const PlanarDiagram& d, const CubeOptions& opts) { return homology(d, Flavor::ArrowFull, opts); }
Polynomial akh_simple(const PlanarDiagram& d, const CubeOptions& opts) {
  return homology(d, Flavor::ArrowSimple, opts);
}

namespace {
PlanarDiagram filtered(const PlanarDiagram& d, int level) {
  if (level < 1) throw std::invalid_argument("parity level must be at least 1");
  PlanarDiagram out = d;
  for (int i = 0; i < level; ++i) out = filtration_step(out);
  return out;
}
}  // namespace

Polynomial parity_kh(const PlanarDiagram& d, int level, const CubeOptions& opts) {
  return kh(filtered(d, level), opts);
}

Polynomial parity_akh(const PlanarDiagram& d, int level, const CubeOptions& opts) {
  return akh(filtered(d, level), opts);
}

namespace {
std::set<int> diagonals(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("thickness of an empty polynomial");
  std::set<int> cs;
  for (const auto& [m, n] : p.terms())
    if (n > 0) cs.insert(m.q - 2 * m.t);
  return cs;
}
}  // namespace

int thickness(const Polynomial& p) { return static_cast<int>(diagonals(p).size()); }

int width(const Polynomial& p) {
  auto cs = diagonals(p);
  return *cs.rbegin() - *cs.begin();
}

}  // namespace vk
