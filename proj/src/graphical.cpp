#include "vkinv/graphical.hpp"

#include "vkinv/state.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace vk {

namespace {

// slots are listed counterclockwise, so the slot index is the rotation position
int rot_pos(const Crossing&, int slot) { return slot; }

// Half-edge tables for face tracing.
struct HalfEdges {
  std::vector<int> nodes;        // index -> node id
  std::map<int, int> index;      // node id -> index
  std::vector<int> alpha;        // half-edge -> paired half-edge
  std::vector<const std::string*> word;  // half-edge -> word on its edge

  explicit HalfEdges(const FlatDiagram& f) {
    nodes = f.nodes();
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) index[nodes[i]] = i;
    alpha.assign(4 * nodes.size(), -1);
    word.assign(4 * nodes.size(), nullptr);
    for (const FlatCurve& c : f.curves) {
      const int m = static_cast<int>(c.passages.size());
      for (int t = 0; t < m; ++t) {
        const FlatPassage& a = c.passages[t];
        const FlatPassage& b = c.passages[(t + 1) % m];
        int ha = 4 * index[a.node] + a.out_pos();
        int hb = 4 * index[b.node] + b.in_pos;
        alpha[ha] = hb;
        alpha[hb] = ha;
        word[ha] = word[hb] = &a.word;
      }
    }
  }
  int rot(int h) const { return 4 * (h / 4) + (h % 4 + 1) % 4; }
  int node(int h) const { return nodes[h / 4]; }
};

}  // namespace

std::vector<int> FlatDiagram::nodes() const {
  std::set<int> s;
  for (const FlatCurve& c : curves)
    for (const FlatPassage& p : c.passages) s.insert(p.node);
  return {s.begin(), s.end()};
}

void FlatDiagram::validate() const {
  std::map<int, std::vector<int>> in;
  for (const FlatCurve& c : curves)
    for (const FlatPassage& p : c.passages) {
      if (p.in_pos < 0 || p.in_pos > 3) throw std::invalid_argument("rotation position out of range");
      in[p.node].push_back(p.in_pos);
    }
  for (const auto& [n, v] : in) {
    if (v.size() != 2) throw std::invalid_argument("node " + std::to_string(n) + " not passed twice");
    if ((v[0] - v[1] + 4) % 2 == 0) throw std::invalid_argument("node " + std::to_string(n) + " strands not transverse");
  }
}

// ---------------------------------------------------------------------------
// Tracing

FlatDiagram node_curves(const PlanarDiagram& d, std::uint64_t choice, std::uint64_t nodes, bool keep_cusps) {
  return node_curves(Smoother(d), choice, nodes, keep_cusps);
}

FlatDiagram node_curves(const Smoother& sm, std::uint64_t choice, std::uint64_t nodes, bool keep_cusps) {
  const PlanarDiagram& d = sm.diagram();
  const int n = sm.crossings();
  FlatDiagram f;
  std::vector<std::array<bool, 2>> visited(n, {false, false});  // strands (i,k) and (l,j)
  auto strand = [](int slot) { return (slot == kSlotI || slot == kSlotK) ? 0 : 1; };

  for (int c = 0; c < n; ++c) {
    if (!((nodes >> c) & 1u)) continue;
    for (int start_slot : {kSlotI, kSlotL}) {
      if (visited[c][strand(start_slot)]) continue;
      FlatCurve curve;
      int node = c, slot = start_slot;
      while (true) {
        visited[node][strand(slot)] = true;
        curve.passages.push_back({node, rot_pos(d.crossings()[node], slot), {}});
        int e = sm.end_at(node, Smoother::through(slot));
        while (true) {
          const int other = e ^ 1;
          const int x = sm.crossing_of_end(other);
          const int s = sm.slot_of_end(other);
          if ((nodes >> x) & 1u) {
            node = x;
            slot = s;
            break;
          }
          Smoother::Link l = sm.link(other, choice);
          if (l.letter && keep_cusps) curve.passages.back().word.push_back(l.letter);
          e = l.partner;
        }
        if (node == c && slot == start_slot) break;
      }
      for (FlatPassage& p : curve.passages) p.word = reduce_cusp_word_linear(p.word);
      f.curves.push_back(std::move(curve));
    }
  }
  return f;
}

FlatDiagram graphify(const PlanarDiagram& d) {
  const int n = static_cast<int>(d.crossing_count());
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  FlatDiagram f = node_curves(d, 0, all, false);
  for (int i = 0; i < d.free_loops(); ++i) f.curves.push_back({});
  return f;
}

// ---------------------------------------------------------------------------
// Reduction

std::vector<std::pair<int, int>> removable_pairs(const FlatDiagram& f, bool slide_cusps) {
  HalfEdges he(f);
  std::set<std::pair<int, int>> out;
  for (int h = 0; h < static_cast<int>(he.alpha.size()); ++h) {
    if (he.alpha[h] < 0) continue;
    const int h2 = he.rot(he.alpha[h]);
    if (h2 == h || he.rot(he.alpha[h2]) != h) continue;
    const int u = he.node(h), v = he.node(h2);
    if (u == v) continue;
    if (!slide_cusps && (!he.word[h]->empty() || !he.word[h2]->empty())) continue;
    out.insert({std::min(u, v), std::max(u, v)});
  }
  return {out.begin(), out.end()};
}

FlatDiagram remove_pair(const FlatDiagram& f, int u, int v) {
  FlatDiagram out;
  auto gone = [&](const FlatPassage& p) { return p.node == u || p.node == v; };
  for (const FlatCurve& c : f.curves) {
    const int m = static_cast<int>(c.passages.size());
    auto anchor = std::find_if_not(c.passages.begin(), c.passages.end(), gone);
    FlatCurve nc;
    if (m == 0) {
      nc = c;
    } else if (anchor == c.passages.end()) {
      for (const FlatPassage& p : c.passages) nc.word += p.word;
    } else {
      const int a = static_cast<int>(anchor - c.passages.begin());
      for (int k = 0; k < m; ++k) {
        const FlatPassage& p = c.passages[(a + k) % m];
        if (gone(p))
          nc.passages.back().word += p.word;
        else
          nc.passages.push_back(p);
      }
      for (FlatPassage& p : nc.passages) p.word = reduce_cusp_word_linear(p.word);
    }
    out.curves.push_back(std::move(nc));
  }
  return out;
}

GraphicalReduction reduce_graphical(FlatDiagram f, bool slide_cusps) {
  while (true) {
    auto pairs = removable_pairs(f, slide_cusps);
    if (pairs.empty()) break;
    f = remove_pair(f, pairs.front().first, pairs.front().second);
  }
  GraphicalReduction r;
  // split into connected pieces
  std::vector<int> nodes = f.nodes();
  std::map<int, int> parent;
  for (int n : nodes) parent[n] = n;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const FlatCurve& c : f.curves)
    for (const FlatPassage& p : c.passages) parent[find(p.node)] = find(c.passages.front().node);
  std::map<int, FlatDiagram> pieces;
  for (FlatCurve& c : f.curves) {
    if (c.passages.empty()) {
      r.circles.push_back(reduce_cusp_word(c.word).p);
      continue;
    }
    pieces[find(c.passages.front().node)].curves.push_back(std::move(c));
  }
  for (const auto& [root, piece] : pieces) r.factors.push_back(canonical_id(piece));
  std::sort(r.factors.begin(), r.factors.end());
  std::sort(r.circles.begin(), r.circles.end());
  return r;
}

// ---------------------------------------------------------------------------
// Canonical ids

namespace {

struct Oriented {
  std::vector<int> node;
  std::vector<int> out;  // out position
  std::vector<std::string> word;
};

Oriented orient(const FlatCurve& c, int start, bool reverse) {
  const int m = static_cast<int>(c.passages.size());
  Oriented o;
  for (int k = 0; k < m; ++k) {
    if (!reverse) {
      const FlatPassage& p = c.passages[(start + k) % m];
      o.node.push_back(p.node);
      o.out.push_back(p.out_pos());
      o.word.push_back(p.word);
    } else {
      const int t = ((start - k) % m + m) % m;
      const FlatPassage& p = c.passages[t];
      const FlatPassage& prev = c.passages[(t - 1 + m) % m];
      o.node.push_back(p.node);
      o.out.push_back(p.in_pos);
      o.word.push_back(reverse_cusp_word(prev.word));
    }
  }
  return o;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const FlatDiagram& f) : f_(f) {
    for (const FlatCurve& c : f.curves) {
      const int m = static_cast<int>(c.passages.size());
      std::vector<Oriented> opts;
      for (int s = 0; s < m; ++s)
        for (bool rev : {false, true}) opts.push_back(orient(c, s, rev));
      options_.push_back(std::move(opts));
    }
  }

  std::string run() {
    std::vector<bool> used(f_.curves.size(), false);
    std::map<int, std::pair<int, int>> labels;  // node -> (label, first out pos)
    search(used, labels, "", 0);
    return best_;
  }

 private:
  bool worse(const std::string& partial) const {
    if (best_.empty()) return false;
    return best_.compare(0, partial.size(), partial) < 0;
  }

  void search(std::vector<bool>& used, std::map<int, std::pair<int, int>>& labels, const std::string& partial,
              std::size_t placed) {
    if (placed == used.size()) {
      if (best_.empty() || partial < best_) best_ = partial;
      return;
    }
    for (std::size_t c = 0; c < used.size(); ++c) {
      if (used[c]) continue;
      used[c] = true;
      for (const Oriented& o : options_[c]) {
        std::string s = partial;
        if (placed > 0) s += '|';
        auto saved = labels;
        bool pruned = false;
        for (std::size_t k = 0; k < o.node.size(); ++k) {
          if (k > 0) s += ',';
          auto it = labels.find(o.node[k]);
          if (it == labels.end()) {
            const int label = static_cast<int>(labels.size()) + 1;
            labels[o.node[k]] = {label, o.out[k]};
            s += std::to_string(label);
          } else {
            s += std::to_string(it->second.first);
            s += o.out[k] == (it->second.second + 1) % 4 ? '+' : '-';
          }
          if (!o.word[k].empty()) s += ":" + o.word[k];
          if (worse(s)) {
            pruned = true;
            break;
          }
        }
        if (!pruned) search(used, labels, s, placed + 1);
        labels = std::move(saved);
      }
      used[c] = false;
    }
  }

  const FlatDiagram& f_;
  std::vector<std::vector<Oriented>> options_;
  std::string best_;
};

}  // namespace

std::string canonical_id(const FlatDiagram& connected) {
  if (connected.curves.empty()) return "";
  return Canonicalizer(connected).run();
}

FlatDiagram parse_flat_id(std::string_view id) {
  FlatDiagram f;
  std::map<int, int> first_out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& m) { throw std::invalid_argument(m + " in flat id at " + std::to_string(pos)); };
  f.curves.emplace_back();
  while (pos < id.size()) {
    if (id[pos] == '|') {
      f.curves.emplace_back();
      ++pos;
      continue;
    }
    if (id[pos] == ',') ++pos;
    std::size_t start = pos;
    while (pos < id.size() && std::isdigit(static_cast<unsigned char>(id[pos]))) ++pos;
    if (start == pos) fail("expected node label");
    int label = std::stoi(std::string(id.substr(start, pos - start)));
    FlatPassage p;
    p.node = label;
    if (pos < id.size() && (id[pos] == '+' || id[pos] == '-')) {
      if (!first_out.count(label)) fail("sign on first visit");
      int out = id[pos] == '+' ? (first_out[label] + 1) % 4 : (first_out[label] + 3) % 4;
      p.in_pos = (out + 2) % 4;
      ++pos;
    } else {
      if (first_out.count(label)) fail("missing sign on second visit");
      first_out[label] = 2;
      p.in_pos = 0;
    }
    if (pos < id.size() && id[pos] == ':') {
      ++pos;
      while (pos < id.size() && (id[pos] == 'T' || id[pos] == 'H')) p.word += id[pos++];
    }
    f.curves.back().passages.push_back(std::move(p));
  }
  f.validate();
  return f;
}

int node_count(std::string_view id) {
  int best = 0;
  for (std::size_t pos = 0; pos < id.size();) {
    if (std::isdigit(static_cast<unsigned char>(id[pos]))) {
      std::size_t start = pos;
      while (pos < id.size() && std::isdigit(static_cast<unsigned char>(id[pos]))) ++pos;
      best = std::max(best, std::stoi(std::string(id.substr(start, pos - start))));
    } else {
      ++pos;
    }
  }
  return best;
}

int flat_genus(const FlatDiagram& f) {
  HalfEdges he(f);
  const int v = static_cast<int>(he.nodes.size());
  if (v == 0) return 0;
  std::vector<bool> seen(he.alpha.size(), false);
  int faces = 0;
  for (int h = 0; h < static_cast<int>(he.alpha.size()); ++h) {
    if (seen[h]) continue;
    ++faces;
    for (int cur = h; !seen[cur]; cur = he.rot(he.alpha[cur])) seen[cur] = true;
  }
  return (2 - (v - 2 * v + faces)) / 2;
}

}  // namespace vk
