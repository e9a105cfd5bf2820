#include "vkinv/knotio.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace vk {

namespace {

bool is_incoming(int slot) { return slot == kSlotI || slot == kSlotL; }

// Outgoing slot paired with an incoming one along the same strand.
int continuation(int slot) { return slot == kSlotI ? kSlotK : kSlotJ; }

// Half-edge (crossing, slot) index helpers.
struct SlotRef {
  int crossing = -1;
  int slot = -1;
};

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer");
    }
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, static_cast<long>(pos_)); }
  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(ParityClass p) {
  switch (p) {
    case ParityClass::Even: return "even";
    case ParityClass::Odd: return "odd";
    case ParityClass::Link: return "link";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PlanarDiagram

PlanarDiagram PlanarDiagram::make(std::vector<Crossing> crossings, int free_loops) {
  if (free_loops < 0) throw ParseError("negative free loop count");
  const int n_arcs = 2 * static_cast<int>(crossings.size());

  std::vector<int> uses(n_arcs + 1, 0);
  std::vector<SlotRef> incoming(n_arcs + 1), outgoing(n_arcs + 1);
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    for (int s = 0; s < 4; ++s) {
      int a = crossings[c].slots[s];
      if (a < 1 || a > n_arcs)
        throw ParseError("arc label " + std::to_string(a) + " outside 1.." + std::to_string(n_arcs));
      ++uses[a];
      SlotRef& ref = is_incoming(s) ? incoming[a] : outgoing[a];
      if (ref.crossing >= 0)
        throw ParseError("arc " + std::to_string(a) + " enters or leaves crossings twice; broken strand continuation");
      ref = {c, s};
    }
  }
  for (int a = 1; a <= n_arcs; ++a) {
    if (uses[a] != 2)
      throw ParseError("arc label " + std::to_string(a) + " used " + std::to_string(uses[a]) + " time(s), expected 2");
  }

  // Strand-following: the arc after `a` leaves the crossing that `a` enters.
  std::vector<int> next(n_arcs + 1, 0);
  for (int a = 1; a <= n_arcs; ++a) {
    const SlotRef in = incoming[a];
    next[a] = crossings[in.crossing].slots[continuation(in.slot)];
  }

  std::vector<ArcRange> components;
  std::vector<bool> seen(n_arcs + 1, false);
  for (int a = 1; a <= n_arcs; ++a) {
    if (seen[a]) continue;
    int first = a, last = a;
    seen[a] = true;
    int cur = next[a];
    while (cur != first) {
      if (cur != last + 1 || seen[cur])
        throw ParseError("broken strand continuation: arc " + std::to_string(last) + " continues to arc " +
                         std::to_string(cur) + ", labels must be consecutive along each component");
      seen[cur] = true;
      last = cur;
      cur = next[cur];
    }
    components.push_back({first, last});
  }

  PlanarDiagram d;
  d.crossings_ = std::move(crossings);
  d.components_ = std::move(components);
  d.free_loops_ = free_loops;
  return d;
}

int PlanarDiagram::positive_count() const {
  return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(),
                                        [](const Crossing& c) { return c.sign == Sign::Positive; }));
}

int PlanarDiagram::negative_count() const { return static_cast<int>(crossings_.size()) - positive_count(); }

int PlanarDiagram::component_of(int arc) const {
  for (int c = 0; c < static_cast<int>(components_.size()); ++c)
    if (components_[c].contains(arc)) return c;
  throw std::out_of_range("arc " + std::to_string(arc) + " not in diagram");
}

int PlanarDiagram::next_arc(int arc) const {
  const ArcRange& r = components_.at(component_of(arc));
  return arc == r.last ? r.first : arc + 1;
}

// ---------------------------------------------------------------------------
// PD text

PlanarDiagram parse_pd(std::string_view text) {
  Cursor cur(text);
  cur.skip_ws();
  if (!(cur.accept('P') && cur.accept('D'))) cur.fail("expected 'PD['");
  cur.expect('[');
  std::vector<Crossing> crossings;
  int free_loops = 0;
  if (!cur.accept(']')) {
    do {
      char head = cur.peek();
      if (head == 'X' || head == 'Y') {
        cur.accept(head);
        cur.expect('[');
        Crossing c;
        c.sign = head == 'X' ? Sign::Positive : Sign::Negative;
        for (int s = 0; s < 4; ++s) {
          if (s > 0) cur.expect(',');
          c.slots[s] = static_cast<int>(cur.integer());
        }
        cur.expect(']');
        crossings.push_back(c);
      } else if (head == 'L') {
        cur.accept('L');
        cur.expect('[');
        long m = cur.integer();
        if (m < 0) cur.fail("free loop count must be nonnegative");
        cur.expect(']');
        free_loops += static_cast<int>(m);
      } else {
        cur.fail("expected X[...], Y[...] or L[...]");
      }
    } while (cur.accept(','));
    cur.expect(']');
  }
  if (!cur.at_end()) cur.fail("trailing characters");
  return PlanarDiagram::make(std::move(crossings), free_loops);
}

std::string serialize_pd(const PlanarDiagram& d) {
  std::ostringstream os;
  os << "PD[";
  bool first = true;
  for (const Crossing& c : d.crossings()) {
    if (!first) os << ',';
    first = false;
    os << (c.sign == Sign::Positive ? 'X' : 'Y') << '[' << c.slots[0] << ',' << c.slots[1] << ',' << c.slots[2]
       << ',' << c.slots[3] << ']';
  }
  if (d.free_loops() > 0) {
    if (!first) os << ',';
    os << "L[" << d.free_loops() << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Gauss codes

void GaussCode::validate() const {
  struct Seen {
    int over = 0, under = 0;
    Sign sign = Sign::Positive;
    bool any = false;
  };
  std::map<int, Seen> seen;
  for (const auto& comp : components) {
    for (const GaussEntry& e : comp) {
      if (e.id <= 0) throw ParseError("crossing id must be positive: " + std::to_string(e.id));
      Seen& s = seen[e.id];
      if (s.any && s.sign != e.sign) throw ParseError("sign mismatch for crossing " + std::to_string(e.id));
      s.any = true;
      s.sign = e.sign;
      (e.pass == Pass::Over ? s.over : s.under)++;
    }
  }
  for (const auto& [id, s] : seen) {
    if (s.over + s.under != 2)
      throw ParseError("crossing " + std::to_string(id) + " seen " + std::to_string(s.over + s.under) +
                       " time(s), expected 2");
    if (s.over != 1 || s.under != 1) throw ParseError("over/under mismatch for crossing " + std::to_string(id));
  }
}

std::vector<int> GaussCode::crossing_ids() const {
  std::set<int> ids;
  for (const auto& comp : components)
    for (const GaussEntry& e : comp) ids.insert(e.id);
  return {ids.begin(), ids.end()};
}

GaussCode parse_gauss(std::string_view text) {
  Cursor cur(text);
  GaussCode g;
  g.components.emplace_back();
  while (!cur.at_end()) {
    char c = cur.peek();
    if (c == ';') {
      cur.accept(';');
      g.components.emplace_back();
      continue;
    }
    if (c == ',') {
      if (g.components.back().empty()) cur.fail("empty Gauss entry");
      cur.accept(',');
      c = cur.peek();
    }
    GaussEntry e;
    if (c == 'O' || c == 'o') {
      e.pass = Pass::Over;
    } else if (c == 'U' || c == 'u') {
      e.pass = Pass::Under;
    } else {
      cur.fail("expected 'O' or 'U'");
    }
    cur.accept(c);
    long id = cur.integer();
    if (id <= 0) cur.fail("crossing id must be positive");
    e.id = static_cast<int>(id);
    // missing sign reads as positive
    char s = cur.peek();
    if (s == '+') {
      cur.accept('+');
    } else if (s == '-') {
      cur.accept('-');
      e.sign = Sign::Negative;
    }
    g.components.back().push_back(e);
  }
  g.validate();
  return g;
}

std::string serialize_gauss(const GaussCode& g) {
  std::ostringstream os;
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    if (c > 0) os << ';';
    for (std::size_t p = 0; p < g.components[c].size(); ++p) {
      const GaussEntry& e = g.components[c][p];
      if (p > 0) os << ',';
      os << (e.pass == Pass::Over ? 'O' : 'U') << e.id << (e.sign == Sign::Positive ? '+' : '-');
    }
  }
  return os.str();
}

GaussCode pd_to_gauss(const PlanarDiagram& d) {
  // incoming slot of each arc
  std::vector<SlotRef> incoming(d.arc_count() + 1);
  for (int c = 0; c < static_cast<int>(d.crossing_count()); ++c)
    for (int s : {kSlotI, kSlotL}) incoming[d.crossings()[c].slots[s]] = {c, s};

  GaussCode g;
  for (const ArcRange& r : d.components()) {
    std::vector<GaussEntry> comp;
    for (int a = r.first; a <= r.last; ++a) {
      const SlotRef in = incoming[a];
      const Sign sign = d.crossings()[in.crossing].sign;
      comp.push_back({under_slot(sign) == in.slot ? Pass::Under : Pass::Over, in.crossing + 1, sign});
    }
    g.components.push_back(std::move(comp));
  }
  for (int f = 0; f < d.free_loops(); ++f) g.components.emplace_back();
  return g;
}

PlanarDiagram gauss_to_pd(const GaussCode& g) {
  g.validate();
  std::vector<int> ids = g.crossing_ids();
  std::map<int, int> index;
  for (int n = 0; n < static_cast<int>(ids.size()); ++n) index[ids[n]] = n;

  std::vector<Crossing> crossings(ids.size());
  int free_loops = 0;
  int base = 0;
  for (const auto& comp : g.components) {
    const int m = static_cast<int>(comp.size());
    if (m == 0) {
      ++free_loops;
      continue;
    }
    for (int p = 0; p < m; ++p) {
      const GaussEntry& e = comp[p];
      const int in = base + p + 1;
      const int out = base + (p + 1) % m + 1;
      Crossing& c = crossings[index[e.id]];
      c.sign = e.sign;
      if ((e.pass == Pass::Under) == (e.sign == Sign::Positive)) {
        c.slots[kSlotI] = in;
        c.slots[kSlotK] = out;
      } else {
        c.slots[kSlotL] = in;
        c.slots[kSlotJ] = out;
      }
    }
    base += m;
  }
  return PlanarDiagram::make(std::move(crossings), free_loops);
}

ChordDiagram chord_diagram(const GaussCode& g) {
  g.validate();
  ChordDiagram cd;
  std::map<int, ChordDiagram::Chord> chords;
  for (int c = 0; c < static_cast<int>(g.components.size()); ++c) {
    std::vector<int> circle;
    for (int p = 0; p < static_cast<int>(g.components[c].size()); ++p) {
      const GaussEntry& e = g.components[c][p];
      circle.push_back(e.id);
      ChordDiagram::Chord& ch = chords[e.id];
      ch.id = e.id;
      ch.sign = e.sign;
      (e.pass == Pass::Over ? ch.over : ch.under) = {c, p};
    }
    cd.core_circles.push_back(std::move(circle));
  }
  for (auto& [id, ch] : chords) cd.chords.push_back(ch);
  return cd;
}

PlanarDiagram parse_diagram(std::string_view text) {
  std::size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  if (text.substr(p, 2) == "PD") return parse_pd(text);
  return gauss_to_pd(parse_gauss(text));
}

// ---------------------------------------------------------------------------
// Parity

std::map<int, ParityClass> crossing_parity(const GaussCode& g) {
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int c = 0; c < static_cast<int>(g.components.size()); ++c)
    for (int p = 0; p < static_cast<int>(g.components[c].size()); ++p) occ[g.components[c][p].id].push_back({c, p});

  std::map<int, ParityClass> out;
  for (const auto& [id, o] : occ) {
    if (o.size() != 2) throw ParseError("crossing " + std::to_string(id) + " does not occur twice");
    if (o[0].first != o[1].first) {
      out[id] = ParityClass::Link;
      continue;
    }
    const auto& comp = g.components[o[0].first];
    int lo = std::min(o[0].second, o[1].second), hi = std::max(o[0].second, o[1].second);
    int between = 0;
    for (int p = lo + 1; p < hi; ++p) {
      const auto& other = occ[comp[p].id];
      if (other[0].first == other[1].first) ++between;
    }
    out[id] = between % 2 == 0 ? ParityClass::Even : ParityClass::Odd;
  }
  return out;
}

std::vector<ParityClass> crossing_parity(const PlanarDiagram& d) {
  auto by_id = crossing_parity(pd_to_gauss(d));
  std::vector<ParityClass> out(d.crossing_count());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = by_id.at(static_cast<int>(c) + 1);
  return out;
}

std::vector<ParityClass> crossing_parity_from_labels(const PlanarDiagram& d) {
  std::vector<ParityClass> out;
  for (const Crossing& c : d.crossings())
    out.push_back((c.i() - c.j()) % 2 != 0 ? ParityClass::Odd : ParityClass::Even);
  return out;
}

PlanarDiagram filtration_step(const PlanarDiagram& d) {
  GaussCode g = pd_to_gauss(d);
  auto parity = crossing_parity(g);
  GaussCode kept;
  for (const auto& comp : g.components) {
    std::vector<GaussEntry> c;
    for (const GaussEntry& e : comp)
      if (parity.at(e.id) == ParityClass::Even) c.push_back(e);
    kept.components.push_back(std::move(c));
  }
  return gauss_to_pd(kept);
}

std::vector<PlanarDiagram> filtration(const PlanarDiagram& d) {
  std::vector<PlanarDiagram> levels{d};
  while (true) {
    PlanarDiagram next = filtration_step(levels.back());
    if (next.crossing_count() == levels.back().crossing_count()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

// ---------------------------------------------------------------------------
// Carrier surface

int carrier_genus(const PlanarDiagram& d) {
  const int n = static_cast<int>(d.crossing_count());
  if (n == 0) return 0;
  // Half-edge h = 4*c + slot; slots are listed counterclockwise.
  auto rot = [](int h) { return 4 * (h / 4) + (h % 4 + 1) % 4; };
  std::vector<int> alpha(4 * n, -1);
  std::vector<int> first_use(d.arc_count() + 1, -1);
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      int a = d.crossings()[c].slots[s];
      int h = 4 * c + s;
      if (first_use[a] < 0) {
        first_use[a] = h;
      } else {
        alpha[h] = first_use[a];
        alpha[first_use[a]] = h;
      }
    }

  // connected pieces of the 4-valent graph
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int h = 0; h < 4 * n; ++h) parent[find(h / 4)] = find(alpha[h] / 4);

  std::map<int, int> vertices, faces;
  for (int c = 0; c < n; ++c) ++vertices[find(c)];
  std::vector<bool> seen(4 * n, false);
  for (int h = 0; h < 4 * n; ++h) {
    if (seen[h]) continue;
    ++faces[find(h / 4)];
    for (int cur = h; !seen[cur]; cur = rot(alpha[cur])) seen[cur] = true;
  }
  int genus = 0;
  for (const auto& [root, v] : vertices) {
    const int euler = v - 2 * v + faces[root];
    genus += (2 - euler) / 2;
  }
  return genus;
}

// ---------------------------------------------------------------------------
// Reidemeister insertions

namespace {

struct ArcPosition {
  int component = 0;
  int index = 0;  // the entry this arc enters
};

ArcPosition locate_arc(const PlanarDiagram& d, int arc) {
  if (arc < 1 || arc > d.arc_count()) throw std::invalid_argument("invalid arc reference " + std::to_string(arc));
  int c = d.component_of(arc);
  return {c, arc - d.components()[c].first};
}

std::vector<GaussEntry> kink_entries(int id, Sign sign, bool over_first) {
  GaussEntry a{over_first ? Pass::Over : Pass::Under, id, sign};
  GaussEntry b{over_first ? Pass::Under : Pass::Over, id, sign};
  return {a, b};
}

}  // namespace

PlanarDiagram insert_r1(const PlanarDiagram& d, int arc, Sign sign, bool over_first) {
  ArcPosition at = locate_arc(d, arc);
  GaussCode g = pd_to_gauss(d);
  auto entries = kink_entries(static_cast<int>(d.crossing_count()) + 1, sign, over_first);
  auto& comp = g.components[at.component];
  comp.insert(comp.begin() + at.index, entries.begin(), entries.end());
  return gauss_to_pd(g);
}

PlanarDiagram insert_r1_on_free_loop(const PlanarDiagram& d, Sign sign, bool over_first) {
  if (d.free_loops() == 0) throw std::invalid_argument("diagram has no free loop");
  GaussCode g = pd_to_gauss(d);
  auto empty = std::find_if(g.components.begin(), g.components.end(), [](const auto& c) { return c.empty(); });
  *empty = kink_entries(static_cast<int>(d.crossing_count()) + 1, sign, over_first);
  return gauss_to_pd(g);
}

PlanarDiagram insert_r2(const PlanarDiagram& d, int arc_a, int arc_b, const R2Options& opts) {
  ArcPosition pa = locate_arc(d, arc_a);
  ArcPosition pb = locate_arc(d, arc_b);
  GaussCode g = pd_to_gauss(d);
  const int x = static_cast<int>(d.crossing_count()) + 1;
  const int y = x + 1;
  const Pass pass_a = opts.a_over ? Pass::Over : Pass::Under;
  const Pass pass_b = opts.a_over ? Pass::Under : Pass::Over;
  const Sign sx = opts.first_sign, sy = opposite(opts.first_sign);

  std::vector<GaussEntry> strand_a{{pass_a, x, sx}, {pass_a, y, sy}};
  std::vector<GaussEntry> strand_b = opts.parallel ? std::vector<GaussEntry>{{pass_b, x, sx}, {pass_b, y, sy}}
                                                   : std::vector<GaussEntry>{{pass_b, y, sy}, {pass_b, x, sx}};
  if (arc_a == arc_b) {
    strand_a.insert(strand_a.end(), strand_b.begin(), strand_b.end());
    auto& comp = g.components[pa.component];
    comp.insert(comp.begin() + pa.index, strand_a.begin(), strand_a.end());
    return gauss_to_pd(g);
  }
  // Insert at the later position first so earlier indices stay valid.
  auto insert = [&](const ArcPosition& p, const std::vector<GaussEntry>& e) {
    auto& comp = g.components[p.component];
    comp.insert(comp.begin() + p.index, e.begin(), e.end());
  };
  bool a_later = pa.component == pb.component ? pa.index > pb.index : true;
  if (a_later) {
    insert(pa, strand_a);
    insert(pb, strand_b);
  } else {
    insert(pb, strand_b);
    insert(pa, strand_a);
  }
  return gauss_to_pd(g);
}

}  // namespace vk
