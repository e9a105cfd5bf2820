#include "vkinv/state.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace vk {

CuspReduction reduce_cusp_word(std::string_view w) {
  std::string s = reduce_cusp_word_linear(w);
  std::size_t lo = 0, hi = s.size();
  while (hi - lo >= 2 && s[lo] == s[hi - 1]) {
    ++lo;
    --hi;
  }
  const std::size_t len = hi - lo;
  if (len % 2 != 0) throw std::logic_error("odd cusp count on a closed loop");
  CuspReduction r;
  r.p = static_cast<int>(len / 2);
  if (r.p > 0) r.order = arrow_order(r.p);
  return r;
}

std::string reduce_cusp_word_linear(std::string_view w) {
  std::string s;
  s.reserve(w.size());
  for (char c : w) {
    if (!s.empty() && s.back() == c)
      s.pop_back();
    else
      s.push_back(c);
  }
  return s;
}

int arrow_order(int p) {
  if (p <= 0) throw std::invalid_argument("arrow order needs p > 0");
  return std::countr_zero(static_cast<unsigned>(p)) + 1;
}

std::string reverse_cusp_word(std::string_view w) {
  std::string s(w.rbegin(), w.rend());
  for (char& c : s) c = c == 'T' ? 'H' : 'T';
  return s;
}

int StateLoop::min_arc() const { return arcs == 0 ? 0 : std::countr_zero(arcs) + 1; }

Smoother::Smoother(const PlanarDiagram& d) : d_(&d), n_(static_cast<int>(d.crossing_count())) {
  if (n_ > kMaxTracedCrossings) throw std::length_error("too many crossings to trace");
  end_crossing_.assign(4 * n_, -1);
  end_slot_.assign(4 * n_, -1);
  ends_.resize(n_);
  for (int c = 0; c < n_; ++c) {
    const Crossing& x = d.crossings()[c];
    ends_[c][kSlotI] = head_end(x.i());
    ends_[c][kSlotL] = head_end(x.l());
    ends_[c][kSlotJ] = tail_end(x.j());
    ends_[c][kSlotK] = tail_end(x.k());
    for (int s = 0; s < 4; ++s) {
      end_crossing_[ends_[c][s]] = c;
      end_slot_[ends_[c][s]] = s;
    }
  }
}

Smoother::Link Smoother::link(int end, std::uint64_t choice) const {
  const int c = end_crossing_[end];
  const int s = end_slot_[end];
  const auto& e = ends_[c];
  const bool one = (choice >> c) & 1u;
  const bool plain = (d_->crossings()[c].sign == Sign::Positive) != one;
  if (plain) {
    static constexpr int kPlain[4] = {kSlotJ, kSlotI, kSlotL, kSlotK};
    return {e[kPlain[s]], 0};
  }
  // l -> i and j -> k
  switch (s) {
    case kSlotL: return {e[kSlotI], 'T'};
    case kSlotI: return {e[kSlotL], 'H'};
    case kSlotJ: return {e[kSlotK], 'T'};
    default: return {e[kSlotJ], 'H'};
  }
}

void Smoother::loops(std::uint64_t choice, std::uint64_t nodes, std::vector<StateLoop>& out, bool keep_words) const {
  out.clear();
  std::uint64_t seen_arcs = 0;
  for (int start_arc = 1; start_arc <= 2 * n_; ++start_arc) {
    if ((seen_arcs >> (start_arc - 1)) & 1u) continue;
    StateLoop loop;
    bool touches_node = false;
    std::string word;
    int e = tail_end(start_arc);
    do {
      // walk along the arc from one end to the other
      const int arc = arc_of(e);
      loop.arcs |= std::uint64_t{1} << (arc - 1);
      const int other = e ^ 1;
      const int c = end_crossing_[other];
      if ((nodes >> c) & 1u) {
        touches_node = true;
        e = ends_[c][through(end_slot_[other])];
      } else {
        Link l = link(other, choice);
        if (l.letter) word.push_back(l.letter);
        e = l.partner;
      }
    } while (e != tail_end(start_arc));
    seen_arcs |= loop.arcs;
    if (touches_node) continue;
    CuspReduction r = reduce_cusp_word(word);
    loop.p = r.p;
    loop.order = r.order.value_or(0);
    if (keep_words) loop.cusp_word = std::move(word);
    out.push_back(std::move(loop));
  }
  for (int f = 0; f < d_->free_loops(); ++f) out.push_back(StateLoop{});
}

ResolvedState resolve_state(const PlanarDiagram& d, std::uint64_t choice) {
  Smoother s(d);
  ResolvedState r;
  r.choice = choice;
  s.loops(choice, 0, r.loops);
  return r;
}

}  // namespace vk
