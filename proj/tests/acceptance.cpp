// Acceptance run: one PASS/FAIL line per criterion, with wall time against
// the stated limit. Exit status is nonzero if any criterion fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <iostream>
#include <sstream>

using namespace vk;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void criterion(int n, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) o.require(false, "over time limit");
  failures += !o.ok;
  std::printf("criterion %2d: %s  %.3f s", n, o.ok ? "PASS" : "FAIL", s);
  if (limit_s > 0) std::printf(" (limit %g s)", limit_s);
  std::printf("%s\n", o.detail.str().c_str());
  std::fflush(stdout);
}

double seconds_of(const std::function<void()>& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Polynomial dim(const std::string& s) { return parse_poly(s, Coefficients::Dimension); }

// Fixtures plus random diagrams: the "suite" of criteria 7 and 8.
std::vector<PlanarDiagram> suite() {
  std::vector<PlanarDiagram> out;
  for (const auto& f : vkt::load_fixtures()) out.push_back(parse_diagram(f.code));
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 120; ++k) out.push_back(vkt::random_diagram(rng, 1 + k % 6, 1 + (k % 7 == 3)));
  return out;
}

// Sum of K exponents in a monomial.
int arrow_weight(const Monomial& m) { return static_cast<int>(m.arrow.size()); }

// Gauss sequences of n chords, labels in order of first appearance.
void sequences(int n, std::vector<int>& cur, std::vector<int>& used, int next, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == 2 * n) {
    if (cur.front() != cur.back()) out.push_back(cur);
    return;
  }
  for (int id = 1; id <= next && id <= n; ++id) {
    if (used[id] >= 2 || (!cur.empty() && cur.back() == id) || (id == next && used[id] != 0)) continue;
    cur.push_back(id);
    ++used[id];
    sequences(n, cur, used, id == next ? next + 1 : next, out);
    --used[id];
    cur.pop_back();
  }
}

std::vector<PlanarDiagram> all_diagrams(int n) {
  std::vector<std::vector<int>> seqs;
  std::vector<int> cur, used(n + 2, 0);
  sequences(n, cur, used, 1, seqs);
  std::vector<PlanarDiagram> out;
  for (const auto& seq : seqs)
    for (unsigned ou = 0; ou < (1u << n); ++ou)
      for (unsigned sg = 0; sg < (1u << n); ++sg) {
        GaussCode g;
        g.components.emplace_back();
        std::vector<int> seen(n + 1, 0);
        for (int id : seq) {
          const bool first = seen[id]++ == 0;
          const bool over = (((ou >> (id - 1)) & 1u) == 0) == first;
          g.components[0].push_back(
              {over ? Pass::Over : Pass::Under, id, ((sg >> (id - 1)) & 1u) ? Sign::Negative : Sign::Positive});
        }
        try {
          out.push_back(gauss_to_pd(g));
        } catch (const std::exception&) {
        }
      }
  return out;
}

bool has_node_count(const Polynomial& p, int nodes) {
  for (const auto& [m, c] : p.terms())
    for (const auto& id : m.graphical)
      if (node_count(id) == nodes) return true;
  return false;
}

// Every graphical factor has the expected node count and a registry alias.
bool factors_known(const Polynomial& p, const CoefficientRegistry& reg, int nodes) {
  for (const auto& [m, c] : p.terms())
    for (const auto& id : m.graphical) {
      const RegistryEntry* e = reg.by_id(id);
      if (node_count(id) != nodes || !e || e->alias.empty()) return false;
    }
  return true;
}

}  // namespace

int main() {
  const CoefficientRegistry reg = vkt::registry();
  const Polynomial d = Polynomial::loop_value();
  const Polynomial unknot_kh = dim("q + q^-1");

  criterion(1, 1.0, [&](Outcome& o) {
    o.require(kh(vkt::fixture("3.1")) == unknot_kh, "Kh(3.1) != q + q^-1");
  });

  criterion(2, 1.0, [&](Outcome& o) {
    const Polynomial want = dim(vkt::kAkh31);
    o.require(akh(vkt::fixture("3.1-fig")) == want, "AKh(3.1) differs from the five-term value");
    o.require(akh(vkt::fixture("3.1")) == mirror(want), "AKh of the appendix PD is not its mirror");
  });

  criterion(3, 1.0, [&](Outcome& o) {
    const PlanarDiagram k = vkt::fixture("2.1");
    o.require(equal_up_to_mirror(normalized_bracket(k), parse_poly(vkt::kBracket21)), "bracket(2.1)");
    const Polynomial h = kh(k);
    o.require(equal_up_to_mirror(h, dim(vkt::kKh21)), "Kh(2.1)");
    o.require(thickness(h) == 4, "thickness(Kh(2.1)) != 4");
  });

  criterion(4, 30.0, [&](Outcome& o) {
    const auto rows = vkt::load_fixtures("table1.tsv");
    o.require(rows.size() == 8, "Table 1 has " + std::to_string(rows.size()) + " rows");
    const Polynomial top = dim(vkt::kParityAkhTop), bottom = dim(vkt::kParityAkhBottom);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const PlanarDiagram k = parse_diagram(rows[r].code);
      const std::string& n = rows[r].name;
      o.require(normalized_bracket(k) == d, n + " bracket");
      o.require(normalized_arrow(k) == d, n + " arrow");
      o.require(kh(k) == unknot_kh, n + " kh");
      o.require(akh(k) == unknot_kh, n + " akh");
      o.require(equal_up_to_mirror(parity_akh(k), r < 4 ? top : bottom), n + " parity akh");
    }
  });

  criterion(5, 0, [&](Outcome& o) {
    auto timed = [&](const std::string& what, const std::function<bool()>& f) {
      bool ok = false;
      const double s = seconds_of([&] { ok = f(); });
      o.require(ok, what);
      o.require(s < 5.0, what + " over 5 s");
      o.detail << " " << what << "=" << (ok ? "ok" : "bad");
    };
    timed("5.129/5.267", [&] {
      const PlanarDiagram a = vkt::fixture("5.129"), b = vkt::fixture("5.267");
      const Polynomial ka = kh(a), kb = kh(b);
      const Polynomial aa = akh(a), ab = akh(b);
      return ka == kb && ka == dim(vkt::kKh5129) && ab == dim(vkt::kAkh5267) &&
             aa - ab == dim(vkt::kAkh5129Extra);
    });
    timed("4.9", [&] { return parity_kh(vkt::fixture("4.9")) == dim(vkt::kParityKh49); });
    timed("4.72", [&] {
      const Polynomial p = parity_bracket(vkt::fixture("4.72"));
      return equal_up_to_mirror(p, parse_poly(vkt::kParityBracket472, Coefficients::Integer, reg.resolver())) &&
             factors_known(p, reg, 2);
    });
    timed("4.70", [&] {
      const Polynomial p = collapse_cusped_coefficients(parity_arrow(vkt::fixture("4.70")));
      return equal_up_to_mirror(p, parse_poly(vkt::kParityArrow470, Coefficients::Integer, reg.resolver())) &&
             factors_known(p, reg, 2);
    });
    timed("5.5", [&] {
      const PlanarDiagram k = vkt::fixture("5.5");
      const Polynomial p = collapse_cusped_coefficients(parity_arrow(k));
      return equal_up_to_mirror(normalized_arrow(k), parse_poly(vkt::kArrow55)) &&
             equal_up_to_mirror(p, parse_poly(vkt::kParityArrow55, Coefficients::Integer, reg.resolver())) &&
             factors_known(p, reg, 4);
    });
  });

  criterion(6, 0, [&](Outcome& o) {
    std::vector<PlanarDiagram> ds;
    for (const auto& f : vkt::load_fixtures()) ds.push_back(parse_diagram(f.code));
    std::mt19937_64 rng(606);
    for (int k = 0; k < 200; ++k) ds.push_back(vkt::random_diagram(rng, 1 + k % 5, 1 + (k % 9 == 4)));
    int violations = 0, complexes = 0;
    CubeOptions opts;
    opts.check_d2 = false;
    for (const auto& k : ds)
      for (Flavor f : vkt::kFlavors) {
        ++complexes;
        try {
          check_d_squared(build_cube(k, f, opts));
        } catch (const DifferentialError&) {
          ++violations;
        }
      }
    o.detail << " " << complexes << " complexes, " << violations << " violations";
    o.require(violations == 0, "d^2 != 0");
  });

  const std::vector<PlanarDiagram> all = suite();

  criterion(7, 300.0, [&](Outcome& o) {
    int checked = 0, mismatches = 0;
    for (const auto& k : all) {
      if (k.crossing_count() > 6) continue;
      for (Flavor f : vkt::kFlavors) {
        const ChainComplex c = build_cube(k, f);
        ++checked;
        mismatches += survivor_dimensions(c, reduce_complex(c)) != rank_homology(c);
      }
    }
    o.detail << " " << checked << " complexes, " << mismatches << " mismatches";
    o.require(mismatches == 0, "reduction disagrees with ranks");
  });

  criterion(8, 0, [&](Outcome& o) {
    int bad = 0;
    for (const auto& k : all) {
      bad += vkt::euler(kh(k)) != vkt::oracle_q_bracket(k, false);
      bad += vkt::euler(akh(k)) != vkt::oracle_q_bracket(k, true);
    }
    o.detail << " " << all.size() << " diagrams, " << bad << " mismatches";
    o.require(bad == 0, "Euler characteristic");
  });

  criterion(9, 0, [&](Outcome& o) {
    // Each value is its canonical text, or "not a complex" when the
    // projected differential fails d^2 = 0 on the perturbed diagram.
    using Eval = std::function<std::string(const PlanarDiagram&)>;
    auto poly = [](Polynomial (*f)(const PlanarDiagram&)) {
      return Eval([f](const PlanarDiagram& k) { return canonical_text(f(k)); });
    };
    auto hom = [](Polynomial (*f)(const PlanarDiagram&, const CubeOptions&), int which) {
      return Eval([f, which](const PlanarDiagram& k) {
        const Polynomial p = f(k, {});
        return which == 0 ? canonical_text(p) : std::to_string(which == 1 ? thickness(p) : width(p));
      });
    };
    const std::vector<std::pair<std::string, Eval>> evals = {
        {"bracket", poly([](const PlanarDiagram& k) { return normalized_bracket(k); })},
        {"jones", poly([](const PlanarDiagram& k) { return jones(k); })},
        {"arrow", poly([](const PlanarDiagram& k) { return normalized_arrow(k); })},
        {"parity-bracket", poly([](const PlanarDiagram& k) { return parity_bracket(k); })},
        {"parity-arrow", poly([](const PlanarDiagram& k) { return parity_arrow(k); })},
        {"kh", hom(kh, 0)},
        {"kh-thickness", hom(kh, 1)},
        {"kh-width", hom(kh, 2)},
        {"akh", hom(akh, 0)},
        {"akh-thickness", hom(akh, 1)},
        {"akh-width", hom(akh, 2)},
        {"akh-simple", hom(akh_simple, 0)},
        {"parity-kh", poly([](const PlanarDiagram& k) { return parity_kh(k); })},
        {"parity-akh", poly([](const PlanarDiagram& k) { return parity_akh(k); })},
    };
    auto run = [](const Eval& e, const PlanarDiagram& k) {
      try {
        return e(k);
      } catch (const DifferentialError&) {
        return std::string("not a complex");
      }
    };
    std::mt19937_64 rng(909);
    int moves = 0;
    std::map<std::string, int> changed, undefined;
    for (const auto& f : vkt::load_fixtures()) {
      const PlanarDiagram k = parse_diagram(f.code);
      std::vector<std::string> base;
      for (const auto& [name, e] : evals) base.push_back(run(e, k));
      for (int m = 0; m < 10; ++m) {
        const PlanarDiagram e = vkt::random_move(rng, k);
        ++moves;
        for (std::size_t i = 0; i < evals.size(); ++i) {
          const std::string v = run(evals[i].second, e);
          if (v == "not a complex") ++undefined[evals[i].first];
          else if (v != base[i]) ++changed[evals[i].first];
        }
      }
    }
    o.detail << " " << moves << " perturbations;";
    for (const auto& [name, n] : undefined) o.detail << " " << name << " not a complex on " << n << ";";
    for (const auto& [name, n] : changed) o.detail << " " << name << " changed on " << n << ";";
    o.require(undefined.empty() && changed.empty(), "some perturbation changed or broke an invariant");
  });

  criterion(10, 0, [&](Outcome& o) {
    const PlanarDiagram k31 = vkt::fixture("3.1");
    o.require(genus_bound_from_arrow(normalized_arrow(k31)) == 1, "arrow bound of 3.1");
    o.require(carrier_genus(k31) == 2, "carrier genus of 3.1");
    o.require(genus_bound_from_parity(parity_arrow(vkt::fixture("5.5")), reg).bound >= 2, "parity bound of 5.5");

    // width/thickness against the arrow polynomial's K weights
    int theorem_bad = 0;
    for (const auto& k : all) {
      int weight = 0;
      const Polynomial arrow = normalized_arrow(k);
      for (const auto& [m, c] : arrow.terms()) weight = std::max(weight, arrow_weight(m));
      const Polynomial a = akh(k);
      theorem_bad += width(a) < 2 * weight || thickness(a) < weight;
    }
    o.detail << " width/thickness violations " << theorem_bad << ";";
    o.require(theorem_bad == 0, "width/thickness theorems");

    // The appendix list names ten 4-crossing knots without codes. Report
    // what the 4-crossing diagrams with 4-node coefficients give instead.
    int carriers = 0, bound2 = 0;
    std::map<std::string, int> by_alias;
    for (const auto& k : all_diagrams(4)) {
      const Polynomial pb = parity_bracket(k), pa = parity_arrow(k);
      if (!has_node_count(pb, 4) && !has_node_count(pa, 4)) continue;
      ++carriers;
      bound2 += std::max(genus_bound_from_parity(pb, reg).bound, genus_bound_from_parity(pa, reg).bound) >= 2;
      std::set<std::string> seen;
      for (const Polynomial* p : {&pb, &pa})
        for (const auto& [m, c] : p->terms())
          for (const auto& id : m.graphical)
            if (node_count(id) == 4) {
              const RegistryEntry* e = reg.by_id(id);
              seen.insert(e ? e->alias : "unregistered");
            }
      for (const auto& a : seen) ++by_alias[a];
    }
    o.detail << " 4-crossing diagrams with 4-node coefficients " << carriers << ", parity bound >= 2 for " << bound2
             << " (";
    for (const auto& [a, n] : by_alias) o.detail << " " << a << ":" << n;
    o.detail << " );";
    o.require(false, "appendix list {4.1, ..., 4.77} has no codes; stand-ins cannot be identified");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
