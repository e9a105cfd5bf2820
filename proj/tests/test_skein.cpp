#include "support.hpp"

#include <doctest.h>

using namespace vk;

namespace {

// D{id} -> d^(number of curves): the nodes become virtual crossings
Polynomial forget_nodes(const Polynomial& p) {
  Polynomial out;
  const Polynomial d = Polynomial::loop_value();
  for (const auto& [m, c] : p.terms()) {
    Monomial k = m;
    k.graphical.clear();
    Polynomial term(k, c);
    for (const auto& id : m.graphical) term *= d.pow(static_cast<unsigned>(parse_flat_id(id).curves.size()));
    out += term;
  }
  return out;
}

Polynomial k_to_d(const Polynomial& p) {
  Polynomial out;
  const Polynomial d = Polynomial::loop_value();
  for (const auto& [m, c] : p.terms()) {
    Monomial k = m;
    k.arrow.clear();
    out += Polynomial(k, c) * d.pow(static_cast<unsigned>(m.arrow.size()));
  }
  return out;
}

bool classical(const PlanarDiagram& d) {
  for (ParityClass p : crossing_parity(d))
    if (p != ParityClass::Even) return false;
  return true;
}

}  // namespace

TEST_CASE("unknot and kink") {
  const Polynomial d = Polynomial::loop_value();
  CHECK(normalized_bracket(vkt::fixture("unknot")) == d);
  CHECK(normalized_bracket(vkt::fixture("kink")) == d);
  CHECK(normalized_arrow(vkt::fixture("kink")) == d);
  CHECK(jones(vkt::fixture("unknot")) == parse_poly("q + q^-1"));
  CHECK(bracket(parse_diagram("PD[L[2]]")) == d * d);
}

TEST_CASE("2.1 bracket up to mirror") {
  CHECK(equal_up_to_mirror(normalized_bracket(vkt::fixture("2.1")), parse_poly(vkt::kBracket21)));
}

TEST_CASE("arrow polynomial of 3.1") {
  Polynomial a = normalized_arrow(vkt::fixture("3.1"));
  CHECK(a == parse_poly("-K1^2 A^-2 - K2 A^-4"));
  CHECK(a == vkt::oracle_arrow(vkt::fixture("3.1")));
}

TEST_CASE("serial and parallel engines agree") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 30; ++k) {
    PlanarDiagram d = vkt::random_diagram(rng, 1 + k % 7, 1 + k % 4 / 3);
    CHECK(bracket(d, Engine::Serial) == bracket(d, Engine::Parallel));
    CHECK(arrow(d, Engine::Serial) == arrow(d, Engine::Parallel));
    CHECK(parity_bracket(d, Engine::Serial) == parity_bracket(d, Engine::Parallel));
    CHECK(parity_arrow(d, Engine::Serial) == parity_arrow(d, Engine::Parallel));
  }
}

TEST_CASE("state sums match the independent tracer") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 60; ++k) {
    PlanarDiagram d = vkt::random_diagram(rng, 1 + k % 6, 1 + k % 4 / 3);
    CHECK(normalized_arrow(d) == vkt::oracle_arrow(d));
    CHECK(normalized_bracket(d) == vkt::oracle_arrow(d, false));
  }
}

TEST_CASE("arrow with K_p -> d is the bracket") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 40; ++k) {
    PlanarDiagram d = vkt::random_diagram(rng, 1 + k % 6);
    CHECK(k_to_d(arrow(d)) == bracket(d));
  }
}

TEST_CASE("forgetting the nodes gives the bracket of one filtration step") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 40; ++k) {
    PlanarDiagram d = vkt::random_diagram(rng, 1 + k % 6, 1 + k % 3 / 2);
    CHECK(forget_nodes(parity_bracket(d)) == writhe_factor(d.writhe()) * bracket(filtration_step(d)));
  }
}

TEST_CASE("parity variants coincide with plain ones on classical diagrams") {
  std::mt19937_64 rng(47);
  int seen = 0;
  for (int k = 0; k < 200 && seen < 25; ++k) {
    PlanarDiagram d = filtration(vkt::random_diagram(rng, 2 + k % 5)).back();
    REQUIRE(classical(d));
    CHECK(parity_bracket(d) == normalized_bracket(d));
    CHECK(parity_arrow(d) == normalized_arrow(d));
    ++seen;
  }
}

TEST_CASE("parity bracket of 3.1 keeps a two-curve coefficient") {
  Polynomial p = parity_bracket(vkt::fixture("3.1"));
  bool found = false;
  for (const auto& [m, c] : p.terms())
    for (const auto& id : m.graphical) found |= id == "1,2|1+,2+";
  CHECK(found);
}

TEST_CASE("collapse view only touches single-circle coefficients") {
  Polynomial p = parse_poly("D{1,2,1+:T,2+:H} A^6 + D{1,2|1+:H,2-:T} A^8 + D{1,2|1+,2+}");
  CHECK(collapse_cusped_coefficients(p) == parse_poly("K1 A^6 + D{1,2|1+:H,2-:T} A^8 + D{1,2|1+,2+}"));
}
