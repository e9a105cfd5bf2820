#include "support.hpp"

#include <doctest.h>

using namespace vk;

TEST_CASE("polynomial text round trip") {
  for (const char* s : {"q + q^-1", "-A^2 - A^-2", "vg(1,-2) K[1] q^3 t^-1 + 2 K[1] q", "3 D{1,2|1+,2+} A^-4 - 1",
                        "K[1]^2 K[3] A^6 - K[2]"}) {
    Polynomial p = parse_poly(s);
    CHECK(parse_poly(canonical_text(p)) == p);
  }
  CHECK(canonical_text(parse_poly("1/q + q")) == "q + q^-1");
  CHECK(canonical_text(Polynomial()) == "0");
}

TEST_CASE("arithmetic") {
  const Polynomial d = Polynomial::loop_value();
  CHECK(d * d == parse_poly("A^4 + 2 + A^-4"));
  CHECK(d.pow(3) == d * d * d);
  CHECK((d - d).is_zero());
  CHECK(parse_poly("(A + 1)^2") == parse_poly("A^2 + 2A + 1"));
  CHECK(parse_poly("K1 K2") == parse_poly("K[2] K[1]"));
  CHECK(parse_poly("vg(1,1) vg(1,-1)") == Polynomial::constant(1));
  // K and D are not invertible
  CHECK_THROWS_AS(parse_poly("1/K1"), PolyParseError);
}

TEST_CASE("contexts do not mix") {
  Polynomial a = parse_poly("q", Coefficients::Dimension);
  Polynomial b = parse_poly("q");
  CHECK_THROWS_AS(a + b, ContextError);
  CHECK_THROWS_AS(parse_poly("q - 1", Coefficients::Dimension), PolyParseError);
  CHECK_THROWS_AS(parse_poly("A q", Coefficients::Dimension), PolyParseError);
  CHECK_THROWS_AS(-a, ContextError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_poly("q + + q");
    FAIL("no throw");
  } catch (const PolyParseError& e) {
    CHECK(e.position() >= 0);
  }
  CHECK_THROWS_AS(parse_poly("q^"), PolyParseError);
  CHECK_THROWS_AS(parse_poly("(q"), PolyParseError);
  CHECK_THROWS_AS(parse_poly("D{1,2"), PolyParseError);
}

TEST_CASE("specializations") {
  Polynomial kh = parse_poly(vkt::kKh21, Coefficients::Dimension);
  CHECK(specialize_t_minus_one(kh) == parse_poly("q^6 + q^4 - q^4 - q^2 + q^3 + q"));
  CHECK(drop_vg(parse_poly("vg(1,2) K1 q")) == parse_poly("K1 q"));
  CHECK(drop_arrow(parse_poly("K1 K2 A + A")) == parse_poly("2 A"));
  CHECK(drop_graphical(parse_poly("D{1,2|1+,2+} A")) == parse_poly("A"));
  CHECK(mirror(parse_poly("vg(1,2) q t^-1 A^3")) == parse_poly("vg(1,-2) q^-1 t A^-3"));
  CHECK(equal_up_to_mirror(parse_poly("A^2 + A^6"), parse_poly("A^-2 + A^-6")));
  // unknot: -A^2 - A^-2 -> q + q^-1
  CHECK(bracket_to_jones(Polynomial::loop_value()) == parse_poly("q + q^-1"));
  CHECK_THROWS(bracket_to_jones(Polynomial::A(1)));
}

TEST_CASE("graphical aliases resolve through a callback") {
  auto p = parse_poly("D2[1] A + D_{4}[2]", Coefficients::Integer, [](const std::string& a) { return "id:" + a; });
  std::set<std::string> ids;
  for (const auto& [m, c] : p.terms())
    for (const auto& g : m.graphical) ids.insert(g);
  CHECK(ids == std::set<std::string>{"id:D2[1]", "id:D4[2]"});
  CHECK(rename_graphical(parse_poly("D{x} + D{y}"), [](const std::string&) { return "z"; }) == parse_poly("2 D{z}"));
}

TEST_CASE("print order: descending t, q, A") {
  CHECK(canonical_text(parse_poly("1 + t + q t", Coefficients::Dimension)) == "q t + t + 1");
  CHECK(canonical_text(parse_poly("A^-4 + A^4 + 1")) == "A^4 + 1 + A^-4");
}
