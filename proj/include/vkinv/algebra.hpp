#pragma once

// Sparse graded polynomials shared by every invariant. A monomial is a
// Laurent monomial in t, q, A times symbolic factors: arrow variables K_n,
// vector-grading tags vg(k,n) and graphical coefficients D{...}.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vk {

using Integer = boost::multiprecision::cpp_int;

// Integer: signed coefficients (skein polynomials, Euler characteristics).
// Dimension: Poincare polynomials; coefficients are positive dimensions.
enum class Coefficients { Integer, Dimension };

class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& what, long position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  long position() const noexcept { return position_; }

 private:
  long position_;
};

struct Monomial {
  int t = 0;
  int q = 0;
  int a = 0;
  std::vector<int> arrow;                 // sorted multiset of K indices
  std::vector<std::pair<int, int>> vg;    // sorted by k, values never zero
  std::vector<std::string> graphical;     // sorted multiset of canonical ids

  Monomial& operator*=(const Monomial& o);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  bool is_unit() const;
  void add_vg(int k, int n);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Print order: descending t, q, A; then ascending K, vg, D.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Integer, MonomialOrder>;

  explicit Polynomial(Coefficients ctx = Coefficients::Integer) : ctx_(ctx) {}
  Polynomial(const Monomial& m, Integer c, Coefficients ctx = Coefficients::Integer);

  static Polynomial constant(Integer c, Coefficients ctx = Coefficients::Integer);
  static Polynomial A(int e = 1);
  static Polynomial q(int e = 1, Coefficients ctx = Coefficients::Integer);
  static Polynomial t(int e = 1, Coefficients ctx = Coefficients::Integer);
  static Polynomial K(int n, Coefficients ctx = Coefficients::Integer);
  static Polynomial vg(int k, int n, Coefficients ctx = Coefficients::Integer);
  static Polynomial D(std::string id, Coefficients ctx = Coefficients::Integer);
  /// The loop value d = -A^2 - A^-2.
  static Polynomial loop_value();

  Coefficients context() const { return ctx_; }
  Polynomial with_context(Coefficients ctx) const;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Integer& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Integer& c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Integer& c) { return a *= c; }
  friend Polynomial operator*(const Integer& c, Polynomial a) { return a *= c; }

  Polynomial pow(unsigned n) const;

  /// Multiplies every monomial by m (no coefficient change).
  Polynomial shifted(const Monomial& m) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Polynomial& o) const;
  Coefficients ctx_;
  Terms terms_;
};

// ---- specializations ------------------------------------------------------

/// t -> -1. The result always has integer coefficients.
Polynomial specialize_t_minus_one(const Polynomial& p);
Polynomial drop_vg(const Polynomial& p);
Polynomial drop_arrow(const Polynomial& p);
Polynomial drop_graphical(const Polynomial& p);
/// Replaces A^n by sign(n) * q^{qexp(n)} for the map returned by `f`.
Polynomial substitute_A(const Polynomial& p, const std::function<std::pair<int, int>(int)>& f);
/// Jones convention: A^{2m} -> (-q)^{-m}. Throws on odd A powers.
Polynomial bracket_to_jones(const Polynomial& p);
/// A -> A^-1, q -> q^-1, t -> t^-1, vg(k,n) -> vg(k,-n).
Polynomial mirror(const Polynomial& p);
bool equal_up_to_mirror(const Polynomial& a, const Polynomial& b);

/// Maps graphical ids (the full id string) through `f`.
Polynomial rename_graphical(const Polynomial& p, const std::function<std::string(const std::string&)>& f);

// ---- text -----------------------------------------------------------------

std::string canonical_text(const Polynomial& p);
std::string monomial_text(const Monomial& m);

/// Optional resolver for D aliases such as "D2[1]": returns the id to store.
using AliasResolver = std::function<std::string(const std::string& alias)>;

/// Parses sums, products (juxtaposition or '*'), division by monomials,
/// parentheses and nonnegative powers of subexpressions.
Polynomial parse_poly(std::string_view text, Coefficients ctx = Coefficients::Integer,
                      const AliasResolver& aliases = {});

std::string to_string(const Integer& c);

}  // namespace vk
