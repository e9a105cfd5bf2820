#include "vkinv/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace vk {

// ---------------------------------------------------------------------------
// Monomial

Monomial& Monomial::operator*=(const Monomial& o) {
  t += o.t;
  q += o.q;
  a += o.a;
  if (!o.arrow.empty()) {
    std::vector<int> merged;
    merged.reserve(arrow.size() + o.arrow.size());
    std::merge(arrow.begin(), arrow.end(), o.arrow.begin(), o.arrow.end(), std::back_inserter(merged));
    arrow = std::move(merged);
  }
  for (const auto& [k, n] : o.vg) add_vg(k, n);
  if (!o.graphical.empty()) {
    std::vector<std::string> merged;
    merged.reserve(graphical.size() + o.graphical.size());
    std::merge(graphical.begin(), graphical.end(), o.graphical.begin(), o.graphical.end(),
               std::back_inserter(merged));
    graphical = std::move(merged);
  }
  return *this;
}

bool Monomial::is_unit() const {
  return t == 0 && q == 0 && a == 0 && arrow.empty() && vg.empty() && graphical.empty();
}

void Monomial::add_vg(int k, int n) {
  if (n == 0) return;
  auto it = std::lower_bound(vg.begin(), vg.end(), std::make_pair(k, std::numeric_limits<int>::min()));
  if (it != vg.end() && it->first == k) {
    it->second += n;
    if (it->second == 0) vg.erase(it);
  } else {
    vg.insert(it, {k, n});
  }
}

bool MonomialOrder::operator()(const Monomial& x, const Monomial& y) const {
  if (x.t != y.t) return x.t > y.t;
  if (x.q != y.q) return x.q > y.q;
  if (x.a != y.a) return x.a > y.a;
  if (x.arrow != y.arrow) return x.arrow < y.arrow;
  if (x.vg != y.vg) return x.vg < y.vg;
  return x.graphical < y.graphical;
}

std::string to_string(const Integer& c) { return c.str(); }

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Monomial& m, Integer c, Coefficients ctx) : ctx_(ctx) { add_term(m, c); }

Polynomial Polynomial::constant(Integer c, Coefficients ctx) { return Polynomial(Monomial{}, std::move(c), ctx); }

Polynomial Polynomial::A(int e) {
  Monomial m;
  m.a = e;
  return Polynomial(m, 1);
}

Polynomial Polynomial::q(int e, Coefficients ctx) {
  Monomial m;
  m.q = e;
  return Polynomial(m, 1, ctx);
}

Polynomial Polynomial::t(int e, Coefficients ctx) {
  Monomial m;
  m.t = e;
  return Polynomial(m, 1, ctx);
}

Polynomial Polynomial::K(int n, Coefficients ctx) {
  if (n <= 0) throw std::invalid_argument("arrow index must be positive");
  Monomial m;
  m.arrow = {n};
  return Polynomial(m, 1, ctx);
}

Polynomial Polynomial::vg(int k, int n, Coefficients ctx) {
  if (k <= 0) throw std::invalid_argument("vg index must be positive");
  Monomial m;
  m.add_vg(k, n);
  return Polynomial(m, 1, ctx);
}

Polynomial Polynomial::D(std::string id, Coefficients ctx) {
  Monomial m;
  m.graphical = {std::move(id)};
  return Polynomial(m, 1, ctx);
}

Polynomial Polynomial::loop_value() { return -(A(2) + A(-2)); }

void Polynomial::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  if (ctx_ == Coefficients::Dimension && m.a != 0)
    throw ContextError("A exponents are not allowed in a Poincare polynomial");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
      return;
    }
  }
  if (ctx_ == Coefficients::Dimension && it->second < 0)
    throw ContextError("negative dimension in a Poincare polynomial");
}

void Polynomial::check(const Polynomial& o) const {
  if (ctx_ != o.ctx_) throw ContextError("mixing integer-coefficient and dimension polynomials");
}

Polynomial Polynomial::with_context(Coefficients ctx) const {
  Polynomial out(ctx);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check(b);
  Polynomial out(a.ctx_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  if (ctx_ == Coefficients::Dimension && c < 0) throw ContextError("negative dimension in a Poincare polynomial");
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  if (ctx_ == Coefficients::Dimension && !is_zero()) throw ContextError("cannot negate a Poincare polynomial");
  Polynomial out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(1, ctx_);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::shifted(const Monomial& s) const {
  Polynomial out(ctx_);
  for (const auto& [m, c] : terms_) out.add_term(m * s, c);
  return out;
}

// ---------------------------------------------------------------------------
// Specializations

namespace {

template <class F>
Polynomial map_monomials(const Polynomial& p, Coefficients ctx, F&& f) {
  Polynomial out(ctx);
  for (const auto& [m, c] : p.terms()) {
    auto [m2, c2] = f(m, c);
    out.add_term(m2, c2);
  }
  return out;
}

}  // namespace

Polynomial specialize_t_minus_one(const Polynomial& p) {
  return map_monomials(p, Coefficients::Integer, [](Monomial m, const Integer& c) {
    Integer v = (m.t % 2 == 0) ? c : Integer(-c);
    m.t = 0;
    return std::make_pair(std::move(m), v);
  });
}

Polynomial drop_vg(const Polynomial& p) {
  return map_monomials(p, p.context(), [](Monomial m, const Integer& c) {
    m.vg.clear();
    return std::make_pair(std::move(m), c);
  });
}

Polynomial drop_arrow(const Polynomial& p) {
  return map_monomials(p, p.context(), [](Monomial m, const Integer& c) {
    m.arrow.clear();
    return std::make_pair(std::move(m), c);
  });
}

Polynomial drop_graphical(const Polynomial& p) {
  return map_monomials(p, p.context(), [](Monomial m, const Integer& c) {
    m.graphical.clear();
    return std::make_pair(std::move(m), c);
  });
}

Polynomial substitute_A(const Polynomial& p, const std::function<std::pair<int, int>(int)>& f) {
  return map_monomials(p, Coefficients::Integer, [&](Monomial m, const Integer& c) {
    auto [sign, qexp] = f(m.a);
    m.a = 0;
    m.q += qexp;
    return std::make_pair(std::move(m), sign < 0 ? Integer(-c) : c);
  });
}

Polynomial bracket_to_jones(const Polynomial& p) {
  return substitute_A(p, [](int a) {
    if (a % 2 != 0) throw std::domain_error("odd power of A in a Jones substitution");
    const int m = a / 2;
    // (-q)^{-m}
    return std::make_pair(m % 2 == 0 ? 1 : -1, -m);
  });
}

Polynomial mirror(const Polynomial& p) {
  return map_monomials(p, p.context(), [](Monomial m, const Integer& c) {
    m.t = -m.t;
    m.q = -m.q;
    m.a = -m.a;
    for (auto& [k, n] : m.vg) n = -n;
    return std::make_pair(std::move(m), c);
  });
}

bool equal_up_to_mirror(const Polynomial& a, const Polynomial& b) { return a == b || a == mirror(b); }

Polynomial rename_graphical(const Polynomial& p, const std::function<std::string(const std::string&)>& f) {
  return map_monomials(p, p.context(), [&](Monomial m, const Integer& c) {
    for (auto& g : m.graphical) g = f(g);
    std::sort(m.graphical.begin(), m.graphical.end());
    return std::make_pair(std::move(m), c);
  });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void power(std::vector<std::string>& out, const std::string& base, int e) {
  if (e == 0) return;
  out.push_back(e == 1 ? base : base + "^" + std::to_string(e));
}

}  // namespace

std::string monomial_text(const Monomial& m) {
  std::vector<std::string> f;
  for (const auto& [k, n] : m.vg) f.push_back("vg(" + std::to_string(k) + "," + std::to_string(n) + ")");
  for (std::size_t i = 0; i < m.arrow.size();) {
    std::size_t j = i;
    while (j < m.arrow.size() && m.arrow[j] == m.arrow[i]) ++j;
    power(f, "K[" + std::to_string(m.arrow[i]) + "]", static_cast<int>(j - i));
    i = j;
  }
  for (std::size_t i = 0; i < m.graphical.size();) {
    std::size_t j = i;
    while (j < m.graphical.size() && m.graphical[j] == m.graphical[i]) ++j;
    power(f, "D{" + m.graphical[i] + "}", static_cast<int>(j - i));
    i = j;
  }
  power(f, "A", m.a);
  power(f, "q", m.q);
  power(f, "t", m.t);
  std::string s;
  for (const auto& x : f) {
    if (!s.empty()) s += ' ';
    s += x;
  }
  return s;
}

std::string canonical_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Integer mag = negative ? Integer(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string body = monomial_text(m);
    if (body.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + " ";
      out += body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const AliasResolver& aliases) : s_(text), aliases_(aliases) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, static_cast<long>(pos_)); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
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

  long integer(bool allow_sign) {
    skip();
    std::size_t start = pos_;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t d = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (d == pos_) {
      pos_ = start;
      fail("expected integer");
    }
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  // `{n}`, `(n)` or bare n
  long bracketed_integer(bool allow_sign) {
    if (accept('{')) {
      long v = integer(allow_sign);
      expect('}');
      return v;
    }
    if (accept('(')) {
      long v = integer(allow_sign);
      expect(')');
      return v;
    }
    return integer(allow_sign);
  }

  Polynomial expr() {
    Polynomial p;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial first = term();
    p += negate ? -first : first;
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        p += term();
      } else if (c == '-') {
        ++pos_;
        p -= term();
      } else {
        break;
      }
    }
    return p;
  }

  bool starts_atom(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'A' || c == 'q' || c == 't' ||
           c == 'K' || c == 'v' || c == 'D' || c == 'd';
  }

  Polynomial term() {
    Polynomial p = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p *= factor();
      } else if (c == '/') {
        ++pos_;
        p *= invert(factor());
      } else if (starts_atom(c)) {
        p *= factor();
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial invert(const Polynomial& p) {
    if (p.size() != 1) fail("division by a non-monomial");
    const auto& [m, c] = *p.terms().begin();
    if (c != 1 && c != -1) fail("division by a non-unit coefficient");
    if (!m.arrow.empty() || !m.graphical.empty()) fail("division by K or D factors");
    Monomial inv;
    inv.t = -m.t;
    inv.q = -m.q;
    inv.a = -m.a;
    for (const auto& [k, n] : m.vg) inv.add_vg(k, -n);
    return Polynomial(inv, c);
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      long e = bracketed_integer(true);
      if (e >= 0) return base.pow(static_cast<unsigned>(e));
      return invert(base).pow(static_cast<unsigned>(-e));
    }
    return base;
  }

  Polynomial atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(Integer(digits()));
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      expect(')');
      return p;
    }
    ++pos_;
    switch (c) {
      case 'A': return Polynomial::A();
      case 'q': return Polynomial::q();
      case 't': return Polynomial::t();
      case 'd': return Polynomial::loop_value();
      case 'K': return Polynomial::K(static_cast<int>(index()));
      case 'v': {
        if (pos_ >= s_.size() || s_[pos_] != 'g') fail("expected 'vg'");
        ++pos_;
        expect('(');
        long k = integer(false);
        expect(',');
        long n = integer(true);
        expect(')');
        if (k <= 0) fail("vg index must be positive");
        return Polynomial::vg(static_cast<int>(k), static_cast<int>(n));
      }
      case 'D': return graphical();
      default: --pos_; fail("unexpected character");
    }
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  // K index forms: [n], _n, _{n}, n
  long index() {
    long n;
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      n = integer(false);
      expect(']');
    } else if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      n = bracketed_integer(false);
    } else {
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected arrow index");
      n = std::stol(digits());
    }
    if (n <= 0) fail("arrow index must be positive");
    return n;
  }

  Polynomial graphical() {
    if (pos_ < s_.size() && s_[pos_] == '{') {
      ++pos_;
      std::size_t start = pos_;
      int depth = 1;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '{') ++depth;
        if (s_[pos_] == '}') --depth;
        ++pos_;
      }
      if (depth != 0) fail("unterminated D{...}");
      return Polynomial::D(std::string(s_.substr(start, pos_ - 1 - start)));
    }
    // alias forms D2[1], D_2[1], D_{2}[1]
    long nodes;
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      nodes = bracketed_integer(false);
    } else {
      nodes = std::stol(digits());
    }
    expect('[');
    long idx = integer(false);
    expect(']');
    std::string alias = "D" + std::to_string(nodes) + "[" + std::to_string(idx) + "]";
    return Polynomial::D(aliases_ ? aliases_(alias) : alias);
  }

  std::string_view s_;
  const AliasResolver& aliases_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, Coefficients ctx, const AliasResolver& aliases) {
  Polynomial p = PolyParser(text, aliases).run();
  try {
    return p.with_context(ctx);
  } catch (const ContextError& e) {
    throw PolyParseError(e.what(), 0);
  }
}

}  // namespace vk
