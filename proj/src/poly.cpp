#include "golodlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

namespace golodlab {

namespace {

constexpr std::int64_t kExponentLimit = std::numeric_limits<Exponent>::max();

Exponent checked_exponent(std::int64_t e) {
  if (e > kExponentLimit || e < 0) throw CapError("monomial exponent overflow");
  return static_cast<Exponent>(e);
}

}  // namespace

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = checked_exponent(static_cast<std::int64_t>(a[i]) + b[i]);
  }
  return out;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) throw InternalError("monomial division with non-divisor");
    out[i] = b[i] - a[i];
  }
  return out;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

std::int64_t weighted_degree(const Monomial& m, const std::vector<int>& weights) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<std::int64_t>(m[i]) * weights[i];
  return d;
}

int grevlex_compare(const Monomial& a, const Monomial& b, const std::vector<int>& weights) {
  std::int64_t da = weighted_degree(a, weights);
  std::int64_t db = weighted_degree(b, weights);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

namespace {

void collect_monomials(const std::vector<int>& weights, std::size_t i, std::int64_t rest, Monomial& cur,
                       std::vector<Monomial>& out) {
  if (i + 1 == weights.size()) {
    if (rest % weights[i] == 0) {
      cur[i] = checked_exponent(rest / weights[i]);
      out.push_back(cur);
    }
    return;
  }
  for (std::int64_t e = 0; e * weights[i] <= rest; ++e) {
    cur[i] = checked_exponent(e);
    collect_monomials(weights, i + 1, rest - e * weights[i], cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, std::int64_t d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (weights.empty()) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(weights.size(), 0);
  collect_monomials(weights, 0, d, cur, out);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b, weights) > 0; });
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// ---------------------------------------------------------------- PolyRing

template <class F>
PolyRing<F>::PolyRing(F field, std::vector<std::string> names, std::vector<int> weights)
    : field_(std::move(field)), names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() != weights_.size()) {
    throw InputError("ring has " + std::to_string(names_.size()) + " variables but " +
                     std::to_string(weights_.size()) + " weights");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i])) throw InputError("bad variable name '" + names_[i] + "'");
    if (!seen.insert(names_[i]).second) throw InputError("duplicate variable name '" + names_[i] + "'");
    if (weights_[i] <= 0) throw InputError("variable weights must be positive");
  }
}

template <class F>
std::optional<std::size_t> PolyRing<F>::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

template <class F>
int PolyRing<F>::max_weight() const {
  int w = 0;
  for (int x : weights_) w = std::max(w, x);
  return w;
}

template <class F>
std::string PolyRing<F>::monomial_to_string(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += names_[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- Poly

template <class F>
Poly<F> Poly<F>::constant(RingPtr<F> ring, const Elem& c) {
  Poly p(ring);
  if (!ring->field().is_zero(c)) p.terms_.emplace_back(Monomial(ring->nvars(), 0), c);
  return p;
}

template <class F>
Poly<F> Poly<F>::variable(RingPtr<F> ring, std::size_t i) {
  Monomial m(ring->nvars(), 0);
  m.at(i) = 1;
  return monomial(ring, std::move(m), ring->field().one());
}

template <class F>
Poly<F> Poly<F>::monomial(RingPtr<F> ring, Monomial m, const Elem& c) {
  if (m.size() != ring->nvars()) throw InternalError("monomial length differs from variable count");
  Poly p(ring);
  if (!ring->field().is_zero(c)) p.terms_.emplace_back(std::move(m), c);
  return p;
}

template <class F>
Poly<F> Poly<F>::from_terms(RingPtr<F> ring, std::vector<Term> terms) {
  const auto& r = *ring;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return r.compare(a.first, b.first) > 0; });
  Poly p(ring);
  for (auto& t : terms) {
    if (t.first.size() != r.nvars()) throw InternalError("monomial length differs from variable count");
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second = r.field().add(p.terms_.back().second, t.second);
      if (r.field().is_zero(p.terms_.back().second)) p.terms_.pop_back();
    } else if (!r.field().is_zero(t.second)) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

template <class F>
typename Poly<F>::Elem Poly<F>::coeff(const Monomial& m) const {
  for (const auto& [mono, c] : terms_) {
    if (mono == m) return c;
  }
  return field().zero();
}

template <class F>
void Poly<F>::check_ring(const Poly& o) const {
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) throw InputError("polynomials belong to different rings");
}

template <class F>
Poly<F> Poly<F>::add_mul_term(const Elem& c, const Monomial& m, const Poly& o) const {
  check_ring(o);
  const F& k = field();
  const auto& r = *ring_;
  Poly out(ring_);
  if (k.is_zero(c)) {
    out.terms_ = terms_;
    return out;
  }
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  Monomial mb;
  auto mb_for = o.terms_.end();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end()) {
      out.terms_.push_back(*a++);
      continue;
    }
    if (mb_for != b) {
      mb = mono_mul(m, b->first);
      mb_for = b;
    }
    int cmp = a == terms_.end() ? -1 : r.compare(a->first, mb);
    if (cmp > 0) {
      out.terms_.push_back(*a++);
    } else if (cmp < 0) {
      out.terms_.emplace_back(std::move(mb), k.mul(c, b->second));
      ++b;
    } else {
      Elem v = a->second;
      k.add_mul(v, c, b->second);
      if (!k.is_zero(v)) out.terms_.emplace_back(std::move(mb), std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

template <class F>
Poly<F> Poly<F>::operator+(const Poly& o) const {
  return add_mul_term(field().one(), Monomial(ring_->nvars(), 0), o);
}

template <class F>
Poly<F> Poly<F>::operator-(const Poly& o) const {
  return add_mul_term(field().neg(field().one()), Monomial(ring_->nvars(), 0), o);
}

template <class F>
Poly<F> Poly<F>::operator-() const {
  return scale(field().neg(field().one()));
}

template <class F>
Poly<F> Poly<F>::scale(const Elem& c) const {
  Poly out(ring_);
  if (field().is_zero(c)) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [m, x] : terms_) out.terms_.emplace_back(m, field().mul(c, x));
  return out;
}

template <class F>
Poly<F> Poly<F>::mul_term(const Monomial& m, const Elem& c) const {
  Poly out(ring_);
  if (field().is_zero(c)) return out;
  out.terms_.reserve(terms_.size());
  // multiplication by a monomial preserves the order
  for (const auto& [mono, x] : terms_) out.terms_.emplace_back(mono_mul(mono, m), field().mul(c, x));
  return out;
}

template <class F>
Poly<F> Poly<F>::operator*(const Poly& o) const {
  check_ring(o);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) acc.emplace_back(mono_mul(ma, mb), field().mul(ca, cb));
  }
  return from_terms(ring_, std::move(acc));
}

template <class F>
Poly<F> Poly<F>::pow(std::uint32_t e) const {
  Poly result = constant(ring_, field().one());
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

template <class F>
Poly<F> Poly<F>::monic() const {
  if (is_zero()) return *this;
  return scale(field().inv(leading_coeff()));
}

template <class F>
Poly<F> Poly<F>::tail() const {
  Poly out(ring_);
  if (!terms_.empty()) out.terms_.assign(terms_.begin() + 1, terms_.end());
  return out;
}

template <class F>
DegreeInfo Poly<F>::weighted_degree() const {
  DegreeInfo info;
  if (terms_.empty()) return info;
  info.kind = DegreeInfo::Kind::homogeneous;
  info.degree = ring_->degree(terms_.front().first);
  for (const auto& t : terms_) {
    if (ring_->degree(t.first) != info.degree) {
      info.kind = DegreeInfo::Kind::not_homogeneous;
      return info;
    }
  }
  return info;
}

template <class F>
Poly<F> Poly<F>::partial_derivative(std::size_t i) const {
  if (i >= ring_->nvars()) throw InputError("variable index out of range");
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Elem v = field().mul(c, field().from_int(m[i]));
    if (field().is_zero(v)) continue;
    Monomial dm = m;
    --dm[i];
    out.emplace_back(std::move(dm), std::move(v));
  }
  return from_terms(ring_, std::move(out));
}

template <class F>
std::string Poly<F>::to_string() const {
  if (terms_.empty()) return "0";
  const F& k = field();
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = k.to_string(c);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    bool unit_monomial = std::all_of(m.begin(), m.end(), [](Exponent e) { return e == 0; });
    if (unit_monomial) {
      s += cs;
    } else if (cs == "1") {
      s += ring_->monomial_to_string(m);
    } else {
      s += cs + "*" + ring_->monomial_to_string(m);
    }
  }
  return s;
}

template <class F>
bool Poly<F>::operator==(const Poly& o) const {
  if (!(*ring_ == *o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].first != o.terms_[i].first) return false;
    if (!field().equal(terms_[i].second, o.terms_[i].second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::integer, s.substr(start, i - start), start});
    } else if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, s.substr(start, i - start), start});
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '/': k = Tok::slash; break;
        case '^': k = Tok::caret; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        default: throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
      }
      out.push_back({k, std::string(1, s[i]), start});
      ++i;
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

template <class F>
class Parser {
 public:
  Parser(const std::string& text, const RingPtr<F>& ring) : toks_(tokenize(text)), ring_(ring) {}

  Poly<F> parse() {
    if (peek().kind == Tok::end) throw ParseError("empty polynomial", peek().pos);
    Poly<F> p = expr();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  Poly<F> expr() {
    Poly<F> acc = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = next().kind == Tok::minus;
      Poly<F> t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly<F> term() {
    Poly<F> acc = unary();
    for (;;) {
      if (peek().kind == Tok::star) {
        next();
        acc = acc * unary();
      } else if (peek().kind == Tok::slash) {
        next();
        const Token& t = next();
        if (t.kind != Tok::integer) throw ParseError("divisor must be an integer literal", t.pos);
        mpz_class den(t.text);
        acc = acc.scale(ring_->field().from_fraction(mpz_class(1), den));
      } else if (peek().kind == Tok::integer || peek().kind == Tok::ident || peek().kind == Tok::lparen) {
        throw ParseError("implicit multiplication is not allowed", peek().pos);
      } else {
        return acc;
      }
    }
  }

  Poly<F> unary() {
    if (peek().kind == Tok::minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::plus) {
      next();
      return unary();
    }
    return power();
  }

  Poly<F> power() {
    Poly<F> base = primary();
    if (peek().kind == Tok::caret) {
      next();
      const Token& t = next();
      if (t.kind != Tok::integer) throw ParseError("exponent must be a nonnegative integer literal", t.pos);
      if (t.text.size() > 9) throw ParseError("exponent too large", t.pos);
      base = base.pow(static_cast<std::uint32_t>(std::stoul(t.text)));
      if (peek().kind == Tok::caret) throw ParseError("chained exponents are ambiguous", peek().pos);
    }
    return base;
  }

  Poly<F> primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::integer:
        return Poly<F>::constant(ring_, ring_->field().from_integer(mpz_class(t.text)));
      case Tok::ident: {
        auto idx = ring_->var_index(t.text);
        if (!idx) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return Poly<F>::variable(ring_, *idx);
      }
      case Tok::lparen: {
        Poly<F> inner = expr();
        const Token& close = next();
        if (close.kind != Tok::rparen) throw ParseError("expected ')'", close.pos);
        return inner;
      }
      case Tok::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const RingPtr<F>& ring_;
};

}  // namespace

template <class F>
Poly<F> parse_poly(const std::string& text, const RingPtr<F>& ring) {
  return Parser<F>(text, ring).parse();
}

// ---------------------------------------------------------------- ideals

template <class F>
HomogeneousIdeal<F>::HomogeneousIdeal(RingPtr<F> ring, std::vector<Poly<F>> generators)
    : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    DegreeInfo info = g.weighted_degree();
    if (!info.is_homogeneous()) throw InputError("ideal generator '" + g.to_string() + "' is not homogeneous");
    degrees_.push_back(info.degree);
    gens_.push_back(std::move(g));
  }
}

template <class F>
bool HomogeneousIdeal<F>::has_unit_generator() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (degrees_[i] == 0) return true;
  }
  return false;
}

template <class F>
HomogeneousIdeal<F> derivative_ideal(const HomogeneousIdeal<F>& ideal) {
  std::vector<Poly<F>> out;
  for (const auto& g : ideal.generators()) {
    for (std::size_t j = 0; j < ideal.ring()->nvars(); ++j) out.push_back(g.partial_derivative(j));
  }
  return HomogeneousIdeal<F>(ideal.ring(), std::move(out));
}

#define GOLODLAB_INSTANTIATE(F)                                                 \
  template class PolyRing<F>;                                                   \
  template class Poly<F>;                                                       \
  template class HomogeneousIdeal<F>;                                           \
  template Poly<F> parse_poly<F>(const std::string&, const RingPtr<F>&);        \
  template HomogeneousIdeal<F> derivative_ideal<F>(const HomogeneousIdeal<F>&);

GOLODLAB_INSTANTIATE(Rationals)
GOLODLAB_INSTANTIATE(PrimeField)

}  // namespace golodlab
