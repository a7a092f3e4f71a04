#include "arbokt/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <ostream>
#include <sstream>

namespace arbokt {

Ring::Ring(std::vector<std::string> variables) : vars_(std::move(variables)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw InputError("invalid variable name '" + v + "'");
    for (char c : v)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw InputError("invalid variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw InputError("duplicate variable name '" + v + "'");
  }
}

std::shared_ptr<const Ring> Ring::make(std::vector<std::string> variables) {
  return std::make_shared<const Ring>(std::move(variables));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

void check_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!a || !b || a == b) return;
  if (!(*a == *b)) throw RingMismatch("polynomials belong to different rings");
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint32_t power) {
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(i) = power;
  return Monomial(std::move(e));
}

static void check_len(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw RingMismatch("monomials have different numbers of variables");
}

Monomial Monomial::operator*(const Monomial& other) const {
  check_len(*this, other);
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

int degrevlex_compare(const Monomial& a, const Monomial& b) {
  check_len(a, b);
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  check_len(a, b);
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  check_len(a, b);
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
  return Monomial(std::move(e));
}

std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b) {
  check_len(a, b);
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (b[i] > a[i]) return std::nullopt;
    e[i] = a[i] - b[i];
  }
  return Monomial(std::move(e));
}

bool divides(const Monomial& a, const Monomial& b) {
  check_len(a, b);
  if (a.total_degree() > b.total_degree()) return false;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(RingPtr ring, Rational constant) : ring_(std::move(ring)) {
  constant.canonicalize();
  if (constant != 0) {
    terms_.push_back({Monomial(ring_ ? ring_->nvars() : 0), std::move(constant)});
  }
}

Poly::Poly(RingPtr ring, Monomial mono, Rational coeff) : ring_(std::move(ring)) {
  if (ring_ && mono.nvars() != ring_->nvars()) throw RingMismatch("monomial length does not match ring");
  coeff.canonicalize();
  if (coeff != 0) terms_.push_back({std::move(mono), std::move(coeff)});
}

Poly Poly::variable(RingPtr ring, std::size_t i) {
  std::size_t n = ring->nvars();
  return Poly(std::move(ring), Monomial::variable(n, i));
}

Poly Poly::parse(std::string_view text, RingPtr ring) { return parse_poly(text, ring); }

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

const Term& Poly::leading_term() const {
  if (terms_.empty()) throw InputError("leading term of the zero polynomial");
  return terms_.front();
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

static Poly merge(const Poly& a, const Poly& b, bool subtract) {
  check_same_ring(a.ring(), b.ring());
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    int c;
    if (ia == ea) c = -1;
    else if (ib == eb) c = 1;
    else c = degrevlex_compare(ia->mono, ib->mono);
    if (c > 0) {
      out.push_back(*ia++);
    } else if (c < 0) {
      out.push_back(*ib++);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff);
      if (s != 0) out.push_back({ia->mono, std::move(s)});
      ++ia;
      ++ib;
    }
  }
  RingPtr r = a.ring() ? a.ring() : b.ring();
  return Poly::from_terms(r, std::move(out));
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) {
    if (!ring_) ring_ = other.ring_;
    return *this;
  }
  *this = merge(*this, other, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) {
    if (!ring_) ring_ = other.ring_;
    return *this;
  }
  *this = merge(*this, other, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_ring(a.ring(), b.ring());
  RingPtr r = a.ring() ? a.ring() : b.ring();
  if (a.is_zero() || b.is_zero()) return Poly::zero(r);
  if (a.terms().size() == 1) return b.mul_term(a.terms()[0].mono, a.terms()[0].coeff);
  if (b.terms().size() == 1) return a.mul_term(b.terms()[0].mono, b.terms()[0].coeff);
  std::map<Monomial, Rational, MonomialGreater> acc;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) acc[s.mono * t.mono] += s.coeff * t.coeff;
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, c});
  return Poly::from_terms(r, std::move(out));
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly Poly::mul_term(const Monomial& m, const Rational& c) const {
  Poly r(ring_, Rational(0));
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplication by a monomial preserves the degrevlex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

bool Poly::operator==(const Poly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  if (!terms_.empty()) check_same_ring(ring_, other.ring_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(ring, Rational(0));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return degrevlex_compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    t.coeff.canonicalize();
    if (ring && t.mono.nvars() != ring->nvars()) throw RingMismatch("monomial length does not match ring");
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::ostream& operator<<(std::ostream& os, const Monomial& m) {
  os << "[";
  for (std::size_t i = 0; i < m.nvars(); ++i) os << (i ? "," : "") << m[i];
  return os << "]";
}

bool poly_less(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms().size(), b.terms().size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = degrevlex_compare(a.terms()[i].mono, b.terms()[i].mono);
    if (c != 0) return c < 0;
    if (a.terms()[i].coeff != b.terms()[i].coeff) return a.terms()[i].coeff < b.terms()[i].coeff;
  }
  return a.terms().size() < b.terms().size();
}

Poly poly_arith(PolyOp op, const Poly& p, const Poly& q) {
  switch (op) {
    case PolyOp::Add:
      return p + q;
    case PolyOp::Mul:
      return p * q;
  }
  return Poly();
}

Poly poly_arith(const Poly& p, const Rational& c) { return p * c; }

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (c != 1 || t.mono.is_one()) {
      os << rational_to_string(c);
      need_star = true;
    }
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) os << "*";
      os << (ring_ ? ring_->var(i) : "x" + std::to_string(i + 1));
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : s_(text), ring_(ring) {}

  Poly parse() {
    if (!ring_) throw InputError("parse_poly requires a ring");
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (peek() == '-') ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Term t = parse_term();
      if (sign < 0) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
    }
    return Poly::from_terms(ring_, std::move(terms));
  }

 private:
  Term parse_term() {
    Rational coeff(1);
    std::vector<std::uint32_t> exps(ring_->nvars(), 0);
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_rational();
      have_factor = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        parse_power(exps);
      } else if (is_ident_start(peek())) {
        parse_power(exps);
      } else {
        return {Monomial(exps), coeff};
      }
    } else if (is_ident_start(peek())) {
      parse_power(exps);
      have_factor = true;
    }
    if (!have_factor) fail("expected a coefficient or a variable");
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= parse_rational();
      } else {
        parse_power(exps);
      }
    }
    return {Monomial(exps), coeff};
  }

  void parse_power(std::vector<std::uint32_t>& exps) {
    std::size_t start = pos_;
    if (!is_ident_start(peek())) fail("expected a variable");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    auto idx = ring_->index_of(name);
    if (!idx) fail_at(start, "unknown variable '" + name + "'");
    std::uint32_t power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent after '^'");
      power = static_cast<std::uint32_t>(parse_unsigned());
    }
    exps[*idx] += power;
  }

  Rational parse_rational() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string num(s_.substr(start, pos_ - start));
    std::string den = "1";
    if (peek() == '/') {
      ++pos_;
      std::size_t ds = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == ds) fail("expected a denominator after '/'");
      den = std::string(s_.substr(ds, pos_ - ds));
      if (mpz_class(den) == 0) fail_at(ds, "zero denominator");
    }
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
  }

  unsigned long parse_unsigned() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6) fail_at(start, "exponent too large");
    return std::stoul(digits);
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError("polynomial '" + std::string(s_) + "': " + msg, 1, pos + 1);
  }

  std::string_view s_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) { return PolyParser(text, ring).parse(); }

}  // namespace arbokt
