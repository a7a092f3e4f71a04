#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arbokt/error.hpp"

namespace arbokt {

using Rational = mpq_class;

/// Polynomial ring Q[x_1..x_n] described by its ordered variable names.
class Ring {
 public:
  explicit Ring(std::vector<std::string> variables);

  static std::shared_ptr<const Ring> make(std::vector<std::string> variables);

  std::size_t nvars() const { return vars_.size(); }
  const std::string& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<std::string>& variables() const { return vars_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Ring& other) const { return vars_ == other.vars_; }

 private:
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Throws RingMismatch unless both rings are null or have equal variable lists.
void check_same_ring(const RingPtr& a, const RingPtr& b);

/// Exponent vector; the length equals the number of ring variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t total_degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Degree-reverse-lexicographic comparison: negative, zero or positive as a <, =, > b.
int degrevlex_compare(const Monomial& a, const Monomial& b);

/// Strict-weak "greater first" ordering used to keep polynomial terms sorted.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_compare(a, b) > 0; }
};

/// Componentwise maximum of the exponents.
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

/// Componentwise minimum of the exponents.
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

/// a / b when b divides a, std::nullopt (the NotDivisible value) otherwise.
std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b);

/// True when a divides b.
bool divides(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Exact polynomial over Q. Terms are kept sorted by decreasing degrevlex order
/// with no zero coefficients. A default-constructed Poly is the zero polynomial
/// and is compatible with every ring.
class Poly {
 public:
  Poly() = default;
  Poly(RingPtr ring, Rational constant);
  Poly(RingPtr ring, Monomial mono, Rational coeff = 1);

  static Poly zero(RingPtr ring) { return Poly(std::move(ring), Rational(0)); }
  static Poly one(RingPtr ring) { return Poly(std::move(ring), Rational(1)); }
  static Poly variable(RingPtr ring, std::size_t i);
  /// Parses the textual syntax `x^2*y - 3*z` (see parse_poly).
  static Poly parse(std::string_view text, RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of the monomial 1, i.e. the value at the origin.
  Rational constant_term() const;
  const Term& leading_term() const;
  std::uint32_t total_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  /// Multiplies by c * m.
  Poly mul_term(const Monomial& m, const Rational& c) const;

  bool operator==(const Poly& other) const;
  bool operator!=(const Poly& other) const { return !(*this == other); }

  std::string to_string() const;

  /// Builds a polynomial from unsorted terms, merging duplicates and pruning zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// gtest / iostream pretty-printing.
std::ostream& operator<<(std::ostream& os, const Poly& p);
std::ostream& operator<<(std::ostream& os, const Monomial& m);

/// Total order on polynomials (by terms) used for deterministic containers.
bool poly_less(const Poly& a, const Poly& b);

enum class PolyOp { Add, Mul };

/// Exact binary arithmetic with ring checking.
Poly poly_arith(PolyOp op, const Poly& p, const Poly& q);
/// Exact scalar multiplication.
Poly poly_arith(const Poly& p, const Rational& c);

/// Formats a rational as `a` or `a/b`.
std::string rational_to_string(const Rational& q);

/// Parses a polynomial written in the variables of `ring`.
/// Grammar: sum of terms; a term is an optional rational coefficient followed by
/// `*`-separated powers `var` or `var^k`; `*` after the coefficient is optional.
Poly parse_poly(std::string_view text, const RingPtr& ring);

}  // namespace arbokt
