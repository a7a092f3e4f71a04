#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arbokt/ktcore.hpp"

namespace arbokt {

/// A Koszul-Tate resolution presented by its free generators (each a canonical tree) and
/// the differential of every generator in the free graded-commutative algebra.
class KTGenerators {
 public:
  virtual ~KTGenerators() = default;
  virtual const RingPtr& ring() const = 0;
  virtual GenNamer namer() const = 0;
  /// Generators of the given degree in a fixed order.
  virtual std::vector<CTree> generators(int degree) const = 0;
  virtual TreeElement delta(const CTree& generator) const = 0;
  /// Highest generator degree the differential is known for.
  virtual int max_degree() const = 0;
};

/// Every canonical tree is a generator; delta is the arborescent differential.
class ArborescentKT : public KTGenerators {
 public:
  explicit ArborescentKT(const KTComplex& kt);

  const RingPtr& ring() const override { return kt_.ring(); }
  GenNamer namer() const override { return kt_.namer(); }
  std::vector<CTree> generators(int degree) const override;
  TreeElement delta(const CTree& generator) const override { return kt_.delta(generator); }
  int max_degree() const override { return kt_.max_degree(); }

 private:
  const KTComplex& kt_;
  mutable TreeBasis basis_;
};

/// Exterior algebra on theta_1..theta_k in degree one with delta(theta_i) = f_i. A
/// resolution of O/(f_1..f_k) exactly when f is a regular sequence.
class ExteriorKoszulKT : public KTGenerators {
 public:
  explicit ExteriorKoszulKT(const std::vector<Poly>& gens);

  const RingPtr& ring() const override { return res_->ring(); }
  GenNamer namer() const override { return namer_for(*res_); }
  std::vector<CTree> generators(int degree) const override;
  TreeElement delta(const CTree& generator) const override;
  int max_degree() const override { return 1 << 20; }

 private:
  std::shared_ptr<const Resolution> res_;
  std::vector<Poly> gens_;
};

/// Dense matrix over the rationals; rows index targets, columns index sources.
using QMatrix = std::vector<std::vector<Rational>>;

std::size_t rank_of(QMatrix m);

/// Linear part of delta modulo I E + S^{>=2}(E), tensored with O/J for J the ideal of
/// the origin: generators of degrees 1..top and the matrices D_i : V_i -> V_{i-1}.
struct ReducedComplex {
  /// Highest generator degree; homology is known in degrees below it.
  int top = 0;
  /// basis[i] for i = 0..top (basis[0] is unused).
  std::vector<std::vector<CTree>> basis;
  /// matrix[i] for i = 2..top, of size |V_{i-1}| x |V_i|.
  std::vector<QMatrix> matrix;
  GenNamer namer;

  std::size_t dim(int degree) const { return basis.at(degree).size(); }
};

/// Builds the reduced complex from generators of degree 1..max_degree + 1 and checks
/// that consecutive matrices compose to zero (InternalFault otherwise).
ReducedComplex reduce_at_origin(const KTGenerators& kt, int max_degree);

/// b[i] = dim ker D_i - rank D_{i+1} for 1 <= i <= max_degree (D_1 = 0); b[0] is absent.
struct BettiVector {
  int max_degree = 0;
  std::vector<std::optional<std::size_t>> b;
  /// Generator counts per degree, the upper bound for b.
  std::vector<std::size_t> generators;
};

BettiVector betti(const ReducedComplex& rc);

struct Violation {
  CTree source;
  CTree target;
  Rational coefficient;
  std::string source_text;
  std::string target_text;
};

/// Minimal at the origin: every reduced matrix vanishes. Violations are the nonzero
/// entries, ordered by source degree, then source, then target; the target of a
/// violation is a redundant generator.
struct MinimalityReport {
  bool minimal = true;
  std::vector<Violation> violations;
  const Violation* first() const { return violations.empty() ? nullptr : &violations.front(); }
};

MinimalityReport is_minimal(const ReducedComplex& rc);

/// The left comb T_m with leaves e_i, e_j, ..., e_j (m + 1 leaves, degree 2m + 1) for the
/// first pair i < j of degree-one generators whose images are monomials sharing a
/// variable, with its certificate in the reduced complex.
struct Witness {
  std::size_t i = 0;
  std::size_t j = 0;
  int m = 0;
  CTree tree;
  std::string text;
  bool closed = false;
  bool exact = true;
  bool certified() const { return closed && !exact; }
};

/// The complex must know delta up to degree 2m + 2. Throws InputError "no witness pair"
/// when all pairs of ideal generators are coprime monomials.
Witness witness_Tm(const KTComplex& kt, int m);

}  // namespace arbokt
