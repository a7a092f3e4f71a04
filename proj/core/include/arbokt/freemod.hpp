#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbokt/poly.hpp"

namespace arbokt {

/// A free O-module with named basis generators sitting in one homological degree.
class FreeModule {
 public:
  FreeModule() = default;
  FreeModule(std::size_t rank, std::vector<std::string> names, int degree);
  /// Free module of the given rank with generators named `<prefix><degree>_<index>`.
  static FreeModule with_default_names(std::size_t rank, int degree, const std::string& prefix = "g");

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree() const { return degree_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool operator==(const FreeModule& other) const { return degree_ == other.degree_ && names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  int degree_ = 0;
};

/// Element of O^rank stored sparsely (no zero coordinates).
class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(RingPtr ring, std::size_t rank) : ring_(std::move(ring)), rank_(rank) {}
  ModuleElement(RingPtr ring, std::size_t rank, const std::vector<Poly>& dense);

  static ModuleElement basis(RingPtr ring, std::size_t rank, std::size_t i);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::map<std::size_t, Poly>& coords() const { return coords_; }
  Poly get(std::size_t i) const;
  void set(std::size_t i, Poly p);
  void add_to(std::size_t i, const Poly& p);
  bool is_zero() const { return coords_.empty(); }
  std::vector<Poly> dense() const;

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  ModuleElement& operator*=(const Poly& f);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const Poly& f, ModuleElement a) { return a *= f; }
  ModuleElement operator-() const;

  bool operator==(const ModuleElement& other) const;
  bool operator!=(const ModuleElement& other) const { return !(*this == other); }

  /// `(p1, p2, ...)` in dense form.
  std::string to_string() const;

 private:
  void check(const ModuleElement& other) const;
  RingPtr ring_;
  std::size_t rank_ = 0;
  std::map<std::size_t, Poly> coords_;
};

std::ostream& operator<<(std::ostream& os, const ModuleElement& v);

/// O-linear map given by a target-rank x source-rank matrix; entry [i][j] is the
/// coefficient of target generator i in the image of source generator j.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(RingPtr ring, FreeModule source, FreeModule target, std::vector<std::vector<Poly>> matrix);

  const RingPtr& ring() const { return ring_; }
  const FreeModule& source() const { return source_; }
  const FreeModule& target() const { return target_; }
  const std::vector<std::vector<Poly>>& matrix() const { return matrix_; }
  const Poly& entry(std::size_t i, std::size_t j) const { return matrix_.at(i).at(j); }

  /// Image of source generator j.
  ModuleElement column(std::size_t j) const;
  std::vector<ModuleElement> columns() const;
  ModuleElement apply(const ModuleElement& v) const;
  /// this o other (other applied first).
  ModuleMap compose(const ModuleMap& other) const;
  bool is_zero() const;

 private:
  RingPtr ring_;
  FreeModule source_, target_;
  std::vector<std::vector<Poly>> matrix_;
};

/// Groebner basis of a submodule of O^rank for the position-over-term order
/// (lower generator index dominates, then degrevlex), with the expression of every
/// basis element in terms of the original generators.
class GroebnerBasis {
 public:
  struct Reduction {
    ModuleElement remainder;
    /// One quotient per basis element.
    std::vector<Poly> quotients;
  };

  GroebnerBasis() = default;

  /// Buchberger completion followed by auto-reduction. Zero generators are allowed.
  static GroebnerBasis compute(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring);

  const std::vector<ModuleElement>& elements() const { return basis_; }
  /// transformation()[k][j]: coefficient of original generator j in basis element k.
  const std::vector<std::vector<Poly>>& transformation() const { return transform_; }
  std::size_t num_generators() const { return ngens_; }
  std::size_t rank() const { return rank_; }

  /// Full reduction; always divides by the first basis element (in index order)
  /// whose leading term divides the current leading term.
  Reduction reduce(const ModuleElement& v) const;
  bool contains(const ModuleElement& v) const;
  /// Coefficients c with v = sum_j c_j * gens[j], or std::nullopt (NotInImage).
  std::optional<std::vector<Poly>> lift(const ModuleElement& v) const;
  /// Generators of the relations among the original generators (Schreyer).
  std::vector<ModuleElement> syzygies() const;

 private:
  RingPtr ring_;
  std::size_t rank_ = 0;
  std::size_t ngens_ = 0;
  std::vector<ModuleElement> gens_;
  std::vector<ModuleElement> basis_;
  std::vector<std::vector<Poly>> transform_;
};

GroebnerBasis groebner(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring);

/// Result of lift(): `ok` false means NotInImage.
struct LiftResult {
  bool ok = false;
  std::vector<Poly> coeffs;
};

LiftResult lift(const ModuleElement& target, const std::vector<ModuleElement>& gens);

/// Generating relations among `gens`, as elements of O^{gens.size()}, pruned so that
/// no returned relation lies in the span of the others.
std::vector<ModuleElement> syzygies(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring);

/// Generators of ker f (syzygies of the columns of f), pruned as in syzygies().
std::vector<ModuleElement> kernel_generators(const ModuleMap& f);

/// Removes generators lying in the submodule spanned by the remaining ones,
/// trying the highest-degree candidates first.
std::vector<ModuleElement> prune_generators(std::vector<ModuleElement> gens, std::size_t rank, const RingPtr& ring);

}  // namespace arbokt
