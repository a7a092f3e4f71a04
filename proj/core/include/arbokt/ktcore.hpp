#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arbokt/treealg.hpp"

namespace arbokt {

using CheckEntry = ValidationEntry;
using CheckReport = ValidationReport;

/// Arborescent operations: values on canonical non-trivial trees. A key of degree at
/// most max_degree that is absent has value zero; trees of degree above length + 1
/// always have value zero; anything in between is unknown and evaluating it throws.
class PsiTable {
 public:
  PsiTable() = default;
  PsiTable(std::shared_ptr<const Resolution> res, int max_degree);

  const Resolution& resolution() const { return *res_; }
  const std::shared_ptr<const Resolution>& resolution_ptr() const { return res_; }
  const RingPtr& ring() const { return res_->ring(); }
  int max_degree() const { return max_degree_; }
  void set_max_degree(int d) { max_degree_ = d; }
  /// Trees above this degree have zero value.
  int vanishing_bound() const { return res_->length() + 1; }
  /// True when every key has a known value.
  bool complete() const { return max_degree_ >= vanishing_bound(); }

  const std::map<CTree, Chain>& entries() const { return entries_; }

  /// Stores the value of a canonical non-trivial key; a zero value erases the entry.
  /// Throws InputError when the key is not canonical or the degrees do not match.
  void set(const CTree& key, Chain value);
  /// Stores sign * value under the canonical form of an ordered tree. Throws InputError
  /// when the tree vanishes in the quotient but the value does not.
  void set(const Node& t, const Chain& value);

  /// Value on a canonical key.
  Chain at(const CTree& key) const;
  /// Value on an ordered tree; a trivial tree |[a] gives -d(a).
  Chain eval(const Node& t) const;
  /// Linear extension to single-tree terms; scalars and products are rejected.
  Chain eval(const TreeElement& x) const;

  bool operator==(const PsiTable& other) const;

 private:
  std::shared_ptr<const Resolution> res_;
  int max_degree_ = 0;
  std::map<CTree, Chain> entries_;
};

/// The Koszul-Tate differential on the free graded-commutative algebra of trees.
class KTComplex {
 public:
  KTComplex(PsiTable psi, int max_degree);

  const Resolution& resolution() const { return psi_.resolution(); }
  const PsiTable& psi() const { return psi_; }
  const RingPtr& ring() const { return psi_.ring(); }
  int max_degree() const { return max_degree_; }
  GenNamer namer() const { return namer_for(resolution()); }

  /// Closed form on a single canonical tree. Throws InputError above max_degree.
  const TreeElement& delta(const CTree& t) const;
  /// Derivation extension of the closed form.
  TreeElement delta(const TreeElement& x) const;

  /// The unroot / recurse / re-root recursion, independent of the closed form.
  TreeElement delta_recursive(const CTree& t) const;
  TreeElement delta_recursive(const TreeElement& x) const;

 private:
  template <class TreeDelta>
  TreeElement extend(const TreeElement& x, TreeDelta&& on_tree) const;
  void check_degree(int degree) const;

  PsiTable psi_;
  int max_degree_;
  mutable std::map<CTree, TreeElement> cache_;
  mutable std::map<CTree, TreeElement> rec_cache_;
};

/// Closed-form differential of a single canonical tree, reading psi from the table.
TreeElement delta_closed_tree(const PsiTable& psi, const CTree& t);

/// Right-hand side of the recursion equation for d(psi_t), built from the table values
/// on smaller trees (the value on t itself is not read).
Chain psi_obstruction(const PsiTable& psi, const CTree& t);

/// Degree-by-degree construction of psi by lifting obstructions through d.
/// Throws Error when an obstruction is not in the image of d and InternalFault when a
/// consistency check fails.
PsiTable construct_psi(std::shared_ptr<const Resolution> res, int max_degree);

/// psi from the product of a differential graded commutative resolution: corollas get
/// the iterated product of their decorations, every other tree zero.
PsiTable psi_from_dga(std::shared_ptr<const Resolution> res);

/// Applies delta twice to every canonical tree of degree <= kt.max_degree().
CheckReport verify_delta_squared(const KTComplex& kt);

/// Compares the closed form with the recursion on the given trees.
CheckReport compare_delta_forms(const KTComplex& kt, const std::vector<CTree>& trees);

/// Canonical forests (sorted, no repeated odd tree) of total degree `degree`; degree 0
/// gives the empty forest.
std::vector<Forest> forest_basis(TreeBasis& basis, int degree);

/// Inclusion M (+) O -> S(Tree[M]): a + F -> |[a] + F.
TreeElement retract_incl(const Chain& x, const RingPtr& ring);
/// Projection S(Tree[M]) -> M (+) O.
Chain retract_proj(const PsiTable& psi, const TreeElement& x);
/// Homotopy h = root o (projection onto products of two or more trees).
TreeElement retract_h(const TreeElement& x);

/// Side relations and homotopy identities on all forests of degree <= max_degree.
/// The complex must know delta up to max_degree + 1.
CheckReport verify_retract(const KTComplex& kt, int max_degree);

/// Image of delta on degree-one trivial trees generates the ideal.
CheckReport verify_h0(const KTComplex& kt);

/// Kernel generators of delta in degrees 1..max_degree lift through delta.
CheckReport verify_homology(const KTComplex& kt, int max_degree);

struct AuditEntry {
  CTree key;
  std::string tree;
  std::vector<std::string> decorations;
  /// Present in the audited table (false for implicit zero keys).
  bool listed = true;
  bool passed = true;
  /// d applied to the table value and the value required by the recursion.
  std::string actual;
  std::string required;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  bool passed() const;
  const AuditEntry* find(const std::string& tree) const;
};

/// Checks every key of the table up to its max_degree against the recursion equation.
/// Listed entries are always reported; implicit zero keys only when they fail.
AuditReport audit_psi(const PsiTable& table);

}  // namespace arbokt
