#pragma once

#include <map>
#include <string>
#include <vector>

#include "arbokt/tree.hpp"

namespace arbokt {

/// A product of trees in canonical (sorted) order; the empty forest is the scalar 1.
using Forest = std::vector<CTree>;

int forest_degree(const Forest& f);
/// Sorts an arbitrary list of canonical trees, returning the Koszul sign (0 when an
/// odd tree is repeated).
int canonicalize_forest(Forest& f);

/// Element of the free graded-commutative O-algebra on canonical trees.
class TreeElement {
 public:
  TreeElement() = default;
  explicit TreeElement(RingPtr ring) : ring_(std::move(ring)) {}

  static TreeElement scalar(const Poly& p);
  static TreeElement tree(const CTree& t, const Poly& p);
  static TreeElement forest(Forest f, const Poly& p);

  const RingPtr& ring() const { return ring_; }
  const std::map<Forest, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Poly coefficient(const Forest& f) const;

  /// Adds p times a canonical forest.
  void add(const Forest& f, const Poly& p);
  /// Adds p times an arbitrary list of canonical trees, sorting it first.
  void add_unsorted(Forest f, const Poly& p);
  /// Adds sign * p * tree for a canonicalized tree.
  void add(const Canonical& c, const Poly& p);
  void axpy(const Poly& f, const TreeElement& x);

  TreeElement& operator+=(const TreeElement& other);
  TreeElement& operator-=(const TreeElement& other);
  TreeElement& operator*=(const Poly& f);
  friend TreeElement operator+(TreeElement a, const TreeElement& b) { return a += b; }
  friend TreeElement operator-(TreeElement a, const TreeElement& b) { return a -= b; }
  friend TreeElement operator*(const Poly& f, TreeElement a) { return a *= f; }
  TreeElement operator-() const;

  bool operator==(const TreeElement& other) const;
  bool operator!=(const TreeElement& other) const { return !(*this == other); }

  std::string to_string(const GenNamer& name) const;

 private:
  RingPtr ring_;
  std::map<Forest, Poly> terms_;
};

/// Graded-commutative product.
TreeElement sym_product(const TreeElement& x, const TreeElement& y);

enum class Component {
  Scalar,   ///< the empty forest (O)
  Trivial,  ///< a single trivial tree
  Tree,     ///< a single non-trivial tree
  Product,  ///< two or more trees
};

Component component_of(const Forest& f);
TreeElement project(const TreeElement& x, Component which);

/// Attaches a new root to a forest of at least two trees (degree +1, sign +1 for a
/// canonical forest).
CTree root(const Forest& f);
/// Root map on the product component; other components are rejected.
TreeElement root(const TreeElement& x);
/// Inverse of root: the children of the root, as a canonical forest.
Forest unroot(const CTree& t);
TreeElement unroot(const TreeElement& x);

/// Single-tree merge differential on an ordered tree: sum over inner vertices of
/// (-1)^W times the merged tree, canonicalized.
TreeElement boundary(const Node& t, const RingPtr& ring);
/// Linear extension to single-tree terms; scalars and products are rejected.
TreeElement boundary(const TreeElement& x);

/// Erases O-leaves (degree-0 generators indexing o_values): a leaf under a vertex with
/// three or more children multiplies the coefficient, one under a two-child vertex kills
/// the tree. The result is canonicalized.
TreeElement normalize_O_leaves(const Node& t, const std::vector<Poly>& o_values, const RingPtr& ring);

/// t with leaf i replaced by the chain x (multilinear; unit terms follow the O-leaf rule).
TreeElement substitute_leaf(const Node& t, std::size_t leaf, const Chain& x);
/// t down A with the new leaf decorated by the chain x.
TreeElement substitute_subtree(const Node& t, const Path& p, const Chain& x);

}  // namespace arbokt
