#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arbokt/resolution.hpp"

namespace arbokt {

/// Ordered (planar) decorated tree. A leaf carries a generator; an internal node has
/// at least two children. A leaf whose generator has degree 0 is an O-leaf, its index
/// pointing into a caller-supplied list of values.
struct Node {
  Gen gen;
  std::vector<Node> kids;

  static Node leaf(const Gen& g) { return Node{g, {}}; }
  static Node vertex(std::vector<Node> kids);

  bool is_leaf() const { return kids.empty(); }
  /// Sum of decoration degrees plus the number of internal nodes.
  int degree() const;
  std::size_t num_leaves() const;
  std::size_t num_vertices() const;
  /// Decorations in leaf order.
  std::vector<Gen> decorations() const;

  bool operator==(const Node&) const = default;
};

/// Child indices from the root; the empty path is the root.
using Path = std::vector<std::size_t>;

/// Tree in canonical child order, stored flat: `shape` lists the child count of every
/// node in prefix order (0 for a leaf) and `decorations` the leaf generators in order.
class CTree {
 public:
  CTree() = default;
  /// Encodes an ordered tree without reordering it.
  static CTree encode(const Node& n);
  static CTree trivial(const Gen& g) { return encode(Node::leaf(g)); }
  /// Tree whose root has the given children, kept in the given order.
  static CTree join(const std::vector<CTree>& kids);

  Node node() const;
  const std::vector<std::uint16_t>& shape() const { return shape_; }
  const std::vector<Gen>& decorations() const { return decos_; }
  int degree() const { return deg_; }
  std::size_t num_leaves() const { return decos_.size(); }
  std::size_t num_vertices() const { return shape_.size() - decos_.size(); }
  bool is_trivial() const { return shape_.size() == 1; }
  /// Number of children of the root (0 for a trivial tree).
  std::size_t root_arity() const { return shape_.empty() ? 0 : shape_.front(); }
  /// A root with two or more leaf children only.
  bool is_corolla() const;

  /// Ordering by (degree, leaf count, shape, decorations).
  std::strong_ordering operator<=>(const CTree& other) const;
  bool operator==(const CTree& other) const = default;

 private:
  std::vector<std::uint16_t> shape_;
  std::vector<Gen> decos_;
  int deg_ = 0;
};

/// Result of canonicalization: sign 0 means the tree is zero in the quotient.
struct Canonical {
  int sign = 1;
  CTree tree;
};

/// Sorts children at every vertex into canonical order, accumulating Koszul signs of
/// the child permutations (child subtrees weighted by their degrees). A vertex with two
/// equal children of odd degree yields sign 0.
Canonical canonicalize(const Node& n);

/// Koszul sign of rearranging items of the given degrees so that position k holds the
/// item previously at perm[k].
int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees);

/// Vertex information for an ordered tree, listed in prefix order.
struct VertexInfo {
  Path path;
  bool leaf = false;
  /// Weight: edges from the root plus degrees of the subtrees left of the path.
  int weight = 0;
  std::size_t first_leaf = 0;
  std::size_t num_leaves = 0;
};

std::vector<VertexInfo> vertex_infos(const Node& t);

const Node& subtree_at(const Node& t, const Path& p);
/// Throws InputError when the path does not name a vertex or leaf of t.
int weight_at(const Node& t, const Path& p);
/// Binary trees: the number of vertices B such that p lies in the left subtree of B.
int left_count(const Node& t, const Path& p);
/// Binary trees: the sum over all vertices of the degree of their left subtree.
int left_weight_P(const Node& t);

/// Merges the inner vertex at p into its parent. The root or a leaf is rejected.
Node merge_vertex(const Node& t, const Path& p);
/// (t up A, t down A): the subtree at p and t with that subtree replaced by placeholder.
std::pair<Node, Node> up_down(const Node& t, const Path& p, const Gen& placeholder);
Node replace_at(const Node& t, const Path& p, Node replacement);

/// Planar shapes with the given number of leaves; leaves carry Gen{1, i} in leaf order.
std::vector<Node> planar_shapes(std::size_t leaves);
/// Binary planar shapes (ordered binary trees) with the given number of leaves.
std::vector<Node> binary_shapes(std::size_t leaves);
/// Replaces the leaf generators of t by gens in leaf order.
Node decorate(const Node& t, const std::vector<Gen>& gens);

/// All canonical nonzero trees of a degree over the generators of a resolution, sorted.
class TreeBasis {
 public:
  explicit TreeBasis(std::vector<Gen> generators) : gens_(std::move(generators)) {}
  explicit TreeBasis(const Resolution& res) : gens_(res.generators()) {}

  const std::vector<CTree>& trees(int degree);
  /// Non-trivial trees only.
  std::vector<CTree> nontrivial(int degree);

 private:
  std::vector<Gen> gens_;
  std::map<int, std::vector<CTree>> cache_;
};

using GenNamer = std::function<std::string(const Gen&)>;
GenNamer namer_for(const Resolution& res);
/// `g<deg>_<idx>` style names for tests without a resolution.
GenNamer default_namer();

/// Nested parentheses of decoration names, e.g. `((pixx pixy) piyy)`; trivial `|a|`.
std::string encode_tree(const Node& t, const GenNamer& name);
std::string encode_tree(const CTree& t, const GenNamer& name);
/// Parses the text encoding; names are resolved against the resolution. Throws ParseError.
Node parse_tree(std::string_view text, const Resolution& res);

}  // namespace arbokt
