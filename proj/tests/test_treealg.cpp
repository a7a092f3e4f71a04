#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "arbokt/treealg.hpp"

using namespace arbokt;

namespace {

Node L(int deg, std::size_t idx) { return Node::leaf(Gen{deg, idx}); }
Node V(std::vector<Node> kids) { return Node::vertex(std::move(kids)); }
int sgn(int e) { return e % 2 ? -1 : 1; }

auto ring() {
  static RingPtr r = Ring::make({"x", "y"});
  return r;
}
Poly one() { return Poly::one(ring()); }

TreeElement single(const Node& t, int coeff = 1) {
  TreeElement e(ring());
  e.add(canonicalize(t), Poly(ring(), Rational(coeff)));
  return e;
}

// Random decoration of a shape, degrees in [1, maxdeg].
Node random_decorate(const Node& shape, std::mt19937& rng, int maxdeg = 3, std::size_t nidx = 2) {
  std::uniform_int_distribution<int> d(1, maxdeg);
  std::uniform_int_distribution<std::size_t> k(0, nidx - 1);
  std::vector<Gen> g;
  for (std::size_t i = 0; i < shape.num_leaves(); ++i) g.push_back(Gen{d(rng), k(rng)});
  return decorate(shape, g);
}

// All single-vertex child permutations of t (vertex at p), applied to an ordered tree.
Node permute_children(const Node& t, const Path& p, const std::vector<std::size_t>& perm) {
  Node sub = subtree_at(t, p);
  std::vector<Node> kids;
  for (auto k : perm) kids.push_back(sub.kids[k]);
  sub.kids = kids;
  return replace_at(t, p, sub);
}

}  // namespace

// ---------------------------------------------------------------- canonicalize

TEST(Canonicalize, OddSwapGivesMinus) {
  Node t = V({L(1, 1), L(1, 0)});
  Canonical c = canonicalize(t);
  EXPECT_EQ(c.sign, -1);
  EXPECT_EQ(c.tree, CTree::encode(V({L(1, 0), L(1, 1)})));
}

TEST(Canonicalize, RepeatedOddChildIsZero) {
  EXPECT_EQ(canonicalize(V({L(1, 0), L(1, 0)})).sign, 0);
  EXPECT_EQ(canonicalize(V({L(2, 0), L(2, 0)})).sign, 1);
}

TEST(Canonicalize, MovingThreeLeafChildPastFirstLeaf) {
  // [a1, [a2 a3 a4], a5]  vs  [[a2 a3 a4], a1, a5]
  for (int d1 = 1; d1 <= 2; ++d1)
    for (int d2 = 1; d2 <= 2; ++d2) {
      Node inner = V({L(d2, 2), L(1, 3), L(2, 4)});
      Node a = V({L(d1, 1), inner, L(3, 5)});
      Node b = V({inner, L(d1, 1), L(3, 5)});
      Canonical ca = canonicalize(a), cb = canonicalize(b);
      ASSERT_EQ(ca.tree, cb.tree);
      EXPECT_EQ(ca.sign * cb.sign, sgn(d1 * (d2 + 1 + 2 + 1)));
    }
}

TEST(Canonicalize, IdempotentAndSignCoherentUpToFiveLeaves) {
  std::mt19937 rng(7);
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& shape : planar_shapes(n))
      for (int rep = 0; rep < 6; ++rep) {
        Node t = random_decorate(shape, rng);
        Canonical c = canonicalize(t);
        if (c.sign == 0) continue;
        Canonical again = canonicalize(c.tree.node());
        EXPECT_EQ(again.sign, 1);
        EXPECT_EQ(again.tree, c.tree);
        for (const auto& vi : vertex_infos(t)) {
          if (vi.leaf) continue;
          const Node& sub = subtree_at(t, vi.path);
          std::vector<std::size_t> perm(sub.kids.size());
          std::iota(perm.begin(), perm.end(), 0);
          std::vector<int> degs;
          for (const auto& k : sub.kids) degs.push_back(k.degree());
          do {
            Canonical cp = canonicalize(permute_children(t, vi.path, perm));
            EXPECT_EQ(cp.tree, c.tree);
            EXPECT_EQ(cp.sign, koszul_sign(perm, degs) * c.sign);
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
      }
}

// ---------------------------------------------------------------- O-leaves

TEST(OLeaves, ErasedUnderThreeChildVertex) {
  std::vector<Poly> o = {Poly::parse("x*y", ring())};
  Node t = V({V({L(1, 1), L(1, 2)}), L(0, 0), L(2, 3)});
  TreeElement e = normalize_O_leaves(t, o, ring());
  TreeElement expect(ring());
  expect.add(canonicalize(V({V({L(1, 1), L(1, 2)}), L(2, 3)})), o[0]);
  EXPECT_EQ(e, expect);
}

TEST(OLeaves, KillsUnderTwoChildVertex) {
  std::vector<Poly> o = {Poly::parse("x", ring())};
  Node t = V({V({L(1, 1), L(0, 0)}), L(1, 2), L(2, 3)});
  EXPECT_TRUE(normalize_O_leaves(t, o, ring()).is_zero());
}

TEST(OLeaves, NoOLeavesUnchanged) {
  Node t = V({L(1, 0), L(2, 1)});
  EXPECT_EQ(normalize_O_leaves(t, {}, ring()), single(t));
}

// ---------------------------------------------------------------- weights

TEST(Weight, WorkedExample) {
  // R = [a1, B], B = [A, a5], A = [a2, [a3 a4]]
  for (int d1 = 1; d1 <= 3; ++d1) {
    Node t = V({L(d1, 1), V({V({L(1, 2), V({L(1, 3), L(2, 4)})}), L(1, 5)})});
    EXPECT_EQ(weight_at(t, {1, 0}), 2 + d1);
    EXPECT_EQ(weight_at(t, {}), 0);
  }
}

TEST(Weight, UnknownVertexThrows) {
  Node t = V({L(1, 0), L(1, 1)});
  EXPECT_THROW(weight_at(t, {2}), InputError);
  EXPECT_THROW(weight_at(t, {0, 0}), InputError);
}

TEST(Weight, BinaryIdentityUpToFiveLeaves) {
  std::mt19937 rng(11);
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& shape : binary_shapes(n))
      for (int rep = 0; rep < 4; ++rep) {
        Node t = random_decorate(shape, rng);
        auto decos = t.decorations();
        for (const auto& vi : vertex_infos(t)) {
          int left_deg = 0;
          for (std::size_t r = 0; r < vi.first_leaf; ++r) left_deg += decos[r].deg;
          EXPECT_EQ(vi.weight, int(vi.first_leaf) + left_deg + left_count(t, vi.path));
        }
      }
}

TEST(LeftWeight, SmallTrees) {
  for (int a1 = 1; a1 <= 2; ++a1)
    for (int a2 = 1; a2 <= 2; ++a2) {
      Node ltree = V({V({L(a1, 1), L(a2, 2)}), L(1, 3)});
      Node rtree = V({L(a1, 1), V({L(a2, 2), L(1, 3)})});
      EXPECT_EQ(left_weight_P(ltree), 2 * a1 + a2 + 1);
      EXPECT_EQ(left_weight_P(rtree), a1 + a2);
      EXPECT_EQ(left_weight_P(V({L(a1, 1), L(a2, 2)})), a1);
    }
  EXPECT_THROW(left_weight_P(V({L(1, 0), L(1, 1), L(1, 2)})), InputError);
}

// ---------------------------------------------------------------- merge and boundary

TEST(Boundary, WorkedExample) {
  for (int da = 1; da <= 2; ++da) {
    Node t = V({L(da, 0), V({V({L(1, 1), L(2, 2), L(1, 3)}), L(2, 4)})});
    TreeElement expect = single(V({L(da, 0), V({L(1, 1), L(2, 2), L(1, 3)}), L(2, 4)}), sgn(da + 1));
    expect += single(V({L(da, 0), V({L(1, 1), L(2, 2), L(1, 3), L(2, 4)})}), sgn(da));
    EXPECT_EQ(boundary(t, ring()), expect);
  }
}

TEST(Boundary, NoInnerVertices) {
  EXPECT_TRUE(boundary(L(1, 0), ring()).is_zero());
  EXPECT_TRUE(boundary(V({L(1, 0), L(2, 0), L(3, 0)}), ring()).is_zero());
}

TEST(Boundary, MergeRejectsRootAndLeaves) {
  Node t = V({L(1, 0), V({L(1, 1), L(1, 2)})});
  EXPECT_THROW(merge_vertex(t, {}), InputError);
  EXPECT_THROW(merge_vertex(t, {0}), InputError);
  EXPECT_EQ(merge_vertex(t, {1}), V({L(1, 0), L(1, 1), L(1, 2)}));
}

TEST(Boundary, SquaresToZeroUpToSixLeaves) {
  std::mt19937 rng(5);
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& shape : planar_shapes(n)) {
      Node t = random_decorate(shape, rng, 3, 3);
      EXPECT_TRUE(boundary(boundary(t, ring())).is_zero()) << encode_tree(t, default_namer());
    }
}

// ---------------------------------------------------------------- up / down

TEST(UpDown, RootAndLeaf) {
  Node t = V({V({L(1, 0), L(1, 1)}), L(1, 2), L(2, 3)});
  auto [up, down] = up_down(t, {}, Gen{5, 0});
  EXPECT_EQ(up, t);
  EXPECT_EQ(down, L(5, 0));
  auto [lu, ld] = up_down(t, {1}, Gen{1, 2});
  EXPECT_EQ(lu, L(1, 2));
  EXPECT_EQ(ld, t);
}

TEST(UpDown, InnerVertex) {
  Node t = V({V({L(1, 0), L(1, 1)}), L(1, 2), L(2, 3)});
  auto [up, down] = up_down(t, {0}, Gen{3, 9});
  EXPECT_EQ(up, V({L(1, 0), L(1, 1)}));
  EXPECT_EQ(down, V({L(3, 9), L(1, 2), L(2, 3)}));
}

// ---------------------------------------------------------------- root / unroot

TEST(Root, TwoTrivialTrees) {
  Forest f = {CTree::trivial(Gen{1, 0}), CTree::trivial(Gen{1, 1})};
  EXPECT_EQ(root(f), CTree::encode(V({L(1, 0), L(1, 1)})));
  EXPECT_EQ(root(f).degree(), forest_degree(f) + 1);
}

TEST(Root, UnrootFigure) {
  Node t = V({V({L(1, 1), L(1, 2), L(1, 3)}), L(1, 4), L(1, 5)});
  Canonical c = canonicalize(t);
  Forest f = unroot(c.tree);
  ASSERT_EQ(f.size(), 3u);
  Forest expect = {canonicalize(V({L(1, 1), L(1, 2), L(1, 3)})).tree, CTree::trivial(Gen{1, 4}),
                   CTree::trivial(Gen{1, 5})};
  int s = canonicalize_forest(expect);
  EXPECT_EQ(f, expect);
  EXPECT_EQ(s, c.sign);
  EXPECT_THROW(unroot(CTree::trivial(Gen{1, 0})), InputError);
  EXPECT_THROW(root(Forest{CTree::trivial(Gen{1, 0})}), InputError);
}

TEST(Root, InversePairRandom) {
  std::mt19937 rng(3);
  std::vector<Node> shapes;
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto& s : planar_shapes(n)) shapes.push_back(s);
  std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1), cnt(2, 4);
  int done = 0;
  while (done < 500) {
    Forest f;
    std::size_t k = cnt(rng);
    for (std::size_t i = 0; i < k; ++i) {
      Canonical c = canonicalize(random_decorate(shapes[pick(rng)], rng));
      if (c.sign == 0) break;
      f.push_back(c.tree);
    }
    if (f.size() != k || canonicalize_forest(f) == 0) continue;
    CTree t = root(f);
    EXPECT_EQ(unroot(t), f);
    EXPECT_EQ(root(unroot(t)), t);
    EXPECT_EQ(t.degree(), forest_degree(f) + 1);
    ++done;
  }
}

// ---------------------------------------------------------------- products and projections

TEST(SymProduct, GradedCommutative) {
  for (int da = 1; da <= 2; ++da)
    for (int db = 1; db <= 2; ++db) {
      TreeElement a = single(L(da, 0)), b = single(L(db, 1));
      TreeElement ab = sym_product(a, b), ba = sym_product(b, a);
      EXPECT_EQ(ab, sgn(da * db) * one() * ba);
    }
  EXPECT_TRUE(sym_product(single(L(1, 0)), single(L(1, 0))).is_zero());
}

TEST(Projections, DecomposeIdentity) {
  TreeElement x = TreeElement::scalar(Poly::parse("x", ring()));
  x += single(L(1, 0));
  x += single(V({L(1, 0), L(2, 1)}), 3);
  x += sym_product(single(L(1, 0)), single(L(2, 1)));
  TreeElement sum = project(x, Component::Scalar) + project(x, Component::Trivial) + project(x, Component::Tree) +
                    project(x, Component::Product);
  EXPECT_EQ(sum, x);
  for (auto c : {Component::Scalar, Component::Trivial, Component::Tree, Component::Product})
    EXPECT_EQ(project(project(x, c), c), project(x, c));
  TreeElement ab = sym_product(single(L(1, 0)), single(L(2, 1)));
  EXPECT_EQ(project(ab, Component::Product), ab);
  EXPECT_TRUE(project(ab, Component::Trivial).is_zero());
}

// ---------------------------------------------------------------- encoding

TEST(Encoding, RoundTrip) {
  auto r = Ring::make({"x", "y"});
  auto res = build_taylor({Poly::parse("x^2", r), Poly::parse("x*y", r), Poly::parse("y^2", r)});
  auto name = namer_for(res);
  for (const std::string s : {"(e{1} e{2})", "((e{1} e{2}) e{3})", "|e{1,2}|", "(e{1} (e{2} e{3}) e{1,2})"}) {
    Node t = parse_tree(s, res);
    EXPECT_EQ(encode_tree(t, name), s);
  }
  EXPECT_THROW(parse_tree("(e{1} e{9})", res), ParseError);
  EXPECT_THROW(parse_tree("(e{1})", res), ParseError);
  EXPECT_THROW(parse_tree("(e{1} e{2}", res), ParseError);
}

TEST(Enumeration, CountsAndOrder) {
  // One generator of degree 1 (odd) and one of degree 2.
  TreeBasis basis({Gen{1, 0}, Gen{2, 0}});
  EXPECT_EQ(basis.trees(1).size(), 1u);
  EXPECT_EQ(basis.trees(2).size(), 1u);
  // degree 3: (g1 ... ) needs two children of total degree 2: only {g1, g1}, which is zero.
  EXPECT_EQ(basis.trees(3).size(), 0u);
  // degree 4: children total 3: {g1, g2}; three children {g1,g1,g1} is zero.
  EXPECT_EQ(basis.trees(4).size(), 1u);
  for (int d = 1; d <= 7; ++d) {
    const auto& ts = basis.trees(d);
    EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
    for (const auto& t : ts) {
      EXPECT_EQ(t.degree(), d);
      Canonical c = canonicalize(t.node());
      EXPECT_EQ(c.sign, 1);
      EXPECT_EQ(c.tree, t);
    }
  }
}
