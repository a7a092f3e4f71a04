#include <gtest/gtest.h>

#include <algorithm>

#include "arbokt/io.hpp"
#include "arbokt/reduced.hpp"
#include "fixture_util.hpp"

using namespace arbokt;
using namespace testutil;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return Poly::parse(s, r); }

std::vector<Poly> polys(const RingPtr& r, std::vector<std::string> s) {
  std::vector<Poly> out;
  for (auto& t : s) out.push_back(Poly::parse(t, r));
  return out;
}

CTree ctree(const std::string& text, const Resolution& res) { return canonicalize(tree(text, res)).tree; }

/// Same resolution with the generators of every degree listed in reverse order.
Resolution reversed(const Resolution& res) {
  std::vector<FreeModule> mods;
  std::vector<ModuleMap> diffs;
  for (int i = 1; i <= res.length(); ++i) {
    auto names = res.module(i).names();
    std::reverse(names.begin(), names.end());
    mods.emplace_back(names.size(), names, i);
  }
  for (int i = 1; i <= res.length(); ++i) {
    auto m = res.d(i).matrix();
    if (i > 1) std::reverse(m.begin(), m.end());
    for (auto& row : m) std::reverse(row.begin(), row.end());
    FreeModule target = i == 1 ? FreeModule(1, {"1"}, 0) : mods[i - 2];
    diffs.emplace_back(res.ring(), mods[i - 1], target, std::move(m));
  }
  return Resolution(res.ring(), res.ideal(), std::move(mods), std::move(diffs));
}

bool all_matrices_zero(const ReducedComplex& rc) {
  for (int i = 2; i <= rc.top; ++i)
    for (const auto& row : rc.matrix[i])
      for (const auto& x : row)
        if (x != 0) return false;
  return true;
}

bool betti_equals_counts(const BettiVector& b) {
  for (int i = 1; i <= b.max_degree; ++i)
    if (*b.b[i] != b.generators[i]) return false;
  return true;
}

struct TaylorSquare : ::testing::Test {
  static void SetUpTestSuite() {
    auto ring = Ring::make({"x", "y"});
    res = share(build_taylor(polys(ring, {"x^2", "x*y", "y^2"})));
    kt = std::make_unique<KTComplex>(psi_from_dga(res), 7);
    gens = std::make_unique<ArborescentKT>(*kt);
    rc = std::make_unique<ReducedComplex>(reduce_at_origin(*gens, 6));
  }
  static void TearDownTestSuite() {
    rc.reset();
    gens.reset();
    kt.reset();
    res.reset();
  }
  static std::shared_ptr<const Resolution> res;
  static std::unique_ptr<KTComplex> kt;
  static std::unique_ptr<ArborescentKT> gens;
  static std::unique_ptr<ReducedComplex> rc;
};
std::shared_ptr<const Resolution> TaylorSquare::res;
std::unique_ptr<KTComplex> TaylorSquare::kt;
std::unique_ptr<ArborescentKT> TaylorSquare::gens;
std::unique_ptr<ReducedComplex> TaylorSquare::rc;

}  // namespace

TEST(Rank, SmallMatrices) {
  EXPECT_EQ(rank_of({}), 0u);
  EXPECT_EQ(rank_of({{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(rank_of({{0, 1, 0}, {1, 0, 0}, {1, 1, 0}}), 2u);
  EXPECT_EQ(rank_of({{Rational(1, 2), 1}, {1, 3}}), 2u);
}

TEST(ExteriorKoszul, PrincipalIdeal) {
  auto ring = Ring::make({"x"});
  ExteriorKoszulKT kt(polys(ring, {"x^2"}));
  ReducedComplex rc = reduce_at_origin(kt, 4);
  EXPECT_TRUE(all_matrices_zero(rc));
  BettiVector b = betti(rc);
  EXPECT_FALSE(b.b[0].has_value());
  EXPECT_EQ(*b.b[1], 1u);
  for (int i = 2; i <= 4; ++i) EXPECT_EQ(*b.b[i], 0u);
}

TEST(ExteriorKoszul, CompleteIntersectionIsMinimal) {
  auto ring = Ring::make({"x", "y"});
  ExteriorKoszulKT kt(polys(ring, {"x^2", "y^3"}));
  ReducedComplex rc = reduce_at_origin(kt, 6);
  BettiVector b = betti(rc);
  EXPECT_EQ(*b.b[1], 2u);
  for (int i = 2; i <= 6; ++i) EXPECT_EQ(*b.b[i], 0u) << i;
  MinimalityReport m = is_minimal(rc);
  EXPECT_TRUE(m.minimal);
  EXPECT_TRUE(all_matrices_zero(rc));
  EXPECT_TRUE(betti_equals_counts(b));
  EXPECT_EQ(b.generators[2], 0u);
}

TEST(ExteriorKoszul, DifferentialIsTheGenerator) {
  auto ring = Ring::make({"x", "y"});
  ExteriorKoszulKT kt(polys(ring, {"x^2", "y^3"}));
  auto g = kt.generators(1);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(kt.delta(g[1]), TreeElement::scalar(P("y^3", ring)));
  EXPECT_TRUE(kt.generators(2).empty());
}

TEST(ArborescentKoszul, SameBettiButNotMinimal) {
  auto ring = Ring::make({"x", "y"});
  auto res = share(build_koszul(polys(ring, {"x^2", "y^3"})));
  KTComplex kt(psi_from_dga(res), 6);
  ArborescentKT gens(kt);
  ReducedComplex rc = reduce_at_origin(gens, 5);
  BettiVector b = betti(rc);
  EXPECT_EQ(*b.b[1], 2u);
  for (int i = 2; i <= 5; ++i) EXPECT_EQ(*b.b[i], 0u) << i;
  MinimalityReport m = is_minimal(rc);
  EXPECT_FALSE(m.minimal);
  ASSERT_TRUE(m.first());
  EXPECT_EQ(m.first()->source, ctree("(theta{1} theta{2})", *res));
  EXPECT_EQ(m.first()->target, ctree("|theta{1,2}|", *res));
  EXPECT_EQ(abs(m.first()->coefficient), 1);
  EXPECT_FALSE(all_matrices_zero(rc));
  EXPECT_FALSE(betti_equals_counts(b));
}

TEST_F(TaylorSquare, MatricesComposeToZero) {
  for (int i = 3; i <= rc->top; ++i) {
    const QMatrix& a = rc->matrix[i - 1];
    const QMatrix& b = rc->matrix[i];
    for (std::size_t r = 0; r < rc->dim(i - 2); ++r)
      for (std::size_t c = 0; c < rc->dim(i); ++c) {
        Rational s = 0;
        for (std::size_t k = 0; k < rc->dim(i - 1); ++k) s += a[r][k] * b[k][c];
        EXPECT_EQ(s, 0);
      }
  }
}

TEST_F(TaylorSquare, BettiBounds) {
  BettiVector b = betti(*rc);
  EXPECT_EQ(b.max_degree, 6);
  EXPECT_EQ(*b.b[1], 3u);
  EXPECT_GE(*b.b[3], 1u);
  EXPECT_GE(*b.b[5], 1u);
  for (int i = 1; i <= 6; ++i) EXPECT_LE(*b.b[i], b.generators[i]);
}

TEST_F(TaylorSquare, NotMinimalAndCorollaIsRedundant) {
  MinimalityReport m = is_minimal(*rc);
  EXPECT_FALSE(m.minimal);
  ASSERT_TRUE(m.first());
  EXPECT_EQ(m.first()->source, ctree("|e{1,2,3}|", *res));
  EXPECT_EQ(m.first()->target, ctree("|e{1,3}|", *res));
  CTree pair = ctree("(e{1} e{3})", *res);
  EXPECT_TRUE(std::any_of(m.violations.begin(), m.violations.end(), [&](const Violation& v) {
    return v.source == pair && v.target == ctree("|e{1,3}|", *res);
  }));
  CTree corolla = ctree("(e{1} e{2} e{3})", *res);
  EXPECT_TRUE(std::any_of(m.violations.begin(), m.violations.end(),
                          [&](const Violation& v) { return v.target == corolla; }));
  EXPECT_FALSE(all_matrices_zero(*rc));
  EXPECT_FALSE(betti_equals_counts(betti(*rc)));
}

TEST_F(TaylorSquare, WitnessTrees) {
  for (int m = 0; m <= 2; ++m) {
    Witness w = witness_Tm(*kt, m);
    EXPECT_EQ(w.i, 0u);
    EXPECT_EQ(w.j, 1u);
    EXPECT_EQ(w.tree.degree(), 2 * m + 1);
    EXPECT_TRUE(w.closed) << m;
    EXPECT_FALSE(w.exact) << m;
    EXPECT_TRUE(w.certified());
  }
  EXPECT_EQ(witness_Tm(*kt, 0).tree, ctree("|e{1}|", *res));
  EXPECT_EQ(witness_Tm(*kt, 1).tree, ctree("(e{1} e{2})", *res));
  EXPECT_EQ(witness_Tm(*kt, 2).tree, ctree("((e{1} e{2}) e{2})", *res));
  EXPECT_THROW(witness_Tm(*kt, 3), InputError);
}

TEST(Witness, CoprimeGeneratorsHaveNoWitness) {
  auto ring = Ring::make({"x", "y"});
  auto res = share(build_taylor(polys(ring, {"x^2", "y^3"})));
  KTComplex kt(psi_from_dga(res), 4);
  try {
    witness_Tm(kt, 1);
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("no witness pair"), std::string::npos);
  }
}

TEST(FirstExample, RedundantCorolla) {
  auto res = load_res("maxsq");
  KTComplex kt(construct_psi(res, 6), 6);
  ArborescentKT gens(kt);
  ReducedComplex rc = reduce_at_origin(gens, 5);
  MinimalityReport m = is_minimal(rc);
  EXPECT_FALSE(m.minimal);
  ASSERT_TRUE(m.first());
  EXPECT_EQ(m.first()->target, ctree("(pixx pixy piyy)", *res));
  EXPECT_EQ(m.first()->source.degree(), 5);
  for (const auto& row : rc.matrix[3])
    for (const auto& x : row) EXPECT_EQ(x, 0);
}

TEST(FirstExample, BettiIndependentOfGeneratorOrder) {
  auto res = load_res("maxsq");
  auto rev = share(reversed(*res));
  PsiTable a = construct_psi(res, 6);
  PsiTable b = construct_psi(rev, 6);
  KTComplex ka(a, 6), kb(b, 6);
  ArborescentKT ga(ka), gb(kb);
  BettiVector ba = betti(reduce_at_origin(ga, 5));
  BettiVector bb = betti(reduce_at_origin(gb, 5));
  EXPECT_EQ(ba.b, bb.b);
  EXPECT_EQ(*ba.b[1], 3u);
}

TEST(Reduce, RejectsDegreesBeyondTheComplex) {
  auto res = load_res("maxsq");
  KTComplex kt(construct_psi(res, 4), 4);
  ArborescentKT gens(kt);
  EXPECT_THROW(reduce_at_origin(gens, 4), InputError);
}
