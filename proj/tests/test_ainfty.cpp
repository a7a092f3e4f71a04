#include <gtest/gtest.h>

#include <map>
#include <random>

#include "arbokt/ainfty.hpp"
#include "arbokt/io.hpp"
#include "fixture_util.hpp"

using namespace arbokt;
using namespace testutil;

namespace {

Poly P(const std::string& s, const RingPtr& r) { return Poly::parse(s, r); }

Gen G(const Resolution& res, const char* name) { return *res.find(name); }

Chain C(const Resolution& res, const char* name) { return chain_of(G(res, name), Poly::one(res.ring())); }

Chain scalar(const Poly& p) { return chain_of(Gen::unit(), p); }

std::map<std::string, int> signed_terms(const KnElement& k) {
  GenNamer name = default_namer();
  std::map<std::string, int> out;
  for (const auto& t : k.terms) out[encode_tree(t.tree, name)] += t.sign;
  return out;
}

Node L3(const Gen& a, const Gen& b, const Gen& c) {
  return Node::vertex({Node::vertex({Node::leaf(a), Node::leaf(b)}), Node::leaf(c)});
}
Node R3(const Gen& a, const Gen& b, const Gen& c) {
  return Node::vertex({Node::leaf(a), Node::vertex({Node::leaf(b), Node::leaf(c)})});
}

std::vector<Gen> random_decorations(std::mt19937_64& rng, std::size_t n) {
  std::vector<Gen> out;
  std::uniform_int_distribution<int> deg(1, 4);
  std::uniform_int_distribution<std::size_t> idx(0, 2);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Gen{deg(rng), idx(rng)});
  return out;
}

struct ThirdExample : ::testing::Test {
  static void SetUpTestSuite() {
    res = load_res("monomial");
    reference = std::make_unique<PsiTable>(load_table("monomial", res));
    corrected = std::make_unique<PsiTable>(load_psi(fixture_path("monomial_psi_corrected.json"), res));
  }
  static void TearDownTestSuite() {
    reference.reset();
    corrected.reset();
    res.reset();
  }
  static std::shared_ptr<const Resolution> res;
  static std::unique_ptr<PsiTable> reference;
  static std::unique_ptr<PsiTable> corrected;
};
std::shared_ptr<const Resolution> ThirdExample::res;
std::unique_ptr<PsiTable> ThirdExample::reference;
std::unique_ptr<PsiTable> ThirdExample::corrected;

}  // namespace

// ---------------------------------------------------------------- k_n

TEST(BinaryTrees, CatalanCounts) {
  std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42};
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(binary_trees(n).size(), catalan[n - 1]) << n;
}

TEST(Kn, TwoLeaves) {
  Gen a{1, 0}, b{2, 1}, c{2, 0};
  KnElement k = build_kn({a, b});
  ASSERT_EQ(k.terms.size(), 1u);
  EXPECT_EQ(k.terms[0].sign, -1);
  EXPECT_EQ(k.terms[0].tree, Node::vertex({Node::leaf(a), Node::leaf(b)}));
  EXPECT_EQ(build_kn({c, b}).terms[0].sign, 1);
  EXPECT_EQ(k.degree(), 4);
}

TEST(Kn, ThreeLeaves) {
  for (int da = 1; da <= 2; ++da)
    for (int db = 1; db <= 2; ++db) {
      Gen a{da, 0}, b{db, 1}, c{1, 2};
      auto terms = signed_terms(build_kn({a, b, c}));
      GenNamer name = default_namer();
      ASSERT_EQ(terms.size(), 2u);
      EXPECT_EQ(terms[encode_tree(R3(a, b, c), name)], (da + db) % 2 ? -1 : 1);
      EXPECT_EQ(terms[encode_tree(L3(a, b, c), name)], db % 2 ? 1 : -1);
    }
}

TEST(Kn, RecursionMatchesClosedForm) {
  std::mt19937_64 rng(20240611);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      auto decos = random_decorations(rng, n);
      KnElement a = build_kn(decos);
      KnElement b = kn_closed_form(decos);
      EXPECT_EQ(a.terms.size(), binary_trees(n).size());
      EXPECT_EQ(signed_terms(a), signed_terms(b)) << "n = " << n;
      int sum = 0;
      for (const auto& g : decos) sum += g.deg;
      EXPECT_EQ(a.degree(), sum + static_cast<int>(n) - 1);
    }
}

TEST(Kn, BoundaryVanishes) {
  auto ring = Ring::make({"x"});
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      KnElement k = build_kn(random_decorations(rng, n));
      EXPECT_TRUE(kn_boundary(k, ring).is_zero()) << "n = " << n;
    }
}

TEST(Kn, SingleTermBoundaryDoesNotVanish) {
  auto ring = Ring::make({"x"});
  Gen a{1, 0};
  KnElement k = build_kn({a, Gen{1, 1}, Gen{2, 0}});
  k.terms.pop_back();
  EXPECT_FALSE(kn_boundary(k, ring).is_zero());
}

// ---------------------------------------------------------------- mu_n

TEST(Mu, LowArities) {
  auto res = load_res("maxsq");
  PsiTable psi = construct_psi(res, 6);
  const RingPtr& r = res->ring();
  Chain a = C(*res, "pixx"), b = C(*res, "pixy");
  EXPECT_EQ(mu(psi, {a}), chain_of(Gen::unit(), P("-x^2", r)));
  EXPECT_EQ(mu(psi, {C(*res, "pixxy")}), chain(*res, {{"pixy", "-x"}, {"pixx", "y"}}));
  EXPECT_TRUE(mu(psi, {scalar(P("x", r))}).empty());
  EXPECT_EQ(mu(psi, {a, b}), psi.eval(tree("(pixx pixy)", *res)));
  EXPECT_EQ(mu(psi, {scalar(P("y", r)), a}), chain(*res, {{"pixx", "y"}}));
  EXPECT_EQ(mu(psi, {a, scalar(P("y", r))}), chain(*res, {{"pixx", "y"}}));
  EXPECT_EQ(mu(psi, {scalar(P("x", r)), scalar(P("y", r))}), scalar(P("x*y", r)));
  EXPECT_TRUE(mu(psi, {a, scalar(P("1", r)), b}).empty());
}

TEST(Mu, IsMultilinear) {
  auto res = load_res("maxsq");
  PsiTable psi = construct_psi(res, 6);
  const RingPtr& r = res->ring();
  Chain a = chain(*res, {{"pixx", "x"}, {"piyy", "y+1"}});
  Chain b = C(*res, "pixy");
  Chain expect;
  chain_axpy(expect, P("x", r), mu(psi, {C(*res, "pixx"), b, b}));
  chain_axpy(expect, P("y+1", r), mu(psi, {C(*res, "piyy"), b, b}));
  EXPECT_EQ(mu(psi, {a, b, b}), expect);
}

TEST_F(ThirdExample, MuThreeIsSignedSumOfTheTwoShapes) {
  Gen a = G(*res, "pia"), e = G(*res, "pie"), c = G(*res, "pic"), ab = G(*res, "piab");
  for (const auto& args : std::vector<std::vector<Gen>>{{a, e, c}, {a, c, e}, {ab, e, c}, {e, ab, a}}) {
    Chain expect = chain_neg(corrected->eval(L3(args[0], args[1], args[2])));
    Chain r = corrected->eval(R3(args[0], args[1], args[2]));
    chain_axpy(expect, Poly(res->ring(), Rational(args[0].deg % 2 ? -1 : 1)), r);
    EXPECT_EQ(mu(*corrected, {chain_of(args[0], Poly::one(res->ring())), chain_of(args[1], Poly::one(res->ring())),
                           chain_of(args[2], Poly::one(res->ring()))}),
              expect);
  }
}

TEST_F(ThirdExample, MuThreeIsNonzeroOnAEC) {
  Chain v = mu(*reference, {C(*res, "pia"), C(*res, "pie"), C(*res, "pic")});
  EXPECT_EQ(v, chain(*res, {{"piabde", "-y*z"}}));
  EXPECT_EQ(mu(*corrected, {C(*res, "pia"), C(*res, "pie"), C(*res, "pic")}), v);
}

TEST_F(ThirdExample, AssociatorIdentities) {
  const RingPtr& r = res->ring();
  Chain dpi = res->d(C(*res, "piabde"));
  Chain plus = chain_scale(P("y*z", r), dpi);
  Chain minus = chain_neg(plus);
  for (const PsiTable* t : {reference.get(), corrected.get()}) {
    EXPECT_EQ(mu2_associator(*t, C(*res, "pia"), C(*res, "pie"), C(*res, "pic")), plus);
    EXPECT_EQ(mu2_associator(*t, C(*res, "pia"), C(*res, "pic"), C(*res, "pie")), minus);
    EXPECT_TRUE(ainfty_residual(*t, {C(*res, "pia"), C(*res, "pie"), C(*res, "pic")}).empty());
    EXPECT_TRUE(ainfty_residual(*t, {C(*res, "pia"), C(*res, "pic"), C(*res, "pie")}).empty());
  }
}

TEST_F(ThirdExample, HigherProductsVanish) {
  EXPECT_FALSE(nonzero_mu(*corrected, 3).empty());
  EXPECT_TRUE(nonzero_mu(*corrected, 4).empty());
  EXPECT_TRUE(nonzero_mu(*corrected, 5).empty());
  EXPECT_TRUE(nonzero_mu(*reference, 4).empty());
  EXPECT_TRUE(nonzero_mu(*reference, 5).empty());
}

TEST_F(ThirdExample, RelationsHoldForCorrectedTable) {
  AInftyReport a = verify_ainfty(*corrected, 5);
  for (const auto& row : a.rows) EXPECT_EQ(row.failures, 0u) << row.n << ": " << row.first_failure;
  EXPECT_TRUE(a.passed());
  AInftyReport c = verify_cinfty(*corrected, 4);
  for (const auto& row : c.rows) EXPECT_EQ(row.failures, 0u) << row.n << "," << row.i << ": " << row.first_failure;
  EXPECT_TRUE(c.passed());
}

TEST_F(ThirdExample, ReferenceTableBreaksTheLeibnizRule) {
  AInftyReport a = verify_ainfty(*reference, 3);
  EXPECT_FALSE(a.passed());
  ASSERT_GE(a.rows.size(), 2u);
  EXPECT_EQ(a.rows[0].failures, 0u);
  EXPECT_GT(a.rows[1].failures, 0u);
}

TEST_F(ThirdExample, MuMatchesKnFormula) {
  std::vector<Gen> gens = res->generators();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<Gen> g;
      std::vector<Chain> args;
      for (std::size_t i = 0; i < n; ++i) {
        g.push_back(gens[pick(rng)]);
        args.push_back(chain_of(g.back(), Poly::one(res->ring())));
      }
      EXPECT_EQ(mu(*corrected, args), mu_via_kn(*corrected, g));
    }
}

TEST(Relations, FirstExampleConstructedTable) {
  auto res = load_res("maxsq");
  PsiTable psi = construct_psi(res, 6);
  EXPECT_TRUE(verify_ainfty(psi, 5).passed());
  EXPECT_TRUE(verify_cinfty(psi, 4).passed());
  std::vector<Gen> gens = res->generators();
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : gens) {
      std::vector<Gen> args(n, g);
      std::vector<Chain> c(n, chain_of(g, Poly::one(res->ring())));
      EXPECT_EQ(mu(psi, c), mu_via_kn(psi, args));
    }
}

TEST(Relations, TaylorProductTable) {
  auto ring = Ring::make({"x", "y"});
  auto res = share(build_taylor({P("x^2", ring), P("x*y", ring), P("y^2", ring)}));
  PsiTable psi = psi_from_dga(res);
  EXPECT_TRUE(verify_ainfty(psi, 4).passed());
  EXPECT_TRUE(verify_cinfty(psi, 4).passed());
}

TEST(Relations, ShuffleOfTwoIsGradedSymmetry) {
  auto res = load_res("maxsq");
  PsiTable psi = construct_psi(res, 6);
  for (const auto& a : res->generators())
    for (const auto& b : res->generators()) {
      Chain ca = chain_of(a, Poly::one(res->ring())), cb = chain_of(b, Poly::one(res->ring()));
      Chain expect = mu(psi, {ca, cb});
      Chain swapped = mu(psi, {cb, ca});
      chain_axpy(expect, Poly(res->ring(), Rational((a.deg * b.deg) % 2 ? 1 : -1)), swapped);
      EXPECT_TRUE(expect.empty());
      EXPECT_TRUE(cinfty_residual(psi, {ca, cb}, 1).empty());
    }
}

TEST(Relations, CorruptedBinaryValueIsDetected) {
  auto res = load_res("maxsq");
  PsiTable psi = construct_psi(res, 6);
  psi.set(tree("(pixx pixy)", *res), chain(*res, {{"pixxy", "2*x"}}));
  AInftyReport rep = verify_ainfty(psi, 2);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.rows[1].first_failure.empty());
}
