#include <gtest/gtest.h>

#include "arbokt/resolution.hpp"

using namespace arbokt;

namespace {

std::vector<Poly> polys(const RingPtr& r, std::vector<std::string> s) {
  std::vector<Poly> out;
  for (auto& t : s) out.push_back(Poly::parse(t, r));
  return out;
}

Poly P(const std::string& s, const RingPtr& r) { return Poly::parse(s, r); }

std::vector<std::size_t> ranks(const Resolution& res) {
  std::vector<std::size_t> out;
  for (int i = 1; i <= res.length(); ++i) out.push_back(res.rank(i));
  return out;
}

Chain chain(const Resolution& res, std::vector<std::pair<std::string, std::string>> terms) {
  Chain c;
  for (auto& [name, poly] : terms) chain_add(c, *res.find(name), P(poly, res.ring()));
  return c;
}

}  // namespace

TEST(ResolveIdeal, ThreeQuadricsInTwoVariables) {
  auto r = Ring::make({"x", "y"});
  auto res = resolve_ideal(polys(r, {"x^2", "x*y", "y^2"}), 10);
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{3, 2}));
  EXPECT_FALSE(res.truncated());
  EXPECT_TRUE(validate(res).passed());
}

TEST(ResolveIdeal, PrincipalIdeal) {
  auto r = Ring::make({"x"});
  auto res = resolve_ideal(polys(r, {"x^2"}), 10);
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(validate(res).passed());
}

TEST(ResolveIdeal, FourGeneratorsInThreeVariables) {
  auto r = Ring::make({"x", "y", "z"});
  auto res = resolve_ideal(polys(r, {"x^2", "x*y", "y^2", "x*z"}), 10);
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{4, 4, 1}));
  EXPECT_TRUE(validate(res).passed());
}

TEST(ResolveIdeal, TruncationFlag) {
  auto r = Ring::make({"x", "y", "z"});
  auto res = resolve_ideal(polys(r, {"x^2", "x*y", "y^2", "x*z"}), 2);
  EXPECT_EQ(res.length(), 2);
  EXPECT_TRUE(res.truncated());
}

TEST(Koszul, TwoVariables) {
  auto r = Ring::make({"x", "y"});
  auto res = build_koszul(polys(r, {"x", "y"}));
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(res.d(*res.find("theta{1,2}")), chain(res, {{"theta{2}", "x"}, {"theta{1}", "-y"}}));
}

TEST(Koszul, SingleGenerator) {
  auto r = Ring::make({"x"});
  auto res = build_koszul(polys(r, {"x^2"}));
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{1}));
  EXPECT_EQ(res.d(*res.find("theta{1}")), chain_of(Gen::unit(), P("x^2", r)));
}

TEST(Koszul, RegularSequenceIsExact) {
  auto r = Ring::make({"x", "y"});
  EXPECT_TRUE(validate(build_koszul(polys(r, {"x^2", "y^3"}))).passed());
}

TEST(Koszul, NonRegularFailsAtDegreeOne) {
  auto r = Ring::make({"x", "y"});
  auto res = build_koszul(polys(r, {"x", "x*y"}));
  auto rep = validate(res);
  EXPECT_FALSE(rep.passed());
  auto f = rep.first_failure();
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->check, "exactness");
  EXPECT_EQ(f->degree, 1);
  // The product laws hold regardless.
  for (auto& e : rep.entries)
    if (e.check.rfind("product", 0) == 0) EXPECT_TRUE(e.passed) << e.check << " " << e.detail;
}

TEST(Taylor, TwoMonomials) {
  auto r = Ring::make({"x", "y"});
  auto res = build_taylor(polys(r, {"x^2", "x*y"}));
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(res.d(*res.find("e{1,2}")), chain(res, {{"e{2}", "x"}, {"e{1}", "-y"}}));
  const auto& prod = *res.product();
  EXPECT_EQ(prod.multiply(*res.find("e{1}"), *res.find("e{2}")), chain(res, {{"e{1,2}", "x"}}));
  EXPECT_EQ(prod.multiply(*res.find("e{2}"), *res.find("e{1}")), chain(res, {{"e{1,2}", "-x"}}));
  EXPECT_TRUE(prod.multiply(*res.find("e{1}"), *res.find("e{1}")).empty());
}

TEST(Taylor, ThreeQuadricsValidates) {
  auto r = Ring::make({"x", "y"});
  auto res = build_taylor(polys(r, {"x^2", "x*y", "y^2"}));
  EXPECT_EQ(ranks(res), (std::vector<std::size_t>{3, 3, 1}));
  auto rep = validate(res);
  EXPECT_TRUE(rep.passed()) << rep.first_failure()->check;
  // Not minimal: the top differential has a unit coefficient.
  EXPECT_EQ(res.d(*res.find("e{1,2,3}")),
            chain(res, {{"e{2,3}", "x"}, {"e{1,3}", "-1"}, {"e{1,2}", "y"}}));
}

TEST(Taylor, UnitActsAsOne) {
  auto r = Ring::make({"x", "y"});
  auto res = build_taylor(polys(r, {"x^2", "x*y"}));
  Gen e1 = *res.find("e{1}");
  EXPECT_EQ(res.product()->multiply(Gen::unit(), e1), chain_of(e1, Poly::one(r)));
}

TEST(Validate, BrokenDifferentialIsReported) {
  auto r = Ring::make({"x", "y"});
  FreeModule m1(2, {"a", "b"}, 1), m2(1, {"c"}, 2), o(1, {"1"}, 0);
  ModuleMap d1(r, m1, o, {{P("x", r), P("y", r)}});
  ModuleMap d2(r, m2, m1, {{P("y", r)}, {P("x", r)}});
  Resolution res(r, polys(r, {"x", "y"}), {m1, m2}, {d1, d2});
  auto rep = validate(res);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.first_failure()->check, "d^2=0");
}

TEST(Resolution, RejectsDuplicateNames) {
  auto r = Ring::make({"x"});
  FreeModule m1(1, {"a"}, 1), m2(1, {"a"}, 2), o(1, {"1"}, 0);
  ModuleMap d1(r, m1, o, {{P("x", r)}});
  ModuleMap d2(r, m2, m1, {{P("0", r)}});
  EXPECT_THROW(Resolution(r, polys(r, {"x"}), {m1, m2}, {d1, d2}), InputError);
}

TEST(ResolutionProperties, GenericOutputAlwaysValidates) {
  auto r = Ring::make({"x", "y", "z"});
  std::vector<std::vector<std::string>> ideals = {
      {"x*y", "y*z", "x*z"}, {"x^2", "y^2", "z^2"}, {"x^2 - y*z", "x*y"}, {"x^3", "x^2*y", "y^2*z"}};
  for (auto& id : ideals) {
    auto res = resolve_ideal(polys(r, id), 6);
    auto rep = validate(res);
    EXPECT_TRUE(rep.passed()) << id[0] << ": " << rep.first_failure()->check;
  }
}
