#include <benchmark/benchmark.h>

#include "arbokt/ainfty.hpp"
#include "arbokt/io.hpp"
#include "arbokt/reduced.hpp"

using namespace arbokt;

namespace {

std::string fixture(const std::string& file) { return std::string(ARBOKT_FIXTURE_DIR) + "/" + file; }

std::vector<Poly> polys(const RingPtr& r, const std::vector<std::string>& s) {
  std::vector<Poly> out;
  for (const auto& t : s) out.push_back(Poly::parse(t, r));
  return out;
}

void BM_ResolveIdeal(benchmark::State& state) {
  auto ring = Ring::make({"x", "y", "z", "w"});
  auto gens = polys(ring, {"x^2", "x*y", "y^2", "x*z", "z*w", "y*w^2"});
  for (auto _ : state) benchmark::DoNotOptimize(resolve_ideal(gens, 8));
}
BENCHMARK(BM_ResolveIdeal)->Unit(benchmark::kMillisecond);

void BM_ConstructPsi(benchmark::State& state) {
  auto res = load_resolution(fixture("quadrics_resolution.json"));
  int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(construct_psi(res, degree));
}
BENCHMARK(BM_ConstructPsi)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_DeltaSquared(benchmark::State& state) {
  auto res = load_resolution(fixture("monomial_resolution.json"));
  PsiTable psi = load_psi(fixture("monomial_psi_corrected.json"), res);
  int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    KTComplex kt(psi, degree);
    benchmark::DoNotOptimize(verify_delta_squared(kt));
  }
}
BENCHMARK(BM_DeltaSquared)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_TreeEnumeration(benchmark::State& state) {
  auto res = load_resolution(fixture("monomial_resolution.json"));
  int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TreeBasis basis(*res);
    benchmark::DoNotOptimize(basis.trees(degree).size());
  }
}
BENCHMARK(BM_TreeEnumeration)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

void BM_VerifyAinfty(benchmark::State& state) {
  auto res = load_resolution(fixture("monomial_resolution.json"));
  PsiTable psi = load_psi(fixture("monomial_psi_corrected.json"), res);
  std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_ainfty(psi, n));
}
BENCHMARK(BM_VerifyAinfty)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_BettiTaylor(benchmark::State& state) {
  auto ring = Ring::make({"x", "y"});
  auto res = std::make_shared<const Resolution>(build_taylor(polys(ring, {"x^2", "x*y", "y^2"})));
  int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    KTComplex kt(psi_from_dga(res), degree + 1);
    ArborescentKT gens(kt);
    benchmark::DoNotOptimize(betti(reduce_at_origin(gens, degree)));
  }
}
BENCHMARK(BM_BettiTaylor)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
