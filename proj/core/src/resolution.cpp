#include "arbokt/resolution.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace arbokt {

// ---------------------------------------------------------------- Chain helpers

void chain_add(Chain& c, const Gen& g, const Poly& p) {
  if (p.is_zero()) return;
  auto it = c.find(g);
  if (it == c.end()) {
    c.emplace(g, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) c.erase(it);
}

void chain_axpy(Chain& c, const Poly& f, const Chain& x) {
  if (f.is_zero()) return;
  for (const auto& [g, p] : x) chain_add(c, g, f * p);
}

Chain chain_scale(const Poly& f, const Chain& x) {
  Chain out;
  chain_axpy(out, f, x);
  return out;
}

Chain chain_neg(const Chain& x) {
  Chain out;
  for (const auto& [g, p] : x) out.emplace(g, -p);
  return out;
}

Chain chain_of(const Gen& g, const Poly& p) {
  Chain c;
  chain_add(c, g, p);
  return c;
}

// ---------------------------------------------------------------- DgcaProduct

void DgcaProduct::set(const Gen& a, const Gen& b, Chain value) { table_[{a, b}] = std::move(value); }

Chain DgcaProduct::multiply(const Gen& a, const Gen& b) const {
  if (a.is_unit() || b.is_unit()) return chain_of(a.is_unit() ? b : a, Poly::one(ring_));
  if (auto it = table_.find({a, b}); it != table_.end()) return it->second;
  if (auto it = table_.find({b, a}); it != table_.end())
    return (a.deg * b.deg) % 2 ? chain_neg(it->second) : it->second;
  return {};
}

Chain DgcaProduct::multiply(const Chain& x, const Chain& y) const {
  Chain out;
  for (const auto& [a, p] : x)
    for (const auto& [b, q] : y) {
      Poly f = p * q;
      if (f.is_zero()) continue;
      if (a.is_unit() || b.is_unit()) {
        chain_add(out, a.is_unit() ? b : a, f);
        continue;
      }
      chain_axpy(out, f, multiply(a, b));
    }
  return out;
}

// ---------------------------------------------------------------- Resolution

Resolution::Resolution(RingPtr ring, std::vector<Poly> ideal, std::vector<FreeModule> modules,
                       std::vector<ModuleMap> differentials)
    : ring_(std::move(ring)), ideal_(std::move(ideal)), modules_(std::move(modules)), diffs_(std::move(differentials)) {
  if (modules_.size() != diffs_.size()) throw InputError("resolution: one differential per module is required");
  for (std::size_t k = 0; k < modules_.size(); ++k) {
    int deg = static_cast<int>(k) + 1;
    if (modules_[k].degree() != deg)
      throw InputError("resolution: module " + std::to_string(k + 1) + " has degree " +
                       std::to_string(modules_[k].degree()));
    const ModuleMap& d = diffs_[k];
    if (!(d.source() == modules_[k])) throw InputError("resolution: d_" + std::to_string(deg) + " has the wrong source");
    std::size_t target_rank = k == 0 ? 1 : modules_[k - 1].rank();
    if (d.target().rank() != target_rank)
      throw InputError("resolution: d_" + std::to_string(deg) + " has the wrong target rank");
    check_same_ring(ring_, d.ring());
    for (std::size_t i = 0; i < modules_[k].rank(); ++i) {
      const std::string& n = modules_[k].name(i);
      if (n == "1") throw InputError("resolution: generator name '1' is reserved for the unit");
      if (!by_name_.emplace(n, Gen{deg, i}).second) throw InputError("resolution: duplicate generator name '" + n + "'");
    }
  }
  for (const auto& p : ideal_) check_same_ring(ring_, p.ring());
}

std::size_t Resolution::rank(int i) const {
  if (i == 0) return 1;
  if (i < 0 || i > length()) return 0;
  return modules_[i - 1].rank();
}

std::vector<Gen> Resolution::generators() const {
  std::vector<Gen> out;
  for (int i = 1; i <= length(); ++i)
    for (std::size_t j = 0; j < rank(i); ++j) out.push_back({i, j});
  return out;
}

std::vector<Gen> Resolution::generators(int degree) const {
  std::vector<Gen> out;
  if (degree < 1 || degree > length()) return out;
  for (std::size_t j = 0; j < rank(degree); ++j) out.push_back({degree, j});
  return out;
}

std::string Resolution::name(const Gen& g) const {
  if (g.is_unit()) return "1";
  return module(g.deg).name(g.idx);
}

std::optional<Gen> Resolution::find(const std::string& name) const {
  if (name == "1") return Gen::unit();
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Chain Resolution::d(const Gen& g) const {
  Chain out;
  if (g.is_unit()) return out;
  const ModuleMap& m = d(g.deg);
  for (std::size_t i = 0; i < m.target().rank(); ++i) {
    Gen t = g.deg == 1 ? Gen::unit() : Gen{g.deg - 1, i};
    chain_add(out, t, m.entry(i, g.idx));
  }
  return out;
}

Chain Resolution::d(const Chain& c) const {
  Chain out;
  for (const auto& [g, p] : c) chain_axpy(out, p, d(g));
  return out;
}

ModuleElement Resolution::to_element(const Chain& c, int degree) const {
  ModuleElement v(ring_, rank(degree));
  for (const auto& [g, p] : c) {
    if (g.deg != degree) throw InternalFault("chain has a term outside degree " + std::to_string(degree));
    v.add_to(g.idx, p);
  }
  return v;
}

Chain Resolution::from_element(const ModuleElement& v, int degree) const {
  Chain out;
  for (const auto& [i, p] : v.coords()) chain_add(out, degree == 0 ? Gen::unit() : Gen{degree, i}, p);
  return out;
}

std::string Resolution::to_string(const Chain& c) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, p] : c) {
    if (!first) os << " + ";
    first = false;
    if (g.is_unit()) {
      os << "(" << p.to_string() << ")";
    } else {
      os << "(" << p.to_string() << ")*" << name(g);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- builders

Resolution resolve_ideal(const std::vector<Poly>& gens, int max_length) {
  if (gens.empty()) throw InputError("resolve_ideal: no generators");
  if (max_length < 1) throw InputError("resolve_ideal: max_length must be at least 1");
  RingPtr ring = gens.front().ring();
  for (const auto& g : gens) {
    check_same_ring(ring, g.ring());
    if (g.is_zero()) throw InputError("resolve_ideal: zero generator");
  }
  std::vector<FreeModule> mods;
  std::vector<ModuleMap> diffs;
  FreeModule o(1, {"1"}, 0);
  mods.push_back(FreeModule::with_default_names(gens.size(), 1));
  diffs.emplace_back(ring, mods.back(), o, std::vector<std::vector<Poly>>{gens});
  bool truncated = false;
  while (true) {
    auto ker = kernel_generators(diffs.back());
    if (ker.empty()) break;
    if (static_cast<int>(mods.size()) == max_length) {
      truncated = true;
      break;
    }
    int deg = static_cast<int>(mods.size()) + 1;
    FreeModule m = FreeModule::with_default_names(ker.size(), deg);
    std::vector<std::vector<Poly>> mat(mods.back().rank(), std::vector<Poly>(ker.size(), Poly::zero(ring)));
    for (std::size_t j = 0; j < ker.size(); ++j)
      for (std::size_t i = 0; i < mods.back().rank(); ++i) mat[i][j] = ker[j].get(i);
    diffs.emplace_back(ring, m, mods.back(), std::move(mat));
    mods.push_back(std::move(m));
  }
  Resolution res(ring, gens, std::move(mods), std::move(diffs));
  res.set_truncated(truncated);
  return res;
}

namespace {

std::string subset_name(const std::string& prefix, const std::vector<std::size_t>& s) {
  std::string out = prefix + "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Complex on subsets of {1..k}: d e_S = sum_{p} (-1)^p coeff_d(S, S_p) e_{S - S_p} and
// e_S * e_T = (-1)^{inv(S,T)} coeff_prod(S, T) e_{S u T} for disjoint S, T.
Resolution subset_complex(const RingPtr& ring, const std::vector<Poly>& gens, const std::string& prefix,
                          const std::function<Poly(const std::vector<std::size_t>&, std::size_t)>& coeff_d,
                          const std::function<Poly(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>&
                              coeff_prod) {
  const std::size_t k = gens.size();
  std::vector<std::vector<std::vector<std::size_t>>> subsets(k + 1);
  std::map<std::vector<std::size_t>, Gen> index;
  for (std::size_t s = 1; s <= k; ++s) {
    combinations(k, s, subsets[s]);
    for (std::size_t j = 0; j < subsets[s].size(); ++j) index[subsets[s][j]] = Gen{static_cast<int>(s), j};
  }
  std::vector<FreeModule> mods;
  std::vector<ModuleMap> diffs;
  for (std::size_t s = 1; s <= k; ++s) {
    std::vector<std::string> names;
    for (const auto& S : subsets[s]) names.push_back(subset_name(prefix, S));
    FreeModule m(subsets[s].size(), std::move(names), static_cast<int>(s));
    std::size_t trank = s == 1 ? 1 : subsets[s - 1].size();
    std::vector<std::vector<Poly>> mat(trank, std::vector<Poly>(subsets[s].size(), Poly::zero(ring)));
    for (std::size_t j = 0; j < subsets[s].size(); ++j) {
      const auto& S = subsets[s][j];
      for (std::size_t p = 0; p < S.size(); ++p) {
        std::vector<std::size_t> rest = S;
        rest.erase(rest.begin() + p);
        std::size_t row = s == 1 ? 0 : index.at(rest).idx;
        Poly c = coeff_d(S, S[p]);
        mat[row][j] = p % 2 ? -c : c;
      }
    }
    diffs.emplace_back(ring, m, s == 1 ? FreeModule(1, {"1"}, 0) : mods.back(), std::move(mat));
    mods.push_back(std::move(m));
  }
  DgcaProduct prod(ring);
  for (const auto& [S, gs] : index)
    for (const auto& [T, gt] : index) {
      if (S.size() + T.size() > k) continue;
      std::vector<std::size_t> U;
      std::set_union(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(U));
      if (U.size() != S.size() + T.size()) continue;
      std::size_t inv = 0;
      for (auto i : S)
        for (auto j : T)
          if (i > j) ++inv;
      Poly c = coeff_prod(S, T);
      prod.set(gs, gt, chain_of(index.at(U), inv % 2 ? -c : c));
    }
  Resolution res(ring, gens, std::move(mods), std::move(diffs));
  res.set_product(std::move(prod));
  return res;
}

}  // namespace

Resolution build_koszul(const std::vector<Poly>& gens) {
  if (gens.empty()) throw InputError("build_koszul: no generators");
  RingPtr ring = gens.front().ring();
  for (const auto& g : gens) check_same_ring(ring, g.ring());
  return subset_complex(
      ring, gens, "theta", [&](const std::vector<std::size_t>&, std::size_t j) { return gens[j]; },
      [&](const std::vector<std::size_t>&, const std::vector<std::size_t>&) { return Poly::one(ring); });
}

Resolution build_taylor(const std::vector<Poly>& monomials) {
  if (monomials.empty()) throw InputError("build_taylor: no generators");
  RingPtr ring = monomials.front().ring();
  std::vector<Monomial> m;
  for (const auto& g : monomials) {
    check_same_ring(ring, g.ring());
    if (!g.is_monomial() || g.leading_term().coeff != 1)
      throw InputError("build_taylor: '" + g.to_string() + "' is not a monic monomial");
    m.push_back(g.leading_term().mono);
  }
  auto lcm_of = [&](const std::vector<std::size_t>& S) {
    Monomial l(ring->nvars());
    for (auto i : S) l = monomial_lcm(l, m[i]);
    return l;
  };
  return subset_complex(
      ring, monomials, "e",
      [&](const std::vector<std::size_t>& S, std::size_t j) {
        std::vector<std::size_t> rest;
        for (auto i : S)
          if (i != j) rest.push_back(i);
        return Poly(ring, *monomial_quotient(lcm_of(S), lcm_of(rest)));
      },
      [&](const std::vector<std::size_t>& S, const std::vector<std::size_t>& T) {
        std::vector<std::size_t> U;
        std::set_union(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(U));
        return Poly(ring, *monomial_quotient(lcm_of(S) * lcm_of(T), lcm_of(U)));
      });
}

// ---------------------------------------------------------------- validate

bool ValidationReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ValidationEntry& e) { return e.passed; });
}

std::optional<ValidationEntry> ValidationReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.passed) return e;
  return std::nullopt;
}

ValidationReport validate(const Resolution& res, const ValidateOptions& opts) {
  ValidationReport rep;
  const RingPtr& ring = res.ring();
  const int N = res.length();

  for (int i = 2; i <= N; ++i) {
    ValidationEntry e{"d^2=0", i, true, ""};
    for (const auto& g : res.generators(i)) {
      Chain dd = res.d(res.d(g));
      if (!dd.empty()) {
        e.passed = false;
        e.detail = "d(d(" + res.name(g) + ")) = " + res.to_string(dd);
        break;
      }
    }
    rep.entries.push_back(std::move(e));
  }

  if (N >= 1) {
    ValidationEntry e{"image=ideal", 1, true, ""};
    std::vector<ModuleElement> ideal, image;
    for (const auto& p : res.ideal()) ideal.push_back(ModuleElement(ring, 1, {p}));
    image = res.d(1).columns();
    auto gi = groebner(ideal, 1, ring), gm = groebner(image, 1, ring);
    for (const auto& v : image)
      if (!gi.contains(v)) {
        e.passed = false;
        e.detail = "image generator " + v.to_string() + " is not in the ideal";
      }
    for (const auto& v : ideal)
      if (!gm.contains(v)) {
        e.passed = false;
        e.detail = "ideal generator " + v.to_string() + " is not in the image";
      }
    rep.entries.push_back(std::move(e));
  }

  if (opts.check_exactness) {
    for (int i = 1; i <= N; ++i) {
      if (i == N && res.truncated()) break;
      ValidationEntry e{"exactness", i, true, ""};
      auto ker = kernel_generators(res.d(i));
      if (i == N) {
        if (!ker.empty()) {
          e.passed = false;
          e.detail = "top differential has kernel element " + ker.front().to_string();
        }
      } else {
        auto gb = groebner(res.d(i + 1).columns(), res.rank(i), ring);
        for (const auto& k : ker)
          if (!gb.contains(k)) {
            e.passed = false;
            e.detail = "cycle " + k.to_string() + " is not a boundary";
            break;
          }
      }
      rep.entries.push_back(std::move(e));
    }
  }

  if (opts.check_product && res.product()) {
    const DgcaProduct& prod = *res.product();
    auto gens = res.generators();
    auto one = [&](const Gen& g) { return chain_of(g, Poly::one(ring)); };

    ValidationEntry comm{"product-commutativity", 0, true, ""};
    for (const auto& [key, val] : prod.table()) {
      const auto& [a, b] = key;
      bool odd = (a.deg * b.deg) % 2;
      if (a == b && odd && !val.empty()) {
        comm.passed = false;
        comm.detail = res.name(a) + " squares to a nonzero element";
      }
      auto it = prod.table().find({b, a});
      if (it != prod.table().end() && it->second != (odd ? chain_neg(val) : val)) {
        comm.passed = false;
        comm.detail = res.name(a) + " and " + res.name(b) + " do not graded-commute";
      }
      for (const auto& [g, p] : val)
        if (g.deg != a.deg + b.deg) {
          comm.passed = false;
          comm.detail = "product of " + res.name(a) + " and " + res.name(b) + " has the wrong degree";
        }
    }
    rep.entries.push_back(std::move(comm));

    ValidationEntry assoc{"product-associativity", 0, true, ""};
    for (const auto& a : gens)
      for (const auto& b : gens)
        for (const auto& c : gens) {
          if (a.deg + b.deg + c.deg > N || !assoc.passed) continue;
          Chain l = prod.multiply(prod.multiply(one(a), one(b)), one(c));
          Chain r = prod.multiply(one(a), prod.multiply(one(b), one(c)));
          if (l != r) {
            assoc.passed = false;
            assoc.detail = "(" + res.name(a) + "*" + res.name(b) + ")*" + res.name(c) + " differs";
          }
        }
    rep.entries.push_back(std::move(assoc));

    ValidationEntry leib{"product-leibniz", 0, true, ""};
    for (const auto& a : gens)
      for (const auto& b : gens) {
        if (!leib.passed) continue;
        Chain lhs = res.d(prod.multiply(one(a), one(b)));
        Chain rhs = prod.multiply(res.d(a), one(b));
        Chain t = prod.multiply(one(a), res.d(b));
        chain_axpy(rhs, a.deg % 2 ? -Poly::one(ring) : Poly::one(ring), t);
        if (lhs != rhs) {
          leib.passed = false;
          leib.detail = "Leibniz rule fails on " + res.name(a) + ", " + res.name(b);
        }
      }
    rep.entries.push_back(std::move(leib));
  }
  return rep;
}

}  // namespace arbokt
