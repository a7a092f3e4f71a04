#include "arbokt/ainfty.hpp"

#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace arbokt {

namespace {

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

int degree_sum(const std::vector<Gen>& g) {
  int s = 0;
  for (const auto& x : g) s += x.deg;
  return s;
}

/// Chain split by generator degree.
std::map<int, Chain> homogeneous_parts(const Chain& c) {
  std::map<int, Chain> out;
  for (const auto& [g, p] : c) out[g.deg].emplace(g, p);
  return out;
}

/// Calls f(coefficient, generators) for every term of the multilinear expansion.
void expand_terms(const std::vector<Chain>& args, const RingPtr& ring,
                  const std::function<void(const Poly&, const std::vector<Gen>&)>& f) {
  std::vector<Gen> gens(args.size());
  std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t k, const Poly& coeff) {
    if (k == args.size()) {
      f(coeff, gens);
      return;
    }
    for (const auto& [g, p] : args[k]) {
      gens[k] = g;
      rec(k + 1, coeff * p);
    }
  };
  rec(0, Poly::one(ring));
}

/// Calls f(parts, degrees) for every choice of one homogeneous component per argument.
void expand_homogeneous(const std::vector<Chain>& args,
                        const std::function<void(const std::vector<Chain>&, const std::vector<int>&)>& f) {
  std::vector<std::map<int, Chain>> parts;
  for (const auto& a : args) parts.push_back(homogeneous_parts(a));
  std::vector<Chain> pick(args.size());
  std::vector<int> degs(args.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == args.size()) {
      f(pick, degs);
      return;
    }
    for (const auto& [d, c] : parts[k]) {
      pick[k] = c;
      degs[k] = d;
      rec(k + 1);
    }
  };
  rec(0);
}

Chain mu_on_generators(const PsiTable& psi, const std::vector<Gen>& g) {
  const Resolution& res = psi.resolution();
  const RingPtr& ring = res.ring();
  std::size_t n = g.size();
  if (n == 1) return g[0].is_unit() ? Chain{} : chain_neg(res.d(g[0]));
  if (n == 2) {
    if (g[0].is_unit()) return chain_of(g[1], Poly::one(ring));
    if (g[1].is_unit()) return chain_of(g[0], Poly::one(ring));
    return psi.eval(Node::vertex({Node::leaf(g[0]), Node::leaf(g[1])}));
  }
  for (const auto& x : g)
    if (x.is_unit()) return {};
  int shift = 0;
  for (std::size_t i = 0; i < n; ++i) shift += static_cast<int>(n - 1 - i) * g[i].deg;
  Chain out;
  for (const auto& shape : binary_trees(n)) {
    Node t = decorate(shape, g);
    Chain v = psi.eval(t);
    if (v.empty()) continue;
    chain_axpy(out, Poly(ring, Rational(parity_sign(left_weight_P(t) + shift))), v);
  }
  return out;
}

std::string describe_args(const Resolution& res, const std::vector<Chain>& args) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < args.size(); ++k) os << (k ? ", " : "") << res.to_string(args[k]);
  os << ")";
  return os.str();
}

/// Tuples of generators from pool whose degree sum is at most max_sum.
void for_each_tuple(const std::vector<Gen>& pool, std::size_t n, int max_sum,
                    const std::function<void(const std::vector<Gen>&)>& f) {
  std::vector<Gen> cur(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int sum) {
    if (k == n) {
      f(cur);
      return;
    }
    for (const auto& g : pool) {
      if (sum + g.deg > max_sum) continue;
      cur[k] = g;
      rec(k + 1, sum + g.deg);
    }
  };
  rec(0, 0);
}

/// Largest tree degree with a possibly nonzero known value.
int evaluable_degree(const PsiTable& psi) {
  return psi.complete() ? psi.vanishing_bound() : psi.max_degree();
}

void gens_to_chains(const std::vector<Gen>& g, const RingPtr& ring, std::vector<Chain>& out) {
  out.clear();
  for (const auto& x : g) out.push_back(chain_of(x, Poly::one(ring)));
}

void record(RelationRow& row, const Resolution& res, const std::vector<Chain>& args, const Chain& residual) {
  ++row.tuples;
  if (residual.empty()) return;
  if (row.failures++ == 0)
    row.first_failure = describe_args(res, args) + " -> " + res.to_string(residual);
}

Poly random_poly(std::mt19937_64& rng, const RingPtr& ring) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  Poly p(ring, Rational(coeff(rng)));
  for (std::size_t v = 0; v < ring->nvars(); ++v) p += Poly::variable(ring, v) * Rational(coeff(rng));
  return p;
}

}  // namespace

int KnElement::degree() const { return degree_sum(decorations) + static_cast<int>(decorations.size()) - 1; }

TreeElement KnElement::canonical(const RingPtr& ring) const {
  TreeElement e(ring);
  for (const auto& t : terms) e.add(canonicalize(t.tree), Poly(ring, Rational(t.sign)));
  return e;
}

const std::vector<Node>& binary_trees(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Node>> memo;
  if (n == 0) throw InputError("binary trees need at least one leaf");
  std::lock_guard<std::mutex> lock(mu);
  std::function<const std::vector<Node>&(std::size_t)> build = [&](std::size_t m) -> const std::vector<Node>& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<Node> out;
    if (m == 1) {
      out.push_back(Node::leaf(Gen{1, 0}));
    } else {
      for (std::size_t j = 1; j < m; ++j)
        for (const auto& l : build(j))
          for (const auto& r : build(m - j)) out.push_back(Node::vertex({l, r}));
    }
    for (auto& t : out) {
      std::vector<Gen> labels;
      for (std::size_t i = 0; i < m; ++i) labels.push_back(Gen{1, i});
      t = decorate(t, labels);
    }
    return memo.emplace(m, std::move(out)).first->second;
  };
  return build(n);
}

KnElement build_kn(const std::vector<Gen>& decorations) {
  if (decorations.empty()) throw InputError("k_n needs at least one decoration");
  KnElement k;
  k.decorations = decorations;
  if (decorations.size() == 1) {
    k.terms.push_back({1, Node::leaf(decorations[0])});
    return k;
  }
  for (std::size_t j = 1; j < decorations.size(); ++j) {
    KnElement left = build_kn({decorations.begin(), decorations.begin() + static_cast<std::ptrdiff_t>(j)});
    KnElement right = build_kn({decorations.begin() + static_cast<std::ptrdiff_t>(j), decorations.end()});
    int s = parity_sign(left.degree());
    for (const auto& l : left.terms)
      for (const auto& r : right.terms) k.terms.push_back({s * l.sign * r.sign, Node::vertex({l.tree, r.tree})});
  }
  return k;
}

KnElement kn_closed_form(const std::vector<Gen>& decorations) {
  KnElement k;
  k.decorations = decorations;
  for (const auto& shape : binary_trees(decorations.size())) {
    Node t = decorate(shape, decorations);
    k.terms.push_back({parity_sign(left_weight_P(t)), std::move(t)});
  }
  return k;
}

TreeElement kn_boundary(const KnElement& k, const RingPtr& ring) {
  TreeElement out(ring);
  for (const auto& t : k.terms) {
    if (t.tree.is_leaf()) continue;
    out.axpy(Poly(ring, Rational(t.sign)), boundary(t.tree, ring));
  }
  return out;
}

Chain mu(const PsiTable& psi, const std::vector<Chain>& args) {
  if (args.empty()) throw InputError("mu needs at least one argument");
  Chain out;
  expand_terms(args, psi.ring(), [&](const Poly& c, const std::vector<Gen>& g) {
    chain_axpy(out, c, mu_on_generators(psi, g));
  });
  return out;
}

Chain mu_via_kn(const PsiTable& psi, const std::vector<Gen>& args) {
  for (const auto& g : args)
    if (g.is_unit()) throw InputError("mu_via_kn takes module generators only");
  std::size_t n = args.size();
  int eta = 0;
  for (std::size_t r = 0; r < n; ++r) eta += args[r].deg * static_cast<int>(n - 1 - r);
  Chain v = psi.eval(build_kn(args).canonical(psi.ring()));
  return parity_sign(eta) > 0 ? v : chain_neg(v);
}

Chain mu2_associator(const PsiTable& psi, const Chain& a, const Chain& b, const Chain& c) {
  Chain out = mu(psi, {a, mu(psi, {b, c})});
  chain_axpy(out, Poly(psi.ring(), Rational(-1)), mu(psi, {mu(psi, {a, b}), c}));
  return out;
}

Chain ainfty_residual(const PsiTable& psi, const std::vector<Chain>& args) {
  const RingPtr& ring = psi.ring();
  std::size_t n = args.size();
  Chain out;
  expand_homogeneous(args, [&](const std::vector<Chain>& a, const std::vector<int>& deg) {
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i + j <= n; ++i) {
        std::size_t k = n - i - j;
        int e = static_cast<int>(i + j * k);
        for (std::size_t r = 0; r < i; ++r) e += (static_cast<int>(j) - 2) * deg[r];
        Chain inner = mu(psi, std::vector<Chain>(a.begin() + static_cast<std::ptrdiff_t>(i),
                                                 a.begin() + static_cast<std::ptrdiff_t>(i + j)));
        if (inner.empty()) continue;
        std::vector<Chain> outer(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
        outer.push_back(std::move(inner));
        outer.insert(outer.end(), a.begin() + static_cast<std::ptrdiff_t>(i + j), a.end());
        chain_axpy(out, Poly(ring, Rational(parity_sign(e))), mu(psi, outer));
      }
  });
  return out;
}

Chain cinfty_residual(const PsiTable& psi, const std::vector<Chain>& args, std::size_t i) {
  const RingPtr& ring = psi.ring();
  std::size_t n = args.size();
  if (i == 0 || i >= n) throw InputError("shuffle split must lie strictly between 0 and n");
  Chain out;
  expand_homogeneous(args, [&](const std::vector<Chain>& a, const std::vector<int>& deg) {
    std::vector<bool> first(n, false);
    std::fill(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(i), true);
    std::sort(first.begin(), first.end());
    do {
      std::vector<std::size_t> perm;
      std::size_t p = 0, q = i;
      for (std::size_t pos = 0; pos < n; ++pos) perm.push_back(first[pos] ? p++ : q++);
      std::vector<Chain> list;
      for (std::size_t pos = 0; pos < n; ++pos) list.push_back(a[perm[pos]]);
      int s = koszul_sign(perm, deg) * koszul_sign(perm, std::vector<int>(n, 1));
      chain_axpy(out, Poly(ring, Rational(s)), mu(psi, list));
    } while (std::next_permutation(first.begin(), first.end()));
  });
  return out;
}

bool AInftyReport::passed() const {
  for (const auto& r : rows)
    if (r.failures) return false;
  return true;
}

AInftyReport verify_ainfty(const PsiTable& psi, std::size_t n_max, const AInftyOptions& opts) {
  const Resolution& res = psi.resolution();
  const RingPtr& ring = psi.ring();
  AInftyReport rep;
  rep.degree_bound = psi.complete() ? psi.vanishing_bound() : psi.max_degree() - 1;
  std::vector<Gen> pool{Gen::unit()};
  for (const auto& g : res.generators()) pool.push_back(g);
  std::vector<Gen> modules = res.generators();
  std::mt19937_64 rng(opts.seed);
  for (std::size_t n = 1; n <= n_max; ++n) {
    RelationRow row;
    row.relation = "ainfty";
    row.n = n;
    int max_sum = rep.degree_bound - static_cast<int>(n) + 2;
    std::vector<Chain> args;
    for_each_tuple(pool, n, max_sum, [&](const std::vector<Gen>& g) {
      gens_to_chains(g, ring, args);
      record(row, res, args, ainfty_residual(psi, args));
    });
    if (!modules.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, modules.size() - 1);
      std::size_t made = 0;
      for (std::size_t attempt = 0; made < opts.random_tuples && attempt < 50 * opts.random_tuples; ++attempt) {
        std::vector<Chain> mixed;
        int sum = 0;
        for (std::size_t k = 0; k < n; ++k) {
          Gen g = modules[pick(rng)];
          sum += g.deg;
          Chain c = chain_of(g, random_poly(rng, ring));
          chain_add(c, Gen::unit(), random_poly(rng, ring));
          mixed.push_back(std::move(c));
        }
        if (sum > max_sum) continue;
        ++made;
        record(row, res, mixed, ainfty_residual(psi, mixed));
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

AInftyReport verify_cinfty(const PsiTable& psi, std::size_t n_max) {
  const Resolution& res = psi.resolution();
  const RingPtr& ring = psi.ring();
  AInftyReport rep;
  rep.degree_bound = evaluable_degree(psi);
  std::vector<Gen> modules = res.generators();
  for (std::size_t n = 2; n <= n_max; ++n)
    for (std::size_t i = 1; i < n; ++i) {
      RelationRow row;
      row.relation = "cinfty";
      row.n = n;
      row.i = i;
      std::vector<Chain> args;
      for_each_tuple(modules, n, rep.degree_bound - static_cast<int>(n) + 1, [&](const std::vector<Gen>& g) {
        gens_to_chains(g, ring, args);
        record(row, res, args, cinfty_residual(psi, args, i));
      });
      rep.rows.push_back(std::move(row));
    }
  return rep;
}

std::vector<MuValue> nonzero_mu(const PsiTable& psi, std::size_t n) {
  std::vector<MuValue> out;
  std::vector<Chain> args;
  int max_sum = evaluable_degree(psi) - static_cast<int>(n) + 1;
  for_each_tuple(psi.resolution().generators(), n, max_sum, [&](const std::vector<Gen>& g) {
    gens_to_chains(g, psi.ring(), args);
    Chain v = mu(psi, args);
    if (!v.empty()) out.push_back({g, std::move(v)});
  });
  return out;
}

}  // namespace arbokt
