#include "arbokt/reduced.hpp"

#include <map>

namespace arbokt {

ArborescentKT::ArborescentKT(const KTComplex& kt) : kt_(kt), basis_(kt.resolution()) {}

std::vector<CTree> ArborescentKT::generators(int degree) const {
  if (degree < 1) return {};
  return basis_.trees(degree);
}

ExteriorKoszulKT::ExteriorKoszulKT(const std::vector<Poly>& gens)
    : res_(std::make_shared<const Resolution>(build_koszul(gens))), gens_(gens) {}

std::vector<CTree> ExteriorKoszulKT::generators(int degree) const {
  std::vector<CTree> out;
  if (degree != 1) return out;
  for (std::size_t i = 0; i < gens_.size(); ++i) out.push_back(CTree::trivial(Gen{1, i}));
  return out;
}

TreeElement ExteriorKoszulKT::delta(const CTree& generator) const {
  if (!generator.is_trivial() || generator.degree() != 1 || generator.decorations()[0].idx >= gens_.size())
    throw InputError("not a generator of the exterior Koszul resolution");
  return TreeElement::scalar(gens_[generator.decorations()[0].idx]);
}

std::size_t rank_of(QMatrix m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

ReducedComplex reduce_at_origin(const KTGenerators& kt, int max_degree) {
  if (max_degree < 1) throw InputError("reduced complex needs max_degree >= 1");
  ReducedComplex rc;
  rc.top = max_degree + 1;
  if (rc.top > kt.max_degree())
    throw InputError("reduced complex to degree " + std::to_string(max_degree) + " needs delta up to degree " +
                     std::to_string(rc.top));
  rc.namer = kt.namer();
  rc.basis.resize(rc.top + 1);
  rc.matrix.resize(rc.top + 1);
  std::vector<std::map<CTree, std::size_t>> index(rc.top + 1);
  for (int i = 1; i <= rc.top; ++i) {
    rc.basis[i] = kt.generators(i);
    for (std::size_t k = 0; k < rc.basis[i].size(); ++k) index[i].emplace(rc.basis[i][k], k);
  }
  for (int i = 2; i <= rc.top; ++i) {
    QMatrix& m = rc.matrix[i];
    m.assign(rc.dim(i - 1), std::vector<Rational>(rc.dim(i), Rational(0)));
    for (std::size_t c = 0; c < rc.dim(i); ++c) {
      TreeElement d = kt.delta(rc.basis[i][c]);
      for (const auto& [forest, coeff] : d.terms()) {
        if (forest.size() != 1) continue;
        auto it = index[i - 1].find(forest[0]);
        if (it == index[i - 1].end())
          throw InternalFault("delta of " + encode_tree(rc.basis[i][c], rc.namer) + " leaves the generators: " +
                              encode_tree(forest[0], rc.namer));
        m[it->second][c] += coeff.constant_term();
      }
    }
  }
  for (int i = 3; i <= rc.top; ++i) {
    const QMatrix& a = rc.matrix[i - 1];
    const QMatrix& b = rc.matrix[i];
    for (std::size_t r = 0; r < rc.dim(i - 2); ++r)
      for (std::size_t c = 0; c < rc.dim(i); ++c) {
        Rational s = 0;
        for (std::size_t k = 0; k < rc.dim(i - 1); ++k)
          if (a[r][k] != 0 && b[k][c] != 0) s += a[r][k] * b[k][c];
        if (s != 0)
          throw InternalFault("reduced differential squares to a nonzero map at " +
                              encode_tree(rc.basis[i][c], rc.namer));
      }
  }
  return rc;
}

BettiVector betti(const ReducedComplex& rc) {
  BettiVector out;
  out.max_degree = rc.top - 1;
  out.b.assign(rc.top, std::nullopt);
  out.generators.assign(rc.top, 0);
  std::vector<std::size_t> rank(rc.top + 2, 0);
  for (int i = 2; i <= rc.top; ++i) rank[i] = rank_of(rc.matrix[i]);
  for (int i = 1; i < rc.top; ++i) {
    out.generators[i] = rc.dim(i);
    out.b[i] = rc.dim(i) - rank[i] - rank[i + 1];
  }
  return out;
}

MinimalityReport is_minimal(const ReducedComplex& rc) {
  MinimalityReport rep;
  for (int i = 2; i <= rc.top; ++i)
    for (std::size_t c = 0; c < rc.dim(i); ++c)
      for (std::size_t r = 0; r < rc.dim(i - 1); ++r) {
        const Rational& x = rc.matrix[i][r][c];
        if (x == 0) continue;
        rep.minimal = false;
        rep.violations.push_back({rc.basis[i][c], rc.basis[i - 1][r], x, encode_tree(rc.basis[i][c], rc.namer),
                                  encode_tree(rc.basis[i - 1][r], rc.namer)});
      }
  return rep;
}

Witness witness_Tm(const KTComplex& kt, int m) {
  if (m < 0) throw InputError("witness index must be non-negative");
  const Resolution& res = kt.resolution();
  std::vector<Monomial> monos;
  for (const auto& g : res.generators(1)) {
    Chain d = res.d(g);
    auto it = d.find(Gen::unit());
    if (d.size() != 1 || it == d.end() || !it->second.is_monomial())
      throw InputError("witness trees need degree-one generators mapping to monomials");
    monos.push_back(it->second.leading_term().mono);
  }
  Witness w;
  w.m = m;
  bool found = false;
  for (std::size_t i = 0; i < monos.size() && !found; ++i)
    for (std::size_t j = i + 1; j < monos.size() && !found; ++j)
      for (std::size_t v = 0; v < monos[i].nvars(); ++v)
        if (monos[i][v] > 0 && monos[j][v] > 0) {
          w.i = i;
          w.j = j;
          found = true;
          break;
        }
  if (!found) throw InputError("no witness pair: the generators are pairwise coprime monomials");

  Node t = Node::leaf(Gen{1, w.i});
  for (int k = 0; k < m; ++k) t = Node::vertex({t, Node::leaf(Gen{1, w.j})});
  Canonical c = canonicalize(t);
  if (c.sign == 0) throw InternalFault("witness tree vanishes");
  w.tree = c.tree;
  w.text = encode_tree(c.tree, kt.namer());

  ArborescentKT gens(kt);
  int deg = 2 * m + 1;
  ReducedComplex rc = reduce_at_origin(gens, deg);
  std::vector<Rational> v(rc.dim(deg), Rational(0));
  auto pos = std::find(rc.basis[deg].begin(), rc.basis[deg].end(), w.tree);
  if (pos == rc.basis[deg].end()) throw InternalFault("witness tree is not a generator");
  v[static_cast<std::size_t>(pos - rc.basis[deg].begin())] = c.sign;

  w.closed = true;
  if (deg >= 2)
    for (std::size_t r = 0; r < rc.dim(deg - 1); ++r) {
      Rational s = 0;
      for (std::size_t k = 0; k < v.size(); ++k) s += rc.matrix[deg][r][k] * v[k];
      if (s != 0) w.closed = false;
    }
  QMatrix aug = rc.matrix[deg + 1];
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(v[r]);
  w.exact = rank_of(aug) == rank_of(rc.matrix[deg + 1]);
  return w;
}

}  // namespace arbokt
