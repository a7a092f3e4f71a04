#include "arbokt/freemod.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace arbokt {

// ---------------------------------------------------------------- FreeModule

FreeModule::FreeModule(std::size_t rank, std::vector<std::string> names, int degree)
    : names_(std::move(names)), degree_(degree) {
  if (names_.size() != rank) throw InputError("free module: expected " + std::to_string(rank) + " generator names");
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw InputError("free module: duplicate generator name '" + n + "'");
}

FreeModule FreeModule::with_default_names(std::size_t rank, int degree, const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) names.push_back(prefix + std::to_string(degree) + "_" + std::to_string(i + 1));
  return FreeModule(rank, std::move(names), degree);
}

std::optional<std::size_t> FreeModule::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- ModuleElement

ModuleElement::ModuleElement(RingPtr ring, std::size_t rank, const std::vector<Poly>& dense)
    : ring_(std::move(ring)), rank_(rank) {
  if (dense.size() != rank) throw RingMismatch("dense vector length does not match rank");
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) coords_[i] = dense[i];
}

ModuleElement ModuleElement::basis(RingPtr ring, std::size_t rank, std::size_t i) {
  ModuleElement e(ring, rank);
  e.set(i, Poly::one(ring));
  return e;
}

Poly ModuleElement::get(std::size_t i) const {
  auto it = coords_.find(i);
  return it == coords_.end() ? Poly::zero(ring_) : it->second;
}

void ModuleElement::set(std::size_t i, Poly p) {
  if (i >= rank_) throw RingMismatch("coordinate index out of range");
  if (p.is_zero()) coords_.erase(i);
  else coords_[i] = std::move(p);
}

void ModuleElement::add_to(std::size_t i, const Poly& p) {
  if (p.is_zero()) return;
  if (i >= rank_) throw RingMismatch("coordinate index out of range");
  auto it = coords_.find(i);
  if (it == coords_.end()) {
    coords_.emplace(i, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) coords_.erase(it);
}

std::vector<Poly> ModuleElement::dense() const {
  std::vector<Poly> d(rank_, Poly::zero(ring_));
  for (const auto& [i, p] : coords_) d[i] = p;
  return d;
}

void ModuleElement::check(const ModuleElement& other) const {
  if (rank_ != other.rank_) throw RingMismatch("module elements have different ranks");
  check_same_ring(ring_, other.ring_);
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  check(other);
  if (!ring_) ring_ = other.ring_;
  for (const auto& [i, p] : other.coords_) add_to(i, p);
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  check(other);
  if (!ring_) ring_ = other.ring_;
  for (const auto& [i, p] : other.coords_) add_to(i, -p);
  return *this;
}

ModuleElement& ModuleElement::operator*=(const Poly& f) {
  if (f.is_zero()) {
    coords_.clear();
    return *this;
  }
  for (auto it = coords_.begin(); it != coords_.end();) {
    it->second *= f;
    if (it->second.is_zero()) it = coords_.erase(it);
    else ++it;
  }
  return *this;
}

ModuleElement ModuleElement::operator-() const {
  ModuleElement r = *this;
  for (auto& [i, p] : r.coords_) p = -p;
  return r;
}

bool ModuleElement::operator==(const ModuleElement& other) const {
  if (rank_ != other.rank_ || coords_.size() != other.coords_.size()) return false;
  auto a = coords_.begin();
  auto b = other.coords_.begin();
  for (; a != coords_.end(); ++a, ++b)
    if (a->first != b->first || a->second != b->second) return false;
  return true;
}

std::string ModuleElement::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < rank_; ++i) os << (i ? ", " : "") << get(i).to_string();
  os << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ModuleElement& v) { return os << v.to_string(); }

// ---------------------------------------------------------------- ModuleMap

ModuleMap::ModuleMap(RingPtr ring, FreeModule source, FreeModule target, std::vector<std::vector<Poly>> matrix)
    : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.size() != target_.rank())
    throw InputError("matrix has " + std::to_string(matrix_.size()) + " rows, target rank is " +
                     std::to_string(target_.rank()));
  for (const auto& row : matrix_) {
    if (row.size() != source_.rank())
      throw InputError("matrix row has " + std::to_string(row.size()) + " entries, source rank is " +
                       std::to_string(source_.rank()));
    for (const auto& p : row) check_same_ring(ring_, p.ring());
  }
}

ModuleElement ModuleMap::column(std::size_t j) const {
  ModuleElement c(ring_, target_.rank());
  for (std::size_t i = 0; i < target_.rank(); ++i) c.set(i, matrix_[i].at(j));
  return c;
}

std::vector<ModuleElement> ModuleMap::columns() const {
  std::vector<ModuleElement> cols;
  for (std::size_t j = 0; j < source_.rank(); ++j) cols.push_back(column(j));
  return cols;
}

ModuleElement ModuleMap::apply(const ModuleElement& v) const {
  if (v.rank() != source_.rank()) throw RingMismatch("vector rank does not match the map's source");
  ModuleElement out(ring_, target_.rank());
  for (const auto& [j, p] : v.coords())
    for (std::size_t i = 0; i < target_.rank(); ++i)
      if (!matrix_[i][j].is_zero()) out.add_to(i, matrix_[i][j] * p);
  return out;
}

ModuleMap ModuleMap::compose(const ModuleMap& other) const {
  if (other.target_.rank() != source_.rank()) throw RingMismatch("maps are not composable");
  std::vector<std::vector<Poly>> m(target_.rank(), std::vector<Poly>(other.source_.rank(), Poly::zero(ring_)));
  for (std::size_t j = 0; j < other.source_.rank(); ++j) {
    ModuleElement c = apply(other.column(j));
    for (std::size_t i = 0; i < target_.rank(); ++i) m[i][j] = c.get(i);
  }
  return ModuleMap(ring_, other.source_, target_, std::move(m));
}

bool ModuleMap::is_zero() const {
  for (const auto& row : matrix_)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- Groebner internals

namespace {

struct MTerm {
  std::size_t pos;
  Monomial mono;
  Rational coeff;
};

// Position-over-term: a lower position index is larger; ties broken by degrevlex.
int pot_compare(std::size_t pa, const Monomial& ma, std::size_t pb, const Monomial& mb) {
  if (pa != pb) return pa < pb ? 1 : -1;
  return degrevlex_compare(ma, mb);
}

// Sparse vector with terms sorted in decreasing POT order.
using SVec = std::vector<MTerm>;

SVec to_svec(const ModuleElement& v) {
  SVec out;
  for (const auto& [i, p] : v.coords())
    for (const auto& t : p.terms()) out.push_back({i, t.mono, t.coeff});
  return out;  // map order (ascending position) with descending terms is already POT-descending
}

ModuleElement from_svec(const SVec& v, const RingPtr& ring, std::size_t rank) {
  ModuleElement out(ring, rank);
  std::map<std::size_t, std::vector<Term>> by_pos;
  for (const auto& t : v) by_pos[t.pos].push_back({t.mono, t.coeff});
  for (auto& [i, terms] : by_pos) out.set(i, Poly::from_terms(ring, std::move(terms)));
  return out;
}

// a - c * m * b
SVec sub_scaled(const SVec& a, const Rational& c, const Monomial& m, const SVec& b, std::size_t skip_a = 0) {
  SVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = skip_a, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    Monomial bm;
    if (j < b.size()) bm = b[j].mono * m;
    if (i >= a.size()) cmp = -1;
    else if (j >= b.size()) cmp = 1;
    else cmp = pot_compare(a[i].pos, a[i].mono, b[j].pos, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({b[j].pos, std::move(bm), -c * b[j].coeff});
      ++j;
    } else {
      Rational s = a[i].coeff - c * b[j].coeff;
      if (s != 0) out.push_back({a[i].pos, a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

using Row = std::vector<Poly>;

void row_axpy(Row& acc, const Poly& f, const Row& r) {
  if (f.is_zero()) return;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (!r[j].is_zero()) acc[j] += f * r[j];
}

struct Reducer {
  const std::vector<SVec>& basis;
  const RingPtr& ring;

  // Full reduction of v; quotients[k] accumulates the multiple of basis[k] subtracted.
  SVec reduce(SVec v, std::vector<Poly>* quotients) const {
    SVec rem;
    std::size_t head = 0;
    while (head < v.size()) {
      const MTerm& lt = v[head];
      bool reduced = false;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const MTerm& g = basis[k].front();
        if (g.pos != lt.pos || !divides(g.mono, lt.mono)) continue;
        Monomial q = *monomial_quotient(lt.mono, g.mono);
        Rational c = lt.coeff / g.coeff;
        if (quotients) (*quotients)[k] += Poly(ring, q, c);
        v = sub_scaled(v, c, q, basis[k], head);
        head = 0;
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.push_back(v[head]);
        ++head;
      }
    }
    return rem;
  }
};

void make_monic(SVec& v, Row& row) {
  Rational c = v.front().coeff;
  if (c == 1) return;
  Rational inv = 1 / c;
  for (auto& t : v) t.coeff *= inv;
  for (auto& p : row) p *= inv;
}

}  // namespace

// ---------------------------------------------------------------- GroebnerBasis

GroebnerBasis GroebnerBasis::compute(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring) {
  GroebnerBasis gb;
  gb.ring_ = ring;
  gb.rank_ = rank;
  gb.ngens_ = gens.size();
  gb.gens_ = gens;
  for (const auto& g : gens) {
    if (g.rank() != rank) throw RingMismatch("generator rank does not match the ambient module");
    check_same_ring(ring, g.ring());
  }

  std::vector<SVec> G;
  std::vector<Row> T;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    SVec v = to_svec(gens[j]);
    if (v.empty()) continue;
    Row row(gens.size(), Poly::zero(ring));
    row[j] = Poly::one(ring);
    make_monic(v, row);
    G.push_back(std::move(v));
    T.push_back(std::move(row));
  }

  // Pair queue ordered by (degree of lcm, second index, first index).
  using PairKey = std::tuple<std::uint32_t, std::size_t, std::size_t>;
  std::set<PairKey> pairs;
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const MTerm& a = G[i].front();
      const MTerm& b = G[k].front();
      if (a.pos != b.pos) continue;
      if (rank == 1 && monomial_gcd(a.mono, b.mono).is_one()) continue;
      pairs.insert({monomial_lcm(a.mono, b.mono).total_degree(), k, i});
    }
  };
  for (std::size_t k = 0; k < G.size(); ++k) add_pairs(k);

  while (!pairs.empty()) {
    auto [deg, k, i] = *pairs.begin();
    pairs.erase(pairs.begin());
    const MTerm& a = G[i].front();
    const MTerm& b = G[k].front();
    Monomial L = monomial_lcm(a.mono, b.mono);
    Monomial qa = *monomial_quotient(L, a.mono);
    Monomial qb = *monomial_quotient(L, b.mono);
    SVec s;
    {
      SVec left;
      for (const auto& t : G[i]) left.push_back({t.pos, t.mono * qa, t.coeff});
      s = sub_scaled(left, Rational(1), qb, G[k]);
    }
    Row row(gens.size(), Poly::zero(ring));
    row_axpy(row, Poly(ring, qa, 1), T[i]);
    row_axpy(row, Poly(ring, qb, -1), T[k]);
    std::vector<Poly> quot(G.size(), Poly::zero(ring));
    Reducer red{G, ring};
    SVec r = red.reduce(std::move(s), &quot);
    if (r.empty()) continue;
    for (std::size_t l = 0; l < quot.size(); ++l) row_axpy(row, -quot[l], T[l]);
    make_monic(r, row);
    G.push_back(std::move(r));
    T.push_back(std::move(row));
    add_pairs(G.size() - 1);
  }

  // Minimalize: drop elements whose leading term is divisible by another's.
  std::vector<bool> keep(G.size(), true);
  for (std::size_t k = 0; k < G.size(); ++k) {
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (i == k || !keep[i]) continue;
      const MTerm& a = G[i].front();
      const MTerm& b = G[k].front();
      if (a.pos == b.pos && divides(a.mono, b.mono) && (!(a.mono == b.mono) || i < k)) {
        keep[k] = false;
        break;
      }
    }
  }
  std::vector<SVec> Gm;
  std::vector<Row> Tm;
  for (std::size_t k = 0; k < G.size(); ++k)
    if (keep[k]) {
      Gm.push_back(std::move(G[k]));
      Tm.push_back(std::move(T[k]));
    }
  // Sort by leading term (POT descending) for a canonical presentation.
  std::vector<std::size_t> order(Gm.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return pot_compare(Gm[x].front().pos, Gm[x].front().mono, Gm[y].front().pos, Gm[y].front().mono) > 0;
  });
  std::vector<SVec> Gs;
  std::vector<Row> Ts;
  for (auto k : order) {
    Gs.push_back(std::move(Gm[k]));
    Ts.push_back(std::move(Tm[k]));
  }
  // Tail-reduce each element against the others.
  for (std::size_t k = 0; k < Gs.size(); ++k) {
    std::vector<SVec> others;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < Gs.size(); ++i)
      if (i != k) {
        others.push_back(Gs[i]);
        idx.push_back(i);
      }
    SVec head(Gs[k].begin(), Gs[k].begin() + 1);
    SVec tail(Gs[k].begin() + 1, Gs[k].end());
    std::vector<Poly> quot(others.size(), Poly::zero(ring));
    Reducer red{others, ring};
    SVec rt = red.reduce(std::move(tail), &quot);
    for (std::size_t l = 0; l < quot.size(); ++l) row_axpy(Ts[k], -quot[l], Ts[idx[l]]);
    head.insert(head.end(), rt.begin(), rt.end());
    Gs[k] = std::move(head);
  }

  for (std::size_t k = 0; k < Gs.size(); ++k) {
    gb.basis_.push_back(from_svec(Gs[k], ring, rank));
    gb.transform_.push_back(std::move(Ts[k]));
  }
  return gb;
}

GroebnerBasis::Reduction GroebnerBasis::reduce(const ModuleElement& v) const {
  if (v.rank() != rank_) throw RingMismatch("vector rank does not match the basis");
  std::vector<SVec> B;
  for (const auto& b : basis_) B.push_back(to_svec(b));
  std::vector<Poly> quot(B.size(), Poly::zero(ring_));
  Reducer red{B, ring_};
  SVec r = red.reduce(to_svec(v), &quot);
  return {from_svec(r, ring_, rank_), std::move(quot)};
}

bool GroebnerBasis::contains(const ModuleElement& v) const { return reduce(v).remainder.is_zero(); }

std::optional<std::vector<Poly>> GroebnerBasis::lift(const ModuleElement& v) const {
  Reduction r = reduce(v);
  if (!r.remainder.is_zero()) return std::nullopt;
  Row c(ngens_, Poly::zero(ring_));
  for (std::size_t k = 0; k < basis_.size(); ++k) row_axpy(c, r.quotients[k], transform_[k]);
  return c;
}

std::vector<ModuleElement> GroebnerBasis::syzygies() const {
  std::vector<ModuleElement> out;
  const std::size_t m = ngens_;
  std::vector<SVec> B;
  for (const auto& b : basis_) B.push_back(to_svec(b));
  Reducer red{B, ring_};

  // S-pair relations among basis elements, pulled back to the original generators.
  for (std::size_t k = 0; k < B.size(); ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      const MTerm& a = B[i].front();
      const MTerm& b = B[k].front();
      if (a.pos != b.pos) continue;
      Monomial L = monomial_lcm(a.mono, b.mono);
      Monomial qa = *monomial_quotient(L, a.mono);
      Monomial qb = *monomial_quotient(L, b.mono);
      SVec left;
      for (const auto& t : B[i]) left.push_back({t.pos, t.mono * qa, t.coeff / a.coeff});
      SVec s = sub_scaled(left, Rational(1) / b.coeff, qb, B[k]);
      std::vector<Poly> quot(B.size(), Poly::zero(ring_));
      SVec r = red.reduce(std::move(s), &quot);
      if (!r.empty()) throw InternalFault("S-pair of a completed Groebner basis did not reduce to zero");
      Row row(m, Poly::zero(ring_));
      row_axpy(row, Poly(ring_, qa, Rational(1) / a.coeff), transform_[i]);
      row_axpy(row, Poly(ring_, qb, Rational(-1) / b.coeff), transform_[k]);
      for (std::size_t l = 0; l < quot.size(); ++l) row_axpy(row, -quot[l], transform_[l]);
      ModuleElement syz(ring_, m, row);
      if (!syz.is_zero()) out.push_back(std::move(syz));
    }
  }
  // Each original generator minus its standard representation.
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Poly> quot(B.size(), Poly::zero(ring_));
    SVec r = red.reduce(to_svec(gens_[j]), &quot);
    if (!r.empty()) throw InternalFault("original generator not reduced to zero by its Groebner basis");
    Row row(m, Poly::zero(ring_));
    row[j] = Poly::one(ring_);
    for (std::size_t l = 0; l < quot.size(); ++l) row_axpy(row, -quot[l], transform_[l]);
    ModuleElement syz(ring_, m, row);
    if (!syz.is_zero()) out.push_back(std::move(syz));
  }
  return out;
}

GroebnerBasis groebner(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring) {
  return GroebnerBasis::compute(gens, rank, ring);
}

LiftResult lift(const ModuleElement& target, const std::vector<ModuleElement>& gens) {
  GroebnerBasis gb = groebner(gens, target.rank(), target.ring());
  auto c = gb.lift(target);
  if (!c) return {false, {}};
  return {true, std::move(*c)};
}

namespace {

std::uint32_t element_degree(const ModuleElement& v) {
  std::uint32_t d = 0;
  for (const auto& [i, p] : v.coords()) d = std::max(d, p.total_degree());
  return d;
}

std::size_t element_size(const ModuleElement& v) {
  std::size_t n = 0;
  for (const auto& [i, p] : v.coords()) n += p.terms().size();
  return n;
}

}  // namespace

std::vector<ModuleElement> prune_generators(std::vector<ModuleElement> gens, std::size_t rank, const RingPtr& ring) {
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const ModuleElement& v) { return v.is_zero(); }),
             gens.end());
  auto lighter = [&](std::size_t a, std::size_t b) {
    auto da = element_degree(gens[a]), db = element_degree(gens[b]);
    if (da != db) return da < db;
    auto sa = element_size(gens[a]), sb = element_size(gens[b]);
    if (sa != sb) return sa < sb;
    return a < b;
  };
  std::vector<std::size_t> order(gens.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), lighter);

  // Ascending pass: keep a candidate only if the lighter accepted ones miss it.
  std::vector<std::size_t> accepted;
  std::vector<ModuleElement> span;
  GroebnerBasis gb = groebner({}, rank, ring);
  for (auto k : order) {
    if (gb.contains(gens[k])) continue;
    accepted.push_back(k);
    span.push_back(gens[k]);
    gb = groebner(span, rank, ring);
  }

  // Descending pass: drop any accepted element spanned by the others.
  std::vector<bool> alive(accepted.size(), true);
  for (std::size_t a = accepted.size(); a-- > 0;) {
    std::vector<ModuleElement> others;
    for (std::size_t b = 0; b < accepted.size(); ++b)
      if (b != a && alive[b]) others.push_back(gens[accepted[b]]);
    if (groebner(others, rank, ring).contains(gens[accepted[a]])) alive[a] = false;
  }
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < accepted.size(); ++a)
    if (alive[a]) keep.push_back(accepted[a]);
  std::sort(keep.begin(), keep.end());
  std::vector<ModuleElement> out;
  for (auto k : keep) out.push_back(std::move(gens[k]));
  return out;
}

std::vector<ModuleElement> syzygies(const std::vector<ModuleElement>& gens, std::size_t rank, const RingPtr& ring) {
  GroebnerBasis gb = groebner(gens, rank, ring);
  return prune_generators(gb.syzygies(), gens.size(), ring);
}

std::vector<ModuleElement> kernel_generators(const ModuleMap& f) {
  return syzygies(f.columns(), f.target().rank(), f.ring());
}

}  // namespace arbokt
