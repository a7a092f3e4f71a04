#include "arbokt/ktcore.hpp"

#include <algorithm>

namespace arbokt {

namespace {

int parity_sign(int e) { return e % 2 ? -1 : 1; }

Poly signed_one(const RingPtr& ring, int sign) { return Poly(ring, Rational(sign)); }

void add_chain_as_trivial(TreeElement& out, const Chain& c, const Poly& factor) {
  for (const auto& [g, p] : c) {
    if (g.is_unit()) out.add(Forest{}, factor * p);
    else out.add(Forest{CTree::trivial(g)}, factor * p);
  }
}

std::string describe(const CTree& t, const Resolution& res) { return encode_tree(t, namer_for(res)); }

}  // namespace

// ---------------------------------------------------------------- PsiTable

PsiTable::PsiTable(std::shared_ptr<const Resolution> res, int max_degree) : res_(std::move(res)), max_degree_(max_degree) {
  if (!res_) throw InputError("psi table: null resolution");
}

void PsiTable::set(const CTree& key, Chain value) {
  if (key.is_trivial()) throw InputError("psi table: keys must be non-trivial trees");
  Canonical c = canonicalize(key.node());
  if (c.sign != 1 || !(c.tree == key)) throw InputError("psi table: key " + describe(key, *res_) + " is not canonical");
  for (const auto& [g, p] : value)
    if (g.deg != key.degree() - 1)
      throw InputError("psi table: value on " + describe(key, *res_) + " has a generator of degree " +
                       std::to_string(g.deg) + ", expected " + std::to_string(key.degree() - 1));
  if (value.empty()) entries_.erase(key);
  else entries_[key] = std::move(value);
}

void PsiTable::set(const Node& t, const Chain& value) {
  Canonical c = canonicalize(t);
  if (c.sign == 0) {
    if (!value.empty()) throw InputError("psi table: a tree that vanishes by symmetry cannot carry a nonzero value");
    return;
  }
  set(c.tree, c.sign < 0 ? chain_neg(value) : value);
}

Chain PsiTable::at(const CTree& key) const {
  int deg = key.degree();
  if (deg > vanishing_bound()) return {};
  if (deg <= max_degree_) {
    auto it = entries_.find(key);
    return it == entries_.end() ? Chain{} : it->second;
  }
  throw Error("psi table incomplete: no values known in degree " + std::to_string(deg) + " (max_degree " +
              std::to_string(max_degree_) + ")");
}

Chain PsiTable::eval(const Node& t) const {
  if (t.is_leaf()) return chain_neg(res_->d(t.gen));
  Canonical c = canonicalize(t);
  if (c.sign == 0) return {};
  Chain v = at(c.tree);
  return c.sign < 0 ? chain_neg(v) : v;
}

Chain PsiTable::eval(const TreeElement& x) const {
  Chain out;
  for (const auto& [f, p] : x.terms()) {
    if (f.size() != 1) throw InputError("psi is defined on single trees only");
    if (f.front().is_trivial()) chain_axpy(out, p, chain_neg(res_->d(f.front().decorations().front())));
    else chain_axpy(out, p, at(f.front()));
  }
  return out;
}

bool PsiTable::operator==(const PsiTable& other) const {
  return max_degree_ == other.max_degree_ && entries_ == other.entries_;
}

// ---------------------------------------------------------------- delta

TreeElement delta_closed_tree(const PsiTable& psi, const CTree& t) {
  const Resolution& res = psi.resolution();
  const RingPtr& ring = psi.ring();
  TreeElement out(ring);
  Poly one = Poly::one(ring);
  if (t.is_trivial()) {
    add_chain_as_trivial(out, res.d(t.decorations().front()), one);
    return out;
  }
  Node n = t.node();
  out.add_unsorted(unroot(t), one);
  out += boundary(n, ring);
  for (const auto& vi : vertex_infos(n)) {
    if (vi.leaf) {
      Chain da = res.d(subtree_at(n, vi.path).gen);
      if (da.empty()) continue;
      out.axpy(signed_one(ring, parity_sign(vi.weight)), substitute_leaf(n, vi.first_leaf, da));
    } else if (!vi.path.empty()) {
      Chain v = psi.eval(subtree_at(n, vi.path));
      if (v.empty()) continue;
      out.axpy(signed_one(ring, -parity_sign(vi.weight)), substitute_subtree(n, vi.path, v));
    }
  }
  add_chain_as_trivial(out, psi.at(t), -one);
  return out;
}

KTComplex::KTComplex(PsiTable psi, int max_degree) : psi_(std::move(psi)), max_degree_(max_degree) {}

void KTComplex::check_degree(int degree) const {
  if (degree > max_degree_)
    throw InputError("delta requested in degree " + std::to_string(degree) + " above the complex bound " +
                     std::to_string(max_degree_));
}

const TreeElement& KTComplex::delta(const CTree& t) const {
  check_degree(t.degree());
  auto it = cache_.find(t);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(t, delta_closed_tree(psi_, t)).first->second;
}

template <class TreeDelta>
TreeElement KTComplex::extend(const TreeElement& x, TreeDelta&& on_tree) const {
  TreeElement out(ring());
  for (const auto& [f, p] : x.terms()) {
    int prefix = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const TreeElement& d = on_tree(f[k]);
      Poly coeff = parity_sign(prefix) < 0 ? -p : p;
      for (const auto& [g, q] : d.terms()) {
        Forest h(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
        h.insert(h.end(), g.begin(), g.end());
        h.insert(h.end(), f.begin() + static_cast<std::ptrdiff_t>(k) + 1, f.end());
        out.add_unsorted(std::move(h), coeff * q);
      }
      prefix += f[k].degree();
    }
  }
  return out;
}

TreeElement KTComplex::delta(const TreeElement& x) const {
  return extend(x, [this](const CTree& t) -> const TreeElement& { return delta(t); });
}

TreeElement KTComplex::delta_recursive(const CTree& t) const {
  check_degree(t.degree());
  auto it = rec_cache_.find(t);
  if (it != rec_cache_.end()) return it->second;
  Poly one = Poly::one(ring());
  TreeElement out(ring());
  if (t.is_trivial()) {
    add_chain_as_trivial(out, resolution().d(t.decorations().front()), one);
  } else {
    TreeElement u = TreeElement::forest(unroot(t), one);
    TreeElement products = project(delta_recursive(u), Component::Product);
    out = u;
    out -= root(products);
    add_chain_as_trivial(out, psi_.at(t), -one);
  }
  return rec_cache_.emplace(t, std::move(out)).first->second;
}

TreeElement KTComplex::delta_recursive(const TreeElement& x) const {
  std::map<CTree, TreeElement> local;
  return extend(x, [&](const CTree& t) -> const TreeElement& {
    auto it = local.find(t);
    if (it == local.end()) it = local.emplace(t, delta_recursive(t)).first;
    return it->second;
  });
}

// ---------------------------------------------------------------- obstruction and construction

Chain psi_obstruction(const PsiTable& psi, const CTree& t) {
  if (t.is_trivial()) throw InputError("obstructions are defined for non-trivial trees");
  const Resolution& res = psi.resolution();
  const RingPtr& ring = psi.ring();
  Node n = t.node();
  Chain out;
  if (n.kids.size() == 2 && n.kids[0].is_leaf() && n.kids[1].is_leaf()) {
    const Gen& a1 = n.kids[0].gen;
    const Gen& a2 = n.kids[1].gen;
    if (a1.deg == 1) {
      Chain d1 = res.d(a1);
      if (auto it = d1.find(Gen::unit()); it != d1.end()) chain_add(out, a2, it->second);
    }
    if (a2.deg == 1) {
      Chain d2 = res.d(a2);
      if (auto it = d2.find(Gen::unit()); it != d2.end()) chain_add(out, a1, parity_sign(a1.deg) < 0 ? -it->second : it->second);
    }
  }
  for (const auto& vi : vertex_infos(n)) {
    Poly s = signed_one(ring, parity_sign(vi.weight));
    if (vi.leaf) {
      Chain da = res.d(subtree_at(n, vi.path).gen);
      if (da.empty()) continue;
      chain_axpy(out, -s, psi.eval(substitute_leaf(n, vi.first_leaf, da)));
    } else if (!vi.path.empty()) {
      chain_axpy(out, -s, psi.eval(merge_vertex(n, vi.path)));
      Chain v = psi.eval(subtree_at(n, vi.path));
      if (!v.empty()) chain_axpy(out, s, psi.eval(substitute_subtree(n, vi.path, v)));
    }
  }
  return out;
}

PsiTable construct_psi(std::shared_ptr<const Resolution> res, int max_degree) {
  PsiTable table(res, max_degree);
  const int top = std::min(max_degree, res->length() + 1);
  TreeBasis basis(*res);
  GenNamer name = namer_for(*res);
  for (int D = 3; D <= top; ++D) {
    const int k = D - 1;
    table.set_max_degree(D);
    KTComplex lower(table, D - 1);
    std::optional<GroebnerBasis> gb;
    for (const CTree& t : basis.nontrivial(D)) {
      TreeElement dd = lower.delta(delta_closed_tree(table, t));
      Chain B;
      for (const auto& [f, p] : dd.terms()) {
        if (f.size() != 1 || !f.front().is_trivial())
          throw InternalFault("delta^2 leaves a residue outside the trivial trees at " + encode_tree(t, name));
        chain_add(B, f.front().decorations().front(), p);
      }
      if (!res->d(B).empty()) throw InternalFault("obstruction at " + encode_tree(t, name) + " is not a cycle");
      if (psi_obstruction(table, t) != B)
        throw InternalFault("closed form and recursion equation disagree at " + encode_tree(t, name));
      if (B.empty()) continue;
      if (k > res->length())
        throw Error("nonzero obstruction at " + encode_tree(t, name) + " above the resolution length");
      if (!gb) gb = GroebnerBasis::compute(res->d(k).columns(), res->rank(k - 1), res->ring());
      auto coeffs = gb->lift(res->to_element(B, k - 1));
      if (!coeffs)
        throw Error("obstruction at " + encode_tree(t, name) + " is not in the image of d_" + std::to_string(k) +
                    ": the resolution is not exact there");
      Chain v;
      for (std::size_t j = 0; j < coeffs->size(); ++j) chain_add(v, Gen{k, j}, (*coeffs)[j]);
      table.set(t, std::move(v));
    }
  }
  table.set_max_degree(max_degree);
  return table;
}

PsiTable psi_from_dga(std::shared_ptr<const Resolution> res) {
  if (!res->product()) throw InputError("psi_from_dga: the resolution carries no product");
  ValidateOptions opts;
  opts.check_exactness = false;
  ValidationReport rep = validate(*res, opts);
  if (auto bad = rep.first_failure())
    throw Error("psi_from_dga: product law violation (" + bad->check + " in degree " + std::to_string(bad->degree) +
                "): " + bad->detail);
  const DgcaProduct& prod = *res->product();
  PsiTable table(res, res->length() + 1);
  TreeBasis basis(*res);
  Poly one = Poly::one(res->ring());
  for (int D = 3; D <= res->length() + 1; ++D)
    for (const CTree& t : basis.nontrivial(D)) {
      if (!t.is_corolla()) continue;
      const auto& decos = t.decorations();
      Chain v = chain_of(decos.front(), one);
      for (std::size_t i = 1; i < decos.size() && !v.empty(); ++i) v = prod.multiply(v, chain_of(decos[i], one));
      table.set(t, std::move(v));
    }
  return table;
}

// ---------------------------------------------------------------- verification

CheckReport verify_delta_squared(const KTComplex& kt) {
  CheckReport rep;
  TreeBasis basis(kt.resolution());
  GenNamer name = kt.namer();
  Poly one = Poly::one(kt.ring());
  for (int D = 1; D <= kt.max_degree(); ++D) {
    CheckEntry e{"delta^2=0", D, true, ""};
    const auto& trees = basis.trees(D);
    for (const CTree& t : trees) {
      TreeElement r = kt.delta(kt.delta(t));
      if (!r.is_zero()) {
        e.passed = false;
        e.detail = "first offending tree " + encode_tree(t, name) + ": residual " + r.to_string(name);
        break;
      }
    }
    if (e.passed) e.detail = std::to_string(trees.size()) + " trees";
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

CheckReport compare_delta_forms(const KTComplex& kt, const std::vector<CTree>& trees) {
  CheckReport rep;
  GenNamer name = kt.namer();
  CheckEntry e{"delta closed = recursive", 0, true, std::to_string(trees.size()) + " trees"};
  for (const CTree& t : trees) {
    e.degree = std::max(e.degree, t.degree());
    if (kt.delta(t) != kt.delta_recursive(t)) {
      e.passed = false;
      e.detail = "differs at " + encode_tree(t, name) + ": closed " + kt.delta(t).to_string(name) + ", recursive " +
                 kt.delta_recursive(t).to_string(name);
      break;
    }
  }
  rep.entries.push_back(std::move(e));
  return rep;
}

std::vector<Forest> forest_basis(TreeBasis& basis, int degree) {
  std::vector<Forest> out;
  if (degree < 0) return out;
  std::vector<CTree> pool;
  for (int k = 1; k <= degree; ++k) {
    const auto& ts = basis.trees(k);
    pool.insert(pool.end(), ts.begin(), ts.end());
  }
  Forest cur;
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      int d = pool[i].degree();
      if (d > remaining) break;
      cur.push_back(pool[i]);
      self(self, d % 2 ? i + 1 : i, remaining - d);
      cur.pop_back();
    }
  };
  rec(rec, 0, degree);
  return out;
}

TreeElement retract_incl(const Chain& x, const RingPtr& ring) {
  TreeElement out(ring);
  add_chain_as_trivial(out, x, Poly::one(ring));
  return out;
}

Chain retract_proj(const PsiTable& psi, const TreeElement& x) {
  Chain out;
  for (const auto& [f, p] : x.terms()) {
    switch (component_of(f)) {
      case Component::Scalar:
        chain_add(out, Gen::unit(), p);
        break;
      case Component::Trivial:
        chain_add(out, f.front().decorations().front(), p);
        break;
      case Component::Tree:
        break;
      case Component::Product:
        chain_axpy(out, p, psi.at(root(f)));
        break;
    }
  }
  return out;
}

TreeElement retract_h(const TreeElement& x) { return root(project(x, Component::Product)); }

CheckReport verify_retract(const KTComplex& kt, int max_degree) {
  CheckReport rep;
  const Resolution& res = kt.resolution();
  const RingPtr& ring = kt.ring();
  GenNamer name = kt.namer();
  Poly one = Poly::one(ring);
  TreeBasis basis(res);
  for (int D = 0; D <= max_degree; ++D) {
    CheckEntry pi{"proj o incl = id", D, true, ""};
    CheckEntry hi{"h o incl = 0", D, true, ""};
    std::vector<Gen> gens = D == 0 ? std::vector<Gen>{Gen::unit()} : res.generators(D);
    for (const Gen& g : gens) {
      Chain x = chain_of(g, one);
      TreeElement ix = retract_incl(x, ring);
      if (pi.passed && retract_proj(kt.psi(), ix) != x) {
        pi.passed = false;
        pi.detail = "fails on " + res.name(g);
      }
      if (hi.passed && !retract_h(ix).is_zero()) {
        hi.passed = false;
        hi.detail = "fails on " + res.name(g);
      }
    }
    CheckEntry side{"incl o proj = id - (h delta + delta h)", D, true, ""};
    CheckEntry hh{"h o h = 0", D, true, ""};
    CheckEntry ph{"proj o h = 0", D, true, ""};
    CheckEntry chain{"proj o delta = d o proj", D, true, ""};
    std::vector<Forest> forests = forest_basis(basis, D);
    for (const Forest& f : forests) {
      TreeElement x = TreeElement::forest(f, one);
      std::string where = "fails on " + x.to_string(name);
      TreeElement dx = kt.delta(x);
      TreeElement hx = retract_h(x);
      TreeElement lhs = retract_incl(retract_proj(kt.psi(), x), ring);
      TreeElement rhs = x - (retract_h(dx) + kt.delta(hx));
      if (side.passed && lhs != rhs) {
        side.passed = false;
        side.detail = where;
      }
      if (hh.passed && !retract_h(hx).is_zero()) {
        hh.passed = false;
        hh.detail = where;
      }
      if (ph.passed && !retract_proj(kt.psi(), hx).empty()) {
        ph.passed = false;
        ph.detail = where;
      }
      if (chain.passed && retract_proj(kt.psi(), dx) != res.d(retract_proj(kt.psi(), x))) {
        chain.passed = false;
        chain.detail = where;
      }
    }
    for (CheckEntry* e : {&side, &hh, &ph, &chain})
      if (e->passed) e->detail = std::to_string(forests.size()) + " forests";
    for (CheckEntry* e : {&pi, &hi})
      if (e->passed) e->detail = std::to_string(gens.size()) + " generators";
    for (CheckEntry* e : {&pi, &hi, &side, &hh, &ph, &chain}) rep.entries.push_back(std::move(*e));
  }
  return rep;
}

CheckReport verify_h0(const KTComplex& kt) {
  const Resolution& res = kt.resolution();
  const RingPtr& ring = kt.ring();
  std::vector<ModuleElement> image, ideal;
  for (const Gen& g : res.generators(1)) {
    Poly p = kt.delta(TreeElement::tree(CTree::trivial(g), Poly::one(ring))).coefficient(Forest{});
    image.push_back(ModuleElement(ring, 1, std::vector<Poly>{p}));
  }
  for (const Poly& p : res.ideal()) ideal.push_back(ModuleElement(ring, 1, std::vector<Poly>{p}));
  GroebnerBasis gi = GroebnerBasis::compute(image, 1, ring);
  GroebnerBasis gj = GroebnerBasis::compute(ideal, 1, ring);
  bool ok = true;
  for (const auto& v : ideal) ok = ok && gi.contains(v);
  for (const auto& v : image) ok = ok && gj.contains(v);
  CheckReport rep;
  rep.entries.push_back({"H0: delta(degree-1 trees) generates I", 0, ok, ok ? "mutual membership" : "ideals differ"});
  return rep;
}

namespace {

/// Matrix of delta from the forests of one degree to those of the degree below.
std::vector<ModuleElement> delta_columns(const KTComplex& kt, const std::vector<Forest>& source,
                                         const std::vector<Forest>& target) {
  std::map<Forest, std::size_t> index;
  for (std::size_t i = 0; i < target.size(); ++i) index.emplace(target[i], i);
  std::vector<ModuleElement> cols;
  Poly one = Poly::one(kt.ring());
  for (const Forest& f : source) {
    ModuleElement col(kt.ring(), target.size());
    TreeElement d = kt.delta(TreeElement::forest(f, one));
    for (const auto& [g, p] : d.terms()) {
      auto it = index.find(g);
      if (it == index.end()) throw InternalFault("delta leaves the forest basis");
      col.add_to(it->second, p);
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

CheckReport verify_homology(const KTComplex& kt, int max_degree) {
  CheckReport rep;
  GenNamer name = kt.namer();
  TreeBasis basis(kt.resolution());
  Poly one = Poly::one(kt.ring());
  for (int D = 1; D <= max_degree; ++D) {
    std::vector<Forest> below = forest_basis(basis, D - 1);
    std::vector<Forest> here = forest_basis(basis, D);
    std::vector<Forest> above = forest_basis(basis, D + 1);
    CheckEntry e{"delta-homology vanishes", D, true, ""};
    if (here.empty()) {
      e.detail = "no forests";
      rep.entries.push_back(e);
      continue;
    }
    std::vector<ModuleElement> kernel = syzygies(delta_columns(kt, here, below), below.size(), kt.ring());
    std::vector<ModuleElement> image = delta_columns(kt, above, here);
    GroebnerBasis gb = GroebnerBasis::compute(image, here.size(), kt.ring());
    for (const auto& z : kernel) {
      if (gb.contains(z)) continue;
      TreeElement cyc(kt.ring());
      for (const auto& [i, p] : z.coords()) cyc.add(here[i], p);
      e.passed = false;
      e.detail = "cycle not a boundary: " + cyc.to_string(name);
      break;
    }
    if (e.passed) e.detail = std::to_string(kernel.size()) + " kernel generators lift";
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------- audit

bool AuditReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const AuditEntry& e) { return e.passed; });
}

const AuditEntry* AuditReport::find(const std::string& tree) const {
  for (const auto& e : entries)
    if (e.tree == tree) return &e;
  return nullptr;
}

AuditReport audit_psi(const PsiTable& table) {
  AuditReport rep;
  const Resolution& res = table.resolution();
  GenNamer name = namer_for(res);
  TreeBasis basis(res);
  for (int D = 3; D <= table.max_degree(); ++D)
    for (const CTree& t : basis.nontrivial(D)) {
      bool listed = table.entries().count(t) > 0;
      Chain actual = res.d(table.at(t));
      Chain required = psi_obstruction(table, t);
      bool ok = actual == required;
      if (!listed && ok) continue;
      AuditEntry e;
      e.key = t;
      e.tree = encode_tree(t, name);
      for (const auto& g : t.decorations()) e.decorations.push_back(res.name(g));
      e.listed = listed;
      e.passed = ok;
      e.actual = res.to_string(actual);
      e.required = res.to_string(required);
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

}  // namespace arbokt
