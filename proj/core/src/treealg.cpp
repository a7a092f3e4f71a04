#include "arbokt/treealg.hpp"

#include <algorithm>
#include <sstream>

namespace arbokt {

namespace {

Poly signed_poly(int sign, const Poly& p) { return sign < 0 ? -p : p; }

int parity_sign(int e) { return e % 2 ? -1 : 1; }

}  // namespace

int forest_degree(const Forest& f) {
  int d = 0;
  for (const auto& t : f) d += t.degree();
  return d;
}

int canonicalize_forest(Forest& f) {
  int sign = 1;
  for (std::size_t i = 1; i < f.size(); ++i)
    for (std::size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
      if ((f[j].degree() * f[j - 1].degree()) % 2) sign = -sign;
      std::swap(f[j], f[j - 1]);
    }
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] == f[i - 1] && f[i].degree() % 2) return 0;
  return sign;
}

// ---------------------------------------------------------------- TreeElement

TreeElement TreeElement::scalar(const Poly& p) {
  TreeElement e(p.ring());
  e.add(Forest{}, p);
  return e;
}

TreeElement TreeElement::tree(const CTree& t, const Poly& p) {
  TreeElement e(p.ring());
  e.add(Forest{t}, p);
  return e;
}

TreeElement TreeElement::forest(Forest f, const Poly& p) {
  TreeElement e(p.ring());
  e.add_unsorted(std::move(f), p);
  return e;
}

Poly TreeElement::coefficient(const Forest& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Poly::zero(ring_) : it->second;
}

void TreeElement::add(const Forest& f, const Poly& p) {
  if (p.is_zero()) return;
  if (!ring_) ring_ = p.ring();
  auto it = terms_.find(f);
  if (it == terms_.end()) {
    terms_.emplace(f, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

void TreeElement::add_unsorted(Forest f, const Poly& p) {
  int s = canonicalize_forest(f);
  if (s == 0) return;
  add(f, signed_poly(s, p));
}

void TreeElement::add(const Canonical& c, const Poly& p) {
  if (c.sign == 0) return;
  add(Forest{c.tree}, signed_poly(c.sign, p));
}

void TreeElement::axpy(const Poly& f, const TreeElement& x) {
  if (f.is_zero()) return;
  for (const auto& [forest, p] : x.terms_) add(forest, f * p);
}

TreeElement& TreeElement::operator+=(const TreeElement& other) {
  for (const auto& [f, p] : other.terms_) add(f, p);
  return *this;
}

TreeElement& TreeElement::operator-=(const TreeElement& other) {
  for (const auto& [f, p] : other.terms_) add(f, -p);
  return *this;
}

TreeElement& TreeElement::operator*=(const Poly& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= f;
    if (it->second.is_zero()) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

TreeElement TreeElement::operator-() const {
  TreeElement out = *this;
  for (auto& [f, p] : out.terms_) p = -p;
  return out;
}

bool TreeElement::operator==(const TreeElement& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (a->first != b->first || a->second != b->second) return false;
  return true;
}

std::string TreeElement::to_string(const GenNamer& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [f, p] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.to_string() << ")";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " . " : " ") << encode_tree(f[i], name);
  }
  return os.str();
}

// ---------------------------------------------------------------- products and projections

TreeElement sym_product(const TreeElement& x, const TreeElement& y) {
  TreeElement out(x.ring() ? x.ring() : y.ring());
  for (const auto& [f, p] : x.terms())
    for (const auto& [g, q] : y.terms()) {
      Forest h = f;
      h.insert(h.end(), g.begin(), g.end());
      out.add_unsorted(std::move(h), p * q);
    }
  return out;
}

Component component_of(const Forest& f) {
  if (f.empty()) return Component::Scalar;
  if (f.size() >= 2) return Component::Product;
  return f.front().is_trivial() ? Component::Trivial : Component::Tree;
}

TreeElement project(const TreeElement& x, Component which) {
  TreeElement out(x.ring());
  for (const auto& [f, p] : x.terms())
    if (component_of(f) == which) out.add(f, p);
  return out;
}

// ---------------------------------------------------------------- root / unroot

CTree root(const Forest& f) {
  if (f.size() < 2) throw InputError("the root map needs at least two trees");
  return CTree::join(f);
}

TreeElement root(const TreeElement& x) {
  TreeElement out(x.ring());
  for (const auto& [f, p] : x.terms()) {
    if (component_of(f) != Component::Product) throw InputError("the root map is defined on products of trees only");
    out.add(Forest{root(f)}, p);
  }
  return out;
}

Forest unroot(const CTree& t) {
  if (t.is_trivial()) throw InputError("the unroot map is undefined on trivial trees");
  Node n = t.node();
  Forest f;
  for (const auto& k : n.kids) f.push_back(CTree::encode(k));
  return f;
}

TreeElement unroot(const TreeElement& x) {
  TreeElement out(x.ring());
  for (const auto& [f, p] : x.terms()) {
    if (f.size() != 1) throw InputError("the unroot map is defined on single trees only");
    out.add_unsorted(unroot(f.front()), p);
  }
  return out;
}

// ---------------------------------------------------------------- boundary

TreeElement boundary(const Node& t, const RingPtr& ring) {
  TreeElement out(ring);
  for (const auto& vi : vertex_infos(t)) {
    if (vi.leaf || vi.path.empty()) continue;
    out.add(canonicalize(merge_vertex(t, vi.path)), Poly(ring, Rational(parity_sign(vi.weight))));
  }
  return out;
}

TreeElement boundary(const TreeElement& x) {
  TreeElement out(x.ring());
  for (const auto& [f, p] : x.terms()) {
    if (f.size() != 1) throw InputError("the tree boundary is defined on single trees only");
    out.axpy(p, boundary(f.front().node(), x.ring()));
  }
  return out;
}

// ---------------------------------------------------------------- O-leaves and substitution

namespace {

// Erases the leaf at `p` following the O-leaf rule; false when the tree dies.
bool erase_leaf(Node& t, const Path& p) {
  Path parent_path(p.begin(), p.end() - 1);
  Node parent = subtree_at(t, parent_path);
  if (parent.kids.size() <= 2) return false;
  parent.kids.erase(parent.kids.begin() + static_cast<std::ptrdiff_t>(p.back()));
  t = replace_at(t, parent_path, std::move(parent));
  return true;
}

std::optional<Path> find_O_leaf(const Node& t) {
  for (const auto& vi : vertex_infos(t))
    if (vi.leaf && subtree_at(t, vi.path).gen.deg == 0) return vi.path;
  return std::nullopt;
}

Path leaf_path(const Node& t, std::size_t leaf) {
  for (const auto& vi : vertex_infos(t))
    if (vi.leaf && vi.first_leaf == leaf) return vi.path;
  throw InputError("leaf index out of range");
}

}  // namespace

TreeElement normalize_O_leaves(const Node& t, const std::vector<Poly>& o_values, const RingPtr& ring) {
  TreeElement out(ring);
  Node cur = t;
  Poly coeff = Poly::one(ring);
  if (cur.is_leaf() && cur.gen.deg == 0) {
    out.add(Forest{}, o_values.at(cur.gen.idx));
    return out;
  }
  while (auto p = find_O_leaf(cur)) {
    coeff *= o_values.at(subtree_at(cur, *p).gen.idx);
    if (!erase_leaf(cur, *p)) return out;
  }
  out.add(canonicalize(cur), coeff);
  return out;
}

TreeElement substitute_leaf(const Node& t, std::size_t leaf, const Chain& x) {
  RingPtr ring;
  for (const auto& [g, p] : x)
    if (p.ring()) ring = p.ring();
  TreeElement out(ring);
  Path p = leaf_path(t, leaf);
  for (const auto& [g, c] : x) {
    if (g.is_unit()) {
      if (p.empty()) {
        out.add(Forest{}, c);
        continue;
      }
      Node erased = t;
      if (erase_leaf(erased, p)) out.add(canonicalize(erased), c);
      continue;
    }
    out.add(canonicalize(replace_at(t, p, Node::leaf(g))), c);
  }
  return out;
}

TreeElement substitute_subtree(const Node& t, const Path& p, const Chain& x) {
  Node down = replace_at(t, p, Node::leaf(Gen{1, 0}));
  std::size_t leaf = 0;
  for (const auto& vi : vertex_infos(down))
    if (vi.path == p) leaf = vi.first_leaf;
  return substitute_leaf(down, leaf, x);
}

}  // namespace arbokt
