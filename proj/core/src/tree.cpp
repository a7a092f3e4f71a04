#include "arbokt/tree.hpp"

#include <algorithm>
#include <cctype>

namespace arbokt {

// ---------------------------------------------------------------- Node

Node Node::vertex(std::vector<Node> kids) {
  if (kids.size() < 2) throw InputError("a tree vertex needs at least two children");
  return Node{Gen{}, std::move(kids)};
}

int Node::degree() const {
  if (is_leaf()) return gen.deg;
  int d = 1;
  for (const auto& k : kids) d += k.degree();
  return d;
}

std::size_t Node::num_leaves() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& k : kids) n += k.num_leaves();
  return n;
}

std::size_t Node::num_vertices() const {
  if (is_leaf()) return 0;
  std::size_t n = 1;
  for (const auto& k : kids) n += k.num_vertices();
  return n;
}

namespace {

void collect_decos(const Node& n, std::vector<Gen>& out) {
  if (n.is_leaf()) {
    out.push_back(n.gen);
    return;
  }
  for (const auto& k : n.kids) collect_decos(k, out);
}

}  // namespace

std::vector<Gen> Node::decorations() const {
  std::vector<Gen> out;
  collect_decos(*this, out);
  return out;
}

// ---------------------------------------------------------------- CTree

namespace {

void encode_rec(const Node& n, std::vector<std::uint16_t>& shape, std::vector<Gen>& decos) {
  shape.push_back(static_cast<std::uint16_t>(n.kids.size()));
  if (n.is_leaf()) {
    decos.push_back(n.gen);
    return;
  }
  for (const auto& k : n.kids) encode_rec(k, shape, decos);
}

Node decode_rec(const std::vector<std::uint16_t>& shape, const std::vector<Gen>& decos, std::size_t& si,
                std::size_t& di) {
  std::uint16_t k = shape[si++];
  if (k == 0) return Node::leaf(decos[di++]);
  Node n;
  n.kids.reserve(k);
  for (std::uint16_t i = 0; i < k; ++i) n.kids.push_back(decode_rec(shape, decos, si, di));
  return n;
}

}  // namespace

CTree CTree::encode(const Node& n) {
  CTree t;
  encode_rec(n, t.shape_, t.decos_);
  t.deg_ = n.degree();
  return t;
}

CTree CTree::join(const std::vector<CTree>& kids) {
  if (kids.size() < 2) throw InputError("a tree vertex needs at least two children");
  CTree t;
  t.shape_.push_back(static_cast<std::uint16_t>(kids.size()));
  t.deg_ = 1;
  for (const auto& k : kids) {
    t.shape_.insert(t.shape_.end(), k.shape_.begin(), k.shape_.end());
    t.decos_.insert(t.decos_.end(), k.decos_.begin(), k.decos_.end());
    t.deg_ += k.deg_;
  }
  return t;
}

Node CTree::node() const {
  std::size_t si = 0, di = 0;
  return decode_rec(shape_, decos_, si, di);
}

bool CTree::is_corolla() const {
  if (shape_.size() < 3) return false;
  return std::all_of(shape_.begin() + 1, shape_.end(), [](std::uint16_t k) { return k == 0; });
}

std::strong_ordering CTree::operator<=>(const CTree& other) const {
  if (auto c = deg_ <=> other.deg_; c != 0) return c;
  if (auto c = decos_.size() <=> other.decos_.size(); c != 0) return c;
  if (auto c = shape_ <=> other.shape_; c != 0) return c;
  return decos_ <=> other.decos_;
}

// ---------------------------------------------------------------- canonicalize

Canonical canonicalize(const Node& n) {
  if (n.is_leaf()) return {1, CTree::encode(n)};
  if (n.kids.size() < 2) throw InputError("a tree vertex needs at least two children");
  std::vector<CTree> kids;
  kids.reserve(n.kids.size());
  int sign = 1;
  for (const auto& k : n.kids) {
    Canonical c = canonicalize(k);
    if (c.sign == 0) return {0, {}};
    sign *= c.sign;
    kids.push_back(std::move(c.tree));
  }
  for (std::size_t i = 1; i < kids.size(); ++i)
    for (std::size_t j = i; j > 0 && kids[j] < kids[j - 1]; --j) {
      if ((kids[j].degree() * kids[j - 1].degree()) % 2) sign = -sign;
      std::swap(kids[j], kids[j - 1]);
    }
  for (std::size_t i = 1; i < kids.size(); ++i)
    if (kids[i] == kids[i - 1] && kids[i].degree() % 2) return {0, {}};
  return {sign, CTree::join(kids)};
}

int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees) {
  int s = 1;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b] && (degrees[perm[a]] * degrees[perm[b]]) % 2) s = -s;
  return s;
}

// ---------------------------------------------------------------- vertices and weights

namespace {

void infos_rec(const Node& n, Path& path, int weight, std::size_t& leaf_counter, std::vector<VertexInfo>& out) {
  VertexInfo vi;
  vi.path = path;
  vi.leaf = n.is_leaf();
  vi.weight = weight;
  vi.first_leaf = leaf_counter;
  std::size_t slot = out.size();
  out.push_back(vi);
  if (n.is_leaf()) {
    ++leaf_counter;
  } else {
    int left = 0;
    for (std::size_t j = 0; j < n.kids.size(); ++j) {
      path.push_back(j);
      infos_rec(n.kids[j], path, weight + 1 + left, leaf_counter, out);
      path.pop_back();
      left += n.kids[j].degree();
    }
  }
  out[slot].num_leaves = leaf_counter - out[slot].first_leaf;
}

void check_binary(const Node& t) {
  if (t.is_leaf()) return;
  if (t.kids.size() != 2) throw InputError("operation requires a binary tree");
  for (const auto& k : t.kids) check_binary(k);
}

}  // namespace

std::vector<VertexInfo> vertex_infos(const Node& t) {
  std::vector<VertexInfo> out;
  Path path;
  std::size_t leaves = 0;
  infos_rec(t, path, 0, leaves, out);
  return out;
}

const Node& subtree_at(const Node& t, const Path& p) {
  const Node* n = &t;
  for (auto i : p) {
    if (i >= n->kids.size()) throw InputError("path does not name a vertex of the tree");
    n = &n->kids[i];
  }
  return *n;
}

int weight_at(const Node& t, const Path& p) {
  const Node* n = &t;
  int w = 0;
  for (auto i : p) {
    if (i >= n->kids.size()) throw InputError("path does not name a vertex of the tree");
    w += 1;
    for (std::size_t l = 0; l < i; ++l) w += n->kids[l].degree();
    n = &n->kids[i];
  }
  return w;
}

int left_count(const Node& t, const Path& p) {
  check_binary(t);
  subtree_at(t, p);
  return static_cast<int>(std::count(p.begin(), p.end(), std::size_t{0}));
}

int left_weight_P(const Node& t) {
  check_binary(t);
  std::function<int(const Node&)> rec = [&](const Node& n) {
    if (n.is_leaf()) return 0;
    return n.kids[0].degree() + rec(n.kids[0]) + rec(n.kids[1]);
  };
  return rec(t);
}

Node replace_at(const Node& t, const Path& p, Node replacement) {
  if (p.empty()) return replacement;
  Node out = t;
  Node* n = &out;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    if (p[k] >= n->kids.size()) throw InputError("path does not name a vertex of the tree");
    n = &n->kids[p[k]];
  }
  if (p.back() >= n->kids.size()) throw InputError("path does not name a vertex of the tree");
  n->kids[p.back()] = std::move(replacement);
  return out;
}

Node merge_vertex(const Node& t, const Path& p) {
  if (p.empty()) throw InputError("the root cannot be merged");
  const Node& a = subtree_at(t, p);
  if (a.is_leaf()) throw InputError("a leaf cannot be merged");
  Path parent_path(p.begin(), p.end() - 1);
  Node parent = subtree_at(t, parent_path);
  std::vector<Node> kids;
  for (std::size_t j = 0; j < parent.kids.size(); ++j) {
    if (j == p.back())
      kids.insert(kids.end(), a.kids.begin(), a.kids.end());
    else
      kids.push_back(parent.kids[j]);
  }
  parent.kids = std::move(kids);
  return replace_at(t, parent_path, std::move(parent));
}

std::pair<Node, Node> up_down(const Node& t, const Path& p, const Gen& placeholder) {
  Node up = subtree_at(t, p);
  Node down = replace_at(t, p, Node::leaf(placeholder));
  return {std::move(up), std::move(down)};
}

// ---------------------------------------------------------------- shapes

namespace {

void relabel(Node& n, std::size_t& counter) {
  if (n.is_leaf()) {
    n.gen = Gen{1, counter++};
    return;
  }
  for (auto& k : n.kids) relabel(k, counter);
}

std::vector<Node> shapes_rec(std::size_t leaves, bool binary, std::map<std::size_t, std::vector<Node>>& memo) {
  if (auto it = memo.find(leaves); it != memo.end()) return it->second;
  std::vector<Node> out;
  if (leaves == 1) {
    out.push_back(Node::leaf(Gen{1, 0}));
  } else {
    // Compositions of `leaves` into at least two parts (exactly two when binary).
    std::vector<std::size_t> parts;
    std::function<void(std::size_t)> compose = [&](std::size_t rest) {
      if (rest == 0) {
        if (parts.size() < 2) return;
        std::vector<std::vector<Node>> options;
        for (auto s : parts) options.push_back(shapes_rec(s, binary, memo));
        std::vector<Node> kids(parts.size());
        std::function<void(std::size_t)> pick = [&](std::size_t i) {
          if (i == parts.size()) {
            out.push_back(Node{Gen{}, kids});
            return;
          }
          for (const auto& o : options[i]) {
            kids[i] = o;
            pick(i + 1);
          }
        };
        pick(0);
        return;
      }
      if (binary && parts.size() == 2) return;
      for (std::size_t s = 1; s <= rest; ++s) {
        if (parts.empty() && s == leaves) continue;
        parts.push_back(s);
        compose(rest - s);
        parts.pop_back();
      }
    };
    compose(leaves);
  }
  for (auto& n : out) {
    std::size_t c = 0;
    relabel(n, c);
  }
  memo[leaves] = out;
  return out;
}

void decorate_rec(Node& n, const std::vector<Gen>& gens, std::size_t& i) {
  if (n.is_leaf()) {
    n.gen = gens.at(i++);
    return;
  }
  for (auto& k : n.kids) decorate_rec(k, gens, i);
}

}  // namespace

std::vector<Node> planar_shapes(std::size_t leaves) {
  if (leaves == 0) return {};
  std::map<std::size_t, std::vector<Node>> memo;
  return shapes_rec(leaves, false, memo);
}

std::vector<Node> binary_shapes(std::size_t leaves) {
  if (leaves == 0) return {};
  std::map<std::size_t, std::vector<Node>> memo;
  return shapes_rec(leaves, true, memo);
}

Node decorate(const Node& t, const std::vector<Gen>& gens) {
  if (gens.size() != t.num_leaves()) throw InputError("decoration count does not match the leaf count");
  Node out = t;
  std::size_t i = 0;
  decorate_rec(out, gens, i);
  return out;
}

// ---------------------------------------------------------------- TreeBasis

const std::vector<CTree>& TreeBasis::trees(int degree) {
  if (auto it = cache_.find(degree); it != cache_.end()) return it->second;
  std::vector<CTree> out;
  for (const auto& g : gens_)
    if (g.deg == degree) out.push_back(CTree::trivial(g));
  if (degree >= 3) {
    std::vector<CTree> pool;
    for (int d = 1; d <= degree - 2; ++d) {
      const auto& ts = trees(d);
      pool.insert(pool.end(), ts.begin(), ts.end());
    }
    std::vector<CTree> kids;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int budget) {
      if (budget == 0) {
        if (kids.size() >= 2) out.push_back(CTree::join(kids));
        return;
      }
      for (std::size_t i = start; i < pool.size(); ++i) {
        const CTree& c = pool[i];
        if (c.degree() > budget) break;
        if (!kids.empty() && kids.back() == c && c.degree() % 2) continue;
        kids.push_back(c);
        rec(i, budget - c.degree());
        kids.pop_back();
      }
    };
    rec(0, degree - 1);
  }
  std::sort(out.begin(), out.end());
  return cache_[degree] = std::move(out);
}

std::vector<CTree> TreeBasis::nontrivial(int degree) {
  std::vector<CTree> out;
  for (const auto& t : trees(degree))
    if (!t.is_trivial()) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------- text encoding

GenNamer namer_for(const Resolution& res) {
  return [&res](const Gen& g) { return res.name(g); };
}

GenNamer default_namer() {
  return [](const Gen& g) {
    if (g.deg == 0) return "o" + std::to_string(g.idx);
    return "g" + std::to_string(g.deg) + "_" + std::to_string(g.idx);
  };
}

namespace {

void encode_text(const Node& n, const GenNamer& name, std::string& out) {
  if (n.is_leaf()) {
    out += name(n.gen);
    return;
  }
  out += "(";
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (i) out += " ";
    encode_text(n.kids[i], name, out);
  }
  out += ")";
}

bool is_name_char(char c) { return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '|'; }

struct TreeParser {
  std::string_view s;
  const Resolution& res;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos + 1); }

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  Node leaf() {
    std::size_t start = pos;
    while (pos < s.size() && is_name_char(s[pos])) ++pos;
    if (start == pos) fail("expected a generator name");
    std::string nm(s.substr(start, pos - start));
    auto g = res.find(nm);
    if (!g) {
      pos = start;
      fail("unknown generator '" + nm + "'");
    }
    return Node::leaf(*g);
  }

  Node item() {
    skip();
    if (pos >= s.size()) fail("unexpected end of tree");
    if (s[pos] != '(') return leaf();
    std::size_t open = pos++;
    std::vector<Node> kids;
    while (true) {
      skip();
      if (pos >= s.size()) fail("missing ')'");
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      kids.push_back(item());
    }
    if (kids.size() < 2) {
      pos = open;
      fail("a vertex needs at least two children");
    }
    return Node::vertex(std::move(kids));
  }

  Node parse() {
    skip();
    Node n;
    if (pos < s.size() && s[pos] == '|') {
      ++pos;
      n = leaf();
      if (pos >= s.size() || s[pos] != '|') fail("expected '|' closing a trivial tree");
      ++pos;
    } else {
      n = item();
    }
    skip();
    if (pos != s.size()) fail("trailing characters after tree");
    return n;
  }
};

}  // namespace

std::string encode_tree(const Node& t, const GenNamer& name) {
  if (t.is_leaf()) return "|" + name(t.gen) + "|";
  std::string out;
  encode_text(t, name, out);
  return out;
}

std::string encode_tree(const CTree& t, const GenNamer& name) { return encode_tree(t.node(), name); }

Node parse_tree(std::string_view text, const Resolution& res) {
  TreeParser p{text, res};
  return p.parse();
}

}  // namespace arbokt
