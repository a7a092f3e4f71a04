#include "arbokt/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace arbokt {

using json = nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string("invalid JSON: ") + e.what(), line, col > 1 ? col - 1 : 1);
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

Poly parse_poly_field(const json& j, const RingPtr& ring, const std::string& where) {
  try {
    return Poly::parse(as_string(j, where), ring);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), 0, 0);
  }
}

json chain_json(const Resolution& res, const Chain& c) {
  json out = json::object();
  for (const auto& [g, p] : c) out[res.name(g)] = p.to_string();
  return out;
}

Chain chain_from(const json& j, const Resolution& res, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object of generator -> polynomial");
  Chain c;
  for (const auto& [name, val] : j.items()) {
    auto g = res.find(name);
    if (!g) throw InputError(where + ": unknown generator '" + name + "'");
    chain_add(c, *g, parse_poly_field(val, res.ring(), where + "." + name));
  }
  return c;
}

std::string product_factor(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
    if (j[0].get<std::string>() != "1") throw InputError(where + ": product factors must have coefficient 1");
    return j[1].get<std::string>();
  }
  throw InputError(where + ": expected a generator name or [\"1\", name]");
}

/// Accepts one redundant pair of outer parentheses around a vertex, e.g. "((a b))".
std::string strip_redundant_outer(const std::string& s) {
  auto match = [&](std::size_t open) -> std::size_t {
    int depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) return i;
    }
    return std::string::npos;
  };
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t z = s.find_last_not_of(" \t");
  if (a == std::string::npos || s[a] != '(' || match(a) != z) return s;
  std::size_t b = s.find_first_not_of(" \t", a + 1);
  if (b == std::string::npos || s[b] != '(') return s;
  std::size_t e = match(b);
  if (e == std::string::npos || s.find_first_not_of(" \t", e + 1) != z) return s;
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string chain_to_json(const Resolution& res, const Chain& c) { return chain_json(res, c).dump(); }

std::string resolution_to_json(const Resolution& res) {
  json j;
  j["ring"] = {{"variables", res.ring()->variables()}, {"field", "QQ"}};
  json ideal = json::array();
  for (const auto& p : res.ideal()) ideal.push_back(p.to_string());
  j["ideal"] = ideal;
  json mods = json::array();
  json diffs = json::array();
  for (int i = 1; i <= res.length(); ++i) {
    const auto& m = res.module(i);
    mods.push_back({{"degree", i}, {"rank", m.rank()}, {"names", m.names()}});
    json mat = json::array();
    for (const auto& row : res.d(i).matrix()) {
      json r = json::array();
      for (const auto& p : row) r.push_back(p.to_string());
      mat.push_back(r);
    }
    diffs.push_back({{"degree", i}, {"matrix", mat}});
  }
  j["modules"] = mods;
  j["differentials"] = diffs;
  if (res.product()) {
    json prod = json::array();
    for (const auto& [key, value] : res.product()->table())
      prod.push_back({{"left", {"1", res.name(key.first)}},
                      {"right", {"1", res.name(key.second)}},
                      {"value", chain_json(res, value)}});
    j["product"] = prod;
  }
  if (res.truncated()) j["truncated"] = true;
  return j.dump(2) + "\n";
}

Resolution resolution_from_json(std::string_view text) {
  json j = parse_json(text);
  const json& ringj = member(j, "ring", "resolution");
  const json& vars = member(ringj, "variables", "ring");
  if (!vars.is_array()) throw InputError("ring.variables: expected an array");
  std::vector<std::string> names;
  for (const auto& v : vars) names.push_back(as_string(v, "ring.variables"));
  if (ringj.contains("field") && as_string(ringj.at("field"), "ring.field") != "QQ")
    throw InputError("ring.field: only QQ is supported");
  RingPtr ring = Ring::make(names);

  std::vector<Poly> ideal;
  const json& idj = member(j, "ideal", "resolution");
  if (!idj.is_array()) throw InputError("ideal: expected an array");
  for (std::size_t k = 0; k < idj.size(); ++k)
    ideal.push_back(parse_poly_field(idj[k], ring, "ideal[" + std::to_string(k) + "]"));

  const json& modj = member(j, "modules", "resolution");
  const json& difj = member(j, "differentials", "resolution");
  if (!modj.is_array() || !difj.is_array() || modj.size() != difj.size())
    throw InputError("resolution: modules and differentials must be arrays of equal length");
  std::vector<FreeModule> mods;
  std::vector<ModuleMap> diffs;
  for (std::size_t k = 0; k < modj.size(); ++k) {
    std::string where = "modules[" + std::to_string(k) + "]";
    int deg = member(modj[k], "degree", where).get<int>();
    if (deg != static_cast<int>(k) + 1) throw InputError(where + ": modules must be listed by increasing degree from 1");
    std::size_t rank = member(modj[k], "rank", where).get<std::size_t>();
    std::vector<std::string> gnames;
    for (const auto& n : member(modj[k], "names", where)) gnames.push_back(as_string(n, where + ".names"));
    if (gnames.size() != rank) throw InputError(where + ": rank does not match the number of names");
    mods.emplace_back(rank, gnames, deg);
  }
  for (std::size_t k = 0; k < difj.size(); ++k) {
    std::string where = "differentials[" + std::to_string(k) + "]";
    int deg = member(difj[k], "degree", where).get<int>();
    if (deg != static_cast<int>(k) + 1) throw InputError(where + ": differentials must be listed by increasing degree from 1");
    const json& mat = member(difj[k], "matrix", where);
    std::size_t rows = k == 0 ? 1 : mods[k - 1].rank();
    if (!mat.is_array() || mat.size() != rows) throw InputError(where + ": wrong number of rows");
    std::vector<std::vector<Poly>> m;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!mat[r].is_array() || mat[r].size() != mods[k].rank()) throw InputError(where + ": wrong number of columns");
      std::vector<Poly> row;
      for (std::size_t c = 0; c < mat[r].size(); ++c)
        row.push_back(parse_poly_field(mat[r][c], ring, where + ".matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      m.push_back(std::move(row));
    }
    FreeModule target = k == 0 ? FreeModule(1, {"1"}, 0) : mods[k - 1];
    diffs.emplace_back(ring, mods[k], target, std::move(m));
  }
  Resolution res(ring, std::move(ideal), std::move(mods), std::move(diffs));
  if (j.contains("truncated")) res.set_truncated(j.at("truncated").get<bool>());
  if (j.contains("product")) {
    const json& pj = j.at("product");
    if (!pj.is_array()) throw InputError("product: expected an array");
    DgcaProduct prod(ring);
    for (std::size_t k = 0; k < pj.size(); ++k) {
      std::string where = "product[" + std::to_string(k) + "]";
      auto a = res.find(product_factor(member(pj[k], "left", where), where + ".left"));
      auto b = res.find(product_factor(member(pj[k], "right", where), where + ".right"));
      if (!a || !b || a->is_unit() || b->is_unit()) throw InputError(where + ": unknown or unit factor");
      prod.set(*a, *b, chain_from(member(pj[k], "value", where), res, where + ".value"));
    }
    res.set_product(std::move(prod));
  }
  return res;
}

std::string psi_to_json(const PsiTable& psi) {
  const Resolution& res = psi.resolution();
  GenNamer name = namer_for(res);
  json entries = json::array();
  for (const auto& [key, value] : psi.entries()) {
    json decos = json::array();
    for (const auto& g : key.decorations()) decos.push_back(res.name(g));
    entries.push_back({{"tree", encode_tree(key, name)}, {"decorations", decos}, {"value", chain_json(res, value)}});
  }
  json j;
  j["max_degree"] = psi.max_degree();
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

PsiTable psi_from_json(std::string_view text, std::shared_ptr<const Resolution> res) {
  json j = parse_json(text);
  int max_degree = member(j, "max_degree", "psi table").get<int>();
  PsiTable table(res, max_degree);
  const json& ej = member(j, "entries", "psi table");
  if (!ej.is_array()) throw InputError("entries: expected an array");
  std::map<CTree, std::string> seen;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    std::string where = "entries[" + std::to_string(k) + "]";
    std::string tree_text = strip_redundant_outer(as_string(member(ej[k], "tree", where), where + ".tree"));
    Node t;
    try {
      t = parse_tree(tree_text, *res);
    } catch (const ParseError& e) {
      throw ParseError(where + ".tree: " + e.what(), 0, 0);
    }
    if (t.is_leaf()) throw InputError(where + ": psi is stored on non-trivial trees only");
    if (ej[k].contains("decorations")) {
      std::vector<std::string> listed;
      for (const auto& n : ej[k].at("decorations")) listed.push_back(as_string(n, where + ".decorations"));
      std::vector<std::string> actual;
      for (const auto& g : t.decorations()) actual.push_back(res->name(g));
      if (listed != actual) throw InputError(where + ": decorations do not match the tree leaves");
    }
    Chain value = chain_from(member(ej[k], "value", where), *res, where + ".value");
    int tdeg = t.degree();
    if (tdeg > max_degree) throw InputError(where + ": tree degree exceeds max_degree");
    for (const auto& [g, p] : value)
      if (g.deg != tdeg - 1)
        throw InputError(where + ": value generator '" + res->name(g) + "' has degree " + std::to_string(g.deg) +
                         ", expected " + std::to_string(tdeg - 1));
    Canonical c = canonicalize(t);
    if (c.sign == 0) {
      if (!value.empty()) throw InputError(where + ": the tree vanishes by symmetry but the value is nonzero");
      continue;
    }
    if (!seen.emplace(c.tree, where).second) {
      Chain expect = c.sign < 0 ? chain_neg(value) : value;
      if (table.at(c.tree) != expect)
        throw InputError(where + ": conflicts with " + seen[c.tree] + " for the same canonical tree");
      continue;
    }
    table.set(t, value);
  }
  return table;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::shared_ptr<const Resolution> load_resolution(const std::string& path) {
  return std::make_shared<const Resolution>(resolution_from_json(read_text_file(path)));
}

PsiTable load_psi(const std::string& path, std::shared_ptr<const Resolution> res) {
  return psi_from_json(read_text_file(path), std::move(res));
}

}  // namespace arbokt
