#pragma once

#include <memory>
#include <string>

#include "arbokt/io.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& file) { return std::string(ARBOKT_FIXTURE_DIR) + "/" + file; }

inline std::shared_ptr<const arbokt::Resolution> load_res(const std::string& stem) {
  return arbokt::load_resolution(fixture_path(stem + "_resolution.json"));
}

inline arbokt::PsiTable load_table(const std::string& stem, std::shared_ptr<const arbokt::Resolution> res) {
  return arbokt::load_psi(fixture_path(stem + "_psi.json"), std::move(res));
}

inline arbokt::Chain chain(const arbokt::Resolution& res, std::initializer_list<std::pair<const char*, const char*>> terms) {
  arbokt::Chain c;
  for (const auto& [name, poly] : terms) {
    auto g = res.find(name);
    if (!g) throw arbokt::InputError(std::string("unknown generator ") + name);
    arbokt::chain_add(c, *g, arbokt::Poly::parse(poly, res.ring()));
  }
  return c;
}

inline arbokt::Node tree(const std::string& text, const arbokt::Resolution& res) { return arbokt::parse_tree(text, res); }

/// Canonical form of an ordered tree as a signed element.
inline arbokt::TreeElement element(const std::string& text, const arbokt::Resolution& res, const char* coeff = "1") {
  arbokt::TreeElement e(res.ring());
  e.add(arbokt::canonicalize(tree(text, res)), arbokt::Poly::parse(coeff, res.ring()));
  return e;
}

inline std::shared_ptr<const arbokt::Resolution> share(arbokt::Resolution r) {
  return std::make_shared<const arbokt::Resolution>(std::move(r));
}

}  // namespace testutil
