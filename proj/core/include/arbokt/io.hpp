#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "arbokt/ktcore.hpp"

namespace arbokt {

/// Resolution file: ring, ideal, modules with generator names, differential matrices
/// (entry [i][j] is the coefficient of target generator i in d of source generator j)
/// and an optional product block. Output is deterministic and reloads to an equal
/// resolution.
std::string resolution_to_json(const Resolution& res);
/// Throws ParseError for malformed JSON or polynomials and InputError for inconsistent
/// data.
Resolution resolution_from_json(std::string_view text);

/// psi table file: `{"max_degree":N,"entries":[{"tree":..,"decorations":[..],"value":{..}}]}`.
/// Entries are written in canonical key order.
std::string psi_to_json(const PsiTable& psi);
/// Trees may be given in any child order; values are moved to the canonical key with
/// the Koszul sign. Degrees and decoration lists are re-verified.
PsiTable psi_from_json(std::string_view text, std::shared_ptr<const Resolution> res);

/// Chain as a JSON object `{"name": "poly"}` with "1" for the unit.
std::string chain_to_json(const Resolution& res, const Chain& c);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::shared_ptr<const Resolution> load_resolution(const std::string& path);
PsiTable load_psi(const std::string& path, std::shared_ptr<const Resolution> res);

}  // namespace arbokt
