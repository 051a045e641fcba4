#pragma once

#include <string>
#include <vector>

#include "bkm/cartan.hpp"
#include "bkm/characters.hpp"
#include "bkm/solver.hpp"
#include "bkm/weights.hpp"
#include "json.hpp"

namespace bkm::io {

using json = nlohmann::json;

// Inline JSON text, or a path to a file holding it. Throws InvalidInput.
json load_json_arg(const std::string& arg);

// Entries may be numbers or "p/q" strings.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);

// {"A": [[...]], "labels": [...]} or a bare array of rows.
CartanMatrix matrix_from_json(const json& j);
json matrix_to_json(const CartanMatrix& a);

// {"pairings": [...]}, a bare array, "rho", or {"powers": [...]}.
Weight weight_from_json(const json& j, const CartanMatrix& a);
json weight_to_json(const Weight& w);

// {"holes": [{"support": [...], "powers": {"i": m}}], "cap": k}
HoleSet holes_from_json(const json& j, std::size_t rank);
json holes_to_json(const HoleSet& hs);

RootSum rootsum_from_json(const json& j, std::size_t rank);
json rootsum_to_json(const RootSum& b);
json rootsums_to_json(const std::vector<RootSum>& v);

json integer_to_json(const Integer& z);

json character_to_json(const FormalCharacter& ch);
FormalCharacter character_from_json(const json& j, std::size_t rank);
// Aligned two-column text, rows in (height, lex) order.
std::string character_table(const FormalCharacter& ch);

json points_to_json(const std::vector<Point2>& pts);
json kk_to_json(const KkResult& r);

json provenance(const CartanMatrix& a, int cutoff);

// Sorted keys, no whitespace variation.
std::string dump(const json& j);

}  // namespace bkm::io
