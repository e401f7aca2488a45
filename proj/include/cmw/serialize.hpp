#pragma once

// JSON forms of ideals, monoid tables, vector specs, vectors and polynomials.
// Every top-level artifact carries a "schema" field.

#include <json.hpp>
#include <string>
#include <utility>

#include "cmw/algrec.hpp"
#include "cmw/modular.hpp"
#include "cmw/rayclass.hpp"
#include "cmw/witt.hpp"

namespace cmw {

using json = nlohmann::json;

json ideal_json(const IdealHNF& I);
/// Accepts {"d":…, "ideal":{…}}, a bare {"a":…, …}, an integer n for (n), or
/// a string "n" or "a,b,c[,den]".
IdealHNF ideal_from_json(const QuadField& K, const json& j);
IdealHNF parse_ideal(const QuadField& K, const std::string& s);
/// "Q" or "1" for the rationals, otherwise a negative squarefree integer.
QuadField parse_field(const std::string& s);

json field_json(const QuadField& K);
json table_json(const RayClassMonoid& M);

/// {"kind":"zeta","gamma":"p/q"} | {"kind":"zlin","terms":[[c,"p/q"],…]} |
/// {"kind":"modular","d":…,"family":"j"|"fricke:a1,a2"|"char:<ideal>"} |
/// {"kind":"rho","d":…,"ideal":…} | {"kind":"ones","d":…}
struct VectorSpec {
  json raw;
  std::string kind;
  QuadField field() const;
  WittVector build(Int B, unsigned prec) const;
};
VectorSpec vector_spec(const json& j);

/// "j", "fricke:1/2,0", "char:<ideal>".
DeformationFamily parse_family(const QuadField& K, const std::string& s);

json vector_json(const WittVector& v, unsigned digits = 0);
/// Complex vector at the stored precision.
WittVector vector_from_json(const json& j);

json poly_json(const IntPoly& p);
json un_json(const UnReport& r);

mpq_class parse_rational(const std::string& s);

json read_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cmw
