#pragma once

#include <string>

#include <json.hpp>

#include "motint/denef.hpp"
#include "motint/gamma.hpp"
#include "motint/igusa.hpp"
#include "motint/laurent.hpp"
#include "motint/motivic.hpp"
#include "motint/qpoly.hpp"
#include "motint/rational.hpp"
#include "motint/semilinear.hpp"

namespace motint {

// JSON documents use exact text encodings throughout: rationals as strings
// ("3", "-5/2"), big integers as strings, exponent vectors as integer arrays.
// Readers throw SchemaError on malformed documents; writers emit key order
// deterministically.
using Json = nlohmann::ordered_json;

// ---- writers ----------------------------------------------------------------

Json rational_to_json(const Rational& v);
Json int_to_json(const Int& v);
Json constraint_to_json(const Constraint& c);
Json cell_to_json(const Cell& c);
Json set_to_json(const SemilinearSet& s);
Json functional_to_json(const LinearFunctional& h);
Json laurent_to_json(const LaurentPoly& p);
Json rf_to_json(const RationalFunctionQT& f);
Json motivic_to_json(const MotivicClass& c);
Json igusa_to_json(const IgusaData& d);
Json map_to_json(const PiecewiseAffineMap& f);
Json qpoly_to_json(const QPoly& p);

// ---- readers (throw SchemaError on shape violations) -------------------------

Rational rational_from_json(const Json& j);
Int int_from_json(const Json& j);
Constraint constraint_from_json(const Json& j);
Cell cell_from_json(const Json& j);
SemilinearSet set_from_json(const Json& j);
LinearFunctional functional_from_json(const Json& j);
LaurentPoly laurent_from_json(const Json& j, std::size_t expect_nvars = 0);
RationalFunctionQT rf_from_json(const Json& j);
MotivicClass motivic_from_json(const Json& j);
IgusaData igusa_from_json(const Json& j);
PiecewiseAffineMap map_from_json(const Json& j);

// Parses a complete JSON text; wraps syntax errors (with position info) in
// SchemaError.
Json parse_json_text(const std::string& text);

// Canonical text form: two-space indent, trailing newline.
std::string dump_json(const Json& j);

}  // namespace motint
