#pragma once

#include <json.hpp>

#include "cubim/matrix.hpp"
#include "cubim/poly.hpp"
#include "cubim/solver.hpp"

namespace cubim {

using Json = nlohmann::json;

// Rejected input, carrying a stable machine code and the path of the
// offending value ("/entries/1/0", "--field", ...).
struct JsonError : std::runtime_error {
    std::string code;
    std::string location;

    JsonError(std::string code_, const std::string& message, std::string location_)
        : std::runtime_error(message), code(std::move(code_)), location(std::move(location_)) {}

    Json document() const {
        return Json{{"code", code}, {"message", what()}, {"location", location}};
    }
};

// {"type":"Q"} | {"type":"cyclotomic","n":N} | {"type":"gf","p":P,"k":K,
// "modulus":[...]}; the modulus (ascending integer coefficients) is emitted
// for k > 1 and optional on input.
Json field_to_json(const FieldPtr& field);
FieldPtr field_from_json(const Json& j, const std::string& location);

// Q: fraction string "a/b" or "a". Cyclotomic: array of phi(n) fraction
// strings. GF(p^k): array of k integers, reduced mod p.
Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const Json& j, const FieldPtr& field, const std::string& location);

// {"field":..., "rows":r, "cols":c, "entries":[[row 0...], ...]}
Json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const Json& j, const std::string& location);

// {"field":..., "xyz":"1", ...}; omitted monomials are zero, unknown keys
// are rejected.
Json poly_to_json(const Polynomial& f);
Polynomial poly_from_json(const Json& j, const std::string& location);

// {"field":..., "n":N, "diag":[...], "super":[...]}; super may have length
// n (cyclic, wraparound slot last) or n-1 (wraparound slot implied zero).
JordanData jordan_from_json(const Json& j, const std::string& location);
Json jordan_to_json(const JordanData& jd, const FieldPtr& field);

// {"witness":{"X":...,"Y":...,"Z":...},"path":...,"verified":true}
Json witness_to_json(const WitnessTriple& w);

// Command-line field descriptor: "Q" | "cyc:N" | "gf:P" | "gf:P:K".
FieldPtr parse_field_spec(const std::string& spec);

} // namespace cubim
