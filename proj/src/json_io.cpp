#include "cubim/json_io.hpp"

#include <algorithm>
#include <cstdlib>

namespace cubim {

namespace {

[[noreturn]] void fail(const char* code, const std::string& message, const std::string& loc) {
    throw JsonError(code, message, loc);
}

void require_object(const Json& j, const std::string& loc) {
    if (!j.is_object()) fail("bad_type", "expected a JSON object", loc);
}

const Json& require_key(const Json& j, const char* key, const std::string& loc) {
    const auto it = j.find(key);
    if (it == j.end()) fail("missing_key", std::string("required key \"") + key + "\" is absent", loc);
    return *it;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& loc) {
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&](const char* a) { return k == a; }))
            fail("unknown_key", "unexpected key \"" + k + "\"", loc + "/" + k);
    }
}

unsigned long positive_uint(const Json& j, const std::string& loc, unsigned long max) {
    if (!j.is_number_integer())
        fail("bad_type", "expected an integer", loc);
    const long long v = j.get<long long>();
    if (v < 1 || static_cast<unsigned long long>(v) > max)
        fail("bad_value", "integer out of range [1, " + std::to_string(max) + "]", loc);
    return static_cast<unsigned long>(v);
}

long plain_int(const Json& j, const std::string& loc) {
    if (!j.is_number_integer())
        fail("bad_type", "expected an integer", loc);
    return j.get<long>();
}

// "a/b" fraction string, or a bare JSON integer.
mpq_class fraction_value(const Json& j, const std::string& loc) {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
    if (!j.is_string()) fail("bad_type", "expected a fraction string", loc);
    try {
        return parse_fraction(j.get<std::string>());
    } catch (const FieldError& e) {
        fail("bad_value", e.what(), loc);
    }
}

long small_coefficient(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::logic_error("modulus coefficient exceeds long");
    return z.get_si();
}

} // namespace

Json field_to_json(const FieldPtr& field) {
    switch (field->kind()) {
    case Field::Kind::Rationals:
        return Json{{"type", "Q"}};
    case Field::Kind::Cyclotomic:
        return Json{{"type", "cyclotomic"}, {"n", field->cyclotomic_order()}};
    case Field::Kind::FiniteField: {
        Json j{{"type", "gf"}, {"p", field->prime()}, {"k", field->degree()}};
        if (field->degree() > 1) {
            Json mod = Json::array();
            for (const mpz_class& c : field->modulus()) mod.push_back(small_coefficient(c));
            j["modulus"] = mod;
        }
        return j;
    }
    }
    throw std::logic_error("field_to_json: unknown kind");
}

FieldPtr field_from_json(const Json& j, const std::string& location) {
    require_object(j, location);
    const Json& tj = require_key(j, "type", location);
    if (!tj.is_string()) fail("bad_type", "expected a string", location + "/type");
    const std::string type = tj.get<std::string>();
    try {
        if (type == "Q") {
            reject_unknown(j, {"type"}, location);
            return Field::rationals();
        }
        if (type == "cyclotomic") {
            reject_unknown(j, {"type", "n"}, location);
            const unsigned long n =
                positive_uint(require_key(j, "n", location), location + "/n", 1000000);
            return Field::cyclotomic(static_cast<unsigned>(n));
        }
        if (type == "gf") {
            reject_unknown(j, {"type", "p", "k", "modulus"}, location);
            const unsigned long p =
                positive_uint(require_key(j, "p", location), location + "/p", 1ul << 31);
            const unsigned long k =
                positive_uint(require_key(j, "k", location), location + "/k", 16);
            const auto mi = j.find("modulus");
            if (mi == j.end()) return Field::finite_field(p, static_cast<unsigned>(k));
            if (!mi->is_array()) fail("bad_type", "expected an array", location + "/modulus");
            if (mi->size() != k + 1)
                fail("bad_value", "modulus needs k+1 ascending coefficients",
                     location + "/modulus");
            std::vector<long> mod;
            for (std::size_t i = 0; i < mi->size(); ++i)
                mod.push_back(plain_int((*mi)[i], location + "/modulus/" + std::to_string(i)));
            return Field::finite_field(p, static_cast<unsigned>(k), mod);
        }
    } catch (const FieldError& e) {
        fail("bad_value", e.what(), location);
    }
    fail("bad_value", "field type must be \"Q\", \"cyclotomic\", or \"gf\"", location + "/type");
}

Json element_to_json(const FieldElement& x) {
    const FieldPtr& F = x.field();
    switch (F->kind()) {
    case Field::Kind::Rationals:
        return format_fraction(x.coeffs()[0]);
    case Field::Kind::Cyclotomic: {
        Json a = Json::array();
        for (const mpq_class& c : x.coeffs()) a.push_back(format_fraction(c));
        return a;
    }
    case Field::Kind::FiniteField: {
        Json a = Json::array();
        for (const mpq_class& c : x.coeffs()) a.push_back(small_coefficient(c.get_num()));
        return a;
    }
    }
    throw std::logic_error("element_to_json: unknown kind");
}

FieldElement element_from_json(const Json& j, const FieldPtr& field, const std::string& location) {
    switch (field->kind()) {
    case Field::Kind::Rationals:
        return field->rational(fraction_value(j, location));
    case Field::Kind::Cyclotomic: {
        if (!j.is_array()) fail("bad_type", "expected an array of fraction strings", location);
        if (j.size() != field->degree())
            fail("bad_value",
                 "cyclotomic element needs exactly " + std::to_string(field->degree()) +
                     " coefficients",
                 location);
        std::vector<mpq_class> c;
        for (std::size_t i = 0; i < j.size(); ++i)
            c.push_back(fraction_value(j[i], location + "/" + std::to_string(i)));
        return field->element(std::move(c));
    }
    case Field::Kind::FiniteField: {
        if (!j.is_array()) fail("bad_type", "expected an array of integers", location);
        if (j.size() != field->degree())
            fail("bad_value",
                 "GF element needs exactly " + std::to_string(field->degree()) + " coefficients",
                 location);
        std::vector<mpq_class> c;
        for (std::size_t i = 0; i < j.size(); ++i)
            c.emplace_back(plain_int(j[i], location + "/" + std::to_string(i)));
        return field->element(std::move(c));
    }
    }
    throw std::logic_error("element_from_json: unknown kind");
}

Json matrix_to_json(const Matrix& M) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(element_to_json(M.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"field", field_to_json(M.field())},
                {"rows", M.rows()},
                {"cols", M.cols()},
                {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j, const std::string& location) {
    require_object(j, location);
    reject_unknown(j, {"field", "rows", "cols", "entries"}, location);
    const FieldPtr F = field_from_json(require_key(j, "field", location), location + "/field");
    const unsigned long r =
        positive_uint(require_key(j, "rows", location), location + "/rows", 4096);
    const unsigned long c =
        positive_uint(require_key(j, "cols", location), location + "/cols", 4096);
    const Json& entries = require_key(j, "entries", location);
    if (!entries.is_array() || entries.size() != r)
        fail("bad_value", "entries must be an array of " + std::to_string(r) + " rows",
             location + "/entries");
    Matrix M(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const std::string rloc = location + "/entries/" + std::to_string(i);
        if (!entries[i].is_array() || entries[i].size() != c)
            fail("bad_value", "row must be an array of " + std::to_string(c) + " entries", rloc);
        for (std::size_t k = 0; k < c; ++k)
            M.at(i, k) = element_from_json(entries[i][k], F, rloc + "/" + std::to_string(k));
    }
    return M;
}

Json poly_to_json(const Polynomial& f) {
    Json j{{"field", field_to_json(f.field())}};
    for (int w = 0; w < kWordCount; ++w) {
        const FieldElement& c = f.coeff(static_cast<Word>(w));
        if (!c.is_zero()) j[kWordNames[w]] = element_to_json(c);
    }
    return j;
}

Polynomial poly_from_json(const Json& j, const std::string& location) {
    require_object(j, location);
    reject_unknown(j, {"field", "xyz", "yzx", "zxy", "zyx", "xzy", "yxz"}, location);
    const FieldPtr F = field_from_json(require_key(j, "field", location), location + "/field");
    Polynomial f(F);
    for (int w = 0; w < kWordCount; ++w) {
        const auto it = j.find(kWordNames[w]);
        if (it == j.end()) continue;
        f.coeff(static_cast<Word>(w)) =
            element_from_json(*it, F, location + "/" + kWordNames[w]);
    }
    return f;
}

JordanData jordan_from_json(const Json& j, const std::string& location) {
    require_object(j, location);
    reject_unknown(j, {"field", "n", "diag", "super"}, location);
    const FieldPtr F = field_from_json(require_key(j, "field", location), location + "/field");
    const unsigned long n = positive_uint(require_key(j, "n", location), location + "/n", 4096);
    const Json& dj = require_key(j, "diag", location);
    if (!dj.is_array() || dj.size() != n)
        fail("bad_value", "diag must be an array of n entries", location + "/diag");
    const Json& sj = require_key(j, "super", location);
    if (!sj.is_array() || (sj.size() != n && sj.size() + 1 != n))
        fail("bad_value",
             "super must have n entries (cyclic, wraparound slot last) or n-1 "
             "(wraparound slot zero)",
             location + "/super");
    JordanData jd;
    for (std::size_t i = 0; i < n; ++i)
        jd.diag.push_back(element_from_json(dj[i], F, location + "/diag/" + std::to_string(i)));
    for (std::size_t i = 0; i < sj.size(); ++i)
        jd.super.push_back(element_from_json(sj[i], F, location + "/super/" + std::to_string(i)));
    if (jd.super.size() + 1 == n) jd.super.push_back(F->zero());
    return jd;
}

Json jordan_to_json(const JordanData& jd, const FieldPtr& field) {
    Json diag = Json::array();
    for (const FieldElement& x : jd.diag) diag.push_back(element_to_json(x));
    Json super = Json::array();
    for (const FieldElement& x : jd.super) super.push_back(element_to_json(x));
    return Json{{"field", field_to_json(field)},
                {"n", jd.size()},
                {"diag", std::move(diag)},
                {"super", std::move(super)}};
}

Json witness_to_json(const WitnessTriple& w) {
    return Json{{"witness",
                 Json{{"X", matrix_to_json(w.X)},
                      {"Y", matrix_to_json(w.Y)},
                      {"Z", matrix_to_json(w.Z)}}},
                {"path", path_name(w.path)},
                {"verified", w.verified}};
}

FieldPtr parse_field_spec(const std::string& spec) {
    const std::string loc = "--field";
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = spec.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(spec.substr(start));
            break;
        }
        parts.push_back(spec.substr(start, colon - start));
        start = colon + 1;
    }
    const auto number = [&](const std::string& s) -> unsigned long {
        if (s.empty() || s.size() > 9 ||
            !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            fail("bad_value", "expected a decimal number in field spec, got \"" + s + "\"", loc);
        return std::stoul(s);
    };
    try {
        if (parts.size() == 1 && parts[0] == "Q") return Field::rationals();
        if (parts.size() == 2 && parts[0] == "cyc") {
            const unsigned long n = number(parts[1]);
            if (n == 0) fail("bad_value", "cyclotomic order must be positive", loc);
            return Field::cyclotomic(static_cast<unsigned>(n));
        }
        if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "gf") {
            const unsigned long p = number(parts[1]);
            const unsigned long k = parts.size() == 3 ? number(parts[2]) : 1;
            if (k == 0) fail("bad_value", "GF extension degree must be positive", loc);
            return Field::finite_field(p, static_cast<unsigned>(k));
        }
    } catch (const FieldError& e) {
        fail("bad_value", e.what(), loc);
    }
    fail("bad_value",
         "field spec must be \"Q\", \"cyc:N\", \"gf:P\", or \"gf:P:K\", got \"" + spec + "\"", loc);
}

} // namespace cubim
