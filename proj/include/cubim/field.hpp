#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubim/rng.hpp"

namespace cubim {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Mixing elements of two different field descriptors.
struct DescriptorMismatch : FieldError {
    using FieldError::FieldError;
};
struct DivisionByZero : FieldError {
    using FieldError::FieldError;
};

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

// One of Q, Q(zeta_n), GF(p^k). Immutable; elements hold a shared handle.
//
// Element representation is a coefficient vector of exact rationals:
//   Q           length 1, canonical fraction
//   Q(zeta_n)   length phi(n), residue modulo Phi_n in the power basis
//   GF(p^k)     length k, integer entries in [0, p), residue modulo the modulus
class Field : public std::enable_shared_from_this<Field> {
public:
    enum class Kind { Rationals, Cyclotomic, FiniteField };

    static FieldPtr rationals();
    static FieldPtr cyclotomic(unsigned n);
    // Modulus defaults to the lexicographically first irreducible monic
    // polynomial of degree k over GF(p) (most significant coefficient first).
    static FieldPtr finite_field(unsigned long p, unsigned k);
    static FieldPtr finite_field(unsigned long p, unsigned k, const std::vector<long>& modulus);

    Kind kind() const { return kind_; }
    unsigned long characteristic() const { return kind_ == Kind::FiniteField ? p_ : 0; }
    unsigned degree() const { return degree_; }
    unsigned cyclotomic_order() const; // n of Q(zeta_n)
    unsigned long prime() const;       // p of GF(p^k)
    unsigned long order() const;       // p^k for GF(p^k); throws otherwise
    // Ascending coefficients over Z: Phi_n for cyclotomic, the chosen modulus
    // for GF (entries already reduced mod p). Throws for Q.
    const std::vector<mpz_class>& modulus() const;

    bool same(const Field& other) const;
    std::string label() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement integer(long v) const;
    FieldElement rational(const mpq_class& v) const;
    // Coefficient vector of exactly degree() entries (reduced mod p for GF).
    FieldElement element(std::vector<mpq_class> coeffs) const;
    // Arbitrary-length power-basis polynomial in the generator, reduced.
    FieldElement from_power_basis(const std::vector<mpq_class>& coeffs) const;
    // zeta for Q(zeta_n); the residue of x for GF(p^k) with k > 1.
    FieldElement generator() const;

private:
    friend class FieldElement;
    Field() = default;

    Kind kind_ = Kind::Rationals;
    unsigned degree_ = 1;
    unsigned n_ = 0;          // cyclotomic order
    unsigned long p_ = 0;     // GF characteristic
    unsigned k_ = 0;          // GF extension degree
    std::vector<mpz_class> modulus_; // Phi_n or GF modulus, ascending

    std::vector<mpq_class> reduce(std::vector<mpq_class> poly) const;
};

class FieldElement {
public:
    FieldElement() = default; // empty shell; usable only after assignment

    const FieldPtr& field() const { return field_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    // Q only: the canonical fraction.
    const mpq_class& rational_value() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    FieldElement inverse() const;
    FieldElement pow(long e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Total order on same-field elements (coefficient-lexicographic);
    // used to make enumeration output deterministic.
    static int compare(const FieldElement& a, const FieldElement& b);

    std::string str() const;

private:
    friend class Field;
    FieldElement(FieldPtr f, std::vector<mpq_class> c)
        : field_(std::move(f)), c_(std::move(c)) {}

    void check_same(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<mpq_class> c_;
};

// Phi_n over Z, ascending coefficients, degree phi(n). n >= 1.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);

unsigned euler_phi(unsigned n);

// All solutions of x^n = 1 in F, sorted by FieldElement::compare.
std::vector<FieldElement> nth_roots_of_unity(const FieldPtr& field, unsigned n);

// Uniform nonzero element: integer coordinates in [-box, box] for Q and
// Q(zeta_n), uniform over the nonzero elements for GF(p^k).
FieldElement sample_nonzero(const FieldPtr& field, Rng& rng, long box = 10);

// Rational elements embed into any field (mod-p reduction for GF, where the
// denominator must stay invertible); everything else requires matching
// descriptors. Throws DescriptorMismatch otherwise.
FieldElement embed(const FieldElement& x, const FieldPtr& target);

// "a/b" or "a" decimal fraction; validates and canonicalizes.
mpq_class parse_fraction(const std::string& s);
std::string format_fraction(const mpq_class& v);

} // namespace cubim
