#include "cubim/field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace cubim {
namespace {

// ---- integer polynomial helpers (ascending coefficients, over Z) ----

void ztrim(std::vector<mpz_class>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor; remainder must vanish.
std::vector<mpz_class> zdiv_exact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
    ztrim(num);
    if (den.empty() || den.back() != 1) throw FieldError("zdiv_exact: divisor not monic");
    if (num.size() < den.size()) {
        if (!num.empty()) throw FieldError("zdiv_exact: inexact division");
        return {};
    }
    std::vector<mpz_class> quot(num.size() - den.size() + 1, mpz_class(0));
    for (std::size_t i = num.size(); i-- >= den.size();) {
        mpz_class c = num[i];
        if (c == 0) {
            if (i + 1 == den.size()) break;
            continue;
        }
        const std::size_t shift = i + 1 - den.size();
        quot[shift] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
        if (i + 1 == den.size()) break;
    }
    for (const auto& c : num)
        if (c != 0) throw FieldError("zdiv_exact: inexact division");
    return quot;
}

mpz_class zmod(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

mpz_class zinv_mod(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw DivisionByZero("no inverse modulo p");
    return r;
}

// ---- rational polynomial helpers (ascending, over Q) ----

void qtrim(std::vector<mpq_class>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<mpq_class> qmul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpq_class> r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// s such that s * a == gcd(a, m) (mod m); gcd returned in g.
void qext_gcd(std::vector<mpq_class> a, std::vector<mpq_class> m,
              std::vector<mpq_class>& g, std::vector<mpq_class>& s) {
    std::vector<mpq_class> r0 = std::move(m), r1 = std::move(a);
    std::vector<mpq_class> s0 = {}, s1 = {mpq_class(1)};
    qtrim(r0);
    qtrim(r1);
    while (!r1.empty()) {
        // quotient of r0 by r1
        std::vector<mpq_class> q;
        std::vector<mpq_class> rem = r0;
        const mpq_class lead = r1.back();
        while (rem.size() >= r1.size()) {
            mpq_class c = rem.back() / lead;
            const std::size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, mpq_class(0));
            q[shift] = c;
            for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= c * r1[j];
            rem.pop_back();
            qtrim(rem);
        }
        std::vector<mpq_class> s2 = s0; // s2 = s0 - q*s1
        const std::vector<mpq_class> qs1 = qmul(q, s1);
        if (s2.size() < qs1.size()) s2.resize(qs1.size(), mpq_class(0));
        for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
        qtrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    g = std::move(r0);
    s = std::move(s0);
}

// ---- mod-p polynomial helpers (ascending, entries in [0, p)) ----

void ptrim(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<mpz_class> pmul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                            const mpz_class& p) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = zmod(c, p);
    ptrim(r);
    return r;
}

std::vector<mpz_class> prem(std::vector<mpz_class> num, const std::vector<mpz_class>& den,
                            const mpz_class& p) {
    ptrim(num);
    if (den.empty()) throw DivisionByZero("polynomial division by zero");
    const mpz_class lead_inv = zinv_mod(den.back(), p);
    while (num.size() >= den.size()) {
        mpz_class c = zmod(num.back() * lead_inv, p);
        const std::size_t shift = num.size() - den.size();
        if (c != 0)
            for (std::size_t j = 0; j < den.size(); ++j)
                num[shift + j] = zmod(num[shift + j] - c * den[j], p);
        num.pop_back();
        ptrim(num);
    }
    return num;
}

void pext_gcd(std::vector<mpz_class> a, std::vector<mpz_class> m, const mpz_class& p,
              std::vector<mpz_class>& g, std::vector<mpz_class>& s) {
    std::vector<mpz_class> r0 = std::move(m), r1 = std::move(a);
    std::vector<mpz_class> s0 = {}, s1 = {mpz_class(1)};
    ptrim(r0);
    ptrim(r1);
    while (!r1.empty()) {
        std::vector<mpz_class> q;
        std::vector<mpz_class> rem = r0;
        const mpz_class lead_inv = zinv_mod(r1.back(), p);
        while (rem.size() >= r1.size()) {
            mpz_class c = zmod(rem.back() * lead_inv, p);
            const std::size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, mpz_class(0));
            q[shift] = c;
            for (std::size_t j = 0; j < r1.size(); ++j)
                rem[shift + j] = zmod(rem[shift + j] - c * r1[j], p);
            rem.pop_back();
            ptrim(rem);
        }
        std::vector<mpz_class> s2 = s0;
        const std::vector<mpz_class> qs1 = pmul(q, s1, p);
        if (s2.size() < qs1.size()) s2.resize(qs1.size(), mpz_class(0));
        for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] = zmod(s2[i] - qs1[i], p);
        ptrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    g = std::move(r0);
    s = std::move(s0);
}

// Extension fields are enumerated element-by-element in several places
// (roots of unity, modulus search); cap their size to keep that honest.
void check_extension_size(unsigned long p, unsigned k) {
    if (k < 2) return;
    unsigned long q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > (1ul << 20)) throw FieldError("extension field size must be <= 2^20");
    }
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Decode m into the low-order coefficients of x^k + a_{k-1} x^{k-1} + ... + a_0;
// counting m upward enumerates moduli most-significant-digit-lexicographically.
std::vector<mpz_class> monic_from_index(unsigned long m, unsigned long p, unsigned k) {
    std::vector<mpz_class> poly(k + 1, mpz_class(0));
    poly[k] = 1;
    for (unsigned i = 0; i < k; ++i) {
        poly[i] = mpz_class(static_cast<unsigned long>(m % p));
        m /= p;
    }
    return poly;
}

bool has_root_mod_p(const std::vector<mpz_class>& poly, unsigned long p) {
    const mpz_class pz(p);
    for (unsigned long x = 0; x < p; ++x) {
        mpz_class acc(0), xz(x);
        for (std::size_t i = poly.size(); i-- > 0;) acc = zmod(acc * xz + poly[i], pz);
        if (acc == 0) return true;
    }
    return false;
}

// Degree <= 4 suffices: no roots rules out deg 2 and 3; deg 4 additionally
// needs no irreducible quadratic divisor.
bool is_irreducible(const std::vector<mpz_class>& poly, unsigned long p) {
    const std::size_t deg = poly.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    if (has_root_mod_p(poly, p)) return false;
    if (deg <= 3) return true;
    if (deg == 4) {
        const mpz_class pz(p);
        for (unsigned long m = 0; m < p * p; ++m) {
            const auto quad = monic_from_index(m, p, 2);
            if (has_root_mod_p(quad, p)) continue; // reducible quadratic
            if (prem(poly, quad, pz).empty()) return false;
        }
        return true;
    }
    throw FieldError("irreducibility check supports degree <= 4 only");
}

mpz_class num_as_int(const mpq_class& q) {
    if (q.get_den() != 1) throw FieldError("internal: non-integral GF coefficient");
    return q.get_num();
}

} // namespace

// ---- cyclotomic polynomial ----

unsigned euler_phi(unsigned n) {
    if (n == 0) throw FieldError("euler_phi: n must be positive");
    unsigned result = n, m = n;
    for (unsigned d = 2; static_cast<unsigned long>(d) * d <= m; ++d) {
        if (m % d == 0) {
            result -= result / d;
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw FieldError("cyclotomic_polynomial: n must be positive");
    static std::map<unsigned, std::vector<mpz_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    // (x^n - 1) / prod_{d | n, d < n} Phi_d, computed by exact division
    std::function<std::vector<mpz_class>(unsigned)> phi_of = [&](unsigned m) {
        if (auto it = cache.find(m); it != cache.end()) return it->second;
        std::vector<mpz_class> num(m + 1, mpz_class(0));
        num[0] = -1;
        num[m] = 1;
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0) num = zdiv_exact(std::move(num), phi_of(d));
        cache[m] = num;
        return num;
    };
    return phi_of(n);
}

// ---- Field ----

FieldPtr Field::rationals() {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Rationals;
    f->degree_ = 1;
    return f;
}

FieldPtr Field::cyclotomic(unsigned n) {
    if (n == 0) throw FieldError("cyclotomic order must be positive");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Cyclotomic;
    f->n_ = n;
    f->modulus_ = cyclotomic_polynomial(n);
    f->degree_ = static_cast<unsigned>(f->modulus_.size() - 1);
    return f;
}

FieldPtr Field::finite_field(unsigned long p, unsigned k) {
    if (!is_prime(p)) throw FieldError("GF characteristic must be prime");
    if (k < 1 || k > 4) throw FieldError("GF extension degree must be in [1, 4]");
    if (k == 1) return finite_field(p, 1, {0, 1}); // modulus x
    check_extension_size(p, k);
    unsigned long count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (unsigned long m = 0; m < count; ++m) {
        const auto poly = monic_from_index(m, p, k);
        if (is_irreducible(poly, p)) {
            std::vector<long> coeffs(poly.size());
            for (std::size_t i = 0; i < poly.size(); ++i) coeffs[i] = poly[i].get_si();
            return finite_field(p, k, coeffs);
        }
    }
    throw FieldError("no irreducible modulus found"); // unreachable
}

FieldPtr Field::finite_field(unsigned long p, unsigned k, const std::vector<long>& modulus) {
    if (!is_prime(p)) throw FieldError("GF characteristic must be prime");
    if (k < 1 || k > 4) throw FieldError("GF extension degree must be in [1, 4]");
    if (modulus.size() != static_cast<std::size_t>(k) + 1)
        throw FieldError("GF modulus must have degree k");
    check_extension_size(p, k);
    const mpz_class pz(p);
    std::vector<mpz_class> mod(modulus.size());
    for (std::size_t i = 0; i < modulus.size(); ++i) mod[i] = zmod(mpz_class(modulus[i]), pz);
    if (mod.back() != 1) throw FieldError("GF modulus must be monic");
    if (!is_irreducible(mod, p)) throw FieldError("GF modulus must be irreducible");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::FiniteField;
    f->p_ = p;
    f->k_ = k;
    f->degree_ = k;
    f->modulus_ = std::move(mod);
    return f;
}

unsigned Field::cyclotomic_order() const {
    if (kind_ != Kind::Cyclotomic) throw FieldError("not a cyclotomic field");
    return n_;
}

unsigned long Field::prime() const {
    if (kind_ != Kind::FiniteField) throw FieldError("not a finite field");
    return p_;
}

unsigned long Field::order() const {
    if (kind_ != Kind::FiniteField) throw FieldError("order: field is infinite");
    unsigned long q = 1;
    for (unsigned i = 0; i < k_; ++i) {
        if (q > (1ul << 40)) throw FieldError("order: overflow");
        q *= p_;
    }
    return q;
}

const std::vector<mpz_class>& Field::modulus() const {
    if (kind_ == Kind::Rationals) throw FieldError("Q has no modulus");
    return modulus_;
}

bool Field::same(const Field& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Rationals: return true;
        case Kind::Cyclotomic: return n_ == o.n_;
        case Kind::FiniteField: return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }
    return false;
}

std::string Field::label() const {
    switch (kind_) {
        case Kind::Rationals: return "Q";
        case Kind::Cyclotomic: return "Q(zeta_" + std::to_string(n_) + ")";
        case Kind::FiniteField:
            if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
            return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
    }
    return "?";
}

std::vector<mpq_class> Field::reduce(std::vector<mpq_class> poly) const {
    switch (kind_) {
        case Kind::Rationals: {
            qtrim(poly);
            if (poly.size() > 1) throw FieldError("Q element must be a single coefficient");
            poly.resize(1, mpq_class(0));
            return poly;
        }
        case Kind::Cyclotomic: {
            // modulus is monic over Z; plain synthetic reduction
            const std::size_t d = degree_;
            while (poly.size() > d) {
                const mpq_class c = poly.back();
                const std::size_t shift = poly.size() - 1 - d;
                if (c != 0)
                    for (std::size_t j = 0; j < d; ++j)
                        poly[shift + j] -= c * mpq_class(modulus_[j]);
                poly.pop_back();
            }
            poly.resize(d, mpq_class(0));
            return poly;
        }
        case Kind::FiniteField: {
            const mpz_class pz(p_);
            std::vector<mpz_class> zp(poly.size());
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const mpq_class& q = poly[i];
                mpz_class den = q.get_den();
                mpz_class num = q.get_num();
                if (den == 1) {
                    zp[i] = zmod(num, pz);
                } else {
                    zp[i] = zmod(num * zinv_mod(zmod(den, pz), pz), pz);
                }
            }
            zp = prem(std::move(zp), modulus_, pz);
            std::vector<mpq_class> out(degree_, mpq_class(0));
            for (std::size_t i = 0; i < zp.size(); ++i) out[i] = mpq_class(zp[i]);
            return out;
        }
    }
    throw FieldError("unreachable");
}

FieldElement Field::zero() const {
    return FieldElement(shared_from_this(), std::vector<mpq_class>(degree_, mpq_class(0)));
}

FieldElement Field::one() const { return integer(1); }

FieldElement Field::integer(long v) const { return rational(mpq_class(v)); }

FieldElement Field::rational(const mpq_class& v) const {
    std::vector<mpq_class> c(degree_, mpq_class(0));
    c[0] = v;
    c[0].canonicalize();
    return FieldElement(shared_from_this(), reduce(std::move(c)));
}

FieldElement Field::element(std::vector<mpq_class> coeffs) const {
    if (coeffs.size() != degree_)
        throw FieldError("element: expected " + std::to_string(degree_) + " coefficients");
    for (auto& c : coeffs) c.canonicalize();
    return FieldElement(shared_from_this(), reduce(std::move(coeffs)));
}

FieldElement Field::from_power_basis(const std::vector<mpq_class>& coeffs) const {
    if (kind_ == Kind::Rationals) {
        if (coeffs.size() > 1) throw FieldError("Q has no power basis");
        return rational(coeffs.empty() ? mpq_class(0) : coeffs[0]);
    }
    std::vector<mpq_class> c = coeffs;
    for (auto& x : c) x.canonicalize();
    return FieldElement(shared_from_this(), reduce(std::move(c)));
}

FieldElement Field::generator() const {
    if (kind_ == Kind::Rationals) throw FieldError("Q has no generator");
    if (kind_ == Kind::FiniteField && k_ == 1)
        throw FieldError("GF(p) has no extension generator");
    if (degree_ == 1) return integer(n_ == 1 ? 1 : -1); // zeta_1, zeta_2
    std::vector<mpq_class> c(degree_, mpq_class(0));
    c[1] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

// ---- FieldElement ----

void FieldElement::check_same(const FieldElement& o) const {
    if (!field_ || !o.field_) throw DescriptorMismatch("uninitialized field element");
    if (!field_->same(*o.field_)) throw DescriptorMismatch("field descriptors differ");
}

bool FieldElement::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

const mpq_class& FieldElement::rational_value() const {
    if (field_->kind() != Field::Kind::Rationals) throw FieldError("rational_value: field is not Q");
    return c_[0];
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    if (field_->kind() == Field::Kind::FiniteField) {
        const mpz_class pz(field_->prime());
        for (auto& c : r.c_) c = mpq_class(zmod(-num_as_int(c), pz));
    } else {
        for (auto& c : r.c_) c = -c;
    }
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    if (field_->kind() == Field::Kind::FiniteField) {
        const mpz_class pz(field_->prime());
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] = mpq_class(zmod(num_as_int(c_[i]) + num_as_int(o.c_[i]), pz));
    } else {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    if (field_->kind() == Field::Kind::FiniteField) {
        const mpz_class pz(field_->prime());
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] = mpq_class(zmod(num_as_int(c_[i]) - num_as_int(o.c_[i]), pz));
    } else {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    switch (field_->kind()) {
        case Field::Kind::Rationals:
            c_[0] *= o.c_[0];
            break;
        case Field::Kind::Cyclotomic: {
            c_ = field_->reduce(qmul(c_, o.c_));
            break;
        }
        case Field::Kind::FiniteField: {
            const mpz_class pz(field_->prime());
            std::vector<mpz_class> a(c_.size()), b(o.c_.size());
            for (std::size_t i = 0; i < c_.size(); ++i) a[i] = num_as_int(c_[i]);
            for (std::size_t i = 0; i < o.c_.size(); ++i) b[i] = num_as_int(o.c_[i]);
            auto prod = prem(pmul(a, b, pz), field_->modulus(), pz);
            std::vector<mpq_class> out(field_->degree(), mpq_class(0));
            for (std::size_t i = 0; i < prod.size(); ++i) out[i] = mpq_class(prod[i]);
            c_ = std::move(out);
            break;
        }
    }
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field_->label());
    switch (field_->kind()) {
        case Field::Kind::Rationals: {
            FieldElement r = *this;
            r.c_[0] = 1 / c_[0];
            return r;
        }
        case Field::Kind::Cyclotomic: {
            std::vector<mpq_class> mod(field_->modulus().size());
            for (std::size_t i = 0; i < mod.size(); ++i) mod[i] = mpq_class(field_->modulus()[i]);
            std::vector<mpq_class> g, s;
            qext_gcd(c_, mod, g, s);
            if (g.size() != 1) throw FieldError("cyclotomic inverse: gcd not constant");
            for (auto& c : s) c /= g[0];
            FieldElement r = *this;
            r.c_ = field_->reduce(std::move(s));
            return r;
        }
        case Field::Kind::FiniteField: {
            const mpz_class pz(field_->prime());
            std::vector<mpz_class> a(c_.size());
            for (std::size_t i = 0; i < c_.size(); ++i) a[i] = num_as_int(c_[i]);
            std::vector<mpz_class> g, s;
            pext_gcd(a, field_->modulus(), pz, g, s);
            if (g.size() != 1) throw FieldError("GF inverse: gcd not constant");
            const mpz_class ginv = zinv_mod(g[0], pz);
            std::vector<mpq_class> out(field_->degree(), mpq_class(0));
            for (std::size_t i = 0; i < s.size(); ++i) out[i] = mpq_class(zmod(s[i] * ginv, pz));
            FieldElement r = *this;
            r.c_ = std::move(out);
            return r;
        }
    }
    throw FieldError("unreachable");
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement base = *this;
    FieldElement acc = field_->one();
    unsigned long exp = static_cast<unsigned long>(e);
    while (exp > 0) {
        if (exp & 1) acc *= base;
        exp >>= 1;
        if (exp > 0) base *= base;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_same(o);
    return c_ == o.c_;
}

int FieldElement::compare(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string FieldElement::str() const {
    if (field_->degree() == 1) return format_fraction(c_[0]);
    std::string out = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ",";
        out += format_fraction(c_[i]);
    }
    return out + "]";
}

// ---- roots of unity ----

std::vector<FieldElement> nth_roots_of_unity(const FieldPtr& field, unsigned n) {
    if (n == 0) throw FieldError("nth_roots_of_unity: n must be positive");
    std::vector<FieldElement> roots;
    const FieldElement one = field->one();
    switch (field->kind()) {
        case Field::Kind::Rationals: {
            roots.push_back(one);
            if (n % 2 == 0) roots.push_back(field->integer(-1));
            break;
        }
        case Field::Kind::Cyclotomic: {
            // every root of unity in Q(zeta_m) is +/- a power of zeta
            const unsigned m = field->cyclotomic_order();
            const FieldElement zeta = field->generator();
            FieldElement zj = one;
            for (unsigned j = 0; j < m; ++j) {
                if (zj.pow(static_cast<long>(n)) == one) roots.push_back(zj);
                if (m % 2 == 1) {
                    const FieldElement neg = -zj;
                    if (neg.pow(static_cast<long>(n)) == one) roots.push_back(neg);
                }
                zj *= zeta;
            }
            break;
        }
        case Field::Kind::FiniteField: {
            const unsigned long q = field->order();
            if (q > (1ul << 20)) throw FieldError("root enumeration requires |F| <= 2^20");
            const unsigned long p = field->prime();
            for (unsigned long e = 1; e < q; ++e) {
                std::vector<mpq_class> digits(field->degree(), mpq_class(0));
                unsigned long v = e;
                for (unsigned i = 0; i < field->degree(); ++i) {
                    digits[i] = mpq_class(static_cast<unsigned long>(v % p));
                    v /= p;
                }
                const FieldElement x = field->element(std::move(digits));
                if (x.pow(static_cast<long>(n)) == one) roots.push_back(x);
            }
            break;
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& a, const FieldElement& b) { return FieldElement::compare(a, b) < 0; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

FieldElement sample_nonzero(const FieldPtr& field, Rng& rng, long box) {
    if (box < 1) throw FieldError("sample_nonzero: box must be >= 1");
    switch (field->kind()) {
        case Field::Kind::Rationals: {
            for (;;) {
                const long v = rng.between(-box, box);
                if (v != 0) return field->integer(v);
            }
        }
        case Field::Kind::Cyclotomic: {
            for (;;) {
                std::vector<mpq_class> c(field->degree());
                bool nonzero = false;
                for (auto& x : c) {
                    const long v = rng.between(-box, box);
                    x = mpq_class(v);
                    nonzero = nonzero || v != 0;
                }
                if (nonzero) return field->element(std::move(c));
            }
        }
        case Field::Kind::FiniteField: {
            const unsigned long p = field->prime();
            for (;;) {
                std::vector<mpq_class> c(field->degree());
                bool nonzero = false;
                for (auto& x : c) {
                    const unsigned long v = rng.below(p);
                    x = mpq_class(v);
                    nonzero = nonzero || v != 0;
                }
                if (nonzero) return field->element(std::move(c));
            }
        }
    }
    throw FieldError("unreachable");
}

FieldElement embed(const FieldElement& x, const FieldPtr& target) {
    if (x.field()->same(*target)) return x;
    if (x.field()->kind() == Field::Kind::Rationals) return target->rational(x.rational_value());
    throw DescriptorMismatch("cannot embed " + x.field()->label() + " into " + target->label());
}

mpq_class parse_fraction(const std::string& s) {
    if (s.empty()) throw FieldError("empty fraction string");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return mpq_class(mpz_class(s));
        }
        const mpz_class num(s.substr(0, slash));
        const mpz_class den(s.substr(slash + 1));
        if (den == 0) throw DivisionByZero("fraction with zero denominator");
        mpq_class v(num, den);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw FieldError("malformed fraction string: " + s);
    }
}

std::string format_fraction(const mpq_class& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

} // namespace cubim
