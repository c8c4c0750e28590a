#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "cubim/field.hpp"

using namespace cubim;

namespace {

std::vector<mpz_class> zpoly(std::initializer_list<long> coeffs) {
    std::vector<mpz_class> p;
    for (long c : coeffs) p.emplace_back(c);
    return p;
}

std::vector<mpz_class> zpoly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

FieldElement gf_el(const FieldPtr& f, std::initializer_list<long> coeffs) {
    std::vector<mpq_class> c;
    for (long v : coeffs) c.emplace_back(v);
    return f->element(std::move(c));
}

} // namespace

TEST_CASE("cyclotomic polynomials satisfy the divisor product identity") {
    // independent oracle: prod_{d | n} Phi_d(x) == x^n - 1
    for (unsigned n = 1; n <= 64; ++n) {
        std::vector<mpz_class> prod = {mpz_class(1)};
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) prod = zpoly_mul(prod, cyclotomic_polynomial(d));
        std::vector<mpz_class> expect(n + 1, mpz_class(0));
        expect[0] = -1;
        expect[n] = 1;
        CHECK(prod == expect);
        CHECK(cyclotomic_polynomial(n).size() == euler_phi(n) + 1);
    }
}

TEST_CASE("cyclotomic polynomials, frozen small cases") {
    CHECK(cyclotomic_polynomial(1) == zpoly({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == zpoly({1, 1}));
    CHECK(cyclotomic_polynomial(3) == zpoly({1, 1, 1}));
    CHECK(cyclotomic_polynomial(4) == zpoly({1, 0, 1}));
    CHECK(cyclotomic_polynomial(6) == zpoly({1, -1, 1}));
    CHECK(cyclotomic_polynomial(12) == zpoly({1, 0, -1, 0, 1}));
}

TEST_CASE("rational arithmetic is canonical") {
    auto Q = Field::rationals();
    auto half = Q->rational(mpq_class(1, 2));
    auto third = Q->rational(mpq_class(1, 3));
    CHECK((half + third).rational_value() == mpq_class(5, 6));

    // canonical form: reduced, positive denominator
    auto v = Q->rational(mpq_class(-2, 4));
    CHECK(v.rational_value().get_num() == -1);
    CHECK(v.rational_value().get_den() == 2);

    CHECK_THROWS_AS(half / Q->zero(), DivisionByZero);
    CHECK((half * third).rational_value() == mpq_class(1, 6));
    CHECK((half - half).is_zero());
    CHECK(half.pow(-1).rational_value() == 2);
}

TEST_CASE("descriptor mismatch is rejected") {
    auto Q = Field::rationals();
    auto F5 = Field::finite_field(5, 1);
    CHECK_THROWS_AS(Q->one() + F5->one(), DescriptorMismatch);
    // two handles to the same descriptor are compatible
    auto F5b = Field::finite_field(5, 1);
    CHECK((F5->one() + F5b->one()) == F5->integer(2));
}

TEST_CASE("arithmetic in Q(zeta_4)") {
    auto F = Field::cyclotomic(4);
    auto z = F->generator();
    CHECK(z * z == F->integer(-1));
    CHECK(z.pow(4).is_one());
    auto one = F->one();
    CHECK((one + z) * (one - z) == F->integer(2));
    CHECK(z.inverse() == -z);
    CHECK(z.inverse() == z.pow(3));
}

TEST_CASE("arithmetic in Q(zeta_6)") {
    auto F = Field::cyclotomic(6);
    auto z = F->generator();
    // Phi_6 = x^2 - x + 1, so zeta^2 = zeta - 1
    CHECK(z * z == z - F->one());
    CHECK(z.pow(6).is_one());
    CHECK_FALSE(z.pow(3).is_one());
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto a = sample_nonzero(F, rng);
        CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("GF(5) arithmetic") {
    auto F = Field::finite_field(5, 1);
    CHECK(F->characteristic() == 5);
    CHECK(F->order() == 5);
    CHECK(F->integer(3) * F->integer(4) == F->integer(2));
    CHECK(F->integer(2).inverse() == F->integer(3));
    CHECK(F->integer(4).inverse() == F->integer(4));
    CHECK(F->integer(-1) == F->integer(4));
    // rational embedding: 1/2 = 2^{-1} = 3
    CHECK(F->rational(mpq_class(1, 2)) == F->integer(3));
    CHECK_THROWS_AS(F->rational(mpq_class(1, 5)), DivisionByZero);
}

TEST_CASE("GF(4) uses the canonical modulus x^2 + x + 1") {
    auto F = Field::finite_field(2, 2);
    CHECK(F->modulus() == zpoly({1, 1, 1}));
    auto x = F->generator();
    CHECK(x * x == x + F->one()); // x^2 = x + 1
    CHECK(x.pow(3).is_one());
    // Frobenius: a^q = a for every element
    for (long a0 = 0; a0 < 2; ++a0)
        for (long a1 = 0; a1 < 2; ++a1) {
            auto a = gf_el(F, {a0, a1});
            CHECK(a.pow(4) == a);
        }
}

TEST_CASE("GF(9) arithmetic and Frobenius") {
    auto F = Field::finite_field(3, 2);
    CHECK(F->modulus() == zpoly({1, 0, 1})); // x^2 + 1 is irreducible mod 3
    CHECK(F->order() == 9);
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        auto a = sample_nonzero(F, rng);
        auto b = sample_nonzero(F, rng);
        CHECK((a + b).pow(3) == a.pow(3) + b.pow(3));
        CHECK(a.pow(9) == a);
        CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("field construction rejects bad parameters") {
    CHECK_THROWS_AS(Field::finite_field(4, 1), FieldError);
    CHECK_THROWS_AS(Field::finite_field(5, 5), FieldError);
    CHECK_THROWS_AS(Field::finite_field(2, 2, {1, 0, 1}), FieldError); // (x+1)^2
    CHECK_THROWS_AS(Field::finite_field(2, 2, {1, 1}), FieldError);    // wrong degree
    CHECK_THROWS_AS(Field::cyclotomic(0), FieldError);
    auto F = Field::finite_field(7, 1);
    CHECK_THROWS_AS(F->element({mpq_class(1), mpq_class(2)}), FieldError);
}

TEST_CASE("roots of unity over Q") {
    auto Q = Field::rationals();
    auto r2 = nth_roots_of_unity(Q, 2);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == Q->integer(-1));
    CHECK(r2[1] == Q->one());
    auto r5 = nth_roots_of_unity(Q, 5);
    REQUIRE(r5.size() == 1);
    CHECK(r5[0].is_one());
}

TEST_CASE("roots of unity over cyclotomic fields") {
    auto F6 = Field::cyclotomic(6);
    auto roots = nth_roots_of_unity(F6, 6);
    CHECK(roots.size() == 6);
    auto one = F6->one();
    for (const auto& r : roots) CHECK(r.pow(6) == one);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        CHECK(FieldElement::compare(roots[i], roots[i + 1]) < 0);
    CHECK(std::count(roots.begin(), roots.end(), F6->generator()) == 1);
    CHECK(std::count(roots.begin(), roots.end(), F6->integer(-1)) == 1);

    // odd order: -zeta^j are not n-th roots for odd n
    auto F5 = Field::cyclotomic(5);
    CHECK(nth_roots_of_unity(F5, 5).size() == 5);
    CHECK(nth_roots_of_unity(F5, 10).size() == 10);
}

TEST_CASE("roots of unity over finite fields") {
    auto F5 = Field::finite_field(5, 1);
    auto r = nth_roots_of_unity(F5, 4);
    REQUIRE(r.size() == 4);
    for (long v = 1; v <= 4; ++v) CHECK(std::count(r.begin(), r.end(), F5->integer(v)) == 1);

    auto F7 = Field::finite_field(7, 1);
    CHECK(nth_roots_of_unity(F7, 6).size() == 6);
    auto r3 = nth_roots_of_unity(F7, 3);
    REQUIRE(r3.size() == 3);
    CHECK(std::count(r3.begin(), r3.end(), F7->integer(2)) == 1);
    CHECK(std::count(r3.begin(), r3.end(), F7->integer(4)) == 1);
}

TEST_CASE("root count is gcd(n, q-1), verified exhaustively") {
    const std::pair<unsigned long, unsigned> fields[] = {{2, 1}, {3, 1}, {5, 1}, {7, 1},
                                                         {11, 1}, {2, 2}, {3, 2}, {5, 2},
                                                         {2, 3}, {3, 3}, {2, 4}};
    for (auto [p, k] : fields) {
        auto F = Field::finite_field(p, k);
        const unsigned long q = F->order();
        for (unsigned n = 1; n <= 12; ++n) {
            auto roots = nth_roots_of_unity(F, n);
            CHECK(roots.size() == std::gcd<unsigned long>(n, q - 1));
            // exhaustive cross-check: every field element satisfying x^n = 1 is listed
            std::size_t found = 0;
            for (unsigned long e = 1; e < q; ++e) {
                std::vector<mpq_class> digits(k, mpq_class(0));
                unsigned long v = e;
                for (unsigned i = 0; i < k; ++i) {
                    digits[i] = mpq_class(v % p);
                    v /= p;
                }
                auto x = F->element(std::move(digits));
                if (x.pow(n).is_one()) {
                    ++found;
                    CHECK(std::count(roots.begin(), roots.end(), x) == 1);
                }
            }
            CHECK(found == roots.size());
        }
    }
}

TEST_CASE("sample_nonzero: determinism, nonzero, box bounds") {
    auto Q = Field::rationals();
    auto C3 = Field::cyclotomic(3);
    auto F2 = Field::finite_field(2, 1);

    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        auto x = sample_nonzero(Q, a);
        auto y = sample_nonzero(Q, b);
        CHECK(x == y);
        CHECK_FALSE(x.is_zero());
        CHECK(x.rational_value().get_den() == 1);
        CHECK(abs(x.rational_value().get_num()) <= 10);
    }
    Rng c(1);
    for (int i = 0; i < 100; ++i) {
        auto x = sample_nonzero(C3, c, 3);
        CHECK_FALSE(x.is_zero());
        for (const auto& co : x.coeffs()) {
            CHECK(co.get_den() == 1);
            CHECK(abs(co.get_num()) <= 3);
        }
    }
    Rng d(9);
    for (int i = 0; i < 20; ++i) CHECK(sample_nonzero(F2, d).is_one());
}

TEST_CASE("fraction parse and format round-trip") {
    CHECK(parse_fraction("5/6") == mpq_class(5, 6));
    CHECK(parse_fraction("-2/4") == mpq_class(-1, 2));
    CHECK(parse_fraction("7") == 7);
    CHECK(format_fraction(mpq_class(5, 6)) == "5/6");
    CHECK(format_fraction(mpq_class(-3)) == "-3");
    CHECK_THROWS_AS(parse_fraction("1/0"), DivisionByZero);
    CHECK_THROWS_AS(parse_fraction("x"), FieldError);
    CHECK_THROWS_AS(parse_fraction(""), FieldError);
}
