// End-to-end acceptance gate. Nine criteria, one PASS/FAIL line each; every
// comparison is exact field arithmetic, so the only tolerance is equality.
// Seeds are fixed: a green run is reproducible bit for bit.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "cubim/classify.hpp"
#include "cubim/oracle.hpp"
#include "cubim/solver.hpp"

using namespace cubim;

namespace {

struct Tally {
    std::uint64_t checks = 0;
    std::uint64_t failed = 0;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failed;
            if (notes.size() < 4) notes.push_back(what);
        }
    }
};

FieldElement rint(const FieldPtr& F, Rng& rng) { return F->integer(rng.between(-10, 10)); }

Polynomial random_cubic(const FieldPtr& F, Rng& rng) {
    std::array<long, 6> co;
    for (auto& c : co) c = rng.between(-10, 10);
    return Polynomial::from_integers(F, co);
}

// lambda-sum nonzero and at least one case-free subscript rotation at every
// requested size
Polynomial workable_cubic(const FieldPtr& F, const std::vector<std::size_t>& sizes, Rng& rng) {
    while (true) {
        const Polynomial f = random_cubic(F, rng);
        if (f.lambda_sum().is_zero()) continue;
        bool ok = true;
        for (const std::size_t n : sizes)
            if (!working_rotation(case_analysis(f, n))) ok = false;
        if (ok) return f;
    }
}

Matrix random_matrix(const FieldPtr& F, std::size_t n, Rng& rng) {
    Matrix M(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = rint(F, rng);
    return M;
}

Matrix random_invertible(const FieldPtr& F, std::size_t n, Rng& rng) {
    while (true) {
        Matrix P = random_matrix(F, n, rng);
        if (inverse(P)) return P;
    }
}

// ---- 1. circulant determinant closed form ----

void criterion_circulant(Tally& t) {
    const std::vector<FieldPtr> fields = {Field::rationals(), Field::finite_field(5, 1),
                                          Field::finite_field(7, 1)};
    Rng rng(9101);
    for (const FieldPtr& F : fields)
        for (std::size_t n = 2; n <= 12; ++n)
            for (int s = 0; s < 200; ++s) {
                FieldElement u1, u2;
                if (F->kind() == Field::Kind::Rationals) {
                    u1 = rint(F, rng);
                    u2 = rint(F, rng);
                } else {
                    u1 = F->integer(static_cast<long>(rng.below(F->order())));
                    u2 = F->integer(static_cast<long>(rng.below(F->order())));
                }
                Vec u(n, F->zero()), v(n, F->zero());
                u[0] = u1;
                u[1] = u2;
                const Vec ones(n, F->one());
                const FieldElement got = det(build_structured(ones, u, v));
                const FieldElement p2 = u2.pow(static_cast<long>(n));
                FieldElement want = u1.pow(static_cast<long>(n));
                want = (n % 2 == 0) ? want - p2 : want + p2; // sign (-1)^(n-1)
                t.require(got == want, "determinant mismatch at n = " + std::to_string(n) +
                                           " over " + F->label());
            }
}

// ---- 2. forced vanishing when v is a scaled shift of u ----

void criterion_forced_vanishing(Tally& t) {
    Rng rng(9202);
    for (std::size_t n = 3; n <= 8; ++n) {
        const FieldPtr C = Field::cyclotomic(static_cast<unsigned>(n));
        const auto roots = nth_roots_of_unity(C, static_cast<unsigned>(n));
        std::vector<std::size_t> coprime;
        for (std::size_t i = 1; i < n; ++i)
            if (std::gcd(i, n) == 1) coprime.push_back(i);
        for (int cfg = 0; cfg < 3; ++cfg) {
            Vec u(n, C->zero());
            for (auto& e : u) e = sample_nonzero(C, rng);
            const FieldElement omega = roots[rng.below(roots.size())];
            const std::size_t i = coprime[rng.below(coprime.size())];
            Vec v = shift_apply(u, static_cast<long>(i));
            for (auto& e : v) e = -(omega * e);
            for (int s = 0; s < 100; ++s) {
                Vec xs(n, C->zero());
                for (auto& x : xs) x = sample_nonzero(C, rng);
                t.require(det(build_structured(xs, u, v)).is_zero(),
                          "nonzero determinant at n = " + std::to_string(n) + ", shift " +
                              std::to_string(i));
            }
        }
    }
}

// ---- 3. kernel shape of the weighted system on its good locus ----

// The guaranteed set of diagonals is carved out by rank conditions: every
// column-deleted submatrix keeps full column rank. On that locus the kernel
// must be trivial or spanned by an everywhere-nonzero vector; the implication
// is what this criterion checks, sample by sample.
bool in_good_locus(const Matrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        Matrix m(a.field(), n, n - 1);
        for (std::size_t c = 0, k = 0; c < n; ++c) {
            if (c == j) continue;
            for (std::size_t r = 0; r < n; ++r) m.at(r, k) = a.at(r, c);
            ++k;
        }
        if (rank(m) != n - 1) return false;
    }
    return true;
}

void criterion_kernel_shape(Tally& t) {
    const FieldPtr Q = Field::rationals();
    Rng rng(9303);
    const auto live = [](const Vec& a) {
        for (const FieldElement& e : a)
            if (!e.is_zero()) return true;
        return false;
    };
    for (std::size_t n = 3; n <= 8; ++n)
        for (int s = 0; s < 500; ++s) {
            Polynomial f = random_cubic(Q, rng);
            SystemWeights w = w_system_weights(f, n);
            // all four weights zero puts f outside the lemma's hypotheses
            while (!live(w.u) && !live(w.v)) {
                f = random_cubic(Q, rng);
                w = w_system_weights(f, n);
            }
            // the good locus is dense, so membership should come quickly;
            // running out of draws would falsify its nonemptiness
            bool found = false;
            for (int tries = 0; tries < 200 && !found; ++tries) {
                Vec xs(n, Q->zero());
                for (auto& x : xs) x = sample_nonzero(Q, rng);
                const Matrix a = w_system_matrix(f, xs);
                if (!in_good_locus(a)) continue;
                found = true;
                t.require(kernel_shape(a) != KernelShape::Bad,
                          "bad kernel at n = " + std::to_string(n) + ", sample " +
                              std::to_string(s));
            }
            if (!found)
                t.require(false, "no point of the good locus found at n = " + std::to_string(n) +
                                     ", sample " + std::to_string(s));
        }
}

// ---- 4. witness round-trip on bidiagonal targets ----

JordanData random_jn_target(const FieldPtr& F, std::size_t n, Rng& rng) {
    JordanData jd;
    jd.diag.assign(n, F->zero());
    jd.super.assign(n, F->zero());
    for (auto& d : jd.diag) d = rint(F, rng);
    while (true) {
        std::size_t support = 0;
        for (auto& s : jd.super) {
            s = rint(F, rng);
            if (!s.is_zero()) ++support;
        }
        if (support != 1) break; // superdiagonal support 0 or >= 2
    }
    return jd;
}

void criterion_witness_roundtrip(Tally& t) {
    const FieldPtr Q = Field::rationals();
    Rng rng(9404);
    for (int s = 0; s < 200; ++s) {
        const std::size_t n = 3 + static_cast<std::size_t>(s % 6);
        const Polynomial f = workable_cubic(Q, {n}, rng);
        const JordanData jd = random_jn_target(Q, n, rng);
        const Matrix T = jordan_matrix(jd, Q);
        try {
            const WitnessTriple w = solve_jordan(f, jd, Q, rng);
            t.require(w.verified && eval(f, w.X, w.Y, w.Z) == T,
                      "unverified witness at n = " + std::to_string(n));
        } catch (const SolveError& e) {
            t.require(false, std::string("solve failed (") + solve_error_name(e.kind()) +
                                 ") at n = " + std::to_string(n) + ", sample " +
                                 std::to_string(s));
        }
    }
}

// ---- 5. block-split composition ----

void criterion_block_split(Tally& t) {
    const FieldPtr Q = Field::rationals();
    Rng rng(9505);
    const auto one_target = [&](const Polynomial& f, std::size_t n) {
        JordanData jd;
        jd.diag.assign(n, Q->zero());
        jd.super.assign(n, Q->zero());
        for (auto& d : jd.diag) d = rint(Q, rng);
        const std::size_t pos = rng.below(n - 1); // block rows pos, pos+1
        jd.diag[pos + 1] = jd.diag[pos];          // a true 2x2 Jordan block
        jd.super[pos] = Q->one();
        const Matrix T = jordan_matrix(jd, Q);
        try {
            const WitnessTriple w = solve_jordan(f, jd, Q, rng);
            t.require(w.verified && w.path == WitnessPath::BlockSplit &&
                          eval(f, w.X, w.Y, w.Z) == T,
                      "block-split witness failed at n = " + std::to_string(n));
        } catch (const SolveError& e) {
            t.require(false, std::string("block split failed (") + solve_error_name(e.kind()) +
                                 ") at n = " + std::to_string(n));
        }
    };
    const Polynomial xyz = Polynomial::from_integers(Q, {1, 0, 0, 0, 0, 0});
    for (std::size_t n = 4; n <= 8; ++n)
        for (int s = 0; s < 10; ++s) one_target(xyz, n);
    for (int c = 0; c < 20; ++c) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.below(5));
        // the remainder block is solved at size n-2, so the cubic must be
        // workable there as well once the core path is in play
        const std::vector<std::size_t> sizes =
            n - 2 >= 3 ? std::vector<std::size_t>{n, n - 2} : std::vector<std::size_t>{n};
        one_target(workable_cubic(Q, sizes, rng), n);
    }
}

// ---- 6. commutator-form construction ----

void criterion_commutator(Tally& t) {
    const FieldPtr Q = Field::rationals();
    Rng rng(9606);
    const auto shape = [&](const mpq_class& lv) {
        const FieldElement L = Q->rational(lv);
        return Polynomial(Q, {Q->one(), -L, Q->zero(), L, -Q->one(), Q->zero()});
    };
    for (const mpq_class& lv : {mpq_class(0), mpq_class(2), mpq_class(-1), mpq_class(1, 2)}) {
        const Polynomial f = shape(lv);
        for (int s = 0; s < 50; ++s) {
            const std::size_t n = 3 + static_cast<std::size_t>(s % 4);
            const Matrix T = random_matrix(Q, n, rng);
            try {
                const WitnessTriple w = solve_commutator_form(f, T, rng);
                t.require(w.verified && w.path == WitnessPath::CommutatorForm &&
                              eval(f, w.X, w.Y, w.Z) == T,
                          "commutator witness failed at lambda = " + format_fraction(lv));
            } catch (const SolveError& e) {
                t.require(false, std::string("commutator solve failed (") +
                                     solve_error_name(e.kind()) +
                                     ") at lambda = " + format_fraction(lv));
            }
        }
    }
    bool rejected = false;
    try {
        solve_commutator_form(shape(mpq_class(1)), Matrix::identity(Q, 3), rng);
    } catch (const SolveError& e) {
        rejected = e.kind() == SolveErrorKind::NotCommutatorForm;
    }
    t.require(rejected, "lambda = 1 must be rejected as NotCommutatorForm");
}

// ---- 7. root condition checker ----

void criterion_condition(Tally& t) {
    for (unsigned n = 1; n <= 20; ++n)
        t.require(check_root_condition(Field::cyclotomic(n), n).holds,
                  "condition must hold over the n-th cyclotomic field, n = " + std::to_string(n));
    const auto verify_violation = [&](unsigned long p, unsigned n) {
        const FieldPtr F = Field::finite_field(p, 1);
        const ConditionReport rep = check_root_condition(F, n);
        t.require(!rep.holds, "condition must fail over GF(" + std::to_string(p) + ") at n = " +
                                  std::to_string(n));
        if (rep.holds) return;
        t.require(rep.violation.size() == 3, "violation must be a triple");
        const FieldElement one = F->one();
        bool roots_ok = rep.violation.size() == 3;
        for (const FieldElement& e : rep.violation)
            roots_ok = roots_ok && e.pow(n) == one && e != one;
        t.require(roots_ok, "violating entries must be nontrivial n-th roots of unity");
        const auto& v = rep.violation;
        t.require((v[0] * v[1] * v[2] - v[0] - v[1] - v[2] + F->integer(2)).is_zero(),
                  "violating triple must satisfy the defining equation");
    };
    verify_violation(5, 4);
    verify_violation(7, 6);
}

// ---- 8. finite-field image enumeration ----

void criterion_oracle(Tally& t) {
    Rng rng(9808);
    const FieldPtr F2 = Field::finite_field(2, 1);
    const ImageSet all = enumerate_image(Polynomial::from_integers(F2, {1, 0, 0, 0, 0, 0}), 2, 2,
                                         EnumerationMode::exhaustive(), rng);
    t.require(all.size() == 16, "xyz over M_2(F_2) must reach all 16 matrices");

    const ImageSet zero = enumerate_image(Polynomial(F2), 2, 2, EnumerationMode::exhaustive(), rng);
    t.require(zero.size() == 1 && zero.contains_code(0),
              "the zero polynomial must enumerate exactly {0}");

    const FieldPtr F3 = Field::finite_field(3, 1);
    const ImageSet tless = enumerate_image(Polynomial::from_integers(F3, {1, -1, 0, 0, 0, 0}), 2,
                                           3, EnumerationMode::exhaustive(), rng);
    bool traceless = true;
    for (std::uint64_t code = 0; code < tless.member.size(); ++code)
        if (tless.member[code] && !unpack_matrix(*tless.table, code, 2).trace().is_zero())
            traceless = false;
    t.require(traceless, "xyz - yzx over M_2(F_3) must stay inside the trace-zero space");
    t.require(closed_under_conjugation(tless, rng, 100),
              "enumerated image must be closed under conjugation");
    t.require(closed_under_scaling(tless), "enumerated image must be closed under scaling");
}

// ---- 9. equivariance properties ----

void criterion_equivariance(Tally& t) {
    Rng rng(9909);
    const std::vector<FieldPtr> fields = {Field::rationals(), Field::finite_field(7, 1)};

    for (int s = 0; s < 200; ++s) { // conjugation
        const FieldPtr& F = fields[s % 2];
        const std::size_t n = 2 + static_cast<std::size_t>(s % 3);
        const Polynomial f = random_cubic(F, rng);
        const Matrix X = random_matrix(F, n, rng), Y = random_matrix(F, n, rng),
                     Z = random_matrix(F, n, rng);
        const Matrix P = random_invertible(F, n, rng);
        t.require(conjugate(P, eval(f, X, Y, Z)) ==
                      eval(f, conjugate(P, X), conjugate(P, Y), conjugate(P, Z)),
                  "conjugation equivariance failed at sample " + std::to_string(s));
    }

    for (int s = 0; s < 200; ++s) { // scalar homogeneity per argument slot
        const FieldPtr& F = fields[s % 2];
        const std::size_t n = 2 + static_cast<std::size_t>(s % 3);
        const Polynomial f = random_cubic(F, rng);
        Matrix A[3] = {random_matrix(F, n, rng), random_matrix(F, n, rng),
                       random_matrix(F, n, rng)};
        const FieldElement c = sample_nonzero(F, rng);
        const Matrix base = eval(f, A[0], A[1], A[2]);
        Matrix B[3] = {A[0], A[1], A[2]};
        B[s % 3] = B[s % 3].scaled(c);
        t.require(eval(f, B[0], B[1], B[2]) == base.scaled(c),
                  "scalar homogeneity failed at sample " + std::to_string(s));
    }

    const std::array<VarPerm, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (int s = 0; s < 200; ++s) { // permutation coherence
        const FieldPtr& F = fields[s % 2];
        const std::size_t n = 2 + static_cast<std::size_t>(s % 3);
        const Polynomial f = random_cubic(F, rng);
        const VarPerm sigma = perms[rng.below(perms.size())];
        const Matrix B[3] = {random_matrix(F, n, rng), random_matrix(F, n, rng),
                             random_matrix(F, n, rng)};
        t.require(eval(permute_variables(f, sigma), B[0], B[1], B[2]) ==
                      eval(f, B[sigma[0]], B[sigma[1]], B[sigma[2]]),
                  "permutation coherence failed at sample " + std::to_string(s));
    }

    for (int s = 0; s < 200; ++s) { // block coherence
        const FieldPtr& F = fields[s % 2];
        const std::size_t n1 = 1 + static_cast<std::size_t>(rng.below(3));
        const std::size_t n2 = 1 + static_cast<std::size_t>(rng.below(3));
        const Polynomial f = random_cubic(F, rng);
        Matrix top[3] = {random_matrix(F, n1, rng), random_matrix(F, n1, rng),
                         random_matrix(F, n1, rng)};
        Matrix bot[3] = {random_matrix(F, n2, rng), random_matrix(F, n2, rng),
                         random_matrix(F, n2, rng)};
        const Matrix lhs = eval(f, block_diag({top[0], bot[0]}), block_diag({top[1], bot[1]}),
                                block_diag({top[2], bot[2]}));
        const Matrix rhs =
            block_diag({eval(f, top[0], top[1], top[2]), eval(f, bot[0], bot[1], bot[2])});
        t.require(lhs == rhs, "block coherence failed at sample " + std::to_string(s));
    }
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        void (*fn)(Tally&);
    };
    const std::vector<Criterion> list = {
        {"circulant determinant closed form", criterion_circulant},
        {"forced vanishing for shifted weight pairs", criterion_forced_vanishing},
        {"kernel shape of the weighted system", criterion_kernel_shape},
        {"witness round-trip on bidiagonal targets", criterion_witness_roundtrip},
        {"block-split composition", criterion_block_split},
        {"commutator-form construction", criterion_commutator},
        {"root condition checker", criterion_condition},
        {"finite-field image enumeration", criterion_oracle},
        {"equivariance properties", criterion_equivariance},
    };

    int failed_criteria = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        Tally t;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            list[i].fn(t);
        } catch (const std::exception& e) {
            t.require(false, std::string("unhandled exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = t.failed == 0;
        if (!pass) ++failed_criteria;
        std::cout << "[" << (i + 1) << "/" << list.size() << "] " << (pass ? "PASS" : "FAIL")
                  << " " << list[i].label << " (" << t.checks << " checks, " << std::fixed
                  << std::setprecision(1) << secs << "s)\n";
        for (const std::string& note : t.notes) std::cout << "        - " << note << "\n";
    }
    std::cout << "ACCEPTANCE: " << (list.size() - failed_criteria) << "/" << list.size()
              << " criteria passed\n";
    return failed_criteria == 0 ? 0 : 1;
}
