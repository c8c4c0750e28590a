#include "cubim/matrix.hpp"

#include <algorithm>
#include <utility>

namespace cubim {
namespace {

using Poly = Vec; // ascending coefficients

FieldElement peval(const Poly& p, const FieldElement& x) {
    FieldElement r = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) r = r * x + p[i];
    return r;
}

// p = (x - r) q + rem for deg p >= 1.
Poly div_linear(const Poly& p, const FieldElement& r, FieldElement& rem) {
    const std::size_t d = p.size() - 1;
    Poly q(d, p[0].field()->zero());
    q[d - 1] = p[d];
    for (std::size_t i = d - 1; i >= 1; --i) q[i - 1] = p[i] + r * q[i];
    rem = p[0] + r * q[0];
    return q;
}

// Similarity reduction to upper Hessenberg form by Gaussian elimination
// (row i -= f * row c+1 paired with col c+1 += f * col i).
Matrix hessenberg(Matrix H) {
    const std::size_t n = H.rows();
    for (std::size_t c = 0; c + 2 < n; ++c) {
        std::size_t pr = c + 1;
        while (pr < n && H.at(pr, c).is_zero()) ++pr;
        if (pr == n) continue;
        if (pr != c + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(H.at(c + 1, j), H.at(pr, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(H.at(i, c + 1), H.at(i, pr));
        }
        const FieldElement inv = H.at(c + 1, c).inverse();
        for (std::size_t i = c + 2; i < n; ++i) {
            if (H.at(i, c).is_zero()) continue;
            const FieldElement f = H.at(i, c) * inv;
            for (std::size_t j = 0; j < n; ++j) H.at(i, j) -= f * H.at(c + 1, j);
            for (std::size_t i2 = 0; i2 < n; ++i2) H.at(i2, c + 1) += f * H.at(i2, i);
        }
    }
    return H;
}

std::vector<std::pair<mpz_class, unsigned>> factorize(mpz_class v) {
    std::vector<std::pair<mpz_class, unsigned>> fs;
    mpz_class d = 2;
    while (d * d <= v && d <= 1000000) {
        if (v % d == 0) {
            unsigned e = 0;
            while (v % d == 0) {
                v /= d;
                ++e;
            }
            fs.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (v > 1) fs.emplace_back(v, 1); // leftover cofactor kept whole
    return fs;
}

// Positive divisors, ascending. Capped for pathological inputs; a truncated
// list only narrows the root search (jordan_form then reports unsplittable).
std::vector<mpz_class> divisors_of(const mpz_class& v, std::size_t cap) {
    std::vector<mpz_class> divs{1};
    if (v == 0) return divs;
    for (const auto& [p, e] : factorize(abs(v))) {
        const std::size_t base = divs.size();
        mpz_class pe = 1;
        for (unsigned t = 1; t <= e && divs.size() < cap * 4; ++t) {
            pe *= p;
            for (std::size_t i = 0; i < base && divs.size() < cap * 4; ++i)
                divs.push_back(divs[i] * pe);
        }
        std::sort(divs.begin(), divs.end());
        if (divs.size() > cap) divs.resize(cap);
    }
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

mpz_class denominator_lcm(const Poly& p) {
    mpz_class L = 1;
    for (const auto& coeff : p)
        for (const auto& coord : coeff.coeffs()) L = lcm(L, mpz_class(coord.get_den()));
    return L;
}

// |Norm_{Q(zeta)/Q}(x)| as an integer (x has integer coordinates here).
mpz_class cyclotomic_norm_abs(const FieldElement& x) {
    const FieldPtr& F = x.field();
    const FieldPtr Q = Field::rationals();
    const unsigned phi = F->degree();
    const FieldElement zeta = F->generator();
    Matrix mul(Q, phi, phi);
    FieldElement basis_pow = F->one();
    for (unsigned t = 0; t < phi; ++t) {
        const FieldElement prod = x * basis_pow;
        for (unsigned i = 0; i < phi; ++i) mul.at(i, t) = Q->rational(prod.coeffs()[i]);
        basis_pow *= zeta;
    }
    mpq_class d = det(mul).rational_value();
    mpz_class num = abs(mpz_class(d.get_num()));
    return num == 0 ? mpz_class(1) : num;
}

constexpr std::size_t kDivisorCap = 4096;
constexpr std::size_t kCandidateCap = 100000;

// Root candidates for a monic polynomial, in deterministic discovery order.
//  Q            divisor fractions, sorted ascending
//  Q(zeta_m)    zero first, then c * zeta^j with magnitudes c ascending and
//               powers j ascending (explicit negation only for odd m)
//  GF(q)        every element, ascending, for q <= 2^20
std::vector<FieldElement> candidate_roots(const Poly& p, const FieldPtr& F) {
    std::vector<FieldElement> out;
    if (F->kind() == Field::Kind::FiniteField) {
        const unsigned long q = F->order();
        if (q > (1ul << 20)) return out;
        const unsigned long pr = F->prime();
        out.reserve(q);
        for (unsigned long v = 0; v < q; ++v) {
            std::vector<mpq_class> digits(F->degree());
            unsigned long t = v;
            for (unsigned i = 0; i < F->degree(); ++i) {
                digits[i] = static_cast<long>(t % pr);
                t /= pr;
            }
            out.push_back(F->element(std::move(digits)));
        }
        std::sort(out.begin(), out.end(),
                  [](const FieldElement& a, const FieldElement& b) {
                      return FieldElement::compare(a, b) < 0;
                  });
        return out;
    }

    std::size_t v = 0;
    while (v < p.size() && p[v].is_zero()) ++v;
    if (v > 0) out.push_back(F->zero());
    if (v + 1 >= p.size()) return out;
    const Poly q(p.begin() + v, p.end());
    const mpz_class L = denominator_lcm(q);

    if (F->kind() == Field::Kind::Rationals) {
        mpq_class a0 = q[0].rational_value() * mpq_class(L);
        const auto rs = divisors_of(mpz_class(a0.get_num()), kDivisorCap);
        const auto ss = divisors_of(L, kDivisorCap);
        for (const auto& r : rs) {
            for (const auto& s : ss) {
                mpq_class c(r, s);
                c.canonicalize();
                out.push_back(F->rational(c));
                out.push_back(F->rational(-c));
                if (out.size() >= kCandidateCap) break;
            }
            if (out.size() >= kCandidateCap) break;
        }
        std::sort(out.begin(), out.end(),
                  [](const FieldElement& a, const FieldElement& b) {
                      return FieldElement::compare(a, b) < 0;
                  });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Cyclotomic: after the substitution y = L x the polynomial is monic with
    // integer coordinates and constant term b0 = q0 * L^deg, so an integer
    // magnitude c of a root c * zeta^j must satisfy c^phi | |Norm(b0)|.
    const unsigned m = F->cyclotomic_order();
    const unsigned phi = F->degree();
    FieldElement b0 = q[0];
    const FieldElement Lf = F->rational(mpq_class(L));
    for (std::size_t i = 1; i < q.size(); ++i) b0 *= Lf;
    const mpz_class D = cyclotomic_norm_abs(b0);
    const FieldElement zeta = F->generator();
    for (const auto& c : divisors_of(D, kDivisorCap)) {
        if (phi > 1) {
            mpz_class cpow;
            mpz_pow_ui(cpow.get_mpz_t(), c.get_mpz_t(), phi);
            if (!mpz_divisible_p(D.get_mpz_t(), cpow.get_mpz_t())) continue;
        }
        mpq_class mag(c, L);
        mag.canonicalize();
        const FieldElement cf = F->rational(mag);
        FieldElement zpow = F->one();
        for (unsigned j = 0; j < m; ++j) {
            out.push_back(cf * zpow);
            zpow *= zeta;
        }
        if (m % 2 == 1) {
            zpow = F->one();
            for (unsigned j = 0; j < m; ++j) {
                out.push_back(-(cf * zpow));
                zpow *= zeta;
            }
        }
        if (out.size() >= kCandidateCap) break;
    }
    return out;
}

bool in_span(const FieldPtr& F, const std::vector<Vec>& cols, const Vec& w) {
    if (cols.empty()) {
        for (const auto& x : w)
            if (!x.is_zero()) return false;
        return true;
    }
    return solve(Matrix::from_columns(F, cols), w).has_value();
}

} // namespace

Vec char_poly(const Matrix& M) {
    if (!M.is_square()) throw NotSquare("char_poly");
    const FieldPtr& F = M.field();
    const std::size_t n = M.rows();
    std::vector<Poly> ps{{F->one()}};
    if (n == 0) return ps[0];
    const Matrix H = hessenberg(M);
    for (std::size_t k = 1; k <= n; ++k) {
        const Poly& prev = ps[k - 1];
        Poly cur(k + 1, F->zero());
        for (std::size_t i = 0; i < prev.size(); ++i) {
            cur[i + 1] += prev[i];                    // x * p_{k-1}
            cur[i] -= H.at(k - 1, k - 1) * prev[i];   // - h_kk * p_{k-1}
        }
        FieldElement prod = F->one();
        for (std::size_t m = 1; m <= k - 1; ++m) {
            prod *= H.at(k - m, k - m - 1);
            if (prod.is_zero()) break;
            const FieldElement coef = H.at(k - 1 - m, k - 1) * prod;
            if (coef.is_zero()) continue;
            const Poly& old = ps[k - 1 - m];
            for (std::size_t i = 0; i < old.size(); ++i) cur[i] -= coef * old[i];
        }
        ps.push_back(std::move(cur));
    }
    return ps[n];
}

std::optional<JordanData> jordan_form(const Matrix& M) {
    if (!M.is_square()) throw NotSquare("jordan_form");
    const FieldPtr& F = M.field();
    const std::size_t n = M.rows();
    JordanData jd;
    if (n == 0) {
        jd.basis = Matrix(F, 0, 0);
        return jd;
    }

    const Poly cp = char_poly(M);
    Poly work = cp;
    std::vector<std::pair<FieldElement, std::size_t>> roots;
    std::size_t found = 0;
    for (const auto& cand : candidate_roots(cp, F)) {
        if (work.size() <= 1) break;
        std::size_t mult = 0;
        while (work.size() > 1) {
            if (!peval(work, cand).is_zero()) break;
            FieldElement rem;
            Poly quot = div_linear(work, cand, rem);
            if (!rem.is_zero()) throw MatrixError("jordan_form: deflation remainder");
            work = std::move(quot);
            ++mult;
        }
        if (mult) {
            roots.emplace_back(cand, mult);
            found += mult;
        }
    }
    if (found < n) return std::nullopt; // does not split within the search

    std::vector<Vec> pcols;
    pcols.reserve(n);
    for (const auto& [lam, mult] : roots) {
        const Matrix N = M - Matrix::identity(F, n).scaled(lam);
        std::vector<std::vector<Vec>> K; // K[j-1] = basis of ker N^j
        Matrix Npow = N;
        for (;;) {
            K.push_back(kernel_basis(Npow));
            if (K.back().size() >= mult) break;
            if (K.size() > n) throw MatrixError("jordan_form: filtration did not close");
            Npow = Npow * N;
        }
        if (K.back().size() != mult) throw MatrixError("jordan_form: eigenspace overshoot");

        struct Chain {
            Vec top;
            std::size_t height;
            Vec cur;
        };
        std::vector<Chain> chains;
        for (std::size_t j = K.size(); j >= 1; --j) {
            std::vector<Vec> span_cols;
            if (j >= 2) span_cols = K[j - 2];
            for (const auto& c : chains) span_cols.push_back(c.cur);
            for (const auto& w : K[j - 1]) {
                if (in_span(F, span_cols, w)) continue;
                chains.push_back({w, j, w});
                span_cols.push_back(w);
            }
            if (j > 1)
                for (auto& c : chains) c.cur = mat_vec(N, c.cur);
        }

        for (const auto& c : chains) {
            std::vector<Vec> cols(c.height);
            cols[c.height - 1] = c.top;
            for (std::size_t i = c.height - 1; i >= 1; --i) cols[i - 1] = mat_vec(N, cols[i]);
            for (auto& col : cols) pcols.push_back(std::move(col));
            for (std::size_t b = 0; b < c.height; ++b) {
                jd.diag.push_back(lam);
                jd.super.push_back(b + 1 < c.height ? F->one() : F->zero());
            }
        }
    }

    if (pcols.size() != n) throw MatrixError("jordan_form: basis column count");
    Matrix P = Matrix::from_columns(F, pcols);
    const Matrix J = jordan_matrix(jd, F);
    if (!inverse(P)) throw MatrixError("jordan_form: basis not invertible");
    if (!(M * P == P * J)) throw MatrixError("jordan_form: reconstruction mismatch");
    jd.basis = std::move(P);
    return jd;
}

} // namespace cubim
