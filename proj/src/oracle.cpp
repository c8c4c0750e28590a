#include "cubim/oracle.hpp"

#include <algorithm>
#include <thread>

namespace cubim {

namespace {

constexpr std::uint64_t kTripleBound = 1ull << 30;   // exhaustive sweep size
constexpr std::uint64_t kUniverseBound = 1ull << 20; // bitset size (sampled)

std::uint64_t checked_power(unsigned long base, unsigned exp, std::uint64_t bound) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), base, exp);
    if (pw > bound) return 0;
    return pw.get_ui();
}

// Matrices in index form: n*n element indices, row-major.
using TMat = std::vector<std::uint16_t>;

TMat tmat_zero(std::size_t n) { return TMat(n * n, 0); }

void tmat_add_into(const GfTable& t, TMat& a, const TMat& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = t.add(a[i], b[i]);
}

TMat tmat_mul(const GfTable& t, const TMat& a, const TMat& b, std::size_t n) {
    TMat c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const std::uint16_t ail = a[i * n + l];
            if (ail == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] = t.add(c[i * n + j], t.mul(ail, b[l * n + j]));
        }
    return c;
}

void tmat_scale(const GfTable& t, TMat& a, std::uint16_t c) {
    for (auto& x : a) x = t.mul(c, x);
}

std::uint64_t tmat_pack(const GfTable& t, const TMat& a) {
    std::uint64_t code = 0, place = 1;
    for (const std::uint16_t x : a) {
        code += x * place;
        place *= t.q();
    }
    return code;
}

TMat tmat_unpack(const GfTable& t, std::uint64_t code, std::size_t n) {
    TMat a(n * n, 0);
    for (auto& x : a) {
        x = static_cast<std::uint16_t>(code % t.q());
        code /= t.q();
    }
    return a;
}

std::uint16_t tmat_trace(const GfTable& t, const TMat& a, std::size_t n) {
    std::uint16_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s = t.add(s, a[i * n + i]);
    return s;
}

std::array<std::uint16_t, 6> coeff_indices(const GfTable& t, const Polynomial& f) {
    std::array<std::uint16_t, 6> c{};
    for (int w = 0; w < 6; ++w) c[w] = t.index_of(f.coeff(static_cast<Word>(w)));
    return c;
}

TMat table_eval(const GfTable& t, const std::array<std::uint16_t, 6>& coeff, const TMat& X,
                const TMat& Y, const TMat& Z, std::size_t n) {
    const TMat* args[3] = {&X, &Y, &Z};
    TMat acc = tmat_zero(n);
    for (int w = 0; w < 6; ++w) {
        if (coeff[w] == 0) continue;
        const auto& vars = kWordVars[w];
        TMat prod = tmat_mul(t, tmat_mul(t, *args[vars[0]], *args[vars[1]], n), *args[vars[2]], n);
        tmat_scale(t, prod, coeff[w]);
        tmat_add_into(t, acc, prod);
    }
    return acc;
}

// Gauss-Jordan inverse in index form; empty return for singular input.
std::optional<TMat> tmat_inverse(const GfTable& t, TMat a, std::size_t n) {
    TMat inv(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv * n + col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a[piv * n + j], a[col * n + j]);
            std::swap(inv[piv * n + j], inv[col * n + j]);
        }
        const std::uint16_t scale = t.inv(a[col * n + col]);
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] = t.mul(scale, a[col * n + j]);
            inv[col * n + j] = t.mul(scale, inv[col * n + j]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r * n + col] == 0) continue;
            const std::uint16_t m = t.neg(a[r * n + col]);
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] = t.add(a[r * n + j], t.mul(m, a[col * n + j]));
                inv[r * n + j] = t.add(inv[r * n + j], t.mul(m, inv[col * n + j]));
            }
        }
    }
    return inv;
}

// All q^(n^2) values of Z |-> f(X, Y, Z) for fixed X, Y, marked into the
// bitset. The map is linear in Z, so the sweep walks a base-p odometer over
// the p-coefficient digits of Z's entries and applies difference updates:
// every digit change (increment or p-1 -> 0 roll) adds that digit's column
// image, because -(p-1) = 1 in characteristic p.
void sweep_z(const GfTable& t, const std::array<std::uint16_t, 6>& coeff, const TMat& X,
             const TMat& Y, std::size_t n, std::vector<bool>& member) {
    const std::size_t nn = n * n;
    const unsigned k = t.k();
    const auto p = static_cast<std::uint16_t>(t.p());
    const std::size_t digits = nn * k;

    std::vector<TMat> col(digits);
    {
        TMat basis = tmat_zero(n);
        std::uint16_t unit = 1;
        for (unsigned tt = 0; tt < k; ++tt) {
            for (std::size_t e = 0; e < nn; ++e) {
                basis[e] = unit;
                col[e * k + tt] = table_eval(t, coeff, X, Y, basis, n);
                basis[e] = 0;
            }
            unit = static_cast<std::uint16_t>(unit * p); // index of the next basis power
        }
    }

    std::vector<std::uint8_t> digit(digits, 0);
    TMat cur = tmat_zero(n);
    member[tmat_pack(t, cur)] = true;

    std::uint64_t steps = 1;
    for (std::size_t e = 0; e < digits; ++e) steps *= p;
    for (std::uint64_t s = 1; s < steps; ++s) {
        std::size_t j = 0;
        while (digit[j] == p - 1) {
            digit[j] = 0;
            tmat_add_into(t, cur, col[j]);
            ++j;
        }
        ++digit[j];
        tmat_add_into(t, cur, col[j]);
        member[tmat_pack(t, cur)] = true;
    }
}

} // namespace

GfTable::GfTable(const FieldPtr& field) : field_(field) {
    if (field->kind() != Field::Kind::FiniteField)
        throw std::invalid_argument("GfTable: finite fields only");
    q_ = field->order();
    p_ = field->prime();
    k_ = field->degree();
    if (q_ > 1024) throw TooLarge("GfTable: field order above 1024");

    // residue arithmetic on base-p digit vectors, reduced by the modulus
    std::vector<long> mod(k_ + 1);
    for (unsigned i = 0; i <= k_; ++i) mod[i] = field->modulus()[i].get_si();

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);

    std::vector<unsigned long> da(k_), db(k_);
    const auto digits_of = [&](unsigned long v, std::vector<unsigned long>& d) {
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = v % p_;
            v /= p_;
        }
    };
    const auto pack = [&](const std::vector<unsigned long>& d) {
        unsigned long v = 0, place = 1;
        for (unsigned i = 0; i < k_; ++i) {
            v += d[i] * place;
            place *= p_;
        }
        return v;
    };

    std::vector<unsigned long> prod(2 * k_ - 1);
    for (unsigned long a = 0; a < q_; ++a) {
        digits_of(a, da);
        for (unsigned i = 0; i < k_; ++i) da[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<std::uint16_t>(pack(da));
        digits_of(a, da);
        for (unsigned long b = 0; b < q_; ++b) {
            digits_of(b, db);
            std::vector<unsigned long> sum(k_);
            for (unsigned i = 0; i < k_; ++i) sum[i] = (da[i] + db[i]) % p_;
            add_[a * q_ + b] = static_cast<std::uint16_t>(pack(sum));

            std::fill(prod.begin(), prod.end(), 0ul);
            for (unsigned i = 0; i < k_; ++i)
                for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (unsigned d = 2 * k_ - 2; d >= k_ && d < prod.size(); --d) {
                const unsigned long c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (unsigned i = 0; i < k_; ++i) {
                    const auto m = static_cast<unsigned long>((mod[i] % static_cast<long>(p_) +
                                                               static_cast<long>(p_)) %
                                                              static_cast<long>(p_));
                    prod[d - k_ + i] = (prod[d - k_ + i] + c * (p_ - m)) % p_;
                }
            }
            std::vector<unsigned long> low(prod.begin(), prod.begin() + k_);
            mul_[a * q_ + b] = static_cast<std::uint16_t>(pack(low));
        }
    }
    for (unsigned long a = 1; a < q_; ++a)
        for (unsigned long b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<std::uint16_t>(b);
                break;
            }
}

std::uint16_t GfTable::inv(std::uint16_t a) const {
    if (a == 0) throw DivisionByZero("GfTable: inverse of zero");
    return inv_[a];
}

std::uint16_t GfTable::index_of(const FieldElement& x) const {
    if (!x.field()->same(*field_)) throw DescriptorMismatch("GfTable: element of another field");
    unsigned long v = 0, place = 1;
    for (const mpq_class& c : x.coeffs()) {
        v += mpz_class(c.get_num()).get_ui() * place;
        place *= p_;
    }
    return static_cast<std::uint16_t>(v);
}

FieldElement GfTable::element(std::uint16_t idx) const {
    std::vector<mpq_class> coeffs(k_);
    unsigned long v = idx;
    for (unsigned i = 0; i < k_; ++i) {
        coeffs[i] = static_cast<long>(v % p_);
        v /= p_;
    }
    return field_->element(std::move(coeffs));
}

std::uint64_t pack_matrix(const GfTable& t, const Matrix& M) {
    if (M.rows() != M.cols()) throw NotSquare("pack_matrix: square matrices only");
    const std::size_t n = M.rows();
    TMat a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = t.index_of(M.at(i, j));
    return tmat_pack(t, a);
}

Matrix unpack_matrix(const GfTable& t, std::uint64_t code, std::size_t n) {
    const TMat a = tmat_unpack(t, code, n);
    Matrix M(t.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = t.element(a[i * n + j]);
    return M;
}

std::uint64_t ImageSet::size() const {
    return static_cast<std::uint64_t>(std::count(member.begin(), member.end(), true));
}

bool ImageSet::contains(const Matrix& M) const { return member[pack_matrix(*table, M)]; }

ImageSet enumerate_image(const Polynomial& f, std::size_t n, unsigned long q,
                         EnumerationMode mode, Rng& rng, unsigned threads) {
    if (n == 0) throw std::invalid_argument("enumerate_image: n must be positive");
    const FieldPtr& F = f.field();
    if (F->kind() != Field::Kind::FiniteField || F->order() != q)
        throw std::invalid_argument("enumerate_image: polynomial field must be GF(q)");

    const unsigned nn = static_cast<unsigned>(n * n);
    const std::uint64_t universe = checked_power(q, nn, kUniverseBound);
    if (universe == 0)
        throw TooLarge("enumerate_image: matrix space exceeds the bitset bound 2^20");
    if (mode.kind == EnumerationMode::Kind::Exhaustive &&
        checked_power(q, 3 * nn, kTripleBound) == 0)
        throw TooLarge("enumerate_image: exhaustive sweep exceeds the bound 2^30 triples");

    auto table = std::make_shared<const GfTable>(F);
    const GfTable& t = *table;
    const auto coeff = coeff_indices(t, f);

    ImageSet out;
    out.n = n;
    out.q = q;
    out.mode = mode;
    out.table = table;
    out.member.assign(universe, false);

    if (mode.kind == EnumerationMode::Kind::Sampled) {
        for (std::uint64_t s = 0; s < mode.samples; ++s) {
            const TMat X = tmat_unpack(t, rng.below(universe), n);
            const TMat Y = tmat_unpack(t, rng.below(universe), n);
            const TMat Z = tmat_unpack(t, rng.below(universe), n);
            out.member[tmat_pack(t, table_eval(t, coeff, X, Y, Z, n))] = true;
        }
        return out;
    }

    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, universe));

    std::vector<std::vector<bool>> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = universe * w / workers;
        const std::uint64_t hi = universe * (w + 1) / workers;
        partial[w].assign(universe, false);
        pool.emplace_back([&, w, lo, hi] {
            for (std::uint64_t xc = lo; xc < hi; ++xc) {
                const TMat X = tmat_unpack(t, xc, n);
                for (std::uint64_t yc = 0; yc < universe; ++yc) {
                    const TMat Y = tmat_unpack(t, yc, n);
                    sweep_z(t, coeff, X, Y, n, partial[w]);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : partial)
        for (std::uint64_t c = 0; c < universe; ++c)
            if (part[c]) out.member[c] = true;

    if (!closed_under_scaling(out))
        throw std::logic_error("enumerate_image: scalar closure self-check failed");
    return out;
}

bool is_linear_subspace(const ImageSet& s) {
    if (s.mode.kind != EnumerationMode::Kind::Exhaustive)
        throw ModeMismatch("is_linear_subspace: needs an exhaustive set");
    const GfTable& t = *s.table;
    const std::size_t nn = s.n * s.n;

    // echelon basis over F_q; the set spans the same space as the basis, so
    // it is a subspace exactly when its cardinality is q^rank
    std::vector<TMat> basis;
    std::vector<std::size_t> pivot;
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < s.member.size(); ++code) {
        if (!s.member[code]) continue;
        ++count;
        TMat v = tmat_unpack(t, code, s.n);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (v[pivot[b]] == 0) continue;
            const std::uint16_t m = t.neg(v[pivot[b]]);
            for (std::size_t e = 0; e < nn; ++e) v[e] = t.add(v[e], t.mul(m, basis[b][e]));
        }
        std::size_t lead = nn;
        for (std::size_t e = 0; e < nn; ++e)
            if (v[e] != 0) {
                lead = e;
                break;
            }
        if (lead == nn) continue;
        const std::uint16_t scale = t.inv(v[lead]);
        for (std::size_t e = 0; e < nn; ++e) v[e] = t.mul(scale, v[e]);
        basis.push_back(std::move(v));
        pivot.push_back(lead);
    }

    std::uint64_t span = 1;
    for (std::size_t b = 0; b < basis.size(); ++b) span *= t.q();
    return count == span;
}

bool closed_under_scaling(const ImageSet& s) {
    if (s.mode.kind != EnumerationMode::Kind::Exhaustive)
        throw ModeMismatch("closed_under_scaling: needs an exhaustive set");
    const GfTable& t = *s.table;
    for (std::uint64_t code = 0; code < s.member.size(); ++code) {
        if (!s.member[code]) continue;
        const TMat a = tmat_unpack(t, code, s.n);
        for (std::uint16_t c = 1; c < t.q(); ++c) {
            TMat b = a;
            tmat_scale(t, b, c);
            if (!s.member[tmat_pack(t, b)]) return false;
        }
    }
    return true;
}

bool closed_under_conjugation(const ImageSet& s, Rng& rng, int trials) {
    if (s.mode.kind != EnumerationMode::Kind::Exhaustive)
        throw ModeMismatch("closed_under_conjugation: needs an exhaustive set");
    const GfTable& t = *s.table;
    const std::uint64_t universe = s.member.size();
    for (int trial = 0; trial < trials; ++trial) {
        TMat P;
        std::optional<TMat> Pinv;
        do {
            P = tmat_unpack(t, rng.below(universe), s.n);
            Pinv = tmat_inverse(t, P, s.n);
        } while (!Pinv);
        for (std::uint64_t code = 0; code < universe; ++code) {
            if (!s.member[code]) continue;
            const TMat conj =
                tmat_mul(t, tmat_mul(t, P, tmat_unpack(t, code, s.n), s.n), *Pinv, s.n);
            if (!s.member[tmat_pack(t, conj)]) return false;
        }
    }
    return true;
}

CrossCheckReport cross_check(const ImageSet& s, const ImageClassification& c) {
    if (s.mode.kind != EnumerationMode::Kind::Exhaustive)
        throw ModeMismatch("cross_check: needs an exhaustive set");
    const GfTable& t = *s.table;
    const std::uint64_t universe = s.member.size();

    CrossCheckReport rep;
    rep.verdict = c.verdict;
    rep.image_size = s.size();
    rep.caveat = "finite-field enumeration lies outside the hypotheses of the classification "
                 "theorems (they need an infinite or algebraically closed base field); this "
                 "comparison is informational only";

    switch (c.verdict) {
    case Verdict::Zero:
        rep.predicted_size = 1;
        rep.within_prediction =
            rep.image_size == 0 || (rep.image_size == 1 && s.member[0]);
        break;
    case Verdict::Traceless: {
        std::uint64_t pred = 1;
        for (std::size_t e = 1; e < s.n * s.n; ++e) pred *= s.q;
        rep.predicted_size = pred;
        bool inside = true;
        for (std::uint64_t code = 0; code < universe && inside; ++code)
            if (s.member[code] && tmat_trace(t, tmat_unpack(t, code, s.n), s.n) != 0)
                inside = false;
        rep.within_prediction = inside;
        break;
    }
    case Verdict::Full:
        rep.predicted_size = universe;
        rep.within_prediction = true;
        break;
    case Verdict::Undetermined:
        break;
    }
    rep.matches_prediction = rep.predicted_size.has_value() && rep.within_prediction &&
                             rep.image_size == *rep.predicted_size;
    return rep;
}

} // namespace cubim
