#include "cubim/solver.hpp"

#include <utility>

namespace cubim {

namespace {

Vec vec_rows(const Matrix& M) {
    Vec v;
    v.reserve(M.rows() * M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) v.push_back(M.at(i, j));
    return v;
}

Matrix unvec_rows(const FieldPtr& F, const Vec& v, std::size_t n) {
    Matrix M(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = v[i * n + j];
    return M;
}

Matrix random_full_matrix(const FieldPtr& F, std::size_t n, Rng& rng, long box) {
    Matrix M(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = sample_nonzero(F, rng, box);
    return M;
}

std::vector<std::size_t> nonzero_indices(const Vec& v) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) idx.push_back(i);
    return idx;
}

// Q with Q^{-1} M Q having an all-zero diagonal; M must have trace 0.
// Induction: pick v with Mv outside the line through v, start a basis with
// (v, Mv) so the new (0,0) entry vanishes, recurse on the trailing block.
Matrix zero_diagonal_conjugator(const Matrix& M) {
    const FieldPtr& F = M.field();
    const std::size_t n = M.rows();
    if (n <= 1 || M.is_zero()) return Matrix::identity(F, n);

    Vec v(n, F->zero());
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && !M.at(j, i).is_zero()) {
                v[i] = F->one(); // e_i is not an eigenvector
                found = true;
                break;
            }
        }
    }
    if (!found) {
        // M is diagonal and zero-trace, so two diagonal entries differ
        for (std::size_t i = 0; i < n && !found; ++i) {
            for (std::size_t j = i + 1; j < n && !found; ++j) {
                if (M.at(i, i) != M.at(j, j)) {
                    v[i] = F->one();
                    v[j] = F->one();
                    found = true;
                }
            }
        }
    }
    if (!found) throw std::logic_error("zero_diagonal_conjugator: no independent pair");

    std::vector<Vec> cols = {v, mat_vec(M, v)};
    for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
        Vec e(n, F->zero());
        e[i] = F->one();
        cols.push_back(e);
        if (rank(Matrix::from_columns(F, cols)) < cols.size()) cols.pop_back();
    }
    if (cols.size() != n) throw std::logic_error("zero_diagonal_conjugator: basis extension failed");

    const Matrix Q1 = Matrix::from_columns(F, cols);
    const auto Q1inv = inverse(Q1);
    if (!Q1inv) throw std::logic_error("zero_diagonal_conjugator: basis not invertible");
    const Matrix A1 = (*Q1inv) * M * Q1;

    Matrix sub(F, n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) sub.at(i - 1, j - 1) = A1.at(i, j);
    const Matrix Q2 = zero_diagonal_conjugator(sub);

    Matrix Q2full = Matrix::identity(F, n);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) Q2full.at(i, j) = Q2.at(i - 1, j - 1);
    return Q1 * Q2full;
}

// Cyclic index rotation by k: entry (a, b) moves to (a+k, b+k) mod n.
Matrix rotation_matrix(const FieldPtr& F, std::size_t n, std::size_t k) {
    Matrix P(F, n, n);
    for (std::size_t j = 0; j < n; ++j) P.at((j + k) % n, j) = F->one();
    return P;
}

} // namespace

const char* solve_error_name(SolveErrorKind k) {
    switch (k) {
    case SolveErrorKind::TargetNotInJn: return "TargetNotInJn";
    case SolveErrorKind::SamplerExhausted: return "SamplerExhausted";
    case SolveErrorKind::CaseObstruction: return "CaseObstruction";
    case SolveErrorKind::TargetUnsplittable: return "TargetUnsplittable";
    case SolveErrorKind::NotCommutatorForm: return "NotCommutatorForm";
    case SolveErrorKind::DegenerateD: return "DegenerateD";
    case SolveErrorKind::NonzeroTrace: return "NonzeroTrace";
    case SolveErrorKind::InsufficientFieldSize: return "InsufficientFieldSize";
    case SolveErrorKind::Exhausted: return "Exhausted";
    case SolveErrorKind::UnsupportedSize: return "UnsupportedSize";
    }
    return "?";
}

const char* path_name(WitnessPath p) {
    switch (p) {
    case WitnessPath::CoreJn: return "CoreJn";
    case WitnessPath::BlockSplit: return "BlockSplit";
    case WitnessPath::CommutatorForm: return "CommutatorForm";
    case WitnessPath::LinearFallback: return "LinearFallback";
    }
    return "?";
}

namespace {

// One construction attempt at a fixed subscript rotation: g is the rotated
// polynomial, total the argument permutation mapping f's slots to g's.
WitnessTriple core_attempt(const Polynomial& f, const Polynomial& g, const VarPerm& total,
                           const Vec& d, const Vec& nu, const std::vector<std::size_t>& support,
                           const FieldPtr& F, Rng& rng) {
    const std::size_t n = d.size();

    const auto draw = draw_admissible_xs(g, n, rng);
    if (!draw)
        throw SolveError(SolveErrorKind::SamplerExhausted,
                         "no admissible diagonal draw within the retry budget");
    const Vec& xs = draw->xs;

    const Matrix a1 = z_system_matrix(g, xs);
    const auto z = solve(a1, d);
    if (!z || mat_vec(a1, *z) != d)
        throw std::logic_error("solve_core_jn: z-system solve failed despite nonzero det");

    const Matrix a = w_system_matrix(g, xs);
    const Matrix at = a.transpose();
    Vec w(n, F->zero());
    Vec y(n, F->one());
    if (!support.empty()) {
        if (kernel_shape(a) == KernelShape::Trivial) {
            const auto sol = solve(at, nu);
            if (!sol) throw std::logic_error("solve_core_jn: invertible w-system unsolvable");
            w = *sol;
        } else {
            const auto b = kernel_line(a);
            if (!b) throw std::logic_error("solve_core_jn: missing kernel line");
            // eta lives on the superdiagonal support, must have no zero there,
            // and must be orthogonal to the kernel vector; the last support
            // entry is solved from the orthogonality and can come out zero for
            // unlucky free entries, hence the redraw loop
            const std::size_t last = support.back();
            Vec eta(n, F->zero());
            bool usable = false;
            for (std::size_t t = 0; t < 64 && !usable; ++t) {
                FieldElement acc = F->zero();
                for (std::size_t idx : support) {
                    if (idx == last) continue;
                    eta[idx] = (t == 0) ? F->one() : sample_nonzero(F, rng, 10);
                    acc = acc + eta[idx] * (*b)[idx];
                }
                eta[last] = -(acc / (*b)[last]);
                usable = !eta[last].is_zero();
            }
            if (!usable)
                throw SolveError(SolveErrorKind::SamplerExhausted,
                                 "no orthogonal weight vector with full support within budget");
            const auto sol = solve(at, eta);
            if (!sol) throw std::logic_error("solve_core_jn: orthogonal w-system unsolvable");
            w = *sol;
            for (std::size_t idx : support) y[idx] = nu[idx] / eta[idx];
        }
        // the weighted system holds exactly before assembly
        const Vec check = mat_vec(at, w);
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] * check[i] != nu[i])
                throw std::logic_error("solve_core_jn: weighted w-system check failed");
    }

    const Matrix X = Matrix::diagonal(xs);
    Matrix Y(F, n, n);
    for (std::size_t i = 0; i < n; ++i) Y.at(i, (i + 1) % n) = y[i];
    Matrix Z3(F, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        Z3.at(i, prev) = (*z)[prev] / y[prev];
        Z3.at(i, i) = w[i];
    }

    Matrix T(F, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        T.at(i, i) = d[i];
        T.at(i, (i + 1) % n) = nu[i];
    }
    if (eval(g, X, Y, Z3) != T)
        throw std::logic_error("solve_core_jn: assembled witness does not evaluate to target");

    // unwind the variable permutations
    const std::array<Matrix, 3> W = {X, Y, Z3};
    WitnessTriple out{W[total[0]], W[total[1]], W[total[2]], false, WitnessPath::CoreJn};
    if (eval(f, out.X, out.Y, out.Z) != T)
        throw std::logic_error("solve_core_jn: unpermuted witness does not evaluate to target");
    out.verified = true;
    return out;
}

} // namespace

WitnessTriple solve_core_jn(const Polynomial& f, const Vec& d, const Vec& nu, const FieldPtr& F,
                            Rng& rng) {
    const std::size_t n = d.size();
    if (nu.size() != n) throw std::invalid_argument("solve_core_jn: d and nu sizes differ");
    if (n < 3) throw std::invalid_argument("solve_core_jn: n must be at least 3");

    const std::vector<std::size_t> support = nonzero_indices(nu);
    if (support.size() == 1)
        throw SolveError(SolveErrorKind::TargetNotInJn,
                         "exactly one superdiagonal entry is nonzero");

    // make the lambda family carry the nonzero sum, then pick a subscript
    // rotation free of the degeneracy cases
    Polynomial g = f;
    VarPerm total = kIdentityPerm;
    if (g.lambda_sum().is_zero() && !g.mu_sum().is_zero()) {
        const VarPerm swap = {2, 1, 0};
        g = permute_variables(g, swap);
        total = swap;
    }
    const CaseReport rep = case_analysis(g, n);
    std::vector<std::size_t> clear;
    for (std::size_t r = 0; r < rep.rho.size(); ++r)
        if (!rep.rho[r].any()) clear.push_back(r);
    if (clear.empty())
        throw SolveError(SolveErrorKind::CaseObstruction,
                         "a degeneracy case holds at every subscript rotation");

    // A clear rotation guarantees a generically invertible z-system only when
    // all six coefficients sum to zero; outside that regime the z-system can
    // be identically singular at one clear rotation yet fine at another, so
    // exhaustion falls through to the next clear rotation before giving up.
    for (std::size_t ci = 0; ci < clear.size(); ++ci) {
        const std::size_t r = clear[ci];
        const Polynomial gr = (r == 0) ? g : permute_variables(g, kRotationArgPerm[r]);
        const VarPerm tot = (r == 0) ? total : perm_compose(kRotationArgPerm[r], total);
        try {
            return core_attempt(f, gr, tot, d, nu, support, F, rng);
        } catch (const SolveError& e) {
            if (e.kind() != SolveErrorKind::SamplerExhausted || ci + 1 == clear.size()) throw;
        }
    }
    throw std::logic_error("solve_core_jn: rotation loop fell through");
}

WitnessTriple solve_jordan(const Polynomial& f, const JordanData& jd, const FieldPtr& F,
                           Rng& rng) {
    const std::size_t n = jd.size();
    const Matrix T = jordan_matrix(jd, F);
    try {
        if (jd.classify_target() == JordanData::TargetClass::InJn) {
            if (n < 3)
                throw SolveError(SolveErrorKind::UnsupportedSize, "core path needs n >= 3");
            Vec dv(n, F->zero()), nv(n, F->zero());
            for (std::size_t i = 0; i < n; ++i) {
                dv[i] = T.at(i, i);
                nv[i] = T.at(i, (i + 1) % n);
            }
            return solve_core_jn(f, dv, nv, F, rng);
        }

        // one live superdiagonal entry: split off its 2x2 block
        if (n < 4)
            throw SolveError(SolveErrorKind::UnsupportedSize, "block split needs n >= 4");
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!T.at(i, (i + 1) % n).is_zero()) pos = i;
        const std::size_t k = (n - pos) % n; // rotate the block to rows 0, 1

        Vec diag_rot(n, F->zero()), super_rot(n, F->zero());
        for (std::size_t j = 0; j < n; ++j) {
            diag_rot[(j + k) % n] = T.at(j, j);
            super_rot[(j + k) % n] = T.at(j, (j + 1) % n);
        }

        Matrix B(F, 2, 2);
        B.at(0, 0) = diag_rot[0];
        B.at(0, 1) = super_rot[0];
        B.at(1, 1) = diag_rot[1];
        const WitnessTriple head = solve_linear_fallback(f, B, rng);

        const Vec rest(diag_rot.begin() + 2, diag_rot.end());
        const WitnessTriple tail =
            rest.size() >= 3
                ? solve_core_jn(f, rest, Vec(rest.size(), F->zero()), F, rng)
                : solve_linear_fallback(f, Matrix::diagonal(rest), rng);

        Matrix X = block_diag({head.X, tail.X});
        Matrix Y = block_diag({head.Y, tail.Y});
        Matrix Z = block_diag({head.Z, tail.Z});
        if (k != 0) {
            const Matrix Pinv = rotation_matrix(F, n, n - k);
            X = conjugate(Pinv, X);
            Y = conjugate(Pinv, Y);
            Z = conjugate(Pinv, Z);
        }
        WitnessTriple out{std::move(X), std::move(Y), std::move(Z), false,
                          WitnessPath::BlockSplit};
        if (eval(f, out.X, out.Y, out.Z) != T)
            throw std::logic_error("solve_jordan: composed witness does not evaluate to target");
        out.verified = true;
        return out;
    } catch (const SolveError& e) {
        if (e.kind() != SolveErrorKind::UnsupportedSize) throw;
        return solve_linear_fallback(f, T, rng);
    }
}

WitnessTriple solve_general(const Polynomial& f, const Matrix& T, const FieldPtr& F, Rng& rng) {
    const std::size_t n = T.rows();
    if (T.cols() != n) throw NotSquare("solve_general: target must be square");
    if (T.is_zero()) {
        WitnessTriple out{Matrix(F, n, n), Matrix(F, n, n), Matrix(F, n, n), false,
                          WitnessPath::LinearFallback};
        if (!eval(f, out.X, out.Y, out.Z).is_zero())
            throw std::logic_error("solve_general: zero witness does not evaluate to zero");
        out.verified = true;
        return out;
    }
    const auto jf = jordan_form(T);
    if (!jf)
        throw SolveError(SolveErrorKind::TargetUnsplittable,
                         "no Jordan form over the base field within the implemented root search");
    const Matrix& P = *jf->basis;
    const WitnessTriple inner = solve_jordan(f, *jf, F, rng);
    WitnessTriple out{conjugate(P, inner.X), conjugate(P, inner.Y), conjugate(P, inner.Z),
                      false, inner.path};
    if (eval(f, out.X, out.Y, out.Z) != T)
        throw std::logic_error("solve_general: conjugated witness does not evaluate to target");
    out.verified = true;
    return out;
}

std::pair<Matrix, Matrix> commutator_realize(const Matrix& D) {
    const FieldPtr& F = D.field();
    const std::size_t n = D.rows();
    if (D.cols() != n) throw NotSquare("commutator_realize: input must be square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !D.at(i, j).is_zero())
                throw std::invalid_argument("commutator_realize: input must be diagonal");
    if (!D.trace().is_zero())
        throw SolveError(SolveErrorKind::NonzeroTrace, "diagonal has nonzero trace");
    if (D.is_zero()) return {Matrix(F, n, n), Matrix(F, n, n)};
    const unsigned long p = F->characteristic();
    if (p != 0 && n > p)
        throw SolveError(SolveErrorKind::InsufficientFieldSize,
                         "need n distinct scalar diagonal entries, characteristic too small");

    const Matrix Q = zero_diagonal_conjugator(D);
    const auto Qinv = inverse(Q);
    if (!Qinv) throw std::logic_error("commutator_realize: conjugator not invertible");
    const Matrix A = (*Qinv) * D * Q;

    Vec beta(n, F->zero());
    for (std::size_t i = 0; i < n; ++i) beta[i] = F->integer(static_cast<long>(i) + 1);
    const Matrix Yp = Matrix::diagonal(beta);
    Matrix Zp(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) Zp.at(i, j) = A.at(i, j) / (beta[i] - beta[j]);

    Matrix Y = Q * Yp * (*Qinv);
    Matrix Z = Q * Zp * (*Qinv);
    if (Y * Z - Z * Y != D)
        throw std::logic_error("commutator_realize: commutator check failed");
    return {std::move(Y), std::move(Z)};
}

WitnessTriple solve_commutator_form(const Polynomial& f, const Matrix& T, Rng& rng) {
    const auto pat = match_commutator_form(f);
    if (!pat || pat->lambda.is_one())
        throw SolveError(SolveErrorKind::NotCommutatorForm,
                         "polynomial is not a usable one-sided commutator shape");
    const std::size_t n = T.rows();
    if (T.cols() != n) throw NotSquare("solve_commutator_form: target must be square");
    if (n < 3) throw std::invalid_argument("solve_commutator_form: n must be at least 3");
    const FieldPtr& F = f.field();
    const FieldElement& L = pat->lambda;

    // zero-sum diagonal with d_j != lambda * d_i for every ordered pair
    // (the i = j instances force every d_i nonzero)
    Vec dv(n, F->zero());
    bool good = false;
    for (std::size_t t = 0; t < 64 && !good; ++t) {
        FieldElement sum = F->zero();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            dv[i] = sample_nonzero(F, rng, 10);
            sum = sum + dv[i];
        }
        dv[n - 1] = -sum;
        good = true;
        for (std::size_t i = 0; i < n && good; ++i)
            for (std::size_t j = 0; j < n && good; ++j)
                if (dv[j] == L * dv[i]) good = false;
    }
    if (!good)
        throw SolveError(SolveErrorKind::DegenerateD,
                         "no spread-out zero-sum diagonal within the retry budget");

    auto yz = commutator_realize(Matrix::diagonal(dv));
    Matrix Xg(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!T.at(i, j).is_zero())
                Xg.at(i, j) = (T.at(i, j) / pat->scale) / (dv[j] - L * dv[i]);

    // arrange for the matched leading variable
    std::array<Matrix, 3> W = {std::move(Xg), std::move(yz.first), std::move(yz.second)};
    if (pat->lead == LeadVar::Y) W = {W[2], W[0], W[1]};
    else if (pat->lead == LeadVar::Z) W = {W[1], W[2], W[0]};

    WitnessTriple out{std::move(W[0]), std::move(W[1]), std::move(W[2]), false,
                      WitnessPath::CommutatorForm};
    if (eval(f, out.X, out.Y, out.Z) != T)
        throw std::logic_error("solve_commutator_form: witness does not evaluate to target");
    out.verified = true;
    return out;
}

WitnessTriple solve_linear_fallback(const Polynomial& f, const Matrix& T, Rng& rng,
                                    std::size_t tries, long box) {
    const std::size_t n = T.rows();
    if (T.cols() != n) throw NotSquare("solve_linear_fallback: target must be square");
    const FieldPtr& F = T.field();
    const Vec b = vec_rows(T);
    for (std::size_t t = 0; t < tries; ++t) {
        const Matrix X = random_full_matrix(F, n, rng, box);
        const Matrix Y = random_full_matrix(F, n, rng, box);
        const auto z = solve(linear_map_in_z(f, X, Y), b);
        if (!z) continue;
        Matrix Z = unvec_rows(F, *z, n);
        if (eval(f, X, Y, Z) != T) continue;
        return {X, Y, std::move(Z), true, WitnessPath::LinearFallback};
    }
    throw SolveError(SolveErrorKind::Exhausted,
                     "sampling budget spent without a witness; membership stays undecided");
}

bool trace_obstructs(const Polynomial& f, const Matrix& T) {
    return f.lambda_sum().is_zero() && f.mu_sum().is_zero() && !T.trace().is_zero();
}

} // namespace cubim
