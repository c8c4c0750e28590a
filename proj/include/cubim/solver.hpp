#pragma once

#include "cubim/classify.hpp"

namespace cubim {

enum class SolveErrorKind {
    TargetNotInJn,
    SamplerExhausted,
    CaseObstruction,
    TargetUnsplittable,
    NotCommutatorForm,
    DegenerateD,
    NonzeroTrace,
    InsufficientFieldSize,
    Exhausted,
    UnsupportedSize,
};
const char* solve_error_name(SolveErrorKind k);

class SolveError : public std::runtime_error {
public:
    SolveError(SolveErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    SolveErrorKind kind() const { return kind_; }

private:
    SolveErrorKind kind_;
};

enum class WitnessPath { CoreJn, BlockSplit, CommutatorForm, LinearFallback };
const char* path_name(WitnessPath p);

// verified is true on every return; failures surface as SolveError instead.
struct WitnessTriple {
    Matrix X, Y, Z;
    bool verified = false;
    WitnessPath path = WitnessPath::LinearFallback;
};

// Witness for a target diag(d) + sum nu_i e_{i,i+1 mod n} whose superdiagonal
// support is empty or has size >= 2. The construction: X diagonal, Y on the
// cyclic superdiagonal, third argument on the cyclic subdiagonal plus a
// diagonal part; the diagonal of the target is produced by a z-system solve
// and the superdiagonal by a weighted w-system solve. Variable permutations
// (the lambda/mu exchange and the working subscript rotation) are applied up
// front and unwound from the returned witness.
WitnessTriple solve_core_jn(const Polynomial& f, const Vec& d, const Vec& nu,
                            const FieldPtr& F, Rng& rng);

// Routes a Jordan-shaped target: straight to the core when it already
// qualifies, through a 2x2-block + diagonal split (composed with block_diag
// and undone by a cyclic index rotation) when exactly one superdiagonal entry
// is alive, and to the linear fallback when the size is too small for either.
WitnessTriple solve_jordan(const Polynomial& f, const JordanData& jd, const FieldPtr& F,
                           Rng& rng);

// Arbitrary square target: Jordan-decompose, solve the Jordan shape, and
// conjugate the witness back. TargetUnsplittable when no Jordan form exists
// over the base field within the implemented root search.
WitnessTriple solve_general(const Polynomial& f, const Matrix& T, const FieldPtr& F, Rng& rng);

// Direct construction for f = c(v[a,b] - lambda [a,b]v) with lambda != 1:
// realize a generic zero-trace diagonal as a commutator [a,b], then read the
// leading argument off the target entrywise.
WitnessTriple solve_commutator_form(const Polynomial& f, const Matrix& T, Rng& rng);

// (Y, Z) with [Y, Z] = D for a diagonal zero-trace D: conjugate D to a
// zero-diagonal matrix, divide by differences of distinct scalars, conjugate
// back. Needs characteristic 0 or char >= n.
std::pair<Matrix, Matrix> commutator_realize(const Matrix& D);

// Randomized last resort: sample (X, Y) with nonzero entries and solve the
// induced linear system in the third argument. Exhausted is non-conclusive.
WitnessTriple solve_linear_fallback(const Polynomial& f, const Matrix& T, Rng& rng,
                                    std::size_t tries = 256, long box = 10);

// Exact non-membership certificate: both coefficient sums vanish, so every
// value of f has trace zero, yet trace(T) != 0.
bool trace_obstructs(const Polynomial& f, const Matrix& T);

} // namespace cubim
