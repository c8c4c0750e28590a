#pragma once

#include <string>

#include "cubim/structured.hpp"

namespace cubim {

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Flags of the four degeneracy cases for one subscript rotation rho, each
// decided by exact evaluation:
//   (i)   exists an n-th root of unity w in F with
//         l_{r1}+l_{r2}+w*l_{r3} = 0 and m_{r1}+m_{r2}+w^{-1}*m_{r3} = 0
//   (ii)  l_{r1}+l_{r2}+m_{r1}+m_{r2} = 0 and l_{r3} = m_{r3} = 0
//   (iii) l_{r1}+l_{r2} = 0, m_{r1}+m_{r2} = 0, l_{r3}+m_{r3} = 0
//   (iv)  l_{r1} = m_{r1} = 0, m_{r2}+l_{r3} = 0, l_{r2}+m_{r3} = 0
struct CaseFlags {
    bool i = false;
    std::optional<FieldElement> omega; // first witnessing root when (i) holds
    bool ii = false;
    bool iii = false;
    bool iv = false;
    bool any() const { return i || ii || iii || iv; }
};

// One row per subscript rotation: identity, (123), (132).
struct CaseReport {
    std::array<CaseFlags, 3> rho;
};

// rho(i) for i = 1..3, per rotation row.
inline constexpr std::array<std::array<int, 3>, 3> kRotationIndex = {{
    {1, 2, 3}, {2, 3, 1}, {3, 1, 2},
}};
inline constexpr std::array<const char*, 3> kRotationNames = {"id", "cycle_123", "cycle_132"};
// Variable permutation sigma with: permute_variables(f, sigma) has row-0
// flags equal to f's row-r flags. Solving the permuted polynomial and
// mapping the witness back through sigma realizes the rotation.
inline constexpr std::array<VarPerm, 3> kRotationArgPerm = {{
    {0, 1, 2}, {2, 0, 1}, {1, 2, 0},
}};

CaseReport case_analysis(const Polynomial& f, std::size_t n);

// First rotation row with no case active, if any.
std::optional<std::size_t> working_rotation(const CaseReport& report);

enum class Verdict { Zero, Traceless, Full, Undetermined };
enum class Regime { Char0AlgClosed, RootConditionField, OutOfHypotheses };
enum class RegimeHint { Auto, Char0AlgClosed, RootConditionField, OutOfHypotheses };

struct ImageClassification {
    Verdict verdict = Verdict::Undetermined;
    Regime regime = Regime::OutOfHypotheses;
    std::vector<std::string> notes; // applied citations and scoping remarks
};

const char* verdict_name(Verdict v);
const char* regime_name(Regime r);

// Image type of f on n x n matrices over f's field:
//   Zero         f is the zero polynomial
//   Traceless    both coefficient sums vanish, image is the trace-zero space
//                (scoped to infinite fields)
//   Full         image is everything
//   Undetermined the hypotheses behind the known classifications are not
//                established for this (field, n)
ImageClassification classify(const Polynomial& f, std::size_t n,
                             RegimeHint hint = RegimeHint::Auto);

// Spot check trace(eval(f, X, Y, Z)) = 0 on `trials` random triples.
// Requires both coefficient sums to vanish.
bool verify_traceless_claim(const Polynomial& f, std::size_t n, std::size_t trials, Rng& rng);

} // namespace cubim
