#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubim/classify.hpp"
#include "cubim/matrix.hpp"
#include "cubim/poly.hpp"
#include "cubim/rng.hpp"

namespace cubim {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Requested configuration exceeds the enumeration bounds.
struct TooLarge : OracleError {
    using OracleError::OracleError;
};
// Operation needs Exhaustive mode but got a Sampled set.
struct ModeMismatch : OracleError {
    using OracleError::OracleError;
};

// Flat arithmetic tables for GF(p^k) with q = p^k <= 1024. Elements are the
// indices 0..q-1 obtained by packing the coefficient vector in base p,
// little-endian, so index_of/element round-trip against the Field handle.
class GfTable {
public:
    explicit GfTable(const FieldPtr& field); // FiniteField only

    const FieldPtr& field() const { return field_; }
    unsigned long q() const { return q_; }
    unsigned long p() const { return p_; }
    unsigned k() const { return k_; }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return add_[a * q_ + b]; }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mul_[a * q_ + b]; }
    std::uint16_t neg(std::uint16_t a) const { return neg_[a]; }
    std::uint16_t inv(std::uint16_t a) const; // throws DivisionByZero on 0

    std::uint16_t index_of(const FieldElement& x) const;
    FieldElement element(std::uint16_t idx) const;

private:
    FieldPtr field_;
    unsigned long q_ = 0, p_ = 0;
    unsigned k_ = 0;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
};

// Base-q positional code of a matrix: entry (i, j) contributes its element
// index times q^(i*n + j). Codes index the membership bitset.
std::uint64_t pack_matrix(const GfTable& t, const Matrix& M);
Matrix unpack_matrix(const GfTable& t, std::uint64_t code, std::size_t n);

struct EnumerationMode {
    enum class Kind { Exhaustive, Sampled };
    Kind kind = Kind::Exhaustive;
    std::uint64_t samples = 0; // Sampled only

    static EnumerationMode exhaustive() { return {Kind::Exhaustive, 0}; }
    static EnumerationMode sampled(std::uint64_t count) { return {Kind::Sampled, count}; }
};

// Image of f on M_n(F_q) as a membership bitset over packed codes.
// Exhaustive sets are exact; Sampled sets are lower bounds only.
struct ImageSet {
    std::size_t n = 0;
    unsigned long q = 0;
    EnumerationMode mode;
    std::shared_ptr<const GfTable> table;
    std::vector<bool> member;

    const FieldPtr& field() const { return table->field(); }
    std::uint64_t size() const;
    bool contains_code(std::uint64_t code) const { return member[code]; }
    bool contains(const Matrix& M) const;
};

// Sweep all q^(3n^2) triples (Exhaustive; enforced q^(3n^2) <= 2^30, which
// caps the universe q^(n^2) at 2^10) or `samples` random triples (Sampled;
// universe capped at 2^20). Exhaustive runs are partitioned over the X range
// across `threads` workers (0 = hardware default) and OR-merged, so the
// result is thread-count independent; Sampled runs draw sequentially from
// rng, so a larger count with the same seed extends the same draw sequence.
// Exhaustive mode re-checks scalar closure of the result before returning.
ImageSet enumerate_image(const Polynomial& f, std::size_t n, unsigned long q,
                         EnumerationMode mode, Rng& rng, unsigned threads = 0);

// True iff the set is closed under addition and F_q-scaling, decided by a
// greedy echelon basis: S is a subspace iff |S| = q^rank(S). Exhaustive only.
bool is_linear_subspace(const ImageSet& s);

// Conjugation closure spot check: P S P^-1 = S for `trials` random
// invertible P. Exhaustive only.
bool closed_under_conjugation(const ImageSet& s, Rng& rng, int trials = 100);
// Exact scalar closure check over all of F_q^x. Exhaustive only.
bool closed_under_scaling(const ImageSet& s);

// Comparison of an enumerated image against the set a verdict predicts.
// Finite fields sit outside the hypotheses of the theorems behind the
// verdicts, so the report records the comparison and asserts nothing.
struct CrossCheckReport {
    Verdict verdict = Verdict::Undetermined;
    std::uint64_t image_size = 0;
    // Predicted set when the verdict names one ({0}, trace-zero, full space).
    std::optional<std::uint64_t> predicted_size;
    bool within_prediction = false; // S subseteq predicted set
    bool matches_prediction = false; // set equality
    std::string caveat;
};

CrossCheckReport cross_check(const ImageSet& s, const ImageClassification& c);

} // namespace cubim
