#pragma once

#include <optional>
#include <vector>

#include "cubim/field.hpp"

namespace cubim {

struct MatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotSquare : MatrixError {
    using MatrixError::MatrixError;
};
struct DimensionMismatch : MatrixError {
    using MatrixError::MatrixError;
};

using Vec = std::vector<FieldElement>;

// Dense matrix over a single field descriptor, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
    static Matrix identity(const FieldPtr& field, std::size_t n);
    static Matrix diagonal(const Vec& d);
    static Matrix from_columns(const FieldPtr& field, const std::vector<Vec>& cols);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const FieldElement& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    FieldElement& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const FieldElement& c) const;
    Matrix transpose() const;

    FieldElement trace() const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    void set_column(std::size_t j, const Vec& v);

    std::string str() const;

private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

Vec mat_vec(const Matrix& A, const Vec& x);

// Exact determinant by Gaussian elimination with division.
FieldElement det(const Matrix& A);

std::size_t rank(const Matrix& A);

// One solution of A x = rhs with free variables set to zero, or nullopt when
// inconsistent. The result is re-multiplied against A before returning.
std::optional<Vec> solve(const Matrix& A, const Vec& rhs);

// Basis of { x : A x = 0 } from the reduced row echelon form; deterministic
// (pivots are the lexicographically first usable columns). Every returned
// vector is re-checked against A.
std::vector<Vec> kernel_basis(const Matrix& A);

std::optional<Matrix> inverse(const Matrix& A);

// P M P^{-1}; throws MatrixError when P is singular.
Matrix conjugate(const Matrix& P, const Matrix& M);

// Cyclic coordinate shift s^j on K^n: (s w)_i = w_{i-1 mod n}, so s e_i = e_{i+1}.
// Negative j applies the inverse shift.
Vec shift_apply(const Vec& v, long j);

// Direct sum along the diagonal. All blocks must share a field descriptor.
Matrix block_diag(const std::vector<Matrix>& blocks);

// Bidiagonal data (d, nu): diagonal entries plus the cyclic superdiagonal
// slots nu_0..nu_{n-1}, where nu_i sits at (i, i+1 mod n); nu_{n-1} is the
// wraparound slot (n-1, 0). Jordan forms produced by jordan_form always have
// nu in {0,1} and an empty wraparound slot; solver targets may use any values.
struct JordanData {
    Vec diag;
    Vec super;
    std::optional<Matrix> basis; // P with M = P J P^{-1}

    enum class TargetClass {
        InJn,          // nu-support empty or of size >= 2
        SingleTwoBlock // exactly one nonzero nu entry
    };
    TargetClass classify_target() const;

    std::size_t size() const { return diag.size(); }
};

// The bidiagonal matrix described by (d, nu).
Matrix jordan_matrix(const JordanData& jd, const FieldPtr& field);

// Exact Jordan normal form over the matrix's own field. Returns nullopt when
// the characteristic polynomial does not split over that field within the
// implemented root search (rational candidates, c * zeta^j shifts, exhaustive
// enumeration for GF).
std::optional<JordanData> jordan_form(const Matrix& M);

// Characteristic polynomial det(xI - M), ascending coefficients, monic.
Vec char_poly(const Matrix& M);

} // namespace cubim
