#include "cubim/matrix.hpp"

#include <algorithm>

namespace cubim {
namespace {

void check_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b || !a->same(*b)) throw DescriptorMismatch("matrix field descriptors differ");
}

// Reduced row echelon form in place; returns pivot column indices.
// Pivot choice is deterministic: columns left to right, first nonzero row.
std::vector<std::size_t> rref_in_place(Matrix& A) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t pr = r;
        while (pr < A.rows() && A.at(pr, c).is_zero()) ++pr;
        if (pr == A.rows()) continue;
        if (pr != r)
            for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A.at(r, j), A.at(pr, j));
        const FieldElement inv = A.at(r, c).inverse();
        for (std::size_t j = c; j < A.cols(); ++j) A.at(r, j) *= inv;
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == r || A.at(i, c).is_zero()) continue;
            const FieldElement m = A.at(i, c);
            for (std::size_t j = c; j < A.cols(); ++j) A.at(i, j) -= m * A.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, field_->zero()) {}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
    return m;
}

Matrix Matrix::diagonal(const Vec& d) {
    if (d.empty()) throw DimensionMismatch("diagonal: empty vector");
    Matrix m(d[0].field(), d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        check_same_field(d[i].field(), m.field_);
        m.at(i, i) = d[i];
    }
    return m;
}

Matrix Matrix::from_columns(const FieldPtr& field, const std::vector<Vec>& cols) {
    if (cols.empty()) throw DimensionMismatch("from_columns: no columns");
    Matrix m(field, cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows_) throw DimensionMismatch("from_columns: ragged columns");
        for (std::size_t i = 0; i < m.rows_; ++i) {
            check_same_field(cols[j][i].field(), field);
            m.at(i, j) = cols[j][i];
        }
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add: shape");
    Matrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sub: shape");
    Matrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_field(field_, o.field_);
    if (cols_ != o.rows_) throw DimensionMismatch("matrix mul: inner dimensions");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const FieldElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += a * o.at(k, j);
            }
        }
    return r;
}

Matrix Matrix::scaled(const FieldElement& c) const {
    check_same_field(field_, c.field());
    Matrix r = *this;
    for (auto& x : r.e_) x *= c;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

FieldElement Matrix::trace() const {
    if (!is_square()) throw NotSquare("trace");
    FieldElement t = field_->zero();
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    check_same_field(field_, o.field_);
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Vec Matrix::row(std::size_t i) const {
    Vec v;
    v.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v.push_back(at(i, j));
    return v;
}

Vec Matrix::column(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw DimensionMismatch("set_column");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

std::string Matrix::str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i == 0 ? "[" : " ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) s += " ";
            s += at(i, j).str();
        }
        s += i + 1 == rows_ ? "]" : "\n";
    }
    return s;
}

Vec mat_vec(const Matrix& A, const Vec& x) {
    if (x.size() != A.cols()) throw DimensionMismatch("mat_vec");
    Vec r(A.rows(), A.field()->zero());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (A.at(i, j).is_zero() || x[j].is_zero()) continue;
            r[i] += A.at(i, j) * x[j];
        }
    return r;
}

FieldElement det(const Matrix& A) {
    if (!A.is_square()) throw NotSquare("det");
    const FieldPtr& F = A.field();
    if (A.rows() == 0) return F->one();
    Matrix work = A;
    const std::size_t n = work.rows();
    bool negate = false;
    FieldElement d = F->one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pr = c;
        while (pr < n && work.at(pr, c).is_zero()) ++pr;
        if (pr == n) return F->zero();
        if (pr != c) {
            negate = !negate;
            for (std::size_t j = c; j < n; ++j) std::swap(work.at(c, j), work.at(pr, j));
        }
        const FieldElement& pivot = work.at(c, c);
        d *= pivot;
        const FieldElement inv = pivot.inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (work.at(i, c).is_zero()) continue;
            const FieldElement m = work.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) work.at(i, j) -= m * work.at(c, j);
        }
    }
    return negate ? -d : d;
}

std::size_t rank(const Matrix& A) {
    Matrix work = A;
    return rref_in_place(work).size();
}

std::optional<Vec> solve(const Matrix& A, const Vec& rhs) {
    if (rhs.size() != A.rows()) throw DimensionMismatch("solve: rhs length");
    const FieldPtr& F = A.field();
    Matrix aug(F, A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        check_same_field(rhs[i].field(), F);
        aug.at(i, A.cols()) = rhs[i];
    }
    const auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt; // 0 = 1 row
    Vec x(A.cols(), F->zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, A.cols());
    // exactness audit: re-multiply
    const Vec check = mat_vec(A, x);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        if (check[i] != rhs[i]) throw MatrixError("solve: verification failed");
    return x;
}

std::vector<Vec> kernel_basis(const Matrix& A) {
    const FieldPtr& F = A.field();
    Matrix R = A;
    const auto pivots = rref_in_place(R);
    std::vector<Vec> basis;
    std::size_t pi = 0;
    for (std::size_t c = 0; c < A.cols(); ++c) {
        if (pi < pivots.size() && pivots[pi] == c) {
            ++pi;
            continue;
        }
        Vec v(A.cols(), F->zero());
        v[c] = F->one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -R.at(r, c);
        for (const auto& entry : mat_vec(A, v))
            if (!entry.is_zero()) throw MatrixError("kernel_basis: verification failed");
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& A) {
    if (!A.is_square()) throw NotSquare("inverse");
    const std::size_t n = A.rows();
    const FieldPtr& F = A.field();
    Matrix aug(F, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = F->one();
    }
    const auto pivots = rref_in_place(aug);
    if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return std::nullopt;
    Matrix inv(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

Matrix conjugate(const Matrix& P, const Matrix& M) {
    const auto pinv = inverse(P);
    if (!pinv) throw MatrixError("conjugate: singular basis matrix");
    return P * M * *pinv;
}

Vec shift_apply(const Vec& v, long j) {
    const std::size_t n = v.size();
    if (n == 0) return v;
    const long nn = static_cast<long>(n);
    long off = j % nn;
    if (off < 0) off += nn;
    Vec r(n, v[0].field()->zero());
    for (std::size_t i = 0; i < n; ++i)
        r[(i + static_cast<std::size_t>(off)) % n] = v[i];
    return r;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw DimensionMismatch("block_diag: no blocks");
    const FieldPtr& F = blocks[0].field();
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        check_same_field(b.field(), F);
        rows += b.rows();
        cols += b.cols();
    }
    Matrix r(F, rows, cols);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r.at(ro + i, co + j) = b.at(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return r;
}

JordanData::TargetClass JordanData::classify_target() const {
    std::size_t support = 0;
    for (const auto& v : super)
        if (!v.is_zero()) ++support;
    return support == 1 ? TargetClass::SingleTwoBlock : TargetClass::InJn;
}

Matrix jordan_matrix(const JordanData& jd, const FieldPtr& field) {
    const std::size_t n = jd.diag.size();
    if (jd.super.size() != n) throw DimensionMismatch("jordan_matrix: nu length");
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = embed(jd.diag[i], field);
        const FieldElement nu = embed(jd.super[i], field);
        if (!nu.is_zero()) m.at(i, (i + 1) % n) = nu;
    }
    return m;
}

} // namespace cubim
