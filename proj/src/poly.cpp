#include "cubim/poly.hpp"

namespace cubim {
namespace {

int word_index(const std::array<int, 3>& vars) {
    for (int k = 0; k < kWordCount; ++k)
        if (kWordVars[k] == vars) return k;
    throw std::logic_error("word_index: not a permutation of the variables");
}

} // namespace

Polynomial::Polynomial(FieldPtr field) : field_(std::move(field)) {
    co_.fill(field_->zero());
}

Polynomial::Polynomial(FieldPtr field, std::array<FieldElement, 6> coeffs)
    : field_(std::move(field)), co_(std::move(coeffs)) {
    for (const auto& c : co_)
        if (!c.field()->same(*field_)) throw DescriptorMismatch("polynomial coefficient field");
}

Polynomial Polynomial::from_integers(const FieldPtr& field, const std::array<long, 6>& coeffs) {
    Polynomial f(field);
    for (int k = 0; k < kWordCount; ++k) f.co_[k] = field->integer(coeffs[k]);
    return f;
}

const FieldElement& Polynomial::lambda(int i) const {
    if (i < 1 || i > 3) throw std::out_of_range("lambda index");
    return co_[i - 1];
}

const FieldElement& Polynomial::mu(int i) const {
    if (i < 1 || i > 3) throw std::out_of_range("mu index");
    return co_[2 + i];
}

FieldElement Polynomial::lambda_sum() const { return co_[0] + co_[1] + co_[2]; }

FieldElement Polynomial::mu_sum() const { return co_[3] + co_[4] + co_[5]; }

bool Polynomial::is_zero() const {
    for (const auto& c : co_)
        if (!c.is_zero()) return false;
    return true;
}

Matrix eval(const Polynomial& f, const Matrix& X, const Matrix& Y, const Matrix& Z) {
    const std::array<const Matrix*, 3> vars = {&X, &Y, &Z};
    const std::size_t n = X.rows();
    if (!X.is_square() || Y.rows() != n || Y.cols() != n || Z.rows() != n || Z.cols() != n)
        throw DimensionMismatch("eval: arguments must be square of one size");
    Matrix acc(f.field(), n, n);
    for (int k = 0; k < kWordCount; ++k) {
        const FieldElement& c = f.coeff(static_cast<Word>(k));
        if (c.is_zero()) continue;
        const auto& w = kWordVars[k];
        acc = acc + ((*vars[w[0]] * *vars[w[1]]) * *vars[w[2]]).scaled(c);
    }
    return acc;
}

VarPerm perm_inverse(const VarPerm& s) {
    VarPerm r{};
    for (int i = 0; i < 3; ++i) r[s[i]] = i;
    return r;
}

VarPerm perm_compose(const VarPerm& tau, const VarPerm& sigma) {
    return {tau[sigma[0]], tau[sigma[1]], tau[sigma[2]]};
}

Polynomial permute_variables(const Polynomial& f, const VarPerm& sigma) {
    Polynomial g(f.field());
    for (int k = 0; k < kWordCount; ++k) {
        const auto& w = kWordVars[k];
        const int moved = word_index({sigma[w[0]], sigma[w[1]], sigma[w[2]]});
        g.coeff(static_cast<Word>(moved)) = f.coeff(static_cast<Word>(k));
    }
    return g;
}

Matrix linear_map_in_z(const Polynomial& f, const Matrix& X, const Matrix& Y) {
    const std::size_t n = X.rows();
    if (!X.is_square() || Y.rows() != n || Y.cols() != n)
        throw DimensionMismatch("linear_map_in_z: square matrices of one size");
    const FieldPtr& F = f.field();
    const Matrix A = X * Y;
    const Matrix B = Y * X;
    const FieldElement &l1 = f.lambda(1), &l2 = f.lambda(2), &l3 = f.lambda(3);
    const FieldElement &m1 = f.mu(1), &m2 = f.mu(2), &m3 = f.mu(3);
    Matrix L(F, n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            FieldElement* row = &L.at(i * n + j, 0);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    FieldElement& cell = row[k * n + l];
                    if (j == l) cell += l1 * A.at(i, k) + m3 * B.at(i, k);
                    if (i == k) cell += l3 * A.at(l, j) + m1 * B.at(l, j);
                    cell += l2 * (Y.at(i, k) * X.at(l, j)) + m2 * (X.at(i, k) * Y.at(l, j));
                }
        }
    return L;
}

std::optional<CommutatorPattern> match_commutator_form(const Polynomial& f) {
    const FieldElement &l1 = f.lambda(1), &l2 = f.lambda(2), &l3 = f.lambda(3);
    const FieldElement &m1 = f.mu(1), &m2 = f.mu(2), &m3 = f.mu(3);
    // X leads: scale*(1,-L,0, L,-1,0)
    if (l3.is_zero() && m3.is_zero() && !l1.is_zero() && m2 == -l1 && l2 == -m1)
        return CommutatorPattern{LeadVar::X, m1 / l1, l1};
    // Y leads: scale*(0,1,-L, 0,L,-1)
    if (l1.is_zero() && m1.is_zero() && !l2.is_zero() && m3 == -l2 && l3 == -m2)
        return CommutatorPattern{LeadVar::Y, m2 / l2, l2};
    // Z leads: scale*(-L,0,1, -1,0,L)
    if (l2.is_zero() && m2.is_zero() && !l3.is_zero() && m1 == -l3 && l1 == -m3)
        return CommutatorPattern{LeadVar::Z, m3 / l3, l3};
    return std::nullopt;
}

} // namespace cubim
