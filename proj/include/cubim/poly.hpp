#pragma once

#include <array>
#include <optional>

#include "cubim/matrix.hpp"

namespace cubim {

// Multilinear cubic in three noncommuting variables,
//   f = l1 xyz + l2 yzx + l3 zxy + m1 zyx + m2 xzy + m3 yxz.
// Coefficient slots are indexed by the monomial word.
enum class Word : int { XYZ = 0, YZX, ZXY, ZYX, XZY, YXZ };

inline constexpr int kWordCount = 6;
inline constexpr std::array<const char*, 6> kWordNames = {"xyz", "yzx", "zxy",
                                                          "zyx", "xzy", "yxz"};
// Variable (0 = x, 1 = y, 2 = z) at each position of a word.
inline constexpr std::array<std::array<int, 3>, 6> kWordVars = {{
    {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}, {0, 2, 1}, {1, 0, 2},
}};

class Polynomial {
public:
    explicit Polynomial(FieldPtr field);
    Polynomial(FieldPtr field, std::array<FieldElement, 6> coeffs);
    static Polynomial from_integers(const FieldPtr& field, const std::array<long, 6>& coeffs);

    const FieldPtr& field() const { return field_; }
    const FieldElement& coeff(Word w) const { return co_[static_cast<int>(w)]; }
    FieldElement& coeff(Word w) { return co_[static_cast<int>(w)]; }

    // The two coefficient families, indexed 1..3.
    const FieldElement& lambda(int i) const;
    const FieldElement& mu(int i) const;

    FieldElement lambda_sum() const;
    FieldElement mu_sum() const;

    bool is_zero() const;
    bool operator==(const Polynomial& o) const { return co_ == o.co_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    std::array<FieldElement, 6> co_;
};

Matrix eval(const Polynomial& f, const Matrix& X, const Matrix& Y, const Matrix& Z);

// Permutation of the three variables; sigma[i] is the image of variable i.
using VarPerm = std::array<int, 3>;

inline constexpr VarPerm kIdentityPerm = {0, 1, 2};

VarPerm perm_inverse(const VarPerm& s);
// (tau o sigma)(i) = tau(sigma(i))
VarPerm perm_compose(const VarPerm& tau, const VarPerm& sigma);

// The polynomial g with eval(g, B0, B1, B2) == eval(f, B_{sigma[0]}, B_{sigma[1]}, B_{sigma[2]}).
// Coefficients move by g_{sigma o w} = f_w.
Polynomial permute_variables(const Polynomial& f, const VarPerm& sigma);

// Matrix of the linear map Z -> eval(f, X, Y, Z) on row-major vec coordinates:
// column k*n+l is vec(eval(f, X, Y, E_kl)).
Matrix linear_map_in_z(const Polynomial& f, const Matrix& X, const Matrix& Y);

// f = scale * (v [a,b] - lambda [a,b] v) where v is the leading variable and
// (a,b) the remaining two in cyclic order:
//   X leads: scale * (x[y,z] - lambda [y,z]x)  coeffs scale*(1,-L,0, L,-1,0)
//   Y leads: scale * (y[z,x] - lambda [z,x]y)  coeffs scale*(0,1,-L, 0,L,-1)
//   Z leads: scale * (z[x,y] - lambda [x,y]z)  coeffs scale*(-L,0,1, -1,0,L)
// The three patterns are mutually exclusive. Matching is pure shape
// recognition; lambda = 1 matches here and is rejected by the solver.
enum class LeadVar { X = 0, Y = 1, Z = 2 };
struct CommutatorPattern {
    LeadVar lead;
    FieldElement lambda;
    FieldElement scale;
};
std::optional<CommutatorPattern> match_commutator_form(const Polynomial& f);

} // namespace cubim
