#pragma once

#include "cubim/poly.hpp"

namespace cubim {

// a(x_0..x_{n-1}; u, v): column j is s^j(x_j u + x_{j+1 mod n} v) where s is
// the cyclic coordinate shift. With u, v supported on the first two
// coordinates the result is cyclic lower bidiagonal:
//   a[j][j]           = x_j u_0 + x_{j+1} v_0
//   a[(j+1) mod n][j] = x_j u_1 + x_{j+1} v_1
Matrix build_structured(const Vec& xs, const Vec& u, const Vec& v);

// Weight pairs (length n, support in the first two coordinates) of the two
// linear systems attached to a cubic. Requires n >= 2.
struct SystemWeights {
    Vec u, v;
};
// z-side weights: u = (l1+l2, l3), v = (m3, m2+m1).
SystemWeights z_system_weights(const Polynomial& f, std::size_t n);
// w-side weights: u = (m2+l3, l1), v = (m1, l2+m3).
SystemWeights w_system_weights(const Polynomial& f, std::size_t n);

Matrix z_system_matrix(const Polynomial& f, const Vec& xs);
Matrix w_system_matrix(const Polynomial& f, const Vec& xs);

// A kernel is usable by the witness construction when it is {0} or spanned by
// one everywhere-nonzero vector.
enum class KernelShape { Trivial, AllNonzero, Bad };
KernelShape kernel_shape(const Matrix& a);
// The spanning vector when the kernel is one-dimensional.
std::optional<Vec> kernel_line(const Matrix& a);

struct XsDraw {
    Vec xs;
    std::size_t tries = 0; // draws consumed, including the successful one
};
// Draw xs in (K^x)^n with det of the z-system nonzero and the w-system kernel
// not Bad, retrying up to max_tries times. nullopt when the budget runs out.
std::optional<XsDraw> draw_admissible_xs(const Polynomial& f, std::size_t n, Rng& rng,
                                         std::size_t max_tries = 64, long box = 10);

// Root triple condition: for all n-th roots of unity w, h, t different from 1,
//   w h t - w - h - t + 2 != 0.
// The violation reported is the first one in lexicographic order over the
// sorted roots.
struct ConditionReport {
    bool holds = true;
    std::vector<FieldElement> violation; // (w, h, t) when !holds
};
ConditionReport check_root_condition(const FieldPtr& field, unsigned n);

// A verified violating triple over GF(p) for prime p >= 5 with (p-1) | n.
std::vector<FieldElement> condition_counterexample(unsigned long p, unsigned n);

} // namespace cubim
