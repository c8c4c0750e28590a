#include "cubim/structured.hpp"

namespace cubim {
namespace {

Vec two_supported(const FieldPtr& F, std::size_t n, const FieldElement& a,
                  const FieldElement& b) {
    if (n < 2) throw DimensionMismatch("structured weights need n >= 2");
    Vec w(n, F->zero());
    w[0] = a;
    w[1] = b;
    return w;
}

} // namespace

Matrix build_structured(const Vec& xs, const Vec& u, const Vec& v) {
    const std::size_t n = xs.size();
    if (n == 0 || u.size() != n || v.size() != n)
        throw DimensionMismatch("build_structured: xs, u, v must share a length");
    const FieldPtr& F = xs[0].field();
    Matrix a(F, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec col(n, F->zero());
        for (std::size_t i = 0; i < n; ++i) col[i] = xs[j] * u[i] + xs[(j + 1) % n] * v[i];
        a.set_column(j, shift_apply(col, static_cast<long>(j)));
    }
    return a;
}

SystemWeights z_system_weights(const Polynomial& f, std::size_t n) {
    const FieldPtr& F = f.field();
    return {two_supported(F, n, f.lambda(1) + f.lambda(2), f.lambda(3)),
            two_supported(F, n, f.mu(3), f.mu(2) + f.mu(1))};
}

SystemWeights w_system_weights(const Polynomial& f, std::size_t n) {
    const FieldPtr& F = f.field();
    return {two_supported(F, n, f.mu(2) + f.lambda(3), f.lambda(1)),
            two_supported(F, n, f.mu(1), f.lambda(2) + f.mu(3))};
}

Matrix z_system_matrix(const Polynomial& f, const Vec& xs) {
    const auto w = z_system_weights(f, xs.size());
    return build_structured(xs, w.u, w.v);
}

Matrix w_system_matrix(const Polynomial& f, const Vec& xs) {
    const auto w = w_system_weights(f, xs.size());
    return build_structured(xs, w.u, w.v);
}

KernelShape kernel_shape(const Matrix& a) {
    const auto basis = kernel_basis(a);
    if (basis.empty()) return KernelShape::Trivial;
    if (basis.size() > 1) return KernelShape::Bad;
    for (const auto& e : basis[0])
        if (e.is_zero()) return KernelShape::Bad;
    return KernelShape::AllNonzero;
}

std::optional<Vec> kernel_line(const Matrix& a) {
    auto basis = kernel_basis(a);
    if (basis.size() != 1) return std::nullopt;
    return std::move(basis[0]);
}

std::optional<XsDraw> draw_admissible_xs(const Polynomial& f, std::size_t n, Rng& rng,
                                         std::size_t max_tries, long box) {
    const FieldPtr& F = f.field();
    for (std::size_t t = 1; t <= max_tries; ++t) {
        Vec xs;
        xs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) xs.push_back(sample_nonzero(F, rng, box));
        if (det(z_system_matrix(f, xs)).is_zero()) continue;
        if (kernel_shape(w_system_matrix(f, xs)) == KernelShape::Bad) continue;
        return XsDraw{std::move(xs), t};
    }
    return std::nullopt;
}

ConditionReport check_root_condition(const FieldPtr& field, unsigned n) {
    std::vector<FieldElement> roots;
    for (auto& r : nth_roots_of_unity(field, n))
        if (!r.is_one()) roots.push_back(std::move(r));
    const FieldElement two = field->integer(2);
    for (const auto& w : roots)
        for (const auto& h : roots)
            for (const auto& t : roots)
                if ((w * h * t - w - h - t + two).is_zero()) return {false, {w, h, t}};
    return {};
}

std::vector<FieldElement> condition_counterexample(unsigned long p, unsigned n) {
    if (p < 5) throw std::invalid_argument("condition_counterexample: need p >= 5");
    if (n == 0 || n % (p - 1) != 0)
        throw std::invalid_argument("condition_counterexample: need (p-1) | n");
    const FieldPtr F = Field::finite_field(p, 1); // validates primality
    const FieldElement w = F->integer(2);
    const FieldElement two = F->integer(2);
    FieldElement h;
    for (unsigned long c = 2; c < p; ++c) {
        const FieldElement cand = F->integer(static_cast<long>(c));
        if (cand == w.inverse() || cand == two - w) continue;
        h = cand;
        break;
    }
    if (!h.field()) throw std::logic_error("condition_counterexample: no usable second root");
    const FieldElement t = (w + h - two) / (w * h - F->one());
    if (!(w * h * t - w - h - t + two).is_zero())
        throw std::logic_error("condition_counterexample: triple does not violate");
    for (const auto& r : {w, h, t})
        if (r.is_one() || !r.pow(static_cast<long>(n)).is_one())
            throw std::logic_error("condition_counterexample: not a nontrivial n-th root");
    return {w, h, t};
}

} // namespace cubim
