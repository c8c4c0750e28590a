#include "cubim/classify.hpp"

namespace cubim {

namespace {

Matrix random_matrix(const FieldPtr& field, std::size_t n, Rng& rng, long box) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = field->integer(rng.between(-box, box));
    return m;
}

} // namespace

CaseReport case_analysis(const Polynomial& f, std::size_t n) {
    if (n == 0) throw std::invalid_argument("case_analysis: n must be positive");
    const FieldPtr& F = f.field();
    const auto roots = nth_roots_of_unity(F, static_cast<unsigned>(n));
    CaseReport rep;
    for (std::size_t r = 0; r < 3; ++r) {
        const auto& idx = kRotationIndex[r];
        const FieldElement& l1 = f.lambda(idx[0]);
        const FieldElement& l2 = f.lambda(idx[1]);
        const FieldElement& l3 = f.lambda(idx[2]);
        const FieldElement& m1 = f.mu(idx[0]);
        const FieldElement& m2 = f.mu(idx[1]);
        const FieldElement& m3 = f.mu(idx[2]);
        CaseFlags& fl = rep.rho[r];
        for (const FieldElement& w : roots) {
            if ((l1 + l2 + w * l3).is_zero() && (m1 + m2 + w.inverse() * m3).is_zero()) {
                fl.i = true;
                fl.omega = w;
                break;
            }
        }
        fl.ii = (l1 + l2 + m1 + m2).is_zero() && l3.is_zero() && m3.is_zero();
        fl.iii = (l1 + l2).is_zero() && (m1 + m2).is_zero() && (l3 + m3).is_zero();
        fl.iv = l1.is_zero() && m1.is_zero() && (m2 + l3).is_zero() && (l2 + m3).is_zero();
    }
    return rep;
}

std::optional<std::size_t> working_rotation(const CaseReport& report) {
    for (std::size_t r = 0; r < 3; ++r)
        if (!report.rho[r].any()) return r;
    return std::nullopt;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::Traceless: return "Traceless";
    case Verdict::Full: return "Full";
    case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::Char0AlgClosed: return "Char0AlgClosed";
    case Regime::RootConditionField: return "RootConditionField";
    case Regime::OutOfHypotheses: return "OutOfHypotheses";
    }
    return "?";
}

ImageClassification classify(const Polynomial& f, std::size_t n, RegimeHint hint) {
    if (n == 0) throw std::invalid_argument("classify: n must be positive");
    const FieldPtr& F = f.field();
    const unsigned long p = F->characteristic();
    const bool char0 = (p == 0);

    ImageClassification out;
    bool hint_conflict = false;
    switch (hint) {
    case RegimeHint::Auto:
        out.regime = char0 ? Regime::Char0AlgClosed
                           : (p >= 5 ? Regime::RootConditionField : Regime::OutOfHypotheses);
        break;
    case RegimeHint::Char0AlgClosed:
        if (char0) {
            out.regime = Regime::Char0AlgClosed;
        } else {
            out.regime = Regime::OutOfHypotheses;
            hint_conflict = true;
        }
        break;
    case RegimeHint::RootConditionField:
        if (p == 2 || p == 3) {
            out.regime = Regime::OutOfHypotheses;
            hint_conflict = true;
        } else {
            out.regime = Regime::RootConditionField;
        }
        break;
    case RegimeHint::OutOfHypotheses:
        out.regime = Regime::OutOfHypotheses;
        break;
    }
    if (hint_conflict)
        out.notes.push_back("requested regime conflicts with the field characteristic");

    if (f.is_zero()) {
        out.verdict = Verdict::Zero;
        return out;
    }

    const FieldElement ls = f.lambda_sum();
    const FieldElement ms = f.mu_sum();

    if (ls.is_zero() && ms.is_zero()) {
        if (char0) {
            out.verdict = Verdict::Traceless;
            out.notes.push_back(
                "both coefficient sums vanish: the image is the trace-zero subspace "
                "(Mesyan, Polynomials of small degree evaluated on matrices, Theorem 13)");
        } else {
            out.verdict = Verdict::Undetermined;
            out.notes.push_back(
                "both coefficient sums vanish; the trace-zero image statement is applied "
                "over infinite fields only");
        }
        return out;
    }

    if (n == 1) {
        if ((ls + ms).is_zero()) {
            out.verdict = Verdict::Undetermined;
            out.notes.push_back(
                "n = 1 with zero coefficient total: every evaluation is 0 although f != 0");
        } else {
            out.verdict = Verdict::Full;
            out.notes.push_back("n = 1: the image is the coefficient total times the field");
        }
        return out;
    }

    switch (out.regime) {
    case Regime::Char0AlgClosed:
        out.verdict = Verdict::Full;
        if (n == 2) {
            out.notes.push_back(
                "n = 2: Kanel-Belov, Malev, Rowen, The images of non-commutative polynomials "
                "evaluated on 2x2 matrices, Theorem 2 (over the algebraic closure)");
        } else if (n == 3) {
            out.notes.push_back(
                "n = 3: Dykema, Klep, Instances of the Lvov-Kaplansky conjecture, "
                "Theorem 1.2 (over the algebraic closure)");
        } else {
            out.notes.push_back(
                "a coefficient sum is nonzero and the root-of-unity condition holds "
                "automatically in characteristic 0: the image is everything");
        }
        return out;
    case Regime::RootConditionField: {
        if (n < 4) {
            out.verdict = Verdict::Undetermined;
            out.notes.push_back(
                "n = 2 or 3 is classified only over algebraically closed fields of "
                "characteristic 0");
            return out;
        }
        const ConditionReport cond = check_root_condition(F, static_cast<unsigned>(n));
        if (cond.holds) {
            out.verdict = Verdict::Full;
            out.notes.push_back(
                "a coefficient sum is nonzero and the root-of-unity condition was verified "
                "exactly: the image is everything");
        } else {
            out.verdict = Verdict::Undetermined;
            out.notes.push_back("the root-of-unity condition fails at (" +
                                cond.violation[0].str() + ", " + cond.violation[1].str() +
                                ", " + cond.violation[2].str() + ")");
        }
        return out;
    }
    case Regime::OutOfHypotheses:
        out.verdict = Verdict::Undetermined;
        if (!hint_conflict)
            out.notes.push_back("characteristic 2 or 3 is outside every applied classification");
        return out;
    }
    return out;
}

bool verify_traceless_claim(const Polynomial& f, std::size_t n, std::size_t trials, Rng& rng) {
    if (!f.lambda_sum().is_zero() || !f.mu_sum().is_zero())
        throw PreconditionViolated(
            "verify_traceless_claim: coefficient sums do not both vanish");
    const FieldPtr& F = f.field();
    for (std::size_t t = 0; t < trials; ++t) {
        Matrix X = random_matrix(F, n, rng, 10);
        Matrix Y = random_matrix(F, n, rng, 10);
        Matrix Z = random_matrix(F, n, rng, 10);
        if (!eval(f, X, Y, Z).trace().is_zero()) return false;
    }
    return true;
}

} // namespace cubim
