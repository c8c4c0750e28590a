#include "cubim/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cubim/json_io.hpp"
#include "cubim/oracle.hpp"

namespace cubim {

namespace {

constexpr int kOk = 0;
constexpr int kInconclusive = 2;
constexpr int kBadInput = 3;

struct Options {
    std::string poly_path;
    std::string target_path;
    std::string field_spec;
    std::string out_path;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool jordan_target = false;
    unsigned long q = 0;
    bool exhaustive = false;
    std::uint64_t samples = 0;
    unsigned threads = 0;
};

int emit(const Json& doc, const Options& opt, std::ostream& out, int code) {
    const std::string text = doc.dump(2) + "\n";
    if (opt.out_path.empty()) {
        out << text;
        return code;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) {
        out << Json{{"code", "io_error"},
                    {"message", "cannot open output file"},
                    {"location", opt.out_path}}
                   .dump(2)
            << "\n";
        return kBadInput;
    }
    f << text;
    return code;
}

Json load_document(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw JsonError("io_error", "cannot read input file", path);
    std::stringstream buf;
    buf << f.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw JsonError("bad_json", e.what(), path);
    }
}

std::uint64_t env_seed() {
    const char* env = std::getenv("CUBIM_SEED");
    if (env == nullptr) return 0;
    const std::string s(env);
    if (s.empty() || s.size() > 20 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw JsonError("bad_value", "seed must be a decimal unsigned integer", "CUBIM_SEED");
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
    if (errno != 0)
        throw JsonError("bad_value", "seed out of 64-bit range", "CUBIM_SEED");
    return v;
}

// --field is a cross-check against the field the input files carry.
void check_field_spec(const Options& opt, const FieldPtr& file_field) {
    if (opt.field_spec.empty()) return;
    const FieldPtr given = parse_field_spec(opt.field_spec);
    if (!given->same(*file_field))
        throw JsonError("bad_value",
                        "--field " + opt.field_spec + " does not match the input files (" +
                            file_field->label() + ")",
                        "--field");
}

// ---- classify ----

Json case_flags_json(const CaseFlags& c) {
    Json j{{"i", c.i}, {"ii", c.ii}, {"iii", c.iii}, {"iv", c.iv}};
    if (c.omega) j["omega"] = element_to_json(*c.omega);
    return j;
}

int cmd_classify(const Options& opt, std::ostream& out) {
    const Polynomial f = poly_from_json(load_document(opt.poly_path), opt.poly_path);
    check_field_spec(opt, f.field());
    const std::size_t n = static_cast<std::size_t>(opt.n);
    const ImageClassification c = classify(f, n);
    const CaseReport rep = case_analysis(f, n);
    Json cases;
    for (std::size_t r = 0; r < rep.rho.size(); ++r)
        cases[kRotationNames[r]] = case_flags_json(rep.rho[r]);
    const Json doc{{"verdict", verdict_name(c.verdict)},
                   {"regime", regime_name(c.regime)},
                   {"cases", std::move(cases)},
                   {"notes", c.notes}};
    return emit(doc, opt, out, c.verdict == Verdict::Undetermined ? kInconclusive : kOk);
}

// ---- solve ----

struct SolveOutcome {
    std::optional<WitnessTriple> witness;
    std::string code;
    std::string message;
    bool conclusive = false;
};

SolveOutcome solve_auto(const Polynomial& f, const Matrix& T, Rng& rng) {
    const FieldPtr& F = f.field();
    if (f.is_zero()) {
        if (T.is_zero()) {
            const Matrix z(F, T.rows(), T.cols());
            return {WitnessTriple{z, z, z, true, WitnessPath::LinearFallback}, "", "", true};
        }
        return {std::nullopt, "not_in_image", "the zero polynomial only reaches the zero matrix",
                true};
    }
    if (trace_obstructs(f, T))
        return {std::nullopt, "not_in_image",
                "every value of f has trace zero, but the target's trace is " + T.trace().str(),
                true};
    std::string trail;
    if (const auto pat = match_commutator_form(f); pat && !pat->lambda.is_one()) {
        try {
            return {solve_commutator_form(f, T, rng), "", "", true};
        } catch (const SolveError& e) {
            trail += std::string("commutator route (") + solve_error_name(e.kind()) +
                     "): " + e.what() + "; ";
        }
    }
    try {
        return {solve_general(f, T, F, rng), "", "", true};
    } catch (const SolveError& e) {
        trail += std::string("jordan route (") + solve_error_name(e.kind()) + "): " + e.what() +
                 "; ";
    }
    try {
        return {solve_linear_fallback(f, T, rng), "", "", true};
    } catch (const SolveError& e) {
        return {std::nullopt, "Exhausted",
                trail + "random fallback (" + solve_error_name(e.kind()) + "): " + e.what(),
                false};
    }
}

int cmd_solve(const Options& opt, std::ostream& out) {
    const Polynomial f = poly_from_json(load_document(opt.poly_path), opt.poly_path);
    Matrix T;
    if (opt.jordan_target) {
        const Json tj = load_document(opt.target_path);
        const JordanData jd = jordan_from_json(tj, opt.target_path);
        const FieldPtr TF =
            field_from_json(tj.at("field"), opt.target_path + "/field");
        T = jordan_matrix(jd, TF);
    } else {
        T = matrix_from_json(load_document(opt.target_path), opt.target_path);
        if (!T.is_square())
            throw JsonError("bad_value", "target matrix must be square", opt.target_path);
    }
    if (!f.field()->same(*T.field()))
        throw JsonError("bad_value",
                        "polynomial field " + f.field()->label() + " differs from target field " +
                            T.field()->label(),
                        opt.target_path + "/field");
    check_field_spec(opt, f.field());
    if (opt.n != 0 && opt.n != T.rows())
        throw JsonError("bad_value", "--n does not match the target size", "--n");

    Rng rng(opt.seed);
    const SolveOutcome r = solve_auto(f, T, rng);
    if (!r.witness) {
        const Json doc{{"code", r.code}, {"message", r.message}, {"conclusive", r.conclusive}};
        return emit(doc, opt, out, kInconclusive);
    }
    // re-verify at emission time; the solver has already checked this
    WitnessTriple w = *r.witness;
    w.verified = eval(f, w.X, w.Y, w.Z) == T;
    if (!w.verified) throw std::logic_error("emitted witness failed re-verification");
    return emit(witness_to_json(w), opt, out, kOk);
}

// ---- check-cond ----

int cmd_check_cond(const Options& opt, std::ostream& out) {
    if (opt.field_spec.empty())
        throw JsonError("missing_key", "check-cond requires --field", "--field");
    const FieldPtr F = parse_field_spec(opt.field_spec);
    const ConditionReport rep = check_root_condition(F, static_cast<unsigned>(opt.n));
    Json doc{{"holds", rep.holds}};
    if (!rep.holds) {
        Json w = Json::array();
        for (const FieldElement& x : rep.violation) w.push_back(x.str());
        doc["witness"] = std::move(w);
    }
    return emit(doc, opt, out, kOk);
}

// ---- oracle ----

// q = p^k for the supported extension degrees; anything else is refused.
std::pair<unsigned long, unsigned> factor_prime_power(unsigned long q) {
    if (q < 2) throw JsonError("bad_value", "q must be a prime power >= 2", "--q");
    unsigned long p = 0;
    for (unsigned long c = 2; c * c <= q; ++c)
        if (q % c == 0) {
            p = c;
            break;
        }
    if (p == 0) return {q, 1}; // q itself is prime
    unsigned long rest = q;
    unsigned k = 0;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1 || k > 4)
        throw JsonError("bad_value", "q must be p^k with k in [1, 4]", "--q");
    return {p, k};
}

int cmd_oracle(const Options& opt, std::ostream& out) {
    Polynomial f = poly_from_json(load_document(opt.poly_path), opt.poly_path);
    const auto [p, k] = factor_prime_power(opt.q);
    if (f.field()->kind() == Field::Kind::Rationals) {
        // rational coefficient files reduce mod p for convenience
        const FieldPtr G = Field::finite_field(p, k);
        Polynomial g(G);
        for (int w = 0; w < kWordCount; ++w)
            g.coeff(static_cast<Word>(w)) = embed(f.coeff(static_cast<Word>(w)), G);
        f = g;
    } else if (f.field()->kind() != Field::Kind::FiniteField ||
               f.field()->order() != opt.q) {
        throw JsonError("bad_value",
                        "polynomial field " + f.field()->label() + " does not match --q " +
                            std::to_string(opt.q),
                        "--q");
    }
    check_field_spec(opt, f.field());

    const EnumerationMode mode =
        opt.samples > 0 ? EnumerationMode::sampled(opt.samples) : EnumerationMode::exhaustive();
    Rng rng(opt.seed);
    const ImageSet S =
        enumerate_image(f, static_cast<std::size_t>(opt.n), opt.q, mode, rng, opt.threads);

    Json doc{{"mode", mode.kind == EnumerationMode::Kind::Exhaustive ? "exhaustive" : "sampled"},
             {"n", opt.n},
             {"q", opt.q},
             {"size", S.size()}};
    if (mode.kind == EnumerationMode::Kind::Exhaustive) {
        doc["is_subspace"] = is_linear_subspace(S);
        const CrossCheckReport rep = cross_check(S, classify(f, static_cast<std::size_t>(opt.n)));
        Json cmp{{"verdict", verdict_name(rep.verdict)},
                 {"within_prediction", rep.within_prediction},
                 {"matches_prediction", rep.matches_prediction},
                 {"caveat", rep.caveat}};
        if (rep.predicted_size) cmp["predicted_size"] = *rep.predicted_size;
        doc["verdict_comparison"] = std::move(cmp);
    }
    return emit(doc, opt, out, kOk);
}

// ---- jordan ----

int cmd_jordan(const Options& opt, std::ostream& out) {
    const Matrix T = matrix_from_json(load_document(opt.target_path), opt.target_path);
    if (!T.is_square())
        throw JsonError("bad_value", "target matrix must be square", opt.target_path);
    check_field_spec(opt, T.field());
    const std::optional<JordanData> jd = jordan_form(T);
    if (!jd) {
        const Json doc{
            {"code", "TargetUnsplittable"},
            {"message",
             "the characteristic polynomial does not split over the base field within the "
             "implemented root search"}};
        return emit(doc, opt, out, kInconclusive);
    }
    Json doc = jordan_to_json(*jd, T.field());
    doc["class"] =
        jd->classify_target() == JordanData::TargetClass::InJn ? "InJn" : "SingleTwoBlock";
    bool verified = jordan_matrix(*jd, T.field()) == T;
    if (jd->basis) {
        doc["basis"] = matrix_to_json(*jd->basis);
        verified = conjugate(*jd->basis, jordan_matrix(*jd, T.field())) == T;
    }
    if (!verified) throw std::logic_error("emitted jordan form failed re-verification");
    doc["verified"] = verified;
    return emit(doc, opt, out, kOk);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"image classification and exact preimage witnesses for multilinear cubics"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_path, "write the JSON document to this file");
    };
    const auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "RNG seed (default: CUBIM_SEED or 0)")
            ->check(CLI::NonNegativeNumber);
    };
    const auto add_field = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--field", opt.field_spec, "field spec: Q | cyc:N | gf:P | gf:P:K");
        if (required) o->required();
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "decide the image type of f in M_n");
    classify_cmd->add_option("--poly", opt.poly_path, "polynomial JSON file")->required();
    classify_cmd->add_option("--n", opt.n, "matrix size")->required()->check(CLI::PositiveNumber);
    add_field(classify_cmd, false);
    add_common(classify_cmd);

    CLI::App* solve_cmd = app.add_subcommand("solve", "construct a verified preimage witness");
    solve_cmd->add_option("--poly", opt.poly_path, "polynomial JSON file")->required();
    solve_cmd->add_option("--target", opt.target_path, "target JSON file")->required();
    solve_cmd->add_flag("--jordan", opt.jordan_target,
                        "read the target as bidiagonal data {field,n,diag,super}");
    solve_cmd->add_option("--n", opt.n, "expected target size (cross-check)")
        ->check(CLI::PositiveNumber);
    add_field(solve_cmd, false);
    add_seed(solve_cmd);
    add_common(solve_cmd);

    CLI::App* cond_cmd = app.add_subcommand("check-cond", "test the root-avoidance condition");
    cond_cmd->add_option("--n", opt.n, "matrix size")->required()->check(CLI::PositiveNumber);
    add_field(cond_cmd, true);
    add_common(cond_cmd);

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "enumerate the image of f over a small finite field");
    oracle_cmd->add_option("--poly", opt.poly_path, "polynomial JSON file")->required();
    oracle_cmd->add_option("--n", opt.n, "matrix size")->required()->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--q", opt.q, "field order (prime power)")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* exh = oracle_cmd->add_flag("--exhaustive", opt.exhaustive,
                                     "full sweep of all argument triples (default)");
    auto* smp = oracle_cmd->add_option("--samples", opt.samples, "sampled mode with this many draws")
                    ->check(CLI::PositiveNumber);
    exh->excludes(smp);
    smp->excludes(exh);
    oracle_cmd->add_option("--threads", opt.threads, "worker count (0 = hardware)");
    add_seed(oracle_cmd);
    add_common(oracle_cmd);

    CLI::App* jordan_cmd =
        app.add_subcommand("jordan", "bidiagonal normal form of a square matrix");
    jordan_cmd->add_option("--target", opt.target_path, "matrix JSON file")->required();
    add_field(jordan_cmd, false);
    add_common(jordan_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        const Json doc{{"code", "bad_usage"}, {"message", e.what()}, {"location", "argv"}};
        out << doc.dump(2) << "\n";
        return kBadInput;
    }

    try {
        if (solve_cmd->parsed() || oracle_cmd->parsed()) {
            const auto* seed_opt =
                solve_cmd->parsed() ? solve_cmd->get_option("--seed") : oracle_cmd->get_option("--seed");
            if (seed_opt->count() == 0) opt.seed = env_seed();
        }
        if (classify_cmd->parsed()) return cmd_classify(opt, out);
        if (solve_cmd->parsed()) return cmd_solve(opt, out);
        if (cond_cmd->parsed()) return cmd_check_cond(opt, out);
        if (oracle_cmd->parsed()) return cmd_oracle(opt, out);
        if (jordan_cmd->parsed()) return cmd_jordan(opt, out);
        throw std::logic_error("no subcommand dispatched");
    } catch (const JsonError& e) {
        return emit(e.document(), opt, out, kBadInput);
    } catch (const OracleError& e) {
        const char* code = dynamic_cast<const TooLarge*>(&e)      ? "too_large"
                           : dynamic_cast<const ModeMismatch*>(&e) ? "mode_mismatch"
                                                                   : "oracle_error";
        return emit(Json{{"code", code}, {"message", e.what()}, {"location", "--q"}}, opt, out,
                    kBadInput);
    } catch (const std::logic_error&) {
        throw; // programming error; let it crash loudly
    } catch (const std::exception& e) {
        return emit(Json{{"code", "bad_input"}, {"message", e.what()}, {"location", "input"}}, opt,
                    out, kBadInput);
    }
}

} // namespace cubim
