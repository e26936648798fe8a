#pragma once

#include "calculus.hpp"
#include "dsl.hpp"
#include "generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Seeded property suites for the algebra and calculus laws. Each trial draws
// its inputs from gen::trial_seed(seed, index), so any failure replays alone.

namespace mvcalc::laws {

struct CheckConfig {
    int dim = 3;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    double atol = 1e-9;         // algebraic identities, relative to 1 + |lhs|
    double rtol = 1e-6;         // finite-difference oracle, relative to 1 + |lhs|
    double limit_tol = 1e-6;    // probe estimate vs combination of estimates
    double remainder_tol = 1e-6;
    int remainder_k = 20;       // xi is sampled at lambda0 +- 2^-k
    int max_depth = 6;
};

/// One side-by-side comparison inside a trial. Scalar comparisons store their
/// two sides as grade-0 multivectors.
struct Comparison {
    std::string label;
    Multivector lhs;
    Multivector rhs;
    double gap = 0.0;
    double tolerance = 0.0;
    bool passed() const { return gap <= tolerance; }
};

struct TrialRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string expression;  // inputs, in the expression language
    double lambda = 0.0;
    std::vector<Comparison> comparisons;
    std::string error;       // set when the trial could not be evaluated

    bool failed() const {
        return !error.empty() ||
               std::any_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return !c.passed(); });
    }
    double max_gap() const {
        double g = -std::numeric_limits<double>::infinity();
        for (const auto& c : comparisons) g = std::max(g, c.gap);
        return g;
    }
};

struct CheckSummary {
    std::string law;
    CheckConfig config;
    std::size_t trials_run = 0;
    std::vector<TrialRecord> failures;
    double max_gap = -std::numeric_limits<double>::infinity();
};

namespace detail {

inline double relative_gap(const Multivector& lhs, const Multivector& rhs) {
    return distance(lhs, rhs) / (1.0 + norm(lhs));
}

inline Comparison compare_rel(std::string label, Multivector lhs, Multivector rhs, double tol) {
    double g = relative_gap(lhs, rhs);
    return {std::move(label), std::move(lhs), std::move(rhs), g, tol};
}

inline Comparison compare_abs(std::string label, Multivector lhs, Multivector rhs, double tol) {
    double g = distance(lhs, rhs);
    return {std::move(label), std::move(lhs), std::move(rhs), g, tol};
}

inline Multivector scalar_mv(int dim, double v) { return Multivector::scalar(dim, v); }

inline gen::CurveShape shape(const CheckConfig& cfg, int depth) {
    gen::CurveShape s;
    s.max_depth = std::max(1, depth);
    return s;
}

inline std::string named(const char* name, const Curve& c) { return std::string(name) + " = " + dsl::pretty_print(c); }

inline Star parse_star(const std::string& name) {
    for (Star s : kAllStars)
        if (name == star_name(s)) return s;
    throw std::invalid_argument("unknown product '" + name + "' (expected wedge, scalar, lcontr, rcontr, geometric)");
}

// Symbolic derivative of a curve, evaluated.
inline Multivector sym_at(const Curve& c, double lambda) { return evaluate(derivative_symbolic(c), lambda); }

// --- derivative rules ------------------------------------------------------

inline TrialRecord leibniz(Star star, const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    Curve x = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    Curve y = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    rec.lambda = gen::lambda(rng);
    Curve p = Curve::product(star, x, y);
    rec.expression = named("X", x) + "; " + named("Y", y) + "; star = " + star_name(star);

    Multivector lhs = sym_at(p, rec.lambda);
    Multivector rhs = add(apply_star(star, sym_at(x, rec.lambda), evaluate(y, rec.lambda)),
                          apply_star(star, evaluate(x, rec.lambda), sym_at(y, rec.lambda)));
    rec.comparisons.push_back(compare_rel("(X*Y)' vs X'*Y + X*Y'", lhs, rhs, cfg.atol));
    rec.comparisons.push_back(compare_rel("(X*Y)' vs finite difference", lhs, derivative_fd(p, rec.lambda), cfg.rtol));
    return rec;
}

inline TrialRecord sum_rule(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    // Trial 0 is the monomial pair lambda e1, lambda^2 e2.
    const bool monomials = rec.index == 0 && cfg.dim >= 2;
    auto t = ScalarFn::variable();
    Curve x = monomials ? Curve::scalar_times_blade(cfg.dim, t, basis_vector(1))
                        : gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    Curve y = monomials ? Curve::scalar_times_blade(cfg.dim, ScalarFn::power(t, 2), basis_vector(2))
                        : gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    rec.lambda = gen::lambda(rng);
    Curve s = Curve::sum(x, y);
    rec.expression = named("X", x) + "; " + named("Y", y);

    Multivector lhs = sym_at(s, rec.lambda);
    rec.comparisons.push_back(compare_rel("(X+Y)' vs X'+Y'", lhs, add(sym_at(x, rec.lambda), sym_at(y, rec.lambda)), cfg.atol));
    rec.comparisons.push_back(compare_rel("(X+Y)' vs finite difference", lhs, derivative_fd(s, rec.lambda), cfg.rtol));
    return rec;
}

inline TrialRecord chain_rule(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    Curve x = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    ScalarFn phi = gen::scalar(rng, 3);
    rec.lambda = gen::lambda(rng);
    Curve c = Curve::compose(x, phi);
    rec.expression = named("X", x) + "; phi = " + to_string(phi);

    Multivector lhs = sym_at(c, rec.lambda);
    double dphi = evaluate(differentiate(phi), rec.lambda);
    Multivector rhs = scale(dphi, sym_at(x, evaluate(phi, rec.lambda)));
    rec.comparisons.push_back(compare_rel("(X o phi)' vs phi' X'(phi)", lhs, rhs, cfg.atol));
    rec.comparisons.push_back(compare_rel("(X o phi)' vs finite difference", lhs, derivative_fd(c, rec.lambda), cfg.rtol));
    return rec;
}

// --- norm inequalities -----------------------------------------------------

inline std::pair<Multivector, Multivector> random_pair(const CheckConfig& cfg, gen::Rng& rng) {
    Multivector x = gen::multivector(rng, cfg.dim);
    // Every fifth pair is parallel, where both inequalities are tight.
    Multivector y = rng.chance(0.2) ? scale(gen::coefficient(rng), x) : gen::multivector(rng, cfg.dim);
    return {x, y};
}

inline std::string pair_text(const Multivector& x, const Multivector& y) {
    return named("X", Curve::constant(x)) + "; " + named("Y", Curve::constant(y));
}

inline TrialRecord cauchy_schwarz(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    auto [x, y] = random_pair(cfg, rng);
    rec.expression = pair_text(x, y);
    double lhs = std::abs(scalar_product(x, y));
    double rhs = norm(x) * norm(y);
    rec.comparisons.push_back(
        {"|X.Y| <= |X||Y|", scalar_mv(cfg.dim, lhs), scalar_mv(cfg.dim, rhs), lhs - rhs, cfg.atol});
    return rec;
}

inline TrialRecord triangle(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    auto [x, y] = random_pair(cfg, rng);
    rec.expression = pair_text(x, y);
    double lhs = norm(add(x, y));
    double rhs = norm(x) + norm(y);
    rec.comparisons.push_back(
        {"|X+Y| <= |X|+|Y|", scalar_mv(cfg.dim, lhs), scalar_mv(cfg.dim, rhs), lhs - rhs, cfg.atol});
    return rec;
}

// --- limits, remainder, continuity ----------------------------------------

// Verdict agrees with the per-coefficient flags; a smooth curve must settle.
inline void probe_consistency(TrialRecord& rec, const std::string& what, const ProbeReport& r) {
    int dim = r.estimate.dim();
    bool whole = r.verdict == Verdict::limit_exists;
    bool parts = r.coefficientwise_limit_exists();
    rec.comparisons.push_back({what + ": verdict vs coefficientwise flags", scalar_mv(dim, whole ? 1.0 : 0.0),
                               scalar_mv(dim, parts ? 1.0 : 0.0), whole == parts ? 0.0 : 1.0, 0.0});
    rec.comparisons.push_back({what + ": limit exists", scalar_mv(dim, whole ? 1.0 : 0.0), scalar_mv(dim, 1.0),
                               whole ? 0.0 : 1.0, 0.0});
}

inline TrialRecord limit_laws(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    Curve x = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    Curve y = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth - 1));
    ScalarFn phi = gen::scalar(rng, 3);
    Star star = kAllStars[rec.index % 5];
    rec.lambda = gen::lambda(rng);
    rec.expression = named("X", x) + "; " + named("Y", y) + "; phi = " + to_string(phi) + "; star = " + star_name(star);

    const double l0 = rec.lambda;
    Curve phi_curve = Curve::scalar_times_blade(cfg.dim, phi, BladeMask{});
    ProbeReport px = limit_probe(x, l0);
    ProbeReport py = limit_probe(y, l0);
    ProbeReport pphi = limit_probe(phi_curve, l0);
    ProbeReport psum = limit_probe(Curve::sum(x, y), l0);
    ProbeReport pscaled = limit_probe(Curve::scalar_scale(phi, x), l0);
    ProbeReport pprod = limit_probe(Curve::product(star, x, y), l0);

    for (auto [name, r] : {std::pair<const char*, const ProbeReport*>{"X", &px}, {"Y", &py}, {"phi", &pphi},
                           {"X+Y", &psum}, {"phi X", &pscaled}, {"X*Y", &pprod}})
        probe_consistency(rec, name, *r);

    rec.comparisons.push_back(
        compare_abs("lim(X+Y) vs lim X + lim Y", psum.estimate, add(px.estimate, py.estimate), cfg.limit_tol));
    rec.comparisons.push_back(compare_abs("lim(phi X) vs lim phi lim X", pscaled.estimate,
                                          scale(pphi.estimate[BladeMask{}], px.estimate), cfg.limit_tol));
    rec.comparisons.push_back(compare_abs("lim(X*Y) vs lim X * lim Y", pprod.estimate,
                                          apply_star(star, px.estimate, py.estimate), cfg.limit_tol));
    return rec;
}

inline TrialRecord remainder(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    Curve x = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth));
    rec.lambda = gen::lambda(rng);
    rec.expression = named("X", x);
    const double l0 = rec.lambda;
    Multivector d = derivative_ad(x, l0);

    Multivector at_point = remainder_xi(x, l0, l0, d);
    rec.comparisons.push_back(compare_abs("xi(l0) = 0", at_point, Multivector(cfg.dim), 0.0));
    double h = std::ldexp(1.0, -cfg.remainder_k);
    Multivector zero(cfg.dim);
    rec.comparisons.push_back(compare_abs("|xi(l0 + 2^-k)|", remainder_xi(x, l0, l0 + h, d), zero, cfg.remainder_tol));
    rec.comparisons.push_back(compare_abs("|xi(l0 - 2^-k)|", remainder_xi(x, l0, l0 - h, d), zero, cfg.remainder_tol));
    return rec;
}

inline TrialRecord continuity(const CheckConfig& cfg, gen::Rng& rng, TrialRecord rec) {
    Curve x = gen::curve(rng, cfg.dim, shape(cfg, cfg.max_depth));
    rec.lambda = gen::lambda(rng);
    rec.expression = named("X", x);
    derivative_ad(x, rec.lambda);  // derivable here; a domain error aborts the trial
    ProbeReport r = continuity_check(x, rec.lambda);
    Multivector value = r.value_at_point.value_or(Multivector(cfg.dim));
    double gap = r.continuous.value_or(false) ? distance(r.estimate, value) : std::numeric_limits<double>::infinity();
    rec.comparisons.push_back({"derivable => continuous", r.estimate, value, gap, ProbeOptions{}.match_tol});
    return rec;
}

} // namespace detail

using LawFn = std::function<TrialRecord(const CheckConfig&, gen::Rng&, TrialRecord)>;

/// Resolves a law name: leibniz:<star>, sum-rule, chain-rule, cauchy-schwarz,
/// triangle, limit-laws, remainder, continuity.
inline LawFn find_law(const std::string& law) {
    if (law.rfind("leibniz:", 0) == 0) {
        Star s = detail::parse_star(law.substr(8));
        return [s](const CheckConfig& c, gen::Rng& r, TrialRecord t) { return detail::leibniz(s, c, r, std::move(t)); };
    }
    static const std::map<std::string, LawFn> table = {
        {"sum-rule", detail::sum_rule},     {"chain-rule", detail::chain_rule}, {"cauchy-schwarz", detail::cauchy_schwarz},
        {"triangle", detail::triangle},     {"limit-laws", detail::limit_laws}, {"remainder", detail::remainder},
        {"continuity", detail::continuity},
    };
    auto it = table.find(law);
    if (it == table.end()) throw std::invalid_argument("unknown law '" + law + "'");
    return it->second;
}

inline std::vector<std::string> law_names() {
    std::vector<std::string> out;
    for (Star s : kAllStars) out.push_back(std::string("leibniz:") + star_name(s));
    for (const char* n : {"sum-rule", "chain-rule", "cauchy-schwarz", "triangle", "limit-laws", "remainder", "continuity"})
        out.push_back(n);
    return out;
}

/// Runs a single trial; identical (law, config, index) gives identical output.
inline TrialRecord run_trial(const std::string& law, const CheckConfig& cfg, std::size_t index) {
    LawFn fn = find_law(law);
    TrialRecord rec;
    rec.index = index;
    rec.seed = gen::trial_seed(cfg.seed, index);
    gen::Rng rng(rec.seed);
    try {
        return fn(cfg, rng, rec);
    } catch (const std::exception& e) {
        rec.error = e.what();
        return rec;
    }
}

inline CheckSummary run_check(const std::string& law, const CheckConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (!(cfg.atol > 0.0) || !(cfg.rtol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!valid_dim(cfg.dim)) throw std::invalid_argument("dimension must be in 1..12");
    find_law(law);

    CheckSummary summary;
    summary.law = law;
    summary.config = cfg;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        TrialRecord rec = run_trial(law, cfg, i);
        ++summary.trials_run;
        summary.max_gap = std::max(summary.max_gap, rec.max_gap());
        if (rec.failed()) summary.failures.push_back(std::move(rec));
    }
    return summary;
}

} // namespace mvcalc::laws
