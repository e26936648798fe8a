#pragma once

#include "curve.hpp"
#include "dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvcalc {

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace detail {
inline Curve sum_or_single(std::optional<Curve> a, std::optional<Curve> b, int dim) {
    if (a && b) return Curve::sum(*a, *b);
    if (a) return *a;
    if (b) return *b;
    return Curve::zero(dim);
}

inline std::optional<Curve> nonzero(Curve c) {
    if (c.is_zero_constant()) return std::nullopt;
    return c;
}
} // namespace detail

/// Symbolic derivative. Sums differentiate termwise, every product keeps its
/// operand order (X' * Y + X * Y'), and X(phi(t)) becomes phi'(t) X'(phi(t)).
/// Branches whose derivative is identically zero are pruned.
inline Curve derivative_symbolic(const Curve& e) {
    using K = Curve::Kind;
    const auto& n = e.node();
    const int dim = e.dim();
    switch (n.kind) {
    case K::constant: return Curve::zero(dim);
    case K::scalar_times_blade: {
        ScalarFn d = differentiate(n.scalar);
        if (d.is_constant(0.0)) return Curve::zero(dim);
        return Curve::scalar_times_blade(dim, d, n.blade);
    }
    case K::sum:
        return detail::sum_or_single(detail::nonzero(derivative_symbolic(e.lhs())),
                                     detail::nonzero(derivative_symbolic(e.rhs())), dim);
    case K::product: {
        auto da = detail::nonzero(derivative_symbolic(e.lhs()));
        auto db = detail::nonzero(derivative_symbolic(e.rhs()));
        std::optional<Curve> left, right;
        if (da) left = Curve::product(n.star, *da, e.rhs());
        if (db) right = Curve::product(n.star, e.lhs(), *db);
        return detail::sum_or_single(left, right, dim);
    }
    case K::scalar_scale: {
        ScalarFn ds = differentiate(n.scalar);
        auto dx = detail::nonzero(derivative_symbolic(e.lhs()));
        std::optional<Curve> left, right;
        if (!ds.is_constant(0.0)) left = Curve::scalar_scale(ds, e.lhs());
        if (dx) right = Curve::scalar_scale(n.scalar, *dx);
        return detail::sum_or_single(left, right, dim);
    }
    case K::compose: {
        ScalarFn dphi = differentiate(n.scalar);
        auto dx = detail::nonzero(derivative_symbolic(e.lhs()));
        if (dphi.is_constant(0.0) || !dx) return Curve::zero(dim);
        return Curve::scalar_scale(dphi, Curve::compose(*dx, n.scalar));
    }
    }
    throw std::logic_error("unknown curve node");
}

/// Forward-mode derivative: evaluates e at the dual number (lambda, 1).
inline Multivector derivative_ad(const Curve& e, double lambda) {
    BasicMultivector<Dual> v = evaluate(e, variable(lambda));
    return v.map([](const Dual& d) { return d.deriv; });
}

/// Central-difference step max(1, |lambda|) * eps^(1/3).
inline double default_fd_step(double lambda) {
    return std::max(1.0, std::abs(lambda)) * std::cbrt(std::numeric_limits<double>::epsilon());
}

/// (X(lambda + h) - X(lambda - h)) / 2h.
inline Multivector derivative_fd(const Curve& e, double lambda, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    Multivector up = evaluate(e, lambda + h);
    Multivector down = evaluate(e, lambda - h);
    return scale(1.0 / (2.0 * h), subtract(up, down));
}

inline Multivector derivative_fd(const Curve& e, double lambda) { return derivative_fd(e, lambda, default_fd_step(lambda)); }

/// First-order remainder xi_{lambda0}(lambda): the difference quotient minus
/// the derivative, and exactly zero at lambda0.
inline Multivector remainder_xi(const Curve& e, double lambda0, double lambda, const Multivector& derivative_at_lambda0) {
    if (lambda == lambda0) return Multivector(e.dim());
    Multivector quotient = scale(1.0 / (lambda - lambda0), subtract(evaluate(e, lambda), evaluate(e, lambda0)));
    return subtract(quotient, derivative_at_lambda0);
}

inline Multivector remainder_xi(const Curve& e, double lambda0, double lambda) {
    if (lambda == lambda0) return Multivector(e.dim());
    return remainder_xi(e, lambda0, lambda, derivative_ad(e, lambda0));
}

// ---------------------------------------------------------------------------
// Numerical limit probes
// ---------------------------------------------------------------------------

/// Probe outcome. These are numerical evidence only; sampling cannot decide
/// an epsilon-delta statement.
enum class Verdict { limit_exists, diverges, inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::limit_exists: return "limit-exists";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ProbeOptions {
    double tol = 1e-7;        // successive-estimate gap that counts as settled
    double match_tol = 1e-6;  // limit vs value for continuity
    double side_decay = 0.75; // one-sided disagreement must shrink at least this fast
};

/// delta_k = delta0 * 2^-k, k = 0..steps-1.
inline std::vector<double> geometric_schedule(double delta0 = 0.5, int steps = 21) {
    std::vector<double> out;
    out.reserve(steps);
    for (int k = 0; k < steps; ++k) out.push_back(std::ldexp(delta0, -k));
    return out;
}

struct ProbeStep {
    int k = 0;
    double delta = 0.0;
    Multivector estimate;       // mean of the two one-sided samples
    std::optional<double> gap;  // norm distance to the previous estimate
    double side_gap = 0.0;      // ||X(l0 + d) - X(l0 - d)||
};

/// Scalar limit evidence for one blade coefficient.
struct CoefficientTrace {
    BladeMask blade;
    std::vector<double> estimates;
    std::vector<double> side_gaps;
    bool converged = false;
    bool sides_agree = false;
    bool limit_exists() const { return converged && sides_agree; }
};

struct ProbeReport {
    double point = 0.0;
    Multivector estimate;
    std::vector<ProbeStep> trace;
    std::vector<CoefficientTrace> coefficients;
    bool converged = false;
    bool sides_agree = false;
    std::optional<int> converged_at;  // first k after which every gap stays below tol
    int skipped_steps = 0;            // steps with a side outside the domain
    bool nonfinite = false;
    Verdict verdict = Verdict::inconclusive;

    // Filled by continuity_check.
    std::optional<Multivector> value_at_point;
    std::optional<bool> continuous;

    /// Conjunction of the per-coefficient scalar limit flags.
    bool coefficientwise_limit_exists() const {
        return std::all_of(coefficients.begin(), coefficients.end(),
                           [](const CoefficientTrace& c) { return c.limit_exists(); });
    }
};

namespace detail {
inline bool all_finite(const Multivector& m) {
    return std::all_of(m.terms().begin(), m.terms().end(), [](const auto& t) { return std::isfinite(t.coeff); });
}

// The last two successive gaps are below tol.
inline bool settled(const std::vector<double>& values, double tol) {
    if (values.size() < 3) return false;
    std::size_t n = values.size();
    return std::abs(values[n - 1] - values[n - 2]) < tol && std::abs(values[n - 2] - values[n - 3]) < tol;
}

// One-sided disagreement is negligible or shrinking on each of the last two steps.
inline bool sides_vanish(const std::vector<double>& side, double tol, double decay) {
    if (side.size() < 3) return false;
    auto ok = [&](std::size_t i) { return side[i] <= tol || side[i] <= decay * side[i - 1]; };
    std::size_t n = side.size();
    return ok(n - 1) && ok(n - 2);
}
} // namespace detail

/// Two-sided probe of lim_{lambda -> lambda0} X(lambda) along a strictly
/// decreasing delta schedule. Sampling stops once two successive estimate gaps
/// fall below tol. Steps where either side leaves the domain are skipped.
inline ProbeReport limit_probe(const Curve& e, double lambda0, const std::vector<double>& schedule,
                               const ProbeOptions& opts = {}) {
    if (schedule.empty()) throw std::invalid_argument("limit schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0.0)) throw std::invalid_argument("limit schedule must be positive");
        if (i > 0 && !(schedule[i] < schedule[i - 1])) throw std::invalid_argument("limit schedule must be strictly decreasing");
    }

    ProbeReport report;
    report.point = lambda0;
    report.estimate = Multivector(e.dim());

    std::vector<Multivector> sides;  // X(l0 + d) - X(l0 - d), for coefficient traces
    std::vector<double> gaps_norm;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const double delta = schedule[k];
        Multivector up(e.dim()), down(e.dim());
        try {
            up = evaluate(e, lambda0 + delta);
            down = evaluate(e, lambda0 - delta);
        } catch (const DomainError&) {
            ++report.skipped_steps;
            continue;
        }
        if (!detail::all_finite(up) || !detail::all_finite(down)) {
            report.nonfinite = true;
            break;
        }
        ProbeStep step;
        step.k = static_cast<int>(k);
        step.delta = delta;
        step.estimate = scale(0.5, add(up, down));
        sides.push_back(subtract(up, down));
        step.side_gap = norm(sides.back());
        if (!report.trace.empty()) step.gap = distance(step.estimate, report.trace.back().estimate);
        report.trace.push_back(std::move(step));

        const auto& tr = report.trace;
        if (tr.size() >= 3 && *tr[tr.size() - 1].gap < opts.tol && *tr[tr.size() - 2].gap < opts.tol) {
            report.converged = true;
            break;
        }
    }

    if (!report.trace.empty()) report.estimate = report.trace.back().estimate;

    if (report.converged) {
        std::size_t first = report.trace.size() - 1;
        while (first > 0 && *report.trace[first].gap < opts.tol) --first;
        report.converged_at = report.trace[first].k;
    }

    std::vector<double> side_norms;
    for (const auto& s : report.trace) side_norms.push_back(s.side_gap);
    report.sides_agree = detail::sides_vanish(side_norms, opts.tol, opts.side_decay);

    // Per-coefficient scalar traces over every blade seen anywhere.
    std::vector<BladeMask> blades;
    for (std::size_t i = 0; i < report.trace.size(); ++i) {
        for (const auto& t : report.trace[i].estimate.terms()) blades.push_back(t.blade);
        for (const auto& t : sides[i].terms()) blades.push_back(t.blade);
    }
    std::sort(blades.begin(), blades.end());
    blades.erase(std::unique(blades.begin(), blades.end()), blades.end());
    for (BladeMask b : blades) {
        CoefficientTrace c;
        c.blade = b;
        for (std::size_t i = 0; i < report.trace.size(); ++i) {
            c.estimates.push_back(report.trace[i].estimate[b]);
            c.side_gaps.push_back(std::abs(sides[i][b]));
        }
        c.converged = detail::settled(c.estimates, opts.tol);
        c.sides_agree = detail::sides_vanish(c.side_gaps, opts.tol, opts.side_decay);
        report.coefficients.push_back(std::move(c));
    }

    if (report.nonfinite)
        report.verdict = Verdict::diverges;
    else if (report.trace.size() < 3)
        report.verdict = Verdict::inconclusive;
    else
        report.verdict = (report.converged && report.sides_agree) ? Verdict::limit_exists : Verdict::diverges;
    return report;
}

inline ProbeReport limit_probe(const Curve& e, double lambda0, const ProbeOptions& opts = {}) {
    return limit_probe(e, lambda0, geometric_schedule(), opts);
}

/// Probes the limit at lambda0 and compares it with X(lambda0).
inline ProbeReport continuity_check(const Curve& e, double lambda0, const std::vector<double>& schedule,
                                    const ProbeOptions& opts = {}) {
    ProbeReport report = limit_probe(e, lambda0, schedule, opts);
    try {
        report.value_at_point = evaluate(e, lambda0);
    } catch (const DomainError&) {
        report.continuous = false;
        return report;
    }
    if (report.verdict == Verdict::inconclusive) return report;
    report.continuous =
        report.verdict == Verdict::limit_exists && distance(report.estimate, *report.value_at_point) < opts.match_tol;
    return report;
}

inline ProbeReport continuity_check(const Curve& e, double lambda0, const ProbeOptions& opts = {}) {
    return continuity_check(e, lambda0, geometric_schedule(), opts);
}

} // namespace mvcalc
