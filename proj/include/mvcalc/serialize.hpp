#pragma once

#include "calculus.hpp"
#include "laws.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace mvcalc::io {

using Json = nlohmann::ordered_json;

inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

/// {"1": c0, "e1": c1, "e12": c12, ...} in ascending mask order.
inline Json to_json(const Multivector& m) {
    Json out = Json::object();
    for (const auto& t : m.terms()) out[blade_label(t.blade)] = number(t.coeff);
    return out;
}

inline Multivector multivector_from_json(const Json& j, int dim) {
    Multivector::Accumulator acc(dim);
    for (const auto& [label, value] : j.items()) {
        auto parsed = parse_blade_label(label, dim);
        if (parsed.error != LabelError::none) throw std::invalid_argument("bad blade label '" + label + "'");
        acc.add(parsed.mask, value.get<double>());
    }
    return Multivector::from_accumulator(acc);
}

inline Json to_json(const ProbeReport& r) {
    Json out;
    out["point"] = number(r.point);
    out["estimate"] = to_json(r.estimate);
    out["verdict"] = verdict_name(r.verdict);
    out["numerical_evidence_only"] = true;
    out["converged"] = r.converged;
    out["converged_at"] = r.converged_at ? Json(*r.converged_at) : Json(nullptr);
    out["sides_agree"] = r.sides_agree;
    out["skipped_steps"] = r.skipped_steps;
    out["nonfinite"] = r.nonfinite;
    out["coefficientwise_limit_exists"] = r.coefficientwise_limit_exists();
    Json trace = Json::array();
    for (const auto& s : r.trace)
        trace.push_back({{"k", s.k},
                         {"delta", number(s.delta)},
                         {"estimate", to_json(s.estimate)},
                         {"gap", s.gap ? number(*s.gap) : Json(nullptr)},
                         {"side_gap", number(s.side_gap)}});
    out["trace"] = std::move(trace);
    Json coeffs = Json::array();
    for (const auto& c : r.coefficients)
        coeffs.push_back({{"blade", blade_label(c.blade)},
                          {"converged", c.converged},
                          {"sides_agree", c.sides_agree},
                          {"limit_exists", c.limit_exists()}});
    out["coefficients"] = std::move(coeffs);
    if (r.value_at_point) out["value_at_point"] = to_json(*r.value_at_point);
    if (r.continuous) out["continuous"] = *r.continuous;
    return out;
}

/// CSV rows k, delta, blade, coeff, gap; one row per nonzero estimate coefficient.
inline std::string probe_csv(const ProbeReport& r) {
    std::ostringstream out;
    out << "k,delta,blade,coeff,gap\n";
    for (const auto& s : r.trace) {
        std::string gap = s.gap ? format_number(*s.gap) : "";
        if (s.estimate.is_zero()) out << s.k << ',' << format_number(s.delta) << ",1,0," << gap << '\n';
        for (const auto& t : s.estimate.terms())
            out << s.k << ',' << format_number(s.delta) << ',' << blade_label(t.blade) << ',' << format_number(t.coeff)
                << ',' << gap << '\n';
    }
    return out.str();
}

inline Json to_json(const laws::Comparison& c) {
    return {{"label", c.label}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"gap", number(c.gap)},
            {"tolerance", number(c.tolerance)}, {"passed", c.passed()}};
}

inline Json to_json(const laws::TrialRecord& t) {
    Json cmp = Json::array();
    for (const auto& c : t.comparisons) cmp.push_back(to_json(c));
    Json out{{"trial", t.index}, {"trial_seed", t.seed}, {"expression", t.expression}, {"lambda", number(t.lambda)},
             {"comparisons", std::move(cmp)}};
    if (!t.error.empty()) out["error"] = t.error;
    return out;
}

inline Json to_json(const laws::CheckSummary& s) {
    Json failures = Json::array();
    for (const auto& f : s.failures) failures.push_back(to_json(f));
    return {{"law", s.law},
            {"trials", s.trials_run},
            {"seed", s.config.seed},
            {"dim", s.config.dim},
            {"failure_count", s.failures.size()},
            {"max_gap", number(s.max_gap)},
            {"failures", std::move(failures)}};
}

/// Blades in ascending mask order, one "label coeff" pair per line.
inline std::string to_text(const Multivector& m) {
    if (m.is_zero()) return "0\n";
    std::string out;
    for (const auto& t : m.terms()) out += blade_label(t.blade) + " " + format_number(t.coeff) + "\n";
    return out;
}

} // namespace mvcalc::io
