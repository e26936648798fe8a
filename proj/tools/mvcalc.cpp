// mvcalc: evaluate, differentiate and probe multivector curves from the
// command line, and run the seeded law-checking suites.
//
// Exit codes: 0 success, 1 usage or parse error, 2 law violation or
// tolerance breach, 3 divergence verdict, 4 inconclusive verdict.

#include <mvcalc/mvcalc.hpp>
#include <mvcalc/laws.hpp>
#include <mvcalc/serialize.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, usage = 1, violation = 2, diverges = 3, inconclusive = 4 };

struct RunConfig {
    std::string command;
    int dim = 3;
    std::string expression;
    std::optional<double> at;
    std::optional<double> to;
    std::string method = "sym";
    double atol = 1e-9;
    double rtol = 1e-6;
    std::uint64_t seed = 42;
    std::size_t trials = 100;
    int depth = 6;
    std::string format = "json";
};

using mvcalc::io::Json;

Json config_json(const RunConfig& c) {
    Json j;
    j["dim"] = c.dim;
    if (!c.expression.empty()) j["expression"] = c.expression;
    if (c.at) j["at"] = *c.at;
    if (c.to) j["to"] = *c.to;
    if (c.command == "diff") j["method"] = c.method;
    j["atol"] = c.atol;
    j["rtol"] = c.rtol;
    j["seed"] = c.seed;
    if (c.command == "check") {
        j["trials"] = c.trials;
        j["depth"] = c.depth;
    }
    j["format"] = c.format;
    return j;
}

void emit_json(const RunConfig& c, Json result) {
    Json out;
    out["command"] = c.command;
    out["config"] = config_json(c);
    out["result"] = std::move(result);
    out["version"] = kVersion;
    std::cout << out.dump(2) << '\n';
}

std::string csv_of(const mvcalc::Multivector& m) {
    std::string out = "blade,coeff\n";
    for (const auto& t : m.terms()) out += mvcalc::blade_label(t.blade) + "," + mvcalc::format_number(t.coeff) + "\n";
    return out;
}

void emit_multivector(const RunConfig& c, const mvcalc::Multivector& m) {
    if (c.format == "json")
        emit_json(c, mvcalc::io::to_json(m));
    else if (c.format == "csv")
        std::cout << csv_of(m);
    else
        std::cout << mvcalc::io::to_text(m);
}

int cmd_eval(const RunConfig& c) {
    mvcalc::Curve e = mvcalc::dsl::parse_curve(c.expression, c.dim);
    emit_multivector(c, mvcalc::evaluate(e, c.at.value_or(0.0)));
    return ok;
}

int cmd_diff(const RunConfig& c) {
    using namespace mvcalc;
    Curve e = dsl::parse_curve(c.expression, c.dim);
    const double lambda = c.at.value_or(0.0);
    if (c.method == "sym") {
        emit_multivector(c, evaluate(derivative_symbolic(e), lambda));
        return ok;
    }
    if (c.method == "ad") {
        emit_multivector(c, derivative_ad(e, lambda));
        return ok;
    }
    if (c.method == "fd") {
        emit_multivector(c, derivative_fd(e, lambda));
        return ok;
    }

    Multivector sym = evaluate(derivative_symbolic(e), lambda);
    Multivector ad = derivative_ad(e, lambda);
    Multivector fd = derivative_fd(e, lambda);
    double sym_ad = distance(sym, ad);
    double sym_fd = distance(sym, fd) / (1.0 + norm(sym));
    double ad_fd = distance(ad, fd) / (1.0 + norm(ad));
    bool within = sym_ad <= c.atol && sym_fd <= c.rtol && ad_fd <= c.rtol;

    if (c.format == "json") {
        Json r;
        r["sym"] = io::to_json(sym);
        r["ad"] = io::to_json(ad);
        r["fd"] = io::to_json(fd);
        r["gaps"] = {{"sym_ad", sym_ad}, {"sym_fd", sym_fd}, {"ad_fd", ad_fd}};
        r["within_tolerance"] = within;
        emit_json(c, std::move(r));
    } else if (c.format == "csv") {
        std::cout << "method,blade,coeff\n";
        for (auto [name, m] : {std::pair<const char*, const Multivector*>{"sym", &sym}, {"ad", &ad}, {"fd", &fd}})
            for (const auto& t : m->terms())
                std::cout << name << ',' << blade_label(t.blade) << ',' << format_number(t.coeff) << '\n';
    } else {
        std::cout << "[sym]\n" << io::to_text(sym) << "[ad]\n" << io::to_text(ad) << "[fd]\n" << io::to_text(fd);
        std::cout << "gaps sym-ad " << format_number(sym_ad) << " sym-fd " << format_number(sym_fd) << " ad-fd "
                  << format_number(ad_fd) << '\n';
    }
    if (!within) {
        std::cerr << "derivative engines disagree beyond tolerance\n";
        return violation;
    }
    return ok;
}

int cmd_limit(const RunConfig& c) {
    using namespace mvcalc;
    Curve e = dsl::parse_curve(c.expression, c.dim);
    ProbeReport r = limit_probe(e, c.to.value_or(0.0));
    if (c.format == "json")
        emit_json(c, io::to_json(r));
    else if (c.format == "csv")
        std::cout << io::probe_csv(r);
    else
        std::cout << "verdict " << verdict_name(r.verdict) << " (numerical)\n" << io::to_text(r.estimate);
    switch (r.verdict) {
    case Verdict::limit_exists: return ok;
    case Verdict::diverges: return diverges;
    case Verdict::inconclusive: return inconclusive;
    }
    return inconclusive;
}

int cmd_check(const RunConfig& c) {
    using namespace mvcalc;
    laws::CheckConfig cfg;
    cfg.dim = c.dim;
    cfg.trials = c.trials;
    cfg.seed = c.seed;
    cfg.atol = c.atol;
    cfg.rtol = c.rtol;
    cfg.max_depth = c.depth;
    laws::CheckSummary s = laws::run_check(c.expression, cfg);
    if (c.format == "json") {
        emit_json(c, io::to_json(s));
    } else if (c.format == "csv") {
        std::cout << "law,trials,failures,max_gap\n"
                  << s.law << ',' << s.trials_run << ',' << s.failures.size() << ',' << format_number(s.max_gap) << '\n';
    } else {
        std::cout << s.law << ": " << s.trials_run << " trials, " << s.failures.size() << " failures, max gap "
                  << format_number(s.max_gap) << " (seed " << s.config.seed << ")\n";
        for (const auto& f : s.failures) std::cout << "  trial " << f.index << ": " << f.expression << '\n';
    }
    return s.failures.empty() ? ok : violation;
}

void report_dsl_error(const mvcalc::dsl::DslError& e) {
    Json j{{"error", {{"code", e.code()}, {"span", {e.span().begin, e.span().end}}, {"message", e.what()}}}};
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivector curves: evaluation, derivatives, limit probes and law checks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("MVCALC_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "MVCALC_SEED is not an unsigned integer\n";
            return usage;
        }
    }

    auto common = [&](CLI::App* sub) {
        sub->add_option("--dim", cfg.dim, "Algebra dimension (1..12)")->check(CLI::Range(1, mvcalc::kMaxDim));
        sub->add_option("--atol", cfg.atol, "Absolute tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--rtol", cfg.rtol, "Relative tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "Seed (falls back to MVCALC_SEED)");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a curve at a point");
    eval->add_option("expression", cfg.expression, "Curve expression")->required();
    eval->add_option("--at", cfg.at, "Parameter value");
    common(eval);

    auto* diff = app.add_subcommand("diff", "Differentiate a curve at a point");
    diff->add_option("expression", cfg.expression, "Curve expression")->required();
    diff->add_option("--at", cfg.at, "Parameter value");
    diff->add_option("--method", cfg.method, "sym, ad, fd or all")->check(CLI::IsMember({"sym", "ad", "fd", "all"}));
    common(diff);

    auto* limit = app.add_subcommand("limit", "Probe the limit of a curve");
    limit->add_option("expression", cfg.expression, "Curve expression")->required();
    limit->add_option("--to", cfg.to, "Limit point");
    common(limit);

    auto* check = app.add_subcommand("check", "Run a seeded law-checking suite");
    check->add_option("law", cfg.expression,
                      "leibniz:<wedge|scalar|lcontr|rcontr|geometric>, sum-rule, chain-rule, cauchy-schwarz, "
                      "triangle, limit-laws, remainder, continuity")
        ->required();
    check->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
    check->add_option("--depth", cfg.depth, "Maximum curve depth")->check(CLI::Range(1, 12));
    common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*eval) {
            cfg.command = "eval";
            return cmd_eval(cfg);
        }
        if (*diff) {
            cfg.command = "diff";
            return cmd_diff(cfg);
        }
        if (*limit) {
            cfg.command = "limit";
            return cmd_limit(cfg);
        }
        cfg.command = "check";
        return cmd_check(cfg);
    } catch (const mvcalc::dsl::DslError& e) {
        report_dsl_error(e);
        return usage;
    } catch (const mvcalc::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return usage;
    }
}
