#include "beattysum/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "beattysum/arith.hpp"
#include "beattysum/beatty.hpp"
#include "beattysum/discrepancy.hpp"
#include "beattysum/errors.hpp"
#include "beattysum/expsum.hpp"
#include "beattysum/harness.hpp"
#include "beattysum/multfun.hpp"
#include "beattysum/report_json.hpp"
#include "beattysum/smoothing.hpp"

namespace bsum::cli {

namespace {

using report::ordered_json;

struct CheckFailed : Error {
    using Error::Error;
};

std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// CSV table: header row then data rows, LF line endings.
class Csv {
public:
    explicit Csv(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    template <class... Ts>
    void row(const Ts&... cells) {
        rows_.push_back({cell(cells)...});
    }
    std::string str() const {
        std::string s;
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) s += ',';
                s += r[i];
            }
            s += '\n';
        }
        return s;
    }

private:
    static std::string cell(double v) { return fmt(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }
    static std::string cell(bool v) { return v ? "true" : "false"; }
    template <class T>
        requires std::is_integral_v<T>
    static std::string cell(T v) {
        return std::to_string(v);
    }
    std::vector<std::vector<std::string>> rows_;
};

struct Options {
    unsigned threads = 1;
    std::string format = "json";
    std::string out_path;
    bool check = false;

    std::string alpha = "sqrt(2)";
    std::string beta = "0";
    std::string gamma;
    std::string delta = "0";
    std::string x;
    std::string f = "unit";
    unsigned k = 2;
    std::uint64_t n = 1;
    std::uint64_t N = 1000;
    std::uint64_t M = 1000;
    std::uint64_t K = 0;
    std::uint64_t count = 20;
    std::uint64_t points = 11;
    std::uint64_t sweep = 0;
    std::uint64_t cutoff = 1'000'000;
    unsigned zeta_max = 4;
    double width = 0.0;
    double tolerance = 0.01;
    bool coeffs = false;
};

beatty::BeattyParams params_of(const Options& o) {
    return beatty::BeattyParams(arith::Real::parse(o.alpha), arith::Real::parse(o.beta));
}

harness::HarnessConfig config_of(const Options& o, const beatty::BeattyParams& p) {
    auto cfg = harness::HarnessConfig::for_N(o.N, p.gamma().to_double());
    if (o.width > 0.0) {
        cfg.Delta = o.width;
        cfg.clamped = false;
    }
    if (o.K > 0) cfg.K = o.K;
    return cfg;
}

multfun::SieveTable table_of(const Options& o, std::uint64_t N) {
    return multfun::build_table(multfun::ArithmeticFunction::parse(o.f, o.k), N, o.threads);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailed("check failed: " + what);
}

std::string key_value_csv(const ordered_json& j, const std::string& prefix = "") {
    std::string s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            s += key_value_csv(*it, key);
        } else if (!it->is_array()) {
            s += key + "," + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
        }
    }
    return s;
}

std::string emit(const Options& o, const ordered_json& j, const std::function<std::string()>& csv) {
    if (o.format == "csv") return csv();
    return j.dump(2) + "\n";
}

std::string cmd_membership(const Options& o) {
    return beatty::is_member(params_of(o), o.n) ? "true\n" : "false\n";
}

std::string cmd_generate(const Options& o) {
    const auto members = beatty::generate_by_floor(params_of(o), o.N);
    ordered_json j = {{"alpha", o.alpha}, {"beta", o.beta}, {"N", o.N}, {"members", members}};
    return emit(o, j, [&] {
        Csv c({"n"});
        for (auto m : members) c.row(m);
        return c.str();
    });
}

std::string cmd_count(const Options& o) {
    const auto p = params_of(o);
    const std::uint64_t c = beatty::count_members(p, o.N, o.threads);
    const double expected = p.gamma().to_double() * static_cast<double>(o.N);
    if (o.check) require(std::abs(static_cast<double>(c) - expected) <= 1.0, "|count - gamma N| <= 1");
    ordered_json j = {{"alpha", o.alpha}, {"beta", o.beta},         {"N", o.N},
                      {"count", c},       {"gammaN", expected},     {"diff", static_cast<double>(c) - expected}};
    return emit(o, j, [&] { return key_value_csv(j); });
}

std::string cmd_discrepancy(const Options& o) {
    const auto gamma = arith::Real::parse(o.gamma.empty() ? o.alpha : o.gamma);
    const auto delta = arith::Real::parse(o.delta);
    double tau = 1.0;
    try {
        tau = arith::estimate_type(arith::cf_expand(gamma, 20)).tau_hat;
    } catch (const DomainError&) {
        // Rational gamma: too few convergents for a type estimate.
    }
    const std::uint64_t steps = std::max<std::uint64_t>(o.points, 1);
    std::vector<std::uint64_t> grid;
    for (std::uint64_t i = 1; i <= steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps);
        auto m = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(o.M), t)));
        m = std::max<std::uint64_t>(m, 2);
        if (grid.empty() || m > grid.back()) grid.push_back(m);
    }
    ordered_json rows = ordered_json::array();
    Csv c({"M", "discrepancy", "envelope"});
    for (auto m : grid) {
        const auto d = discrepancy::beatty_discrepancy(gamma, delta, m, o.threads);
        const double env = discrepancy::discrepancy_envelope(tau, static_cast<double>(m));
        rows.push_back({{"M", m}, {"discrepancy", d.value}, {"envelope", env}});
        c.row(m, d.value, env);
    }
    ordered_json j = {{"gamma", gamma.to_string()}, {"delta", delta.to_string()}, {"tauHat", tau}, {"series", rows}};
    return emit(o, j, [&] { return c.str(); });
}

std::string cmd_smooth(const Options& o) {
    const double gamma = arith::Real::parse(o.gamma.empty() ? "1/2" : o.gamma).to_double();
    const double width = o.width > 0.0 ? o.width : 0.01;
    const std::uint64_t K = o.K > 0 ? o.K : 100;
    const smoothing::SmoothingParams sp(gamma, width);
    if (o.coeffs) {
        ordered_json rows = ordered_json::array();
        Csv c({"k", "re", "im", "abs", "bound"});
        for (std::int64_t k = -static_cast<std::int64_t>(K); k <= static_cast<std::int64_t>(K); ++k) {
            const auto g = smoothing::fourier_coeff(sp, k);
            const double bound = k == 0 ? gamma : smoothing::coeff_bound(sp, k);
            rows.push_back({{"k", k}, {"re", g.real()}, {"im", g.imag()}, {"abs", std::abs(g)}, {"bound", bound}});
            c.row(k, g.real(), g.imag(), std::abs(g), bound);
        }
        ordered_json j = {{"gamma", gamma}, {"Delta", width}, {"K", K}, {"coefficients", rows}};
        return emit(o, j, [&] { return c.str(); });
    }
    const smoothing::TrigPoly poly(sp, K);
    const std::uint64_t n = std::max<std::uint64_t>(o.points, 2);
    ordered_json rows = ordered_json::array();
    Csv c({"x", "psi", "Psi", "Psi_K"});
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n - 1);
        const int a = smoothing::psi(sp, x);
        const double b = smoothing::psi_smooth(sp, x);
        const double d = poly(x);
        rows.push_back({{"x", x}, {"psi", a}, {"Psi", b}, {"Psi_K", d}});
        c.row(x, a, b, d);
    }
    ordered_json j = {{"gamma", gamma}, {"Delta", width}, {"K", K},
                      {"tailBound", smoothing::tail_bound(sp, K)}, {"table", rows}};
    return emit(o, j, [&] { return c.str(); });
}

ordered_json window_json(const expsum::EnvelopeReport& w) {
    ordered_json j = {{"N", w.N}, {"R", w.R}, {"windowHi", w.window_hi}, {"envelope", w.envelope},
                      {"windowHit", w.window_hit}};
    if (w.convergent)
        j["convergent"] = {{"a", report::big_integer(w.convergent->p)}, {"q", report::big_integer(w.convergent->q)}};
    else
        j["convergent"] = nullptr;
    return j;
}

std::string cmd_expsum(const Options& o) {
    const auto table = table_of(o, o.N);
    if (o.sweep > 0) {
        const auto p = params_of(o);
        const auto rows = expsum::k_sweep(p, table, o.N, o.sweep, o.threads);
        ordered_json arr = ordered_json::array();
        Csv c({"k", "magnitude", "q", "window_hit"});
        std::uint64_t hits = 0;
        for (const auto& r : rows) {
            hits += r.window.window_hit;
            arr.push_back({{"k", r.k}, {"magnitude", r.magnitude}, {"window", window_json(r.window)}});
            c.row(r.k, r.magnitude, r.window.convergent ? r.window.convergent->q.get_str() : std::string(),
                  r.window.window_hit);
        }
        ordered_json j = {{"alpha", o.alpha}, {"functionId", table.function().id()}, {"N", o.N},
                          {"hitRate", rows.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(rows.size())},
                          {"rows", arr}};
        return emit(o, j, [&] { return c.str(); });
    }
    const auto alpha = arith::Real::parse(o.alpha);
    const auto r = expsum::exp_sum(table, alpha, o.N, o.threads);
    ordered_json j = {{"alpha", r.alpha},
                      {"functionId", table.function().id()},
                      {"N", r.N},
                      {"re", r.value.real()},
                      {"im", r.value.imag()},
                      {"abs", std::abs(r.value)},
                      {"accumulationError", r.accumulation_error}};
    if (o.N >= 100) j["window"] = window_json(expsum::select_convergent_window(alpha, o.N));
    return emit(o, j, [&] { return key_value_csv(j); });
}

std::string cmd_convergents(const Options& o) {
    const auto x = arith::Real::parse(o.x.empty() ? o.alpha : o.x);
    const auto cf = arith::cf_expand(x, o.count);
    ordered_json rows = ordered_json::array();
    Csv c({"i", "a", "p", "q"});
    for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
        const auto& cv = cf.convergents[i];
        rows.push_back({{"i", i},
                        {"a", report::big_integer(cf.quotients[i])},
                        {"p", report::big_integer(cv.p)},
                        {"q", report::big_integer(cv.q)}});
        c.row(i, cf.quotients[i].get_str(), cv.p.get_str(), cv.q.get_str());
    }
    ordered_json j = {{"x", x.to_string()}, {"convergents", rows}};
    return emit(o, j, [&] { return c.str(); });
}

std::string cmd_type_witness(const Options& o) {
    const auto x = arith::Real::parse(o.x.empty() ? o.alpha : o.x);
    const auto w = arith::estimate_type(arith::cf_expand(x, o.count));
    ordered_json j = {{"x", x.to_string()}, {"depth", w.depth}, {"tauHat", w.tau_hat}, {"ratios", w.ratios}};
    return emit(o, j, [&] {
        Csv c({"i", "ratio"});
        for (std::size_t i = 0; i < w.ratios.size(); ++i) c.row(i, w.ratios[i]);
        return c.str();
    });
}

std::string cmd_theorem(const Options& o) {
    const auto p = params_of(o);
    const auto cfg = config_of(o, p);
    const auto table = table_of(o, o.N);
    const auto rep = harness::theorem_check(p, table, o.N, cfg, o.threads);
    if (o.check) {
        require(rep.pass, "|diff| <= N lnln N / ln N");
        if (rep.audit)
            require(rep.audit->exchange_residual <= 1e-6 * static_cast<double>(o.N),
                    "exchange residual <= 1e-6 N");
    }
    const ordered_json j = report::to_json(rep);
    return emit(o, j, [&] { return key_value_csv(j); });
}

std::string cmd_audit(const Options& o) {
    const auto p = params_of(o);
    const auto cfg = config_of(o, p);
    const auto table = table_of(o, o.N);
    const auto rep = harness::decomposition_audit(p, table, o.N, cfg, o.threads);
    if (o.check) {
        require(rep.exchange_residual <= 1e-6 * static_cast<double>(o.N), "exchange residual <= 1e-6 N");
        require(rep.smoothing_gap <= rep.smoothing_budget, "|G - sum f Psi_K| within budget");
    }
    const ordered_json j = report::to_json(rep);
    return emit(o, j, [&] { return key_value_csv(j); });
}

std::string cmd_corollary(const Options& o, const std::string& which) {
    const auto p = params_of(o);
    harness::CorollaryReport rep;
    if (which == "two-squares")
        rep = harness::corollary_two_squares(p, o.N, o.threads);
    else if (which == "kfree")
        rep = harness::corollary_kfree(p, o.k, o.N, o.threads);
    else
        rep = harness::corollary_four_squares(p, o.N, o.threads);
    if (o.check)
        require(std::abs(rep.comparator("gamma_times_global").relative_deviation) <= o.tolerance,
                "Beatty sum within tolerance of gamma times the global sum");
    const ordered_json j = report::to_json(rep);
    return emit(o, j, [&] {
        Csv c({"name", "reference", "observed", "relative_deviation"});
        for (const auto& cmp : rep.comparators)
            c.row(cmp.name, cmp.reference, cmp.observed, cmp.relative_deviation);
        return c.str();
    });
}

std::string cmd_constants(const Options& o) {
    const auto C = multfun::landau_constant(o.cutoff);
    ordered_json zetas = ordered_json::array();
    Csv c({"name", "value", "error_bound"});
    c.row("landau_C", C.value, C.tail_bound);
    for (unsigned s = 2; s <= o.zeta_max; ++s) {
        const auto z = multfun::zeta_int(s);
        zetas.push_back({{"s", s}, {"value", z.value}, {"errorBound", z.error_bound}});
        c.row("zeta(" + std::to_string(s) + ")", z.value, z.error_bound);
    }
    const double half_pi_sq = std::numbers::pi * std::numbers::pi / 2.0;
    c.row("pi^2/2", half_pi_sq, 0.0);
    ordered_json j = {{"landau", {{"value", C.value}, {"tailBound", C.tail_bound}, {"primeCutoff", o.cutoff}}},
                      {"zeta", zetas},
                      {"piSquaredOver2", half_pi_sq}};
    return emit(o, j, [&] { return c.str(); });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Sums of arithmetic functions over Beatty sequences"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out_path, "write the report to this file");
    app.add_flag("--check", o.check, "turn report comparisons into hard assertions");

    auto beatty_opts = [&](CLI::App* s) {
        s->add_option("--alpha", o.alpha, "alpha > 1 (surd grammar or decimal)");
        s->add_option("--beta", o.beta, "beta");
    };
    auto fn_opts = [&](CLI::App* s) {
        s->add_option("--f", o.f, "unit, two_squares, kfree, r4, r4_over_8n, sigma, moebius_abs");
        s->add_option("--k", o.k, "k for kfree")->check(CLI::Range(2u, 64u));
    };
    auto big_n = [&](CLI::App* s) { s->add_option("--N", o.N, "upper limit")->check(CLI::PositiveNumber); };

    std::string command, corollary;
    auto add = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        s->callback([&command, name] { command = name; });
        return s;
    };

    auto* membership = add("membership", "decide whether n is in the sequence");
    beatty_opts(membership);
    membership->add_option("--n", o.n, "index")->required()->check(CLI::PositiveNumber);

    auto* generate = add("generate", "list members up to N");
    beatty_opts(generate);
    big_n(generate);

    auto* count = add("count", "count members up to N");
    beatty_opts(count);
    big_n(count);

    auto* disc = add("discrepancy", "discrepancy series over a geometric M grid");
    disc->add_option("--gamma", o.gamma, "gamma in (0, 1)")->required();
    disc->add_option("--delta", o.delta, "shift");
    disc->add_option("--M", o.M, "largest M")->check(CLI::Range(std::uint64_t{2}, discrepancy::kMaxBeattyPoints));
    disc->add_option("--points", o.points, "grid size");

    auto* smooth = add("smooth", "tables of psi, Psi, Psi_K or of g(k)");
    smooth->add_option("--gamma", o.gamma, "gamma in (0, 1)");
    smooth->add_option("--Delta", o.width, "smoothing half-width");
    smooth->add_option("--K", o.K, "trigonometric polynomial order");
    smooth->add_option("--points", o.points, "number of grid points");
    smooth->add_flag("--coeffs", o.coeffs, "emit g(k) for |k| <= K instead");

    auto* exps = add("expsum", "S(N) = sum f(n) e(n alpha), or a k-sweep over k gamma");
    beatty_opts(exps);
    fn_opts(exps);
    big_n(exps);
    exps->add_option("--sweep", o.sweep, "sweep 0 < |k| <= sweep over k/alpha");

    auto* conv = add("convergents", "continued fraction convergents");
    conv->add_option("--x", o.x, "number")->required();
    conv->add_option("--count", o.count, "number of partial quotients");

    auto* tw = add("type-witness", "finite-depth type estimate");
    tw->add_option("--x", o.x, "number")->required();
    tw->add_option("--depth", o.count, "continued fraction depth")->check(CLI::Range(std::uint64_t{3}, std::uint64_t{100000}));

    auto config_opts = [&](CLI::App* s) {
        s->add_option("--Delta", o.width, "override the smoothing width");
        s->add_option("--K", o.K, "override the truncation order");
    };
    auto* thm = add("theorem", "Beatty sum against gamma times the full sum");
    beatty_opts(thm);
    fn_opts(thm);
    big_n(thm);
    config_opts(thm);

    auto* audit = add("audit", "exchange identity and smoothing budget");
    beatty_opts(audit);
    fn_opts(audit);
    big_n(audit);
    config_opts(audit);

    auto* cor = add("corollary", "two-squares, kfree or four-squares report");
    cor->add_option("kind", corollary, "two-squares | kfree | four-squares")
        ->required()
        ->check(CLI::IsMember({"two-squares", "kfree", "four-squares"}));
    beatty_opts(cor);
    big_n(cor);
    cor->add_option("--k", o.k, "k for kfree")->check(CLI::Range(2u, 64u));
    cor->add_option("--tolerance", o.tolerance, "--check tolerance on the tight comparator");

    auto* consts = add("constants", "Landau constant, zeta(s), pi^2/2");
    consts->add_option("--cutoff", o.cutoff, "prime cutoff")->check(CLI::Range(std::uint64_t{1000}, multfun::kMaxIndicatorN));
    consts->add_option("--zeta-max", o.zeta_max, "largest s")->check(CLI::Range(2u, 64u));

    std::vector<const char*> argv{"beattysum"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        std::string text;
        if (command == "membership") text = cmd_membership(o);
        else if (command == "generate") text = cmd_generate(o);
        else if (command == "count") text = cmd_count(o);
        else if (command == "discrepancy") text = cmd_discrepancy(o);
        else if (command == "smooth") text = cmd_smooth(o);
        else if (command == "expsum") text = cmd_expsum(o);
        else if (command == "convergents") text = cmd_convergents(o);
        else if (command == "type-witness") text = cmd_type_witness(o);
        else if (command == "theorem") text = cmd_theorem(o);
        else if (command == "audit") text = cmd_audit(o);
        else if (command == "corollary") text = cmd_corollary(o, corollary);
        else if (command == "constants") text = cmd_constants(o);

        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(o.out_path, std::ios::binary);
            file << text;
            if (!file) throw Error("cannot write " + o.out_path);
        }
        return kOk;
    } catch (const CheckFailed& e) {
        err << e.what() << "\n";
        return kCheckFailed;
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return kCapacity;
    } catch (const CapacityExceeded& e) {
        err << "capacity exceeded: " << e.what() << "\n";
        return kCapacity;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace bsum::cli
