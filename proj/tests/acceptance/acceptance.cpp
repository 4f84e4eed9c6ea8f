// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beattysum/beatty.hpp"
#include "beattysum/cli.hpp"
#include "beattysum/discrepancy.hpp"
#include "beattysum/expsum.hpp"
#include "beattysum/harness.hpp"
#include "beattysum/multfun.hpp"
#include "beattysum/smoothing.hpp"
#include "oracles.hpp"

using namespace bsum;
using arith::QuadraticSurd;
using arith::Real;
using beatty::BeattyParams;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Recorder {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && out_.pass) out_.detail = what;
        out_.pass = out_.pass && ok;
    }
    void note(const std::string& s) {
        if (out_.pass) out_.detail = s;
    }
    Outcome result() const { return out_; }

private:
    Outcome out_;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* kAlphas[] = {"sqrt(2)", "(1+1*sqrt(5))/2", "(3+1*sqrt(3))/3"};
const char* kBetas[] = {"0", "0.3", "1", "-2.7"};

BeattyParams P(const char* a, const char* b) { return BeattyParams(Real::parse(a), Real::parse(b)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome membership_equivalence() {
    Recorder r;
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t N = 100000;
    std::uint64_t mismatches = 0;
    for (const char* a : kAlphas) {
        for (const char* b : kBetas) {
            const auto p = P(a, b);
            std::vector<std::uint8_t> generated(N + 1, 0);
            for (auto n : beatty::generate_by_floor(p, N)) generated[n] = 1;
            for (std::uint64_t n = 1; n <= N; ++n)
                mismatches += beatty::is_member(p, n) != (generated[n] != 0);
        }
    }
    const double secs = seconds_since(t0);
    r.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    r.expect(secs < 10.0, "runtime " + num(secs) + " s");
    r.note("12 cases x 1e5 indices, 0 mismatches, " + num(secs) + " s");
    return r.result();
}

Outcome counting() {
    Recorder r;
    double worst = 0.0;
    for (const char* a : kAlphas) {
        for (const char* b : kBetas) {
            const auto p = P(a, b);
            const double gamma = p.gamma().to_double();
            const auto mask = beatty::membership_mask(p, 10000);
            std::uint64_t running = 0;
            for (std::uint64_t N = 1; N <= 10000; ++N) {
                running += mask[N];
                const double dev = std::abs(static_cast<double>(running) - gamma * static_cast<double>(N));
                worst = std::max(worst, dev);
                if (N % 97 == 0) r.expect(beatty::count_members(p, N) == running, "count_members disagrees with prefix");
            }
        }
    }
    r.expect(worst <= 1.0, "max |count - gamma N| = " + num(worst));
    r.note("max |count - gamma N| = " + num(worst));
    return r.result();
}

Outcome jacobi_vs_lattice() {
    Recorder r;
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t bad = 0;
    for (std::uint64_t n = 1; n <= 5000; ++n) bad += multfun::r4_jacobi(n) != multfun::r4_lattice_oracle(n);
    const double secs = seconds_since(t0);
    r.expect(bad == 0, std::to_string(bad) + " mismatches");
    r.expect(secs < 30.0, "runtime " + num(secs) + " s");
    r.note("n <= 5000 exact, " + num(secs) + " s");
    return r.result();
}

Outcome two_squares_methods() {
    Recorder r;
    const auto a = multfun::sieve_two_squares(1'000'000, multfun::SieveMethod::mark_sum_of_squares);
    const auto b = multfun::sieve_two_squares(1'000'000, multfun::SieveMethod::factor_criterion);
    r.expect(a == b, "tables differ");
    r.note("mark vs factor criterion identical to 1e6");
    return r.result();
}

Outcome discrepancy_corpus() {
    Recorder r;
    std::mt19937_64 rng(20240611);
    std::size_t instances = 0;
    // Exact rational instances.
    for (int t = 0; t < 300; ++t) {
        std::uniform_int_distribution<long> sz(1, 300), den(2, 100000);
        const long M = sz(rng), q = den(rng);
        std::uniform_int_distribution<long> numr(0, q - 1);
        std::vector<mpq_class> pts;
        for (long i = 0; i < M; ++i) pts.emplace_back(numr(rng), q);
        r.expect(discrepancy::discrepancy_fast(pts).value == discrepancy::discrepancy_oracle(pts).value,
                 "rational instance " + std::to_string(t));
        ++instances;
    }
    auto check_double = [&](const std::vector<double>& pts, const std::string& label) {
        const double a = discrepancy::discrepancy_fast(pts).value;
        const double b = discrepancy::discrepancy_oracle(pts).value;
        r.expect(std::abs(a - b) <= 1e-12, label);
        ++instances;
    };
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> pts(1 + rng() % 300);
        for (auto& x : pts) x = u(rng);
        check_double(pts, "random double instance");
    }
    // Structured: Beatty point sets, equispaced grids, clusters and duplicates.
    const char* gammas[] = {"(0+1*sqrt(2))/2", "(-1+1*sqrt(5))/2", "(0+1*sqrt(3))/3", "1/3", "0.123"};
    for (const char* g : gammas)
        for (std::uint64_t M : {1u, 2u, 5u, 13u, 55u, 100u, 144u, 233u, 300u})
            for (const char* d : {"0", "0.5", "(0+1*sqrt(2))/7"})
                check_double(discrepancy::beatty_points(Real::parse(g), Real::parse(d), M), std::string("beatty ") + g);
    for (std::size_t M = 1; M <= 60; ++M) {
        std::vector<double> grid(M), cluster(M), dup(M, 0.25);
        for (std::size_t i = 0; i < M; ++i) {
            grid[i] = static_cast<double>(i) / static_cast<double>(M);
            cluster[i] = 0.4 + 1e-3 * u(rng);
        }
        check_double(grid, "equispaced");
        check_double(cluster, "cluster");
        check_double(dup, "duplicates");
    }
    r.expect(instances >= 500, "only " + std::to_string(instances) + " instances");
    r.note(std::to_string(instances) + " instances agree");
    return r.result();
}

Outcome smoothing_suite() {
    Recorder r;
    const double pi = std::numbers::pi;
    const smoothing::SmoothingParams p(0.7, 0.05);
    for (int i = 0; i < 100000; ++i) {
        const double x = (i + 0.37) / 100000.0;
        const double v = smoothing::psi_smooth(p, x);
        r.expect(std::abs(smoothing::psi_smooth(p, x + 1.0) - v) < 1e-12, "periodicity");
        r.expect(v >= 0.0 && v <= 1.0, "range");
        if (!smoothing::exceptional_indicator(p, x)) r.expect(v == smoothing::psi(p, x), "Psi = psi off I");
    }
    for (std::int64_t k = 1; k <= 100000; ++k) {
        const double kk = static_cast<double>(k);
        const double bound = std::min(1.0 / (pi * kk), 1.0 / (2 * pi * pi * p.width() * kk * kk));
        r.expect(std::abs(smoothing::fourier_coeff(p, k)) <= bound * (1 + 1e-12), "g(k) bound");
        r.expect(std::abs(smoothing::fourier_coeff(p, -k)) <= bound * (1 + 1e-12), "g(-k) bound");
    }
    double worst_ratio = 0.0;
    for (auto [width, K] : {std::pair{0.01, std::uint64_t{1000}}, std::pair{0.002, std::uint64_t{10000}}}) {
        const smoothing::SmoothingParams q(0.7, width);
        const smoothing::TrigPoly poly(q, K);
        const double bound = smoothing::tail_bound(q, K);
        double sup = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double x = (i + 0.5) / 100000.0;
            sup = std::max(sup, std::abs(poly(x) - smoothing::psi_smooth(q, x)));
        }
        r.expect(sup <= bound, "sup |Psi_K - Psi| = " + num(sup) + " > " + num(bound));
        worst_ratio = std::max(worst_ratio, sup / bound);
    }
    r.note("properties on 1e5 points, |g(k)| bounds to 1e5, sup/tail_bound <= " + num(worst_ratio));
    return r.result();
}

Outcome exchange_identity() {
    Recorder r;
    double worst = 0.0;
    int runs = 0;
    for (const char* a : kAlphas) {
        for (auto fn : {multfun::ArithmeticFunction::two_squares(), multfun::ArithmeticFunction::k_free(2)}) {
            for (std::uint64_t N : {10000u, 100000u}) {
                const auto p = P(a, "0");
                const auto table = multfun::build_table(fn, N);
                const auto cfg = harness::HarnessConfig::for_N(N, p.gamma().to_double());
                const auto rep = harness::decomposition_audit(p, table, N, cfg);
                const double scaled = rep.exchange_residual / static_cast<double>(N);
                worst = std::max(worst, scaled);
                r.expect(scaled <= 1e-6, std::string(a) + " " + fn.id() + " residual/N = " + num(scaled));
                r.expect(rep.smoothing_gap <= rep.smoothing_budget, "smoothing budget exceeded");
                ++runs;
            }
        }
    }
    r.note(std::to_string(runs) + " audits, max residual/N = " + num(worst));
    return r.result();
}

Outcome theorem_desk_scale() {
    Recorder r;
    const std::uint64_t N = 1'000'000;
    const auto two = multfun::sieve_two_squares(N);
    const auto kfree = multfun::sieve_kfree(N, 2);
    double lo = 2, hi = 0, worst_norm = 0, slowest = 0;
    for (const char* a : {"sqrt(2)", "(1+1*sqrt(5))/2"}) {
        for (const char* b : {"0", "0.3"}) {
            for (const auto* table : {&two, &kfree}) {
                const auto t0 = std::chrono::steady_clock::now();
                const auto p = P(a, b);
                const auto rep = harness::theorem_check(p, *table, N,
                                                        harness::HarnessConfig::for_N(N, p.gamma().to_double()));
                const double secs = seconds_since(t0);
                lo = std::min(lo, rep.ratio);
                hi = std::max(hi, rep.ratio);
                worst_norm = std::max(worst_norm, std::abs(rep.normalized_diff));
                slowest = std::max(slowest, secs);
                const std::string label = std::string(a) + " " + b + " " + rep.function_id;
                r.expect(rep.ratio >= 0.99 && rep.ratio <= 1.01, label + " ratio " + num(rep.ratio));
                r.expect(std::abs(rep.normalized_diff) <= 1.0, label + " diff/envelope " + num(rep.normalized_diff));
                r.expect(secs < 60.0, label + " runtime " + num(secs));
            }
        }
    }
    r.note("ratio in [" + num(lo) + ", " + num(hi) + "], max |diff|/envelope = " + num(worst_norm) +
           ", slowest " + num(slowest) + " s");
    return r.result();
}

Outcome corollary_two_squares() {
    Recorder r;
    const auto rep = harness::corollary_two_squares(P("sqrt(2)", "0"), 10'000'000);
    const double tight = rep.comparator("gamma_times_global").relative_deviation;
    const double closed = rep.comparator("closed_form").relative_deviation;
    r.expect(std::abs(tight) <= 0.01, "vs gamma*global " + num(tight));
    r.expect(std::abs(closed) <= 0.10, "vs closed form " + num(closed));
    r.note("count " + rep.beatty_exact->get_str() + ", dev vs gamma*global " + num(tight) +
           ", vs C N/(alpha sqrt ln N) " + num(closed));
    return r.result();
}

Outcome corollary_kfree() {
    Recorder r;
    const auto rep = harness::corollary_kfree(P("sqrt(2)", "0"), 2, 10'000'000);
    const double dev = rep.comparator("closed_form").relative_deviation;
    r.expect(std::abs(dev) <= 5e-3, "vs gamma N/zeta(2) " + num(dev));
    const auto table = multfun::sieve_kfree(1'000'000, 2);
    std::uint64_t global = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) global += table.raw(n);
    r.expect(global == 607926, "global count " + std::to_string(global));
    r.expect(static_cast<std::int64_t>(global) == oracle::squarefree_count(1'000'000), "Moebius oracle");
    r.note("dev vs gamma N/zeta(2) " + num(dev) + ", global count to 1e6 = " + std::to_string(global));
    return r.result();
}

Outcome corollary_four_squares() {
    Recorder r;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const auto rep = harness::corollary_four_squares(P("sqrt(2)", "0"), 100000);
    const double beatty = rep.comparator("closed_form").relative_deviation;
    const double sigma = rep.comparator("sigma_sq_sum").relative_deviation;
    r.expect(std::abs(beatty) <= 0.01, "Beatty r4 sum " + num(beatty));
    r.expect(std::abs(sigma) <= 5e-3, "sigma^2 sum " + num(sigma));
    const auto r4 = multfun::sieve_r4(1'000'000);
    const auto global = harness::global_sum(r4, 1'000'000);
    const double N = 1e6;
    const double dev = global.exact->get_d() / (pi2 * N * N / 2) - 1;
    r.expect(std::abs(dev) <= 1e-4, "global r4 sum " + num(dev));
    r.note("Beatty " + num(beatty) + ", global(1e6) " + num(dev) + ", sigma^2 " + num(sigma));
    return r.result();
}

Outcome constants() {
    Recorder r;
    const double pi = std::numbers::pi;
    const double z2 = std::abs(multfun::zeta_int(2).value - pi * pi / 6);
    const double z4 = std::abs(multfun::zeta_int(4).value - pi * pi * pi * pi / 90);
    r.expect(z2 <= 1e-10, "zeta(2) off by " + num(z2));
    r.expect(z4 <= 1e-10, "zeta(4) off by " + num(z4));
    const auto c6 = multfun::landau_constant(1'000'000);
    const auto c7 = multfun::landau_constant(10'000'000);
    const double drift = std::abs(c6.value - c7.value);
    r.expect(drift <= 1e-6, "Landau drift " + num(drift));
    r.expect(c6.tail_bound <= 1e-6 && c7.tail_bound <= 1e-6, "tail bound too loose");
    r.expect(c6.value <= c7.value && c7.value <= c6.value + c6.tail_bound, "10^7 value outside certified 10^6 interval");
    char buf[96];
    std::snprintf(buf, sizeof buf, "C = %.10f (tail %.2g), drift %.2g", c7.value, c7.tail_bound, drift);
    r.note(buf);
    return r.result();
}

/// |x - a/q| <= 1/q^2, decided exactly.
bool close_enough(const QuadraticSurd& x, const arith::Convergent& c) {
    QuadraticSurd diff = x - QuadraticSurd::rational(c.p, c.q);
    if (diff.sign() < 0) diff = -diff;
    return arith::compare(diff, QuadraticSurd::rational(1, c.q * c.q)) <= 0;
}

Outcome convergent_instrumentation() {
    Recorder r;
    const std::uint64_t N = 100'000'000;
    const auto p = P("sqrt(2)", "0");
    const auto first = expsum::select_convergent_window(p.gamma(), N);
    r.expect(first.window_hit, "k = 1 misses the window");
    int hits = 0, total = 0;
    for (long k = -200; k <= 200; ++k) {
        if (k == 0) continue;
        const Real x = Real::integer(k) * p.gamma();
        const auto w = expsum::select_convergent_window(x, N);
        ++total;
        hits += w.window_hit;
        if (!w.convergent) {
            r.expect(false, "no convergent for k = " + std::to_string(k));
            continue;
        }
        const auto& c = *w.convergent;
        r.expect(gcd(c.p, c.q) == 1, "gcd != 1 at k = " + std::to_string(k));
        r.expect(c.q >= static_cast<unsigned long>(w.R), "q < R at k = " + std::to_string(k));
        r.expect(close_enough(x.surd(), c), "|k gamma - a/q| > q^-2 at k = " + std::to_string(k));
    }
    r.note("R = " + std::to_string(first.R) + ", k = 1 hit q = " +
           (first.convergent ? first.convergent->q.get_str() : std::string("-")) + ", sweep hit rate " +
           std::to_string(hits) + "/" + std::to_string(total));
    return r.result();
}

Outcome determinism() {
    Recorder r;
    auto report = [](const char* threads) {
        std::ostringstream out, err;
        const int code = cli::run({"theorem", "--alpha", "sqrt(2)", "--beta", "0", "--f", "kfree", "--k", "2",
                                   "--N", "1000000", "--format", "json", "--threads", threads},
                                  out, err);
        return code == 0 ? out.str() : std::string("exit ") + std::to_string(code) + ": " + err.str();
    };
    const std::string a = report("1"), b = report("1"), c = report("8");
    r.expect(a.rfind("{", 0) == 0, "theorem run failed: " + a);
    r.expect(a == b, "repeat runs differ");
    r.expect(a == c, "--threads 1 and 8 differ");
    r.note("theorem JSON (" + std::to_string(a.size()) + " bytes) identical across runs and thread counts");
    return r.result();
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"membership equivalence", membership_equivalence},
        {"counting", counting},
        {"Jacobi vs lattice", jacobi_vs_lattice},
        {"two-squares sieve methods", two_squares_methods},
        {"discrepancy fast vs oracle", discrepancy_corpus},
        {"smoothing suite", smoothing_suite},
        {"exchange identity", exchange_identity},
        {"theorem at desk scale", theorem_desk_scale},
        {"two squares corollary", corollary_two_squares},
        {"k-free corollary", corollary_kfree},
        {"four squares corollary", corollary_four_squares},
        {"constants", constants},
        {"convergent window", convergent_instrumentation},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %-28s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
