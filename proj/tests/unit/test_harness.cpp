#include <doctest.h>

#include <cmath>

#include "beattysum/harness.hpp"
#include "beattysum/report_json.hpp"

using namespace bsum;
using namespace bsum::harness;
using arith::Real;
using beatty::BeattyParams;

namespace {

BeattyParams P(const char* a, const char* b) { return BeattyParams(Real::parse(a), Real::parse(b)); }

multfun::SieveTable zero_table(std::uint64_t N) {
    return multfun::SieveTable(multfun::ArithmeticFunction::two_squares(),
                               multfun::SieveMethod::mark_sum_of_squares,
                               std::vector<std::uint8_t>(N, 0));
}

}  // namespace

TEST_CASE("harness configuration") {
    const auto cfg = HarnessConfig::for_N(1'000'000, 0.7071);
    CHECK(cfg.Delta == doctest::Approx(1.0 / std::pow(std::log(1e6), 2)));
    CHECK(cfg.K == 2637);
    CHECK(cfg.R == 2637);
    CHECK_FALSE(cfg.clamped);
    const auto small = HarnessConfig::for_N(100, 0.05);
    CHECK(small.clamped);
    CHECK(small.Delta == doctest::Approx(0.025));
    CHECK_THROWS_AS(HarnessConfig::for_N(15, 0.5), DomainError);
}

TEST_CASE("beatty_sum examples") {
    auto s = beatty_sum(P("2", "0"), multfun::sieve_two_squares(20), 20);
    REQUIRE(s.exact);
    CHECK(*s.exact == 7);
    s = beatty_sum(P("sqrt(2)", "0"), multfun::sieve_kfree(10, 2), 10);
    CHECK(*s.exact == 4);
    for (const char* a : {"sqrt(2)", "(1+1*sqrt(5))/2", "(3+1*sqrt(3))/3"}) {
        for (const char* b : {"0", "0.3", "1", "-2.7"}) {
            const auto p = P(a, b);
            const auto unit = multfun::sieve_unit(20000);
            CHECK(*beatty_sum(p, unit, 20000).exact == beatty::count_members(p, 20000));
        }
    }
    CHECK_THROWS_AS(beatty_sum(P("sqrt(2)", "0"), multfun::sieve_unit(10), 11), CapacityExceeded);
}

TEST_CASE("beatty_sum agrees with the floor generator and is monotone") {
    const auto p = P("(1+1*sqrt(5))/2", "0.3");
    const auto table = multfun::sieve_two_squares(50000);
    mpz_class direct = 0;
    for (auto n : beatty::generate_by_floor(p, 50000)) direct += static_cast<unsigned long>(table.raw(n));
    CHECK(*beatty_sum(p, table, 50000).exact == direct);
    mpz_class prev = 0;
    for (std::uint64_t N = 1000; N <= 50000; N += 7000) {
        const auto v = *beatty_sum(p, table, N).exact;
        CHECK(v >= prev);
        prev = v;
    }
    // Real-valued f is accumulated in floating point.
    const auto r = beatty_sum(p, multfun::sieve_r4(1000, true), 1000);
    CHECK_FALSE(r.exact);
    CHECK(r.value > 0);
}

TEST_CASE("decomposition audit") {
    for (const char* a : {"sqrt(2)", "(1+1*sqrt(5))/2"}) {
        const auto p = P(a, "0.3");
        const auto table = multfun::sieve_kfree(10000, 2);
        const auto cfg = HarnessConfig::for_N(10000, p.gamma().to_double());
        const auto rep = decomposition_audit(p, table, 10000, cfg, 2);
        CHECK(rep.exchange_residual <= 1e-6 * 10000);
        CHECK(rep.smoothing_gap <= rep.smoothing_budget);
        CHECK(std::abs(rep.h_imag) < 1e-6);
        CHECK(rep.G == doctest::Approx(beatty_sum(p, table, 10000).value));
    }
    const auto p = P("sqrt(2)", "0");
    const auto cfg = HarnessConfig::for_N(5000, p.gamma().to_double());
    const auto zero = decomposition_audit(p, zero_table(5000), 5000, cfg);
    CHECK(zero.G == 0.0);
    CHECK(zero.direct_smoothed == 0.0);
    CHECK(zero.fourier_side == 0.0);
    CHECK(zero.exchange_residual == 0.0);
    CHECK_THROWS_AS(decomposition_audit(p, multfun::sieve_unit(200000), 200000, cfg), CapacityExceeded);
}

TEST_CASE("theorem check") {
    const auto p = P("sqrt(2)", "0");
    const auto unit = multfun::sieve_unit(50000);
    auto rep = theorem_check(p, unit, 50000, HarnessConfig::for_N(50000, p.gamma().to_double()));
    CHECK(std::abs(rep.diff) <= 1.0);
    CHECK(rep.pass);
    REQUIRE(rep.audit);
    CHECK(rep.audit->exchange_residual <= 1e-6 * 50000);
    const double N = 50000;
    CHECK(rep.boundary_set_size / N <= 4 * rep.config.Delta + 2 * rep.discrepancy);

    const auto table = multfun::sieve_kfree(1'000'000, 2);
    rep = theorem_check(p, table, 1'000'000, HarnessConfig::for_N(1'000'000, p.gamma().to_double()));
    CHECK(rep.ratio >= 0.995);
    CHECK(rep.ratio <= 1.005);
    CHECK_FALSE(rep.audit);
    CHECK(rep.boundary_set_size / 1e6 <= 4 * rep.config.Delta + 2 * rep.discrepancy);

    const auto q = P("(1+1*sqrt(5))/2", "0.3");
    rep = theorem_check(q, multfun::sieve_two_squares(1'000'000), 1'000'000,
                        HarnessConfig::for_N(1'000'000, q.gamma().to_double()));
    CHECK(rep.ratio >= 0.99);
    CHECK(rep.ratio <= 1.01);
    CHECK(rep.precision_mode == "fixed-192");
}

TEST_CASE("theorem report JSON") {
    const auto p = P("sqrt(2)", "0");
    const auto rep = theorem_check(p, multfun::sieve_kfree(20000, 2), 20000,
                                   HarnessConfig::for_N(20000, p.gamma().to_double()), 1);
    const auto j = report::to_json(rep);
    CHECK(j["meta"]["functionId"] == "k_free(2)");
    CHECK(j["meta"]["alpha"] == "(0+1*sqrt(2))/1");
    CHECK(j["results"]["G"].is_number_integer());
    CHECK(j["provenance"]["sieveMethod"] == "power_crossout");
    CHECK(j["provenance"]["precisionMode"] == "exact-surd");
    const auto rep4 = theorem_check(p, multfun::sieve_kfree(20000, 2), 20000,
                                    HarnessConfig::for_N(20000, p.gamma().to_double()), 4);
    CHECK(report::to_json(rep4).dump() == j.dump());
}

TEST_CASE("corollary reports") {
    const auto p = P("sqrt(2)", "0");
    const auto two = corollary_two_squares(p, 1'000'000);
    CHECK(std::abs(two.comparator("gamma_times_global").relative_deviation) <= 0.01);
    CHECK(std::abs(two.comparator("closed_form").relative_deviation) <= 0.1);
    CHECK_FALSE(two.notes.empty());

    const auto kf = corollary_kfree(p, 3, 1'000'000);
    CHECK(std::abs(kf.comparator("closed_form").relative_deviation) <= 5e-3);

    // alpha = 2: Beatty members are the even numbers.
    const auto even = corollary_two_squares(P("2", "0"), 10000);
    const auto table = multfun::sieve_two_squares(10000);
    std::uint64_t count = 0;
    for (std::uint64_t n = 2; n <= 10000; n += 2) count += table.raw(n);
    CHECK(*even.beatty_exact == count);

    // Even square-free numbers have density 2/pi^2, not (1/2)(6/pi^2).
    const auto sf = corollary_kfree(P("2", "0"), 2, 10000);
    CHECK(sf.comparator("closed_form").relative_deviation == doctest::Approx(-1.0 / 3).epsilon(0.02));
    CHECK_FALSE(sf.notes.empty());

    const auto four = corollary_four_squares(p, 100000);
    CHECK(std::abs(four.comparator("closed_form").relative_deviation) <= 0.01);
    CHECK(std::abs(four.comparator("sigma_sq_sum").relative_deviation) <= 5e-3);
    const auto small = corollary_four_squares(p, 10000);
    const auto& over_n = small.comparator("r4_over_n_sum");
    CHECK(std::abs(over_n.observed - over_n.reference) <= 5 * std::pow(std::log(1e4), 2));
}
