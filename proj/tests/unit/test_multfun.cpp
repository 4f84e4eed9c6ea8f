#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "beattysum/errors.hpp"
#include "beattysum/multfun.hpp"
#include "oracles.hpp"

using namespace bsum;
using namespace bsum::multfun;

namespace {

bool is_two_squares_direct(std::uint64_t n) {
    for (std::uint64_t a = 0; a * a <= n; ++a) {
        const std::uint64_t rest = n - a * a;
        const auto b = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
        if (b * b == rest) return true;
    }
    return false;
}

std::uint64_t sigma_direct(std::uint64_t n) {
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

}  // namespace

TEST_CASE("function names") {
    CHECK(ArithmeticFunction::parse("kfree", 3).id() == "k_free(3)");
    CHECK(ArithmeticFunction::parse("two_squares") == ArithmeticFunction::two_squares());
    CHECK(ArithmeticFunction::parse("r4_over_8n").class_bound() == 4.0);
    CHECK_THROWS_AS(ArithmeticFunction::parse("nope"), ParseError);
    CHECK_THROWS_AS(ArithmeticFunction::k_free(1), DomainError);
}

TEST_CASE("smallest prime factors and primes") {
    const auto spf = smallest_prime_factors(100000, 1);
    CHECK(spf == smallest_prime_factors(100000, 3));
    CHECK(spf[2] == 2);
    CHECK(spf[91] == 7);
    CHECK(spf[99991] == 99991);
    const auto primes = primes_up_to(100);
    CHECK(primes.size() == 25);
    CHECK(primes_up_to(1'000'000).size() == 78498);
}

TEST_CASE("two-squares sieve") {
    const auto t = sieve_two_squares(2000);
    CHECK(t.raw(25) == 1);
    CHECK(t.raw(3) == 0);
    CHECK(t.raw(1) == 1);
    for (std::uint64_t n = 1; n <= 2000; ++n) REQUIRE(t.raw(n) == is_two_squares_direct(n));
    CHECK(sieve_two_squares(1'000'000, SieveMethod::mark_sum_of_squares, 1) ==
          sieve_two_squares(1'000'000, SieveMethod::factor_criterion, 2));
}

TEST_CASE("k-free sieve") {
    CHECK(sieve_kfree(100, 2).raw(12) == 0);
    CHECK(sieve_kfree(100, 3).raw(12) == 1);
    const auto t = sieve_kfree(1'000'000, 2);
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= t.size(); ++n) count += t.raw(n);
    CHECK(count == 607926);
    CHECK(static_cast<std::int64_t>(count) == oracle::squarefree_count(1'000'000));
    for (unsigned k : {2u, 3u}) {
        for (std::uint64_t N : {100'000ull, 1'000'000ull}) {
            const auto tk = sieve_kfree(N, k);
            double c = 0;
            for (std::uint64_t n = 1; n <= N; ++n) c += tk.raw(n);
            const double Nd = static_cast<double>(N);
            CHECK(std::abs(c / Nd - 1.0 / zeta_int(k).value) <= 3 * std::pow(Nd, 1.0 / k - 1));
        }
    }
    // |mu| agrees with the square-free indicator.
    CHECK(sieve_moebius_abs(100000).raw(30) == 1);
    const auto mu = sieve_moebius_abs(100000);
    const auto sf = sieve_kfree(100000, 2);
    for (std::uint64_t n = 1; n <= 100000; ++n) REQUIRE(mu.raw(n) == sf.raw(n));
}

TEST_CASE("r4 and the lattice oracle") {
    CHECK(r4_jacobi(1) == 8);
    CHECK(r4_jacobi(2) == 24);
    CHECK(r4_jacobi(8) == 24);
    CHECK(r4_lattice_oracle(1) == 8);
    CHECK(r4_lattice_oracle(4) == 24);
    CHECK(r4_lattice_oracle(0) == 1);
    const auto lattice = r4_lattice_table(2000);
    const auto t = sieve_r4(2000);
    CHECK(t.raw(1) == 8);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        REQUIRE(r4_jacobi(n) == lattice[n]);
        REQUIRE(t.raw(n) == lattice[n]);
    }
    CHECK(r4_lattice_oracle(1999) == lattice[1999]);
}

TEST_CASE("r4(n)/(8n) is multiplicative with f(p) <= 3/2") {
    auto f = [](std::uint64_t n) { return static_cast<double>(r4_jacobi(n)) / (8.0 * static_cast<double>(n)); };
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> u(1, 10000);
    int tested = 0;
    while (tested < 10000) {
        const auto m = u(rng), n = u(rng);
        if (std::gcd(m, n) != 1) continue;
        ++tested;
        REQUIRE(f(m * n) == doctest::Approx(f(m) * f(n)).epsilon(1e-13));
    }
    for (std::uint32_t p : primes_up_to(10000)) {
        REQUIRE(f(p) <= 1.5);
        if (p > 2) REQUIRE(f(p) == doctest::Approx((p + 1.0) / p).epsilon(1e-15));
    }
    const auto t = sieve_r4(1000, true);
    CHECK(t.value(3) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("sigma") {
    const auto t = sieve_sigma(3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) REQUIRE(t.raw(n) == sigma_direct(n));
    CHECK(sigma_sq_sum(3) == 26);
    mpz_class direct = 0;
    for (std::uint64_t n = 1; n <= 3000; ++n) direct += mpz_class(static_cast<unsigned long>(t.raw(n) * t.raw(n)));
    CHECK(sigma_sq_sum(3000) == direct);
    CHECK(sigma_sq_sum(3001) > sigma_sq_sum(3000));
    const double N = 1e5;
    const double ref = 5.0 / 6.0 * zeta_int(3).value * N * N * N;
    CHECK(std::abs(sigma_sq_sum(100000).get_d() / ref - 1) <= 5e-3);
}

TEST_CASE("constants") {
    const double pi = std::numbers::pi;
    CHECK(std::abs(zeta_int(2).value - pi * pi / 6) <= 1e-10);
    CHECK(std::abs(zeta_int(4).value - pi * pi * pi * pi / 90) <= 1e-10);
    CHECK(std::abs(zeta_truncated(3, 1'000'000) - zeta_truncated(3, 10'000'000)) <= 1e-10);
    CHECK(std::abs(zeta_int(3).value - 1.2020569031595942) <= 1e-12);
    CHECK(zeta_int(2).error_bound <= 1e-12);
    CHECK_THROWS_AS(zeta_int(1), DomainError);

    const auto c6 = landau_constant(1'000'000);
    const auto c7 = landau_constant(10'000'000);
    CHECK(std::abs(c6.value - c7.value) <= 1e-6);
    // value <= C <= value + tail for both cutoffs (C = 0.764223653589220...)
    const double C = 0.76422365358922066;
    CHECK(c6.value <= C);
    CHECK(C <= c6.value + c6.tail_bound);
    CHECK(c7.value <= C);
    CHECK(C <= c7.value + c7.tail_bound);
    CHECK_THROWS_AS(landau_constant(10), DomainError);
}

TEST_CASE("class check") {
    CHECK(class_check(sieve_unit(1000), 1).member);
    CHECK(class_check(sieve_two_squares(1'000'000), 1).member);
    const auto r = class_check(sieve_r4(1'000'000, true), 4);
    CHECK(r.member);
    CHECK(r.max_prime_value <= 1.5);
    CHECK(r.mean_square < 16);
    CHECK_FALSE(class_check(sieve_sigma(1000), 4).member);
}

TEST_CASE("table dump round trip") {
    for (const auto& t : {sieve_kfree(5000, 3), sieve_r4(5000), sieve_two_squares(777)}) {
        std::stringstream buf;
        t.save(buf);
        const std::string bytes = buf.str();
        CHECK(bytes.substr(0, 4) == "BSTB");
        const auto back = SieveTable::load(buf);
        CHECK(back == t);
        CHECK(back.function() == t.function());
    }
    std::stringstream bad("XXXXjunk");
    CHECK_THROWS_AS(SieveTable::load(bad), ParseError);
    std::stringstream truncated;
    sieve_r4(100).save(truncated);
    std::string cut = truncated.str().substr(0, 40);
    std::stringstream in(cut);
    CHECK_THROWS_AS(SieveTable::load(in), ParseError);
}

TEST_CASE("capacity") {
    CHECK_THROWS_AS(sieve_r4(kMaxDivisorN + 1), CapacityExceeded);
    CHECK_THROWS_AS(sieve_kfree(kMaxIndicatorN + 1, 2), CapacityExceeded);
}
