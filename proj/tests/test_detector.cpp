#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "wtfc/detector.hpp"
#include "wtfc/error.hpp"

using namespace wtfc;

namespace {

SlotModel slot(double mu, std::uint64_t alphabet, double sigma_db = 0)
{
    SlotModel m;
    m.energy = mu - 1;
    m.competitors = alphabet - 1;
    m.shadowing_std_db = sigma_db;
    return m;
}

bool within(PeEstimate const& est, double expected, double k = 3)
{
    double hw = std::max(est.half_width_95, binomial_half_width_95(expected, est.iterations));
    return std::abs(est.p_e - expected) <= k * hw;
}

}  // namespace

TEST_CASE("signal slot mean")
{
    PhysicalInputs in;
    in.bandwidth_hz = 1e6;
    in.symbol_time_s = 1e-3;
    auto p = derive_scheme(in);
    CHECK(signal_slot_mean(1, p, 1, 1).mu == doctest::Approx(1 + 1e-3).epsilon(1e-15));

    in.symbol_time_s = 100e-6;
    in.delay_spread_s = 0.3e-6;
    in.duty_cycle = 1e-3;
    p = derive_scheme(in);
    CHECK(signal_slot_mean(1e5, p, 1, 1).mu == doctest::Approx(1e4 + 1).epsilon(1e-14));
    CHECK(signal_slot_mean(1e5, p, 1, 0).mu == 1);
    CHECK(signal_slot_mean(1e5, p, 1, 0.5).mu == doctest::Approx(2500 + 1).epsilon(1e-14));
}

TEST_CASE("signal power sampler")
{
    CHECK(sample_signal_power({1}, 0.0) == 0);
    CHECK(sample_signal_power({1}, 1 - std::exp(-1.0)) == doctest::Approx(1).epsilon(1e-14));
    CHECK(sample_signal_power({4}, 0.5) == doctest::Approx(4 * std::log(2.0)).epsilon(1e-15));

    RandomStream rng(5, 0);
    double sum = 0;
    int const n = 1'000'000;
    for (int i = 0; i < n; ++i)
        sum += sample_signal_power({10}, rng);
    CHECK(sum / n == doctest::Approx(10).epsilon(0.005));
}

TEST_CASE("max-of-noise sampler spot values")
{
    CHECK(sample_max_noise(1, 1 - std::exp(-1.0)) == doctest::Approx(1).epsilon(1e-14));
    CHECK(sample_max_noise(1, 0.0) == 0);
    CHECK(sample_max_noise(3, 0.5) == doctest::Approx(-std::log(1 - std::cbrt(0.5))).epsilon(1e-14));
    CHECK_THROWS_AS(sample_max_noise(0, 0.5), ValidationError);
}

TEST_CASE("max-of-noise sampler for huge N stays finite")
{
    double n = 1e9;
    for (double u : {1e-6, 0.1, 0.5, 0.9, 1 - 1e-9})
    {
        double y = sample_max_noise(static_cast<std::uint64_t>(n), u);
        REQUIRE(std::isfinite(y));
        // Gumbel limit: ln N - ln(-ln u)
        CHECK(y == doctest::Approx(std::log(n) - std::log(-std::log(u))).epsilon(1e-8));
    }
}

TEST_CASE("max-of-noise distribution for N = 3")
{
    int const draws = 1'000'000;
    RandomStream rng(31, 0);
    std::vector<double> fast(draws);
    for (auto& v : fast)
        v = sample_max_noise(3, rng);
    auto cdf = [](double x) { return std::pow(-std::expm1(-x), 3); };
    CHECK(oracle::ks_one_sample(fast, cdf) < 0.002);

    auto naive = oracle::naive_max_samples(3, draws, 32);
    CHECK(oracle::ks_one_sample(naive, cdf) < 0.002);
    // 95% critical value for two samples of 10^6 is about 0.0019.
    CHECK(oracle::ks_two_sample(fast, naive) < 0.002);
}

TEST_CASE("analytic error probability spot values")
{
    CHECK(analytic_pe_no_shadowing(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(analytic_pe_no_shadowing(10, 1) == doctest::Approx(1.0 / 11).epsilon(1e-15));
    double ref = oracle::quadrature_pe(10, 7);
    CHECK(std::abs(analytic_pe_no_shadowing(10, 7) - ref) < 1e-10);
    CHECK(std::abs(analytic_pe_alternating_sum(10, 7) - ref) < 1e-10);
    CHECK(std::abs(analytic_pe_quadrature(10, 7) - ref) < 1e-10);
    CHECK_THROWS_AS(analytic_pe_no_shadowing(0.5, 3), ValidationError);
    CHECK_THROWS_AS(analytic_pe_no_shadowing(2, 0), ValidationError);
}

TEST_CASE("analytic routes agree with each other and the closed form")
{
    for (double mu : {1.0, 1.5, 3.0, 10.0, 100.0, 1e4, 1e7})
    {
        for (std::uint64_t n : {1, 2, 5, 17, 50})
        {
            double alt = analytic_pe_alternating_sum(mu, n);
            double quad = analytic_pe_quadrature(mu, n);
            CAPTURE(mu);
            CAPTURE(n);
            CHECK(std::abs(alt - quad) <= 1e-10);
            CHECK(std::abs(alt - oracle::beta_pe(mu, static_cast<double>(n))) <= 1e-11);
        }
        for (std::uint64_t n : {51, 1000, 269'999, 10'000'000})
        {
            double quad = analytic_pe_quadrature(mu, n);
            CAPTURE(mu);
            CAPTURE(n);
            double ref = oracle::beta_pe(mu, static_cast<double>(n));
            // lgamma of large arguments loses absolute accuracy.
            CHECK(std::abs(quad - ref) <= 1e-8);
            CHECK(analytic_pe_no_shadowing(mu, n) == quad);
        }
    }
}

TEST_CASE("analytic error probability is monotone")
{
    double prev = 2;
    for (double mu = 1; mu < 1e6; mu *= 1.3)
    {
        double p = analytic_pe_no_shadowing(mu, 99);
        CHECK(p < prev);
        prev = p;
    }
    prev = -1;
    for (std::uint64_t n = 1; n < 1'000'000; n = n * 3 + 1)
    {
        double p = analytic_pe_no_shadowing(50, n);
        CHECK(p > prev);
        prev = p;
    }
    for (std::uint64_t s : {2, 7, 64, 1000})
        CHECK(analytic_pe_no_shadowing(1, s - 1) == doctest::Approx(1 - 1.0 / s).epsilon(1e-12));
}

TEST_CASE("Monte Carlo matches the analytic value over a grid")
{
    McOptions opt;
    opt.iterations = 1'000'000;
    opt.seed = 17;
    for (double mu : {1.0, 3.0, 30.0, 1000.0})
    {
        for (std::uint64_t s : {2, 8, 256, 65536, 270000})
        {
            auto est = estimate_pe(slot(mu, s), opt);
            double exact = analytic_pe_no_shadowing(mu, s - 1);
            CAPTURE(mu);
            CAPTURE(s);
            CAPTURE(est.p_e);
            CAPTURE(exact);
            CHECK(within(est, exact));
        }
    }
}

TEST_CASE("limits")
{
    McOptions opt;
    opt.iterations = 1'000'000;
    opt.seed = 3;
    auto est = estimate_pe(slot(10, 2), opt);
    CHECK(within(est, 1.0 / 11));
    for (std::uint64_t s : {2, 100, 270000})
    {
        est = estimate_pe(slot(1, s), opt);
        CHECK(within(est, 1 - 1.0 / s));
    }
}

TEST_CASE("estimate is bounded by chance level")
{
    McOptions opt;
    opt.iterations = 200'000;
    for (std::uint64_t s : {2, 16, 4096})
    {
        for (double sigma : {0.0, 8.0})
        {
            auto est = estimate_pe(slot(1, s, sigma), opt);
            double chance = 1 - 1.0 / s;
            CHECK(est.p_e <= chance + 3 * binomial_half_width_95(chance, opt.iterations));
        }
    }
}

TEST_CASE("parallel, serial and thread counts give identical counts")
{
    McOptions opt;
    opt.iterations = 300'001;  // partial last chunk
    opt.seed = 99;
    for (double sigma : {0.0, 6.0})
    {
        auto m = slot(200, 5000, sigma);
        m.shadowing_block_symbols = sigma > 0 ? 7 : 1;
        auto serial = estimate_pe_serial(m, opt);
        for (int threads : {1, 2, 3, 8})
        {
            opt.threads = threads;
            auto par = estimate_pe(m, opt);
            CHECK(par.errors == serial.errors);
            CHECK(par.p_e == serial.p_e);
        }
        opt.threads = 0;
        CHECK(estimate_pe(m, opt).errors == serial.errors);
    }
}

TEST_CASE("fast sampler agrees with drawing every noise slot")
{
    McOptions opt;
    opt.iterations = 200'000;
    opt.seed = 8;
    for (std::uint64_t s : {2, 8, 64})
    {
        for (double sigma : {0.0, 8.0})
        {
            auto m = slot(20, s, sigma);
            auto fast = estimate_pe(m, opt);
            auto naive = estimate_pe_naive(m, opt);
            double pooled = (fast.p_e + naive.p_e) / 2;
            double se = std::sqrt(2 * pooled * (1 - pooled) / opt.iterations);
            CAPTURE(s);
            CAPTURE(sigma);
            CHECK(std::abs(fast.p_e - naive.p_e) <= 3 * 1.96 * se);
        }
    }
}

TEST_CASE("shadowing blocks keep the marginal error rate")
{
    McOptions opt;
    opt.iterations = 1'000'000;
    auto per_symbol = estimate_pe(slot(500, 1000, 8), opt);
    auto m = slot(500, 1000, 8);
    m.shadowing_block_symbols = 10;
    auto blocked = estimate_pe(m, opt);
    // Blocks of 10 inflate the variance by at most 10x.
    double hw = std::sqrt(10.0) * per_symbol.half_width_95;
    CHECK(std::abs(per_symbol.p_e - blocked.p_e) <= 3 * hw);
}

TEST_CASE("shadowing raises the error rate at high SNR")
{
    McOptions opt;
    opt.iterations = 1'000'000;
    auto clean = estimate_pe(slot(1e4, 1000), opt);
    auto shadowed = estimate_pe(slot(1e4, 1000, 8), opt);
    CHECK(shadowed.p_e > clean.p_e);
}

TEST_CASE("estimator input validation")
{
    McOptions opt;
    auto m = slot(2, 2);
    m.competitors = 0;
    CHECK_THROWS_AS(estimate_pe(m, opt), ValidationError);
    m = slot(2, 2);
    m.energy = -1;
    CHECK_THROWS_AS(estimate_pe(m, opt), ValidationError);
    m = slot(2, 2);
    opt.iterations = 0;
    CHECK_THROWS_AS(estimate_pe(m, opt), ValidationError);
    opt.iterations = 10;
    m.competitors = max_naive_competitors + 1;
    CHECK_THROWS_AS(estimate_pe_naive(m, opt), ValidationError);
}

TEST_CASE("half width")
{
    CHECK(binomial_half_width_95(0.5, 10000) == doctest::Approx(1.96 * 0.005));
    CHECK(binomial_half_width_95(0, 10000) == 0);
}
