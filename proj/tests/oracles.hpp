#pragma once

// Test-only reference computations. Nothing here calls into the library's
// samplers or analytic routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// P_e = 1 - n B(n, 1 + 1/mu) = 1 - Gamma(n+1) Gamma(1+1/mu) / Gamma(n+1+1/mu),
/// the closed form of the max-of-exponentials error integral.
inline double beta_pe(double mu, double n)
{
    // long double: lgamma(n) is ~1e8 for the largest n used
    long double a = 1.0L / mu;
    long double log_pc = std::lgamma(n + 1.0L) + std::lgamma(1 + a) - std::lgamma(n + 1.0L + a);
    return static_cast<double>(-std::expm1(log_pc));
}

/// Adaptive Simpson on [a, b].
inline double simpson(std::function<double(double)> const& f, double a, double b, double tol, int depth = 50)
{
    auto rule = [](double fa, double fm, double fb, double h) { return h / 6 * (fa + 4 * fm + fb); };
    std::function<double(double, double, double, double, double, double, double, int)> rec;
    rec = [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
        double mid = (lo + hi) / 2;
        double lm = (lo + mid) / 2, rm = (mid + hi) / 2;
        double flm = f(lm), frm = f(rm);
        double left = rule(flo, flm, fmid, mid - lo);
        double right = rule(fmid, frm, fhi, hi - mid);
        double delta = left + right - whole;
        if (d <= 0 || std::abs(delta) <= 15 * eps)
            return left + right + delta / 15;
        return rec(lo, mid, flo, flm, fmid, left, eps / 2, d - 1)
               + rec(mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
    };
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    return rec(a, b, fa, fm, fb, rule(fa, fm, fb, b - a), tol, depth);
}

/// Error probability by quadrature of the defining integral in x:
/// P_c = int_0^inf (1/mu) e^(-x/mu) (1 - e^(-x))^n dx.
inline double quadrature_pe(double mu, int n)
{
    auto f = [&](double x) { return std::exp(-x / mu) / mu * std::pow(-std::expm1(-x), n); };
    double upper = 80 * mu;
    // Split where the integrand changes character.
    double knee = std::log(static_cast<double>(n) + 1) + 5;
    double pc = simpson(f, 0, knee, 1e-15) + simpson(f, knee, upper, 1e-15);
    return 1 - pc;
}

/// Max of n Exp(1) draws, sampled naively with the standard library.
inline std::vector<double> naive_max_samples(std::uint64_t n, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> out(count);
    for (auto& v : out)
    {
        double m = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            m = std::max(m, exp1(gen));
        v = m;
    }
    return out;
}

/// sup |F_emp - F| for a sample against a continuous CDF.
inline double ks_one_sample(std::vector<double> sample, std::function<double(double)> const& cdf)
{
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i)
    {
        double f = cdf(sample[i]);
        d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
    }
    return d;
}

/// sup |F_a - F_b| between two empirical CDFs.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size())
    {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

/// Capacity of the S-ary symmetric channel in bits per use, textbook form.
inline double symmetric_bits(double p, double s)
{
    double c = std::log2(s);
    if (p < 1)
        c += (1 - p) * std::log2(1 - p);
    if (p > 0)
        c += p * std::log2(p / (s - 1));
    return c;
}

}  // namespace oracle
