#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wtfc/detector.hpp"
#include "wtfc/error.hpp"

namespace wtfc {
namespace {

void check_arguments(double mu, std::uint64_t n)
{
    if (!(std::isfinite(mu) && mu >= 1))
        throw ValidationError("mu", "must be at least 1");
    if (n == 0)
        throw ValidationError("competitors", "must be positive");
}

}  // namespace

//---------------------------------------------------------------------------//
/*!
 * P_e = sum_{k=1..n} (-1)^(k+1) C(n,k) / (1 + k mu).
 *
 * Terms reach C(50,25) ~ 1e14 while the sum is O(1), so the terms
 * themselves are formed and summed with 50 significant digits.
 */
double analytic_pe_alternating_sum(double mu, std::uint64_t n)
{
    check_arguments(mu, n);
    if (n > max_alternating_terms)
        throw ValidationError("competitors", "alternating sum limited to 50 terms");

    using Real = boost::multiprecision::cpp_bin_float_50;
    Real const m{mu};
    Real binom{1};
    Real sum{0};
    for (std::uint64_t k = 1; k <= n; ++k)
    {
        binom = binom * Real(n - k + 1) / Real(k);
        Real term = binom / (1 + Real(k) * m);
        if (k % 2 == 1)
            sum += term;
        else
            sum -= term;
    }
    return static_cast<double>(sum);
}

//---------------------------------------------------------------------------//
/*!
 * P_e = int_0^inf (1/mu) e^(-x/mu) [1 - (1 - e^(-x))^n] dx.
 *
 * The bracket is 1 to double precision below x = ln n - 10 (there
 * (1 - e^-x)^n < exp(-e^10)), so that piece is integrated in closed form.
 * The rest is smooth on an O(1) scale around ln n.
 */
double analytic_pe_quadrature(double mu, std::uint64_t n)
{
    check_arguments(mu, n);
    double const nn = static_cast<double>(n);
    auto integrand = [mu, nn](double x) {
        double miss = -std::expm1(nn * std::log1p(-std::exp(-x)));
        return std::exp(-x / mu) / mu * miss;
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double const head = std::max(0.0, std::log(nn) - 10);
    double const mid = std::log(nn) + 40;
    double error = 0;
    double p = -std::expm1(-head / mu);
    p += GK::integrate(integrand, head, mid, 15, 1e-12, &error);
    p += GK::integrate(integrand, mid, std::numeric_limits<double>::infinity(), 15, 1e-12, &error);
    return p;
}

double analytic_pe_no_shadowing(double mu, std::uint64_t n)
{
    if (n <= max_alternating_terms)
        return analytic_pe_alternating_sum(mu, n);
    return analytic_pe_quadrature(mu, n);
}

}  // namespace wtfc
