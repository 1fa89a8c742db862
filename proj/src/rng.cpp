#include "wtfc/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace wtfc {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double RandomStream::normal()
{
    return standard_normal_quantile(uniform_open());
}

//---------------------------------------------------------------------------//
/*!
 * Acklam's rational approximation (relative error ~1e-9) followed by one
 * Halley step against erfc, which brings it to full double precision.
 */
double standard_normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0))
    {
        if (p == 0.0)
            return -HUGE_VAL;
        if (p == 1.0)
            return HUGE_VAL;
        return std::nan("");
    }

    static constexpr std::array<double, 6> a{-3.969683028665376e+01,
                                             2.209460984245205e+02,
                                             -2.759285104469687e+02,
                                             1.383577518672690e+02,
                                             -3.066479806614716e+01,
                                             2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01,
                                             1.615858368580409e+02,
                                             -1.556989798598866e+02,
                                             6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03,
                                             -3.223964580411365e-01,
                                             -2.400758277161838e+00,
                                             -2.549732539343734e+00,
                                             4.374664141464968e+00,
                                             2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03,
                                             3.224671290700398e-01,
                                             2.445134137142996e+00,
                                             3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low)
    {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    else if (p <= 1 - p_low)
    {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }
    else
    {
        double q = std::sqrt(-2 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }

    // Halley refinement
    double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
    return x - u / (1 + x * u / 2);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    auto splitmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return splitmix(seed ^ splitmix(index));
}

}  // namespace wtfc
