#include "wtfc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "wtfc/error.hpp"

namespace wtfc {
namespace {

// Bits per channel use of the S-ary symmetric channel, written as
// (1-p) log2(S (1-p)) + p log2(S p / (S-1)) so that both ends are exact:
// p = 0 gives log2(S), p = 1 - 1/S gives log2(1) terms.
double symmetric_bits(double p, double s)
{
    if (p == 0)
        return std::log2(s);
    double bits = p * std::log2(s * p / (s - 1));
    if (p < 1)
        bits += (1 - p) * std::log2(s * (1 - p));
    return std::max(bits, 0.0);
}

}  // namespace

CapacityResult dmc_capacity(double p_e,
                            std::uint64_t alphabet_size,
                            double duty_cycle,
                            double symbol_time_s,
                            Modulation scheme)
{
    if (alphabet_size < 2)
        throw ValidationError("alphabet_size", "must be at least 2");
    if (!(std::isfinite(p_e) && p_e >= 0 && p_e <= 1))
        throw ValidationError("p_e", "must lie in [0, 1]");
    if (!(duty_cycle > 0 && duty_cycle <= 1))
        throw ValidationError("duty_cycle", "must lie in (0, 1]");
    if (!(std::isfinite(symbol_time_s) && symbol_time_s > 0))
        throw ValidationError("symbol_time_s", "must be positive");

    double const s = static_cast<double>(alphabet_size);
    double const rate = duty_cycle / symbol_time_s;
    double const p_max = 1 - 1 / s;

    CapacityResult result;
    result.alphabet_size = alphabet_size;
    result.scheme = scheme;
    result.ceiling_bps = std::log2(s) * rate;
    result.p_e = p_e;
    if (p_e > p_max)
    {
        // rounding-level overshoot is not worth a warning
        if (p_e - p_max > 1e-12)
            std::clog << "warning: p_e = " << p_e << " exceeds 1 - 1/S = " << p_max
                  << "; clamped\n";
        result.p_e = p_max;
        result.clamped = true;
    }
    result.capacity_bps = symmetric_bits(result.p_e, s) * rate;
    return result;
}

CapacityResult dmc_capacity(double p_e, SchemeParams const& params)
{
    return dmc_capacity(p_e,
                        params.alphabet_size,
                        params.inputs.duty_cycle,
                        params.inputs.symbol_time_s,
                        params.modulation);
}

double capacity_half_width(double p_e,
                           double p_e_half_width,
                           std::uint64_t alphabet_size,
                           double duty_cycle,
                           double symbol_time_s)
{
    double const p_max = 1 - 1 / static_cast<double>(alphabet_size);
    auto at = [&](double p) {
        p = std::clamp(p, 0.0, p_max);
        double s = static_cast<double>(alphabet_size);
        return symmetric_bits(p, s) * duty_cycle / symbol_time_s;
    };
    double center = at(p_e);
    return std::max(std::abs(at(p_e - p_e_half_width) - center),
                    std::abs(at(p_e + p_e_half_width) - center));
}

double awgn_capacity(double receive_power, double noise_density, double bandwidth_hz)
{
    if (!(receive_power > 0))
        throw ValidationError("receive_power", "must be positive");
    if (!(noise_density > 0))
        throw ValidationError("noise_density", "must be positive");
    if (!(bandwidth_hz > 0))
        throw ValidationError("bandwidth_hz", "must be positive");
    return bandwidth_hz * std::log1p(receive_power / (noise_density * bandwidth_hz))
           / std::numbers::ln2;
}

SchemeParams ifsk_variant(SchemeParams const& params)
{
    SchemeParams out = params;
    out.modulation = Modulation::ifsk;
    out.alphabet_size = params.tone_count;
    out.bits_per_symbol = std::log2(static_cast<double>(out.alphabet_size));
    return out;
}

}  // namespace wtfc
