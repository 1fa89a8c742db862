#include "wtfc/scheme.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wtfc/error.hpp"

namespace wtfc {
namespace {

// Relative slack used when a product of decimal inputs should be integral,
// e.g. 1e8 * 99.7e-6 evaluating to 9969.999999999998.
constexpr double integer_slack = 1e-9;

double snap_to_integer(double x)
{
    double nearest = std::round(x);
    if (std::abs(x - nearest) <= integer_slack * std::max(1.0, std::abs(x)))
        return nearest;
    return x;
}

bool positive_finite(double x)
{
    return std::isfinite(x) && x > 0;
}

}  // namespace

char const* to_string(Modulation m)
{
    switch (m)
    {
        case Modulation::wtfc:
            return "WTFC";
        case Modulation::ifsk:
            return "IFSK";
    }
    return "?";
}

double SchemeParams::ceiling_bps() const
{
    return bits_per_symbol * (inputs.duty_cycle / inputs.symbol_time_s);
}

std::optional<std::uint64_t> slots_per_cycle(double duty_cycle)
{
    if (!(duty_cycle > 0 && duty_cycle <= 1))
        return std::nullopt;
    double inverse = snap_to_integer(1 / duty_cycle);
    if (inverse != std::floor(inverse) || inverse > 1e15)
        return std::nullopt;
    return static_cast<std::uint64_t>(inverse);
}

void validate_fields(PhysicalInputs const& in)
{
    if (!positive_finite(in.bandwidth_hz))
        throw ValidationError("bandwidth_hz", "must be positive");
    if (!positive_finite(in.symbol_time_s))
        throw ValidationError("symbol_time_s", "must be positive");
    if (!(std::isfinite(in.delay_spread_s) && in.delay_spread_s >= 0))
        throw ValidationError("delay_spread_s", "must be nonnegative");
    if (!(std::isfinite(in.doppler_spread_hz) && in.doppler_spread_hz >= 0))
        throw ValidationError("doppler_spread_hz", "must be nonnegative");
    if (!(in.duty_cycle > 0 && in.duty_cycle <= 1))
        throw ValidationError("duty_cycle", "must lie in (0, 1]");
    if (!slots_per_cycle(in.duty_cycle))
        throw ValidationError("duty_cycle",
                              "1/duty_cycle = " + std::to_string(1 / in.duty_cycle)
                                  + " is not an integer");
    if (in.spacing_multiplier && *in.spacing_multiplier == 0)
        throw ValidationError("spacing_multiplier", "must be a positive integer");
    if (in.guard_time_s
        && !(std::isfinite(*in.guard_time_s) && *in.guard_time_s >= in.delay_spread_s))
        throw ValidationError("guard_time_s", "must be at least the delay spread");
}

SchemeParams derive_scheme(PhysicalInputs const& in)
{
    validate_fields(in);
    if (in.delay_spread_s >= in.symbol_time_s)
        throw ValidationError("delay_spread_s", "must be shorter than the symbol time");
    double window = in.window_s();
    if (!(window > 0))
        throw ValidationError("guard_time_s", "must be shorter than the symbol time");

    SchemeParams p;
    p.inputs = in;

    // Smallest q with q / window >= B_d.
    double min_q = snap_to_integer(in.doppler_spread_hz * window);
    double q_needed = std::max(1.0, std::ceil(min_q));
    if (q_needed > std::numeric_limits<std::uint32_t>::max())
        throw ValidationError("doppler_spread_hz", "requires an unrepresentable tone spacing");
    if (in.spacing_multiplier)
    {
        if (*in.spacing_multiplier < q_needed)
            throw ValidationError("spacing_multiplier",
                                  "tone spacing q/(T_s - T_d) is below the Doppler spread");
        p.spacing_multiplier = *in.spacing_multiplier;
    }
    else
    {
        p.spacing_multiplier = static_cast<std::uint32_t>(q_needed);
    }
    p.tone_spacing_hz = p.spacing_multiplier / window;

    double tones = std::floor(snap_to_integer(in.bandwidth_hz * window / p.spacing_multiplier));
    if (tones < 2)
        throw ValidationError("bandwidth_hz",
                              "fewer than two tones fit (M = " + std::to_string(tones) + ")");
    if (tones > 1e15)
        throw ValidationError("bandwidth_hz", "tone count too large");
    p.tone_count = static_cast<std::uint64_t>(tones);
    p.slots_per_cycle = *slots_per_cycle(in.duty_cycle);
    if (p.tone_count > std::numeric_limits<std::uint64_t>::max() / p.slots_per_cycle)
        throw ValidationError("duty_cycle", "alphabet size overflows");
    p.alphabet_size = p.tone_count * p.slots_per_cycle;
    p.bits_per_symbol = std::log2(static_cast<double>(p.alphabet_size));
    return p;
}

double amplitude(double transmit_power, SchemeParams const& params)
{
    if (!positive_finite(transmit_power))
        throw ValidationError("transmit_power", "must be positive");
    auto const& in = params.inputs;
    return std::sqrt(transmit_power * in.symbol_time_s / (in.duty_cycle * in.window_s()));
}

}  // namespace wtfc
