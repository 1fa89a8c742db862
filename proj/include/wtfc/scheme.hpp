#pragma once

#include <cstdint>
#include <optional>

namespace wtfc {

enum class Modulation
{
    wtfc,  //!< time slot unknown to the receiver: S = M / theta
    ifsk,  //!< impulsive FSK, slot known: S = M
};

char const* to_string(Modulation m);

/// Physical inputs a WTFC link is designed from.
struct PhysicalInputs
{
    double bandwidth_hz{0};
    double symbol_time_s{0};
    double delay_spread_s{0};
    double doppler_spread_hz{0};
    double duty_cycle{1};
    //! Forces the tone-spacing multiplier q instead of the smallest legal one.
    std::optional<std::uint32_t> spacing_multiplier;
    //! Guard interval; defaults to the delay spread and may not be shorter.
    std::optional<double> guard_time_s;

    double guard_s() const { return guard_time_s.value_or(delay_spread_s); }
    double window_s() const { return symbol_time_s - guard_s(); }
};

/// Derived signal parameters.
struct SchemeParams
{
    PhysicalInputs inputs;
    Modulation modulation{Modulation::wtfc};
    std::uint32_t spacing_multiplier{1};  //!< q
    double tone_spacing_hz{0};            //!< q / (T_s - T_d)
    std::uint64_t tone_count{0};          //!< M
    std::uint64_t slots_per_cycle{1};     //!< 1 / theta
    std::uint64_t alphabet_size{0};       //!< S
    double bits_per_symbol{0};            //!< log2(S), not floored

    //! Noise-only detector outputs competing with the signal slot.
    std::uint64_t competitors() const { return alphabet_size - 1; }
    //! Noiseless capacity theta/T_s * log2(S) in bits/s.
    double ceiling_bps() const;
};

/// Field-level checks that do not depend on combinations of inputs.
void validate_fields(PhysicalInputs const& inputs);

/// Validate inputs and derive q, tone spacing, M, 1/theta and S.
/// Throws ValidationError naming the offending field.
SchemeParams derive_scheme(PhysicalInputs const& inputs);

/// Transmit amplitude sqrt(P_t T_s / (theta (T_s - T_d))).
double amplitude(double transmit_power, SchemeParams const& params);

/// 1/theta when it is an integer (to within rounding), otherwise nullopt.
std::optional<std::uint64_t> slots_per_cycle(double duty_cycle);

}  // namespace wtfc
