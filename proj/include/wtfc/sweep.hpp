#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "scheme.hpp"

namespace wtfc {

enum class SweepAxis
{
    snr_db,          //!< 10 log10(P_r / (N_0 B)); sets P_r
    duty_cycle,
    symbol_time,
    bandwidth,
    doppler_spread,
};

char const* to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string const& name);

/// How shadowing interacts with the power budget.
enum class PowerConvention
{
    fixed_transmit,     //!< P_t from the deterministic path; shadowing changes E[P_r]
    fixed_mean_receive, //!< P_t rescaled so E[m^2] P_t = P_r
};

/// Power budget: exactly one of receive/transmit power is set.
struct PowerSpec
{
    std::optional<double> receive_power;
    std::optional<double> transmit_power;
    double noise_density{1};
    PowerConvention convention{PowerConvention::fixed_transmit};
};

struct LinkBudget
{
    double receive_power{0};
    double transmit_power{0};  //!< after the power convention is applied
};

/// Resolve P_r and P_t. A disabled large-scale model is a unit-gain link.
LinkBudget resolve_link(PowerSpec const& power, LargeScaleModel const& channel);

struct BaseConfig
{
    PhysicalInputs physical;
    LargeScaleModel channel;
    PowerSpec power;
    std::uint64_t iterations{1'000'000};
    std::uint64_t seed{1};
};

struct SweepSpec
{
    BaseConfig base;
    SweepAxis axis{SweepAxis::snr_db};
    std::vector<double> grid;
    std::vector<Modulation> variants{Modulation::wtfc};
    bool awgn{true};
    //! AWGN baseline from the transmit rather than the receive power.
    bool awgn_uses_transmit_power{false};
    //! Every grid point reuses base.seed; otherwise seed = mix(seed, index).
    bool common_random_numbers{true};
};

struct SweepRow
{
    double axis_value{0};
    Modulation variant{Modulation::wtfc};
    double p_e{0};
    double ci_half_width_95{0};
    double capacity_bps{0};
    double ceiling_bps{0};
    double awgn_bps{0};
    bool shadowing_enabled{false};
    std::uint64_t seed{0};
    std::uint64_t iterations{0};
    std::string skipped_reason;  //!< empty when the row was computed

    // Context for derived columns.
    double receive_power{0};
    double noise_density{1};
    double bandwidth_hz{0};
    std::uint64_t alphabet_size{0};
    double duty_cycle{1};
    double symbol_time_s{0};

    bool skipped() const { return !skipped_reason.empty(); }
    //! Capacity half-width implied by the p_e interval.
    double capacity_half_width() const;
};

struct SweepResult
{
    SweepAxis axis{SweepAxis::snr_db};
    std::vector<SweepRow> rows;

    std::size_t skipped_count() const;
};

/// Throws ValidationError on an invalid base configuration; invalid grid
/// points become skipped rows.
SweepResult run_sweep(SweepSpec const& spec, int threads = 0);

struct ShadowingComparison
{
    SweepResult unshadowed;
    SweepResult shadowed;
    //! Per row: 100 (C_unshadowed - C_shadowed) / C_unshadowed.
    std::vector<double> capacity_loss_pct;
};

/// Same sweep with shadowing off and with sigma_db, from the same seed.
ShadowingComparison compare_shadowing(SweepSpec const& spec, double sigma_db, int threads = 0);

/// Apply an axis value to a copy of the base configuration.
BaseConfig apply_axis(BaseConfig base, SweepAxis axis, double value);

}  // namespace wtfc
