#pragma once

#include <cstdint>

#include "scheme.hpp"

namespace wtfc {

struct CapacityResult
{
    double capacity_bps{0};
    double p_e{0};
    std::uint64_t alphabet_size{0};
    double ceiling_bps{0};
    Modulation scheme{Modulation::wtfc};
    //! p_e exceeded 1 - 1/S and was clamped.
    bool clamped{false};
};

/// Capacity of the S-ary symmetric DMC scaled by theta/T_s (bits/s).
CapacityResult dmc_capacity(double p_e,
                            std::uint64_t alphabet_size,
                            double duty_cycle,
                            double symbol_time_s,
                            Modulation scheme = Modulation::wtfc);

CapacityResult dmc_capacity(double p_e, SchemeParams const& params);

/// Half-width of the capacity interval induced by p_e +/- half_width.
double capacity_half_width(double p_e,
                           double p_e_half_width,
                           std::uint64_t alphabet_size,
                           double duty_cycle,
                           double symbol_time_s);

/// B log2(1 + P_r / (N_0 B)).
double awgn_capacity(double receive_power, double noise_density, double bandwidth_hz);

/// Same physical parameters with the time slot known to the receiver.
SchemeParams ifsk_variant(SchemeParams const& params);

}  // namespace wtfc
