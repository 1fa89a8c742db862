#pragma once

#include <cstdint>

#include "channel.hpp"
#include "rng.hpp"
#include "scheme.hpp"

namespace wtfc {

/// Exponential law of |r|^2 in the signal slot: mean mu >= 1.
struct SignalSlotStat
{
    double mu{1};
};

struct PeEstimate
{
    double p_e{0};
    std::uint64_t errors{0};
    std::uint64_t iterations{0};
    double half_width_95{0};
    std::uint64_t seed{0};
};

/// 1.96 * sqrt(p (1 - p) / n).
double binomial_half_width_95(double p, std::uint64_t n);

/// Everything the per-symbol error kernel needs, reduced from the scheme,
/// channel and power budget.
struct SlotModel
{
    //! P_t T_s / (theta N_0): signal energy per slot before large-scale gain.
    double energy{0};
    //! Deterministic m^2 (1 when the large-scale model is disabled).
    double path_gain{1};
    //! Shadowing spread; 0 disables the log-normal factor.
    double shadowing_std_db{0};
    std::uint32_t shadowing_block_symbols{1};
    //! Competing noise-only outputs, N = S - 1.
    std::uint64_t competitors{1};
};

SlotModel make_slot_model(SchemeParams const& params,
                          LargeScaleModel const& channel,
                          double transmit_power,
                          double noise_density);

struct McOptions
{
    std::uint64_t iterations{1'000'000};
    std::uint64_t seed{1};
    //! Worker threads; 0 uses the OpenMP default. Never changes results.
    int threads{0};
};

//! Iterations per independently seeded chunk (before block alignment).
inline constexpr std::uint64_t chunk_iterations = 1u << 16;

SignalSlotStat signal_slot_mean(double transmit_power,
                                SchemeParams const& params,
                                double noise_density,
                                double m);

// Inverse-CDF samplers. The `u` overloads map a uniform on [0,1) directly.
double sample_signal_power(SignalSlotStat stat, double u);
double sample_signal_power(SignalSlotStat stat, RandomStream& rng);
double sample_max_noise(std::uint64_t n, double u);
double sample_max_noise(std::uint64_t n, RandomStream& rng);

/// Monte Carlo symbol-error probability, OpenMP-parallel over chunks.
PeEstimate estimate_pe(SlotModel const& model, McOptions const& options);
PeEstimate estimate_pe(SchemeParams const& params,
                       LargeScaleModel const& channel,
                       double transmit_power,
                       double noise_density,
                       McOptions const& options);

/// Serial reference of estimate_pe: same chunks, same draws, one thread.
PeEstimate estimate_pe_serial(SlotModel const& model, McOptions const& options);

/// Reference that draws every competing noise output individually.
/// Limited to small alphabets (competitors <= max_naive_competitors).
inline constexpr std::uint64_t max_naive_competitors = 1u << 16;
PeEstimate estimate_pe_naive(SlotModel const& model, McOptions const& options);

/// Exact error probability of one Exp(mu) signal output against n
/// independent Exp(1) noise outputs.
double analytic_pe_no_shadowing(double mu, std::uint64_t n);

// The two evaluation routes behind analytic_pe_no_shadowing.
double analytic_pe_alternating_sum(double mu, std::uint64_t n);
double analytic_pe_quadrature(double mu, std::uint64_t n);

//! Largest n evaluated with the alternating sum.
inline constexpr std::uint64_t max_alternating_terms = 50;

}  // namespace wtfc
