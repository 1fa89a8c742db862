#pragma once

// Per-symbol draws shared by the parallel and serial estimators.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "wtfc/detector.hpp"
#include "wtfc/rng.hpp"

namespace wtfc::detail {

inline double max_noise_quantile(std::uint64_t n, double u)
{
    // -ln(1 - u^(1/n)) without forming u^(1/n) near 1.
    return -std::log(-std::expm1(std::log(u) / static_cast<double>(n)));
}

inline double exponential_quantile(double mean, double u)
{
    return -mean * std::log1p(-u);
}

struct ChunkLayout
{
    std::uint64_t size{0};
    std::uint64_t count{0};

    std::uint64_t length(std::uint64_t chunk, std::uint64_t iterations) const
    {
        std::uint64_t begin = chunk * size;
        return std::min(size, iterations - begin);
    }
};

inline ChunkLayout make_layout(std::uint64_t iterations, std::uint32_t block)
{
    ChunkLayout layout;
    // Chunks hold whole shadowing blocks.
    layout.size = (chunk_iterations + block - 1) / block * block;
    layout.count = (iterations + layout.size - 1) / layout.size;
    return layout;
}

//! Tracks the large-scale power gain m^2, one shadowing uniform per symbol.
class LargeScaleTrack
{
  public:
    explicit LargeScaleTrack(SlotModel const& model)
        : path_gain_(model.path_gain)
        , sigma_np_(std::numbers::ln10 / 10 * model.shadowing_std_db)
        , block_(model.shadowing_block_symbols)
        , gain_(model.path_gain)
    {
    }

    double next(std::uint64_t index, RandomStream& rng)
    {
        double u = rng.uniform_open();
        if (sigma_np_ > 0 && index % block_ == 0)
            gain_ = path_gain_ * std::exp(-sigma_np_ * standard_normal_quantile(u));
        return gain_;
    }

  private:
    double path_gain_;
    double sigma_np_;
    std::uint64_t block_;
    double gain_;
};

//! Error count of one chunk using the inverse-CDF max-of-noise draw.
inline std::uint64_t count_errors_fast(SlotModel const& model,
                                       std::uint64_t seed,
                                       std::uint64_t chunk,
                                       std::uint64_t length)
{
    RandomStream rng(seed, chunk);
    LargeScaleTrack track(model);
    std::uint64_t errors = 0;
    for (std::uint64_t i = 0; i < length; ++i)
    {
        double mu = track.next(i, rng) * model.energy + 1;
        double signal = exponential_quantile(mu, rng.uniform());
        double noise = max_noise_quantile(model.competitors, rng.uniform());
        errors += signal <= noise;
    }
    return errors;
}

void validate(SlotModel const& model, McOptions const& options);
PeEstimate make_estimate(std::uint64_t errors, McOptions const& options);

}  // namespace wtfc::detail
