#include "wtfc/detector.hpp"

#include <cmath>
#include <omp.h>

#include "detector_kernel.hpp"
#include "wtfc/error.hpp"

namespace wtfc {

namespace detail {

void validate(SlotModel const& model, McOptions const& options)
{
    if (!(std::isfinite(model.energy) && model.energy >= 0))
        throw ValidationError("energy", "must be nonnegative");
    if (!(std::isfinite(model.path_gain) && model.path_gain >= 0))
        throw ValidationError("path_gain", "must be nonnegative");
    if (!(std::isfinite(model.shadowing_std_db) && model.shadowing_std_db >= 0))
        throw ValidationError("shadowing_std_db", "must be nonnegative");
    if (model.shadowing_block_symbols == 0)
        throw ValidationError("shadowing_block_symbols", "must be positive");
    if (model.competitors == 0)
        throw ValidationError("alphabet_size", "must be at least 2");
    if (options.iterations == 0)
        throw ValidationError("iterations", "must be positive");
}

PeEstimate make_estimate(std::uint64_t errors, McOptions const& options)
{
    PeEstimate est;
    est.errors = errors;
    est.iterations = options.iterations;
    est.seed = options.seed;
    est.p_e = static_cast<double>(errors) / static_cast<double>(options.iterations);
    est.half_width_95 = binomial_half_width_95(est.p_e, options.iterations);
    return est;
}

}  // namespace detail

double binomial_half_width_95(double p, std::uint64_t n)
{
    return 1.96 * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

SlotModel make_slot_model(SchemeParams const& params,
                          LargeScaleModel const& channel,
                          double transmit_power,
                          double noise_density)
{
    if (!(std::isfinite(transmit_power) && transmit_power >= 0))
        throw ValidationError("transmit_power", "must be nonnegative");
    if (!(std::isfinite(noise_density) && noise_density > 0))
        throw ValidationError("noise_density", "must be positive");
    validate(channel);

    auto const& in = params.inputs;
    SlotModel model;
    model.energy = transmit_power * in.symbol_time_s / (in.duty_cycle * noise_density);
    model.competitors = params.competitors();
    if (channel.enabled)
    {
        model.path_gain = path_gain(channel);
        model.shadowing_std_db = channel.shadowing_std_db;
        model.shadowing_block_symbols = channel.shadowing_block_symbols;
    }
    return model;
}

SignalSlotStat signal_slot_mean(double transmit_power,
                                SchemeParams const& params,
                                double noise_density,
                                double m)
{
    if (!(std::isfinite(m) && m >= 0))
        throw ValidationError("large_scale_amplitude", "must be nonnegative");
    LargeScaleModel unit;
    auto model = make_slot_model(params, unit, transmit_power, noise_density);
    return {m * m * model.energy + 1};
}

double sample_signal_power(SignalSlotStat stat, double u)
{
    return detail::exponential_quantile(stat.mu, u);
}

double sample_signal_power(SignalSlotStat stat, RandomStream& rng)
{
    return sample_signal_power(stat, rng.uniform());
}

double sample_max_noise(std::uint64_t n, double u)
{
    if (n == 0)
        throw ValidationError("competitors", "maximum over zero noise outputs");
    return detail::max_noise_quantile(n, u);
}

double sample_max_noise(std::uint64_t n, RandomStream& rng)
{
    return sample_max_noise(n, rng.uniform());
}

PeEstimate estimate_pe(SlotModel const& model, McOptions const& options)
{
    detail::validate(model, options);
    auto layout = detail::make_layout(options.iterations, model.shadowing_block_symbols);
    int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    auto const chunks = static_cast<std::int64_t>(layout.count);

    // Integer error counts make the reduction order-independent.
    std::uint64_t errors = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : errors) num_threads(threads)
    for (std::int64_t c = 0; c < chunks; ++c)
    {
        auto chunk = static_cast<std::uint64_t>(c);
        errors += detail::count_errors_fast(
            model, options.seed, chunk, layout.length(chunk, options.iterations));
    }
    return detail::make_estimate(errors, options);
}

PeEstimate estimate_pe(SchemeParams const& params,
                       LargeScaleModel const& channel,
                       double transmit_power,
                       double noise_density,
                       McOptions const& options)
{
    return estimate_pe(make_slot_model(params, channel, transmit_power, noise_density), options);
}

}  // namespace wtfc
