// Reference estimators kept for testing and benchmarking the parallel path.

#include <algorithm>
#include <cmath>

#include "detector_kernel.hpp"
#include "wtfc/detector.hpp"
#include "wtfc/error.hpp"

namespace wtfc {
namespace {

// Naive draws use a disjoint family of streams so they stay independent of
// the fast path at the same seed.
constexpr std::uint64_t naive_stream_base = 1ULL << 63;

std::uint64_t count_errors_naive(SlotModel const& model,
                                 std::uint64_t seed,
                                 std::uint64_t chunk,
                                 std::uint64_t length)
{
    RandomStream rng(seed, naive_stream_base + chunk);
    detail::LargeScaleTrack track(model);
    std::uint64_t errors = 0;
    for (std::uint64_t i = 0; i < length; ++i)
    {
        double mu = track.next(i, rng) * model.energy + 1;
        double signal = detail::exponential_quantile(mu, rng.uniform());
        double noise = 0;
        for (std::uint64_t k = 0; k < model.competitors; ++k)
            noise = std::max(noise, detail::exponential_quantile(1, rng.uniform()));
        errors += signal <= noise;
    }
    return errors;
}

}  // namespace

PeEstimate estimate_pe_serial(SlotModel const& model, McOptions const& options)
{
    detail::validate(model, options);
    auto layout = detail::make_layout(options.iterations, model.shadowing_block_symbols);
    std::uint64_t errors = 0;
    for (std::uint64_t c = 0; c < layout.count; ++c)
        errors += detail::count_errors_fast(
            model, options.seed, c, layout.length(c, options.iterations));
    return detail::make_estimate(errors, options);
}

PeEstimate estimate_pe_naive(SlotModel const& model, McOptions const& options)
{
    detail::validate(model, options);
    if (model.competitors > max_naive_competitors)
        throw ValidationError("alphabet_size", "too large for the all-slots reference");
    auto layout = detail::make_layout(options.iterations, model.shadowing_block_symbols);
    std::uint64_t errors = 0;
    for (std::uint64_t c = 0; c < layout.count; ++c)
        errors += count_errors_naive(model, options.seed, c, layout.length(c, options.iterations));
    return detail::make_estimate(errors, options);
}

}  // namespace wtfc
