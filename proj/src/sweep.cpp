#include "wtfc/sweep.hpp"

#include <cmath>
#include <limits>

#include "wtfc/capacity.hpp"
#include "wtfc/detector.hpp"
#include "wtfc/error.hpp"

namespace wtfc {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void validate_grid(std::vector<double> const& grid)
{
    if (grid.empty())
        throw ValidationError("grid", "must not be empty");
    for (double v : grid)
        if (!std::isfinite(v))
            throw ValidationError("grid", "values must be finite");
    if (grid.size() < 2)
        return;
    bool increasing = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
        bool ok = increasing ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
        if (!ok)
            throw ValidationError("grid", "must be strictly monotone");
    }
}

SweepRow skipped_row(double value, Modulation variant, std::string reason)
{
    SweepRow row;
    row.axis_value = value;
    row.variant = variant;
    row.p_e = row.ci_half_width_95 = row.capacity_bps = row.ceiling_bps = row.awgn_bps = nan;
    row.skipped_reason = std::move(reason);
    return row;
}

}  // namespace

char const* to_string(SweepAxis axis)
{
    switch (axis)
    {
        case SweepAxis::snr_db:
            return "snr_db";
        case SweepAxis::duty_cycle:
            return "duty_cycle";
        case SweepAxis::symbol_time:
            return "symbol_time";
        case SweepAxis::bandwidth:
            return "bandwidth";
        case SweepAxis::doppler_spread:
            return "doppler_spread";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(std::string const& name)
{
    for (auto axis : {SweepAxis::snr_db,
                      SweepAxis::duty_cycle,
                      SweepAxis::symbol_time,
                      SweepAxis::bandwidth,
                      SweepAxis::doppler_spread})
    {
        if (name == to_string(axis))
            return axis;
    }
    return std::nullopt;
}

LinkBudget resolve_link(PowerSpec const& power, LargeScaleModel const& channel)
{
    if (power.receive_power.has_value() == power.transmit_power.has_value())
        throw ValidationError("receive_power",
                              "exactly one of receive_power and transmit_power is required");
    if (!(std::isfinite(power.noise_density) && power.noise_density > 0))
        throw ValidationError("noise_density", "must be positive");
    validate(channel);

    double gain = channel.enabled ? path_gain(channel) : 1.0;
    LinkBudget link;
    if (power.receive_power)
    {
        if (!(std::isfinite(*power.receive_power) && *power.receive_power > 0))
            throw ValidationError("receive_power", "must be positive");
        link.receive_power = *power.receive_power;
        link.transmit_power = channel.enabled ? transmit_power(link.receive_power, channel)
                                              : link.receive_power;
    }
    else
    {
        if (!(std::isfinite(*power.transmit_power) && *power.transmit_power > 0))
            throw ValidationError("transmit_power", "must be positive");
        link.transmit_power = *power.transmit_power;
        link.receive_power = link.transmit_power * gain;
    }
    if (power.convention == PowerConvention::fixed_mean_receive && channel.enabled)
        link.transmit_power /= mean_shadowing_power_factor(channel.shadowing_std_db);
    return link;
}

BaseConfig apply_axis(BaseConfig base, SweepAxis axis, double value)
{
    switch (axis)
    {
        case SweepAxis::snr_db:
            base.power.receive_power = base.power.noise_density * base.physical.bandwidth_hz
                                       * std::pow(10.0, value / 10);
            base.power.transmit_power.reset();
            break;
        case SweepAxis::duty_cycle:
            base.physical.duty_cycle = value;
            break;
        case SweepAxis::symbol_time:
            base.physical.symbol_time_s = value;
            break;
        case SweepAxis::bandwidth:
            base.physical.bandwidth_hz = value;
            break;
        case SweepAxis::doppler_spread:
            base.physical.doppler_spread_hz = value;
            break;
    }
    return base;
}

double SweepRow::capacity_half_width() const
{
    if (skipped())
        return nan;
    return wtfc::capacity_half_width(
        p_e, ci_half_width_95, alphabet_size, duty_cycle, symbol_time_s);
}

std::size_t SweepResult::skipped_count() const
{
    std::size_t n = 0;
    for (auto const& row : rows)
        n += row.skipped();
    return n;
}

SweepResult run_sweep(SweepSpec const& spec, int threads)
{
    validate_grid(spec.grid);
    if (spec.variants.empty())
        throw ValidationError("variants", "must name at least one scheme");
    if (spec.base.iterations == 0)
        throw ValidationError("iterations", "must be positive");
    // The axis may supply the power (snr_db), so check the first grid point.
    {
        auto first = apply_axis(spec.base, spec.axis, spec.grid.front());
        resolve_link(first.power, first.channel);
    }

    SweepResult result;
    result.axis = spec.axis;
    for (std::size_t index = 0; index < spec.grid.size(); ++index)
    {
        double const value = spec.grid[index];
        BaseConfig cfg = apply_axis(spec.base, spec.axis, value);
        SchemeParams params;
        LinkBudget link;
        try
        {
            params = derive_scheme(cfg.physical);
            link = resolve_link(cfg.power, cfg.channel);
        }
        catch (ValidationError const& e)
        {
            for (auto variant : spec.variants)
                result.rows.push_back(skipped_row(value, variant, e.what()));
            continue;
        }

        McOptions options;
        options.iterations = cfg.iterations;
        options.seed = spec.common_random_numbers ? cfg.seed : mix_seed(cfg.seed, index);
        options.threads = threads;

        for (auto variant : spec.variants)
        {
            SchemeParams p = variant == Modulation::ifsk ? ifsk_variant(params) : params;
            auto model = make_slot_model(p, cfg.channel, link.transmit_power, cfg.power.noise_density);
            auto est = estimate_pe(model, options);
            auto cap = dmc_capacity(est.p_e, p);

            SweepRow row;
            row.axis_value = value;
            row.variant = variant;
            row.p_e = est.p_e;
            row.ci_half_width_95 = est.half_width_95;
            row.capacity_bps = cap.capacity_bps;
            row.ceiling_bps = cap.ceiling_bps;
            row.awgn_bps = nan;
            if (spec.awgn)
            {
                double power = spec.awgn_uses_transmit_power ? link.transmit_power
                                                             : link.receive_power;
                row.awgn_bps = awgn_capacity(power, cfg.power.noise_density, p.inputs.bandwidth_hz);
            }
            row.shadowing_enabled = cfg.channel.enabled && cfg.channel.shadowing_std_db > 0;
            row.seed = options.seed;
            row.iterations = options.iterations;
            row.receive_power = link.receive_power;
            row.noise_density = cfg.power.noise_density;
            row.bandwidth_hz = p.inputs.bandwidth_hz;
            row.alphabet_size = p.alphabet_size;
            row.duty_cycle = p.inputs.duty_cycle;
            row.symbol_time_s = p.inputs.symbol_time_s;
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

ShadowingComparison compare_shadowing(SweepSpec const& spec, double sigma_db, int threads)
{
    if (!(std::isfinite(sigma_db) && sigma_db >= 0))
        throw ValidationError("sigma_db", "must be nonnegative");

    SweepSpec off = spec;
    off.base.channel.enabled = true;
    off.base.channel.shadowing_std_db = 0;
    SweepSpec on = off;
    on.base.channel.shadowing_std_db = sigma_db;

    ShadowingComparison out;
    out.unshadowed = run_sweep(off, threads);
    out.shadowed = run_sweep(on, threads);
    out.capacity_loss_pct.reserve(out.unshadowed.rows.size());
    for (std::size_t i = 0; i < out.unshadowed.rows.size(); ++i)
    {
        auto const& a = out.unshadowed.rows[i];
        auto const& b = out.shadowed.rows[i];
        if (a.skipped() || b.skipped() || !(a.capacity_bps > 0))
            out.capacity_loss_pct.push_back(nan);
        else
            out.capacity_loss_pct.push_back(100 * (a.capacity_bps - b.capacity_bps) / a.capacity_bps);
    }
    return out;
}

}  // namespace wtfc
