#include "wtfc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wtfc/error.hpp"

namespace wtfc {
namespace {

constexpr double db_to_neper_power = std::numbers::ln10 / 10;

bool positive_finite(double x)
{
    return std::isfinite(x) && x > 0;
}

}  // namespace

PathLossTable::PathLossTable(std::vector<std::pair<double, double>> points)
    : points_(std::move(points))
{
    if (points_.size() < 2)
        throw ValidationError("path_loss_table", "needs at least two points");
    std::sort(points_.begin(), points_.end());
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        if (!positive_finite(points_[i].first) || !std::isfinite(points_[i].second))
            throw ValidationError("path_loss_table", "distances must be positive and losses finite");
        if (i > 0 && points_[i].first == points_[i - 1].first)
            throw ValidationError("path_loss_table", "duplicate distance");
    }
}

double PathLossTable::loss_db(double distance_m) const
{
    auto upper = std::upper_bound(points_.begin(),
                                  points_.end(),
                                  distance_m,
                                  [](double d, auto const& pt) { return d < pt.first; });
    if (upper == points_.begin())
        ++upper;
    if (upper == points_.end())
        --upper;
    auto lower = upper - 1;
    double x0 = std::log10(lower->first);
    double x1 = std::log10(upper->first);
    double t = (std::log10(distance_m) - x0) / (x1 - x0);
    return lower->second + t * (upper->second - lower->second);
}

void validate(LargeScaleModel const& m)
{
    if (!positive_finite(m.reference_distance_m))
        throw ValidationError("reference_distance_m", "must be positive");
    if (!positive_finite(m.distance_m) || m.distance_m < m.reference_distance_m)
        throw ValidationError("distance_m", "must be at least the reference distance");
    if (!positive_finite(m.wavelength_m))
        throw ValidationError("wavelength_m", "must be positive");
    if (!positive_finite(m.path_loss_exponent))
        throw ValidationError("path_loss_exponent", "must be positive");
    if (!(std::isfinite(m.shadowing_std_db) && m.shadowing_std_db >= 0))
        throw ValidationError("shadowing_std_db", "must be nonnegative");
    if (m.shadowing_block_symbols == 0)
        throw ValidationError("shadowing_block_symbols", "must be positive");
}

double deterministic_path_loss_db(LargeScaleModel const& m)
{
    if (m.path_loss_table)
        return m.path_loss_table->loss_db(m.distance_m);
    return 20 * std::log10(4 * std::numbers::pi * m.reference_distance_m / m.wavelength_m)
           + 10 * m.path_loss_exponent * std::log10(m.distance_m / m.reference_distance_m);
}

double path_loss_db(LargeScaleModel const& m, double x_sigma_db)
{
    return deterministic_path_loss_db(m) + x_sigma_db;
}

double large_scale_m(double path_loss_db)
{
    return std::sqrt(std::pow(10.0, -path_loss_db / 10));
}

double path_gain(LargeScaleModel const& m)
{
    return std::pow(10.0, -deterministic_path_loss_db(m) / 10);
}

double transmit_power(double receive_power, LargeScaleModel const& m)
{
    if (!positive_finite(receive_power))
        throw ValidationError("receive_power", "must be positive");
    return receive_power / path_gain(m);
}

double shadowing_power_factor(double sigma_db, double standard_normal)
{
    return std::exp(-db_to_neper_power * sigma_db * standard_normal);
}

double mean_shadowing_power_factor(double sigma_db)
{
    double s = db_to_neper_power * sigma_db;
    return std::exp(s * s / 2);
}

FadingDraw draw_fading(LargeScaleModel const& m, RandomStream& rng)
{
    FadingDraw draw;
    if (m.enabled)
    {
        double x_sigma = m.shadowing_std_db * rng.normal();
        draw.large_scale_amplitude = large_scale_m(path_loss_db(m, x_sigma));
    }
    // |alpha|^2 of a unit-power circularly symmetric Gaussian is Exp(1).
    draw.small_scale_power = -std::log1p(-rng.uniform());
    return draw;
}

}  // namespace wtfc
