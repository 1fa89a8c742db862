#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace wtfc {

//---------------------------------------------------------------------------//
/*!
 * Measured path loss versus distance.
 *
 * Points are (distance in m, loss in dB). Loss is interpolated linearly in
 * log10(distance) and extrapolated from the outermost segments. When a
 * table is attached to a LargeScaleModel it replaces the deterministic
 * free-space/log-distance loss; shadowing is still added on top.
 */
class PathLossTable
{
  public:
    explicit PathLossTable(std::vector<std::pair<double, double>> points);

    double loss_db(double distance_m) const;
    auto const& points() const { return points_; }

  private:
    std::vector<std::pair<double, double>> points_;
};

/// Large-scale fading: log-distance path loss plus log-normal shadowing.
struct LargeScaleModel
{
    double distance_m{1};
    double reference_distance_m{1};
    //! Default makes 4 pi d0 / lambda = 1, i.e. a unit-gain link.
    double wavelength_m{12.566370614359172};
    double path_loss_exponent{2};
    double shadowing_std_db{0};
    bool enabled{false};
    //! Consecutive symbols that share one shadowing realization.
    std::uint32_t shadowing_block_symbols{1};
    std::optional<PathLossTable> path_loss_table;
};

struct FadingDraw
{
    double large_scale_amplitude{1};  //!< m
    double small_scale_power{1};      //!< |alpha|^2
};

void validate(LargeScaleModel const& model);

/// Path loss in dB excluding shadowing.
double deterministic_path_loss_db(LargeScaleModel const& model);

/// L_p = 20 log10(4 pi d0/lambda) + 10 gamma log10(d/d0) + X_sigma.
double path_loss_db(LargeScaleModel const& model, double x_sigma_db);

/// m = sqrt(10^(-L_p/10)).
double large_scale_m(double path_loss_db);

/// Linear power gain of the deterministic path, 10^(-L/10).
double path_gain(LargeScaleModel const& model);

/// Average transmit power that yields receive power `receive_power` over
/// the deterministic path (shadowing excluded).
double transmit_power(double receive_power, LargeScaleModel const& model);

/// One per-symbol fading realization. Disabled models give m = 1.
FadingDraw draw_fading(LargeScaleModel const& model, RandomStream& rng);

/// Shadowing power factor 10^(-X/10) for X = sigma * z.
double shadowing_power_factor(double sigma_db, double standard_normal);

/// E[10^(-X/10)] for X ~ N(0, sigma^2): the mean shadowing power factor.
double mean_shadowing_power_factor(double sigma_db);

}  // namespace wtfc
