#pragma once

#include <cstdint>
#include <random>

namespace wtfc {

//---------------------------------------------------------------------------//
/*!
 * Deterministic uniform source for one Monte Carlo stream.
 *
 * A stream is identified by (seed, stream index). Both the engine
 * (mt19937_64) and the seed_seq expansion are fully specified by the
 * standard, and conversions to real numbers are done here rather than with
 * the implementation-defined <random> distributions, so draws are identical
 * across standard libraries.
 */
class RandomStream
{
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    //! Uniform on [0, 1) with 53 random bits; 0 is attainable, 1 is not.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    //! Uniform on the open interval (0, 1).
    double uniform_open()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    //! Standard normal by inversion of one open uniform.
    double normal();

  private:
    std::mt19937_64 engine_;
};

// Inverse of the standard normal CDF, accurate to double precision on (0,1).
double standard_normal_quantile(double p);

// Mix a seed with an index into an independent-looking 64-bit seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace wtfc
