#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sweep.hpp"

namespace wtfc {

/// Malformed configuration text (as opposed to an invalid value).
class ConfigSyntaxError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
/*!
 * Flat key = value settings.
 *
 * Sources are layered by calling `merge` in order (file, environment,
 * command line); later values win. Keys are checked against the known set
 * so typos fail loudly.
 */
class Settings
{
  public:
    void set(std::string const& key, std::string value);
    void merge(Settings const& other);

    std::optional<std::string> get(std::string_view key) const;
    bool empty() const { return values_.empty(); }
    auto const& values() const { return values_; }

  private:
    std::map<std::string, std::string, std::less<>> values_;
};

//! Prefix of output-file header lines that carry the resolved config.
inline constexpr std::string_view embedded_prefix = "#@ ";
//! Prefix of environment variables that override settings.
inline constexpr std::string_view env_prefix = "WTFC_";

std::vector<std::string_view> const& known_keys();

/// Parse `key = value` lines. '#' starts a comment. If any line starts with
/// the embedded prefix, only those lines are read, which lets an output
/// file serve as the config that reproduces it.
Settings parse_settings(std::istream& in, std::string const& origin);
Settings load_settings(std::filesystem::path const& path);

/// Settings from WTFC_<KEY> variables, looked up through `getenv`.
Settings environment_settings(std::function<char const*(char const*)> const& getenv);

/// One `key=value` override.
std::pair<std::string, std::string> parse_override(std::string const& text);

struct RunConfig
{
    SweepSpec sweep;
    std::optional<double> compare_sigma_db;
    std::optional<double> p_e;
    bool snr_columns{false};
    bool allow_skips{false};
    bool has_axis{false};
};

/// Typed view of the settings; throws ValidationError naming the key.
RunConfig resolve_config(Settings const& settings);

/// Canonical settings describing a resolved config, in key order.
std::vector<std::pair<std::string, std::string>> canonical_settings(RunConfig const& config);

// Value parsers, exposed for tests.
double parse_real(std::string const& key, std::string const& text);
std::vector<double> parse_grid(std::string const& key, std::string const& text);

}  // namespace wtfc
