#include "wtfc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "wtfc/error.hpp"
#include "wtfc/report.hpp"

namespace wtfc {
namespace {

std::string trim(std::string_view s)
{
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos)
        return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(std::string const& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        parts.push_back(trim(item));
    return parts;
}

bool is_known(std::string_view key)
{
    auto const& keys = known_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::optional<double> plain_number(std::string const& text)
{
    double value = 0;
    auto const* first = text.data();
    auto const* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        return std::nullopt;
    return value;
}

bool parse_bool(std::string const& key, std::string const& text)
{
    auto v = lower(text);
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ValidationError(key, "expected a boolean, got '" + text + "'");
}

std::uint64_t parse_count(std::string const& key, std::string const& text)
{
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size())
        return value;
    // Accept exact integers in real notation such as 1e6.
    double real = parse_real(key, text);
    if (real >= 0 && real <= 9007199254740992.0 && real == std::floor(real))
        return static_cast<std::uint64_t>(real);
    throw ValidationError(key, "expected a nonnegative integer, got '" + text + "'");
}

std::vector<Modulation> parse_variants(std::string const& text)
{
    std::vector<Modulation> out;
    for (auto const& item : split(text, ','))
    {
        auto v = lower(item);
        Modulation m;
        if (v == "wtfc")
            m = Modulation::wtfc;
        else if (v == "ifsk" || v == "i-fsk")
            m = Modulation::ifsk;
        else
            throw ValidationError("variants", "unknown scheme '" + item + "'");
        if (std::find(out.begin(), out.end(), m) == out.end())
            out.push_back(m);
    }
    if (out.empty())
        throw ValidationError("variants", "must name at least one scheme");
    return out;
}

PathLossTable parse_table(std::string const& text)
{
    std::vector<std::pair<double, double>> points;
    for (auto const& item : split(text, ','))
    {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ValidationError("path_loss_table", "expected distance:loss_db pairs");
        points.emplace_back(parse_real("path_loss_table", trim(item.substr(0, colon))),
                            parse_real("path_loss_table", trim(item.substr(colon + 1))));
    }
    return PathLossTable(std::move(points));
}

std::string join_reals(std::vector<double> const& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i)
            out += ',';
        out += format_real(values[i]);
    }
    return out;
}

}  // namespace

std::vector<std::string_view> const& known_keys()
{
    static std::vector<std::string_view> const keys{
        // scheme
        "bandwidth_hz",
        "symbol_time_s",
        "delay_spread_s",
        "doppler_spread_hz",
        "duty_cycle",
        "spacing_multiplier",
        "guard_time_s",
        // power
        "receive_power",
        "transmit_power",
        "noise_density",
        "power_convention",
        // large-scale channel
        "large_scale_enabled",
        "distance_m",
        "reference_distance_m",
        "wavelength_m",
        "path_loss_exponent",
        "shadowing_std_db",
        "shadowing_block_symbols",
        "path_loss_table",
        // Monte Carlo
        "iterations",
        "seed",
        "variants",
        // sweeps
        "axis",
        "grid",
        "awgn",
        "awgn_power",
        "common_random_numbers",
        "snr_columns",
        "allow_skips",
        "compare_sigma_db",
        // capacity from a known error probability
        "p_e",
    };
    return keys;
}

void Settings::set(std::string const& key, std::string value)
{
    if (!is_known(key))
        throw ValidationError(key, "unknown setting");
    values_[key] = std::move(value);
}

void Settings::merge(Settings const& other)
{
    for (auto const& [k, v] : other.values_)
        values_[k] = v;
}

std::optional<std::string> Settings::get(std::string_view key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

Settings parse_settings(std::istream& in, std::string const& origin)
{
    std::vector<std::string> lines;
    bool embedded = false;
    for (std::string line; std::getline(in, line);)
    {
        if (line.starts_with(embedded_prefix))
            embedded = true;
        lines.push_back(std::move(line));
    }

    Settings settings;
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        std::string_view line = lines[i];
        if (embedded)
        {
            if (!line.starts_with(embedded_prefix))
                continue;
            line.remove_prefix(embedded_prefix.size());
        }
        else if (auto hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        std::string text = trim(line);
        if (text.empty())
            continue;
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigSyntaxError(origin + ":" + std::to_string(i + 1)
                                    + ": expected 'key = value'");
        std::string key = trim(std::string_view(text).substr(0, eq));
        std::string value = trim(std::string_view(text).substr(eq + 1));
        if (!is_known(key))
            throw ConfigSyntaxError(origin + ":" + std::to_string(i + 1) + ": unknown setting '"
                                    + key + "'");
        settings.set(key, value);
    }
    return settings;
}

Settings load_settings(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path.string() + "'");
    return parse_settings(in, path.string());
}

Settings environment_settings(std::function<char const*(char const*)> const& getenv)
{
    Settings settings;
    if (!getenv)
        return settings;
    for (auto key : known_keys())
    {
        std::string name(env_prefix);
        for (char c : key)
            name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (char const* value = getenv(name.c_str()))
            settings.set(std::string(key), trim(value));
    }
    return settings;
}

std::pair<std::string, std::string> parse_override(std::string const& text)
{
    auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigSyntaxError("override '" + text + "' is not of the form key=value");
    std::string key = trim(std::string_view(text).substr(0, eq));
    if (!is_known(key))
        throw ValidationError(key, "unknown setting");
    return {key, trim(std::string_view(text).substr(eq + 1))};
}

//---------------------------------------------------------------------------//
/*!
 * Real number: a plain decimal, a ratio "a/b", or a power "10^x".
 */
double parse_real(std::string const& key, std::string const& raw)
{
    std::string text = trim(raw);
    if (auto v = plain_number(text))
        return *v;
    if (auto slash = text.find('/'); slash != std::string::npos)
    {
        auto num = plain_number(trim(text.substr(0, slash)));
        auto den = plain_number(trim(text.substr(slash + 1)));
        if (num && den && *den != 0)
            return *num / *den;
    }
    if (text.starts_with("10^"))
    {
        if (auto e = plain_number(trim(text.substr(3))))
            return std::pow(10.0, *e);
    }
    throw ValidationError(key, "expected a number, got '" + raw + "'");
}

//---------------------------------------------------------------------------//
/*!
 * Grid: comma-separated reals, linspace(a, b, n), or logspace(a, b, n)
 * where the latter spans 10^a .. 10^b.
 */
std::vector<double> parse_grid(std::string const& key, std::string const& raw)
{
    std::string text = trim(raw);
    for (std::string_view fn : {"linspace", "logspace"})
    {
        if (!text.starts_with(fn))
            continue;
        auto open = text.find('(');
        auto close = text.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ValidationError(key, "malformed " + std::string(fn));
        auto args = split(text.substr(open + 1, close - open - 1), ',');
        if (args.size() != 3)
            throw ValidationError(key, std::string(fn) + " takes (start, stop, count)");
        double a = parse_real(key, args[0]);
        double b = parse_real(key, args[1]);
        auto n = parse_count(key, args[2]);
        if (n == 0)
            throw ValidationError(key, "count must be positive");
        std::vector<double> grid;
        for (std::uint64_t i = 0; i < n; ++i)
        {
            double t = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            grid.push_back(fn == "logspace" ? std::pow(10.0, t) : t);
        }
        return grid;
    }
    std::vector<double> grid;
    for (auto const& item : split(text, ','))
        grid.push_back(parse_real(key, item));
    return grid;
}

RunConfig resolve_config(Settings const& s)
{
    RunConfig cfg;
    auto& spec = cfg.sweep;
    auto& base = spec.base;

    auto real = [&](char const* key) -> std::optional<double> {
        if (auto v = s.get(key))
            return parse_real(key, *v);
        return std::nullopt;
    };
    auto flag = [&](char const* key, bool fallback) {
        auto v = s.get(key);
        return v ? parse_bool(key, *v) : fallback;
    };

    auto require = [&](char const* key) {
        auto v = real(key);
        if (!v)
            throw ValidationError(key, "is required");
        return *v;
    };
    // A swept field may be omitted from the base; the first grid value stands in.
    auto axis = s.get("axis") ? parse_axis(*s.get("axis")) : std::nullopt;
    auto grid_head = [&](SweepAxis which, char const* key) {
        if (!s.get(key) && axis == which && s.get("grid"))
            return parse_grid("grid", *s.get("grid")).front();
        return require(key);
    };
    base.physical.bandwidth_hz = grid_head(SweepAxis::bandwidth, "bandwidth_hz");
    base.physical.symbol_time_s = grid_head(SweepAxis::symbol_time, "symbol_time_s");
    base.physical.delay_spread_s = real("delay_spread_s").value_or(0);
    base.physical.doppler_spread_hz = real("doppler_spread_hz").value_or(0);
    base.physical.duty_cycle = real("duty_cycle").value_or(1);
    if (auto v = s.get("spacing_multiplier"))
    {
        auto q = parse_count("spacing_multiplier", *v);
        if (q == 0 || q > 0xffffffffULL)
            throw ValidationError("spacing_multiplier", "must be a positive 32-bit integer");
        base.physical.spacing_multiplier = static_cast<std::uint32_t>(q);
    }
    base.physical.guard_time_s = real("guard_time_s");
    validate_fields(base.physical);

    base.power.receive_power = real("receive_power");
    base.power.transmit_power = real("transmit_power");
    if (base.power.receive_power && base.power.transmit_power)
        throw ValidationError("transmit_power", "give either receive_power or transmit_power, not both");
    base.power.noise_density = real("noise_density").value_or(1);
    if (auto v = s.get("power_convention"))
    {
        if (*v == "fixed_transmit")
            base.power.convention = PowerConvention::fixed_transmit;
        else if (*v == "fixed_mean_receive")
            base.power.convention = PowerConvention::fixed_mean_receive;
        else
            throw ValidationError("power_convention", "expected fixed_transmit or fixed_mean_receive");
    }

    auto& ch = base.channel;
    ch.enabled = flag("large_scale_enabled", false);
    ch.distance_m = real("distance_m").value_or(ch.distance_m);
    ch.reference_distance_m = real("reference_distance_m").value_or(ch.reference_distance_m);
    ch.wavelength_m = real("wavelength_m").value_or(ch.wavelength_m);
    ch.path_loss_exponent = real("path_loss_exponent").value_or(ch.path_loss_exponent);
    ch.shadowing_std_db = real("shadowing_std_db").value_or(0);
    if (auto v = s.get("shadowing_block_symbols"))
    {
        auto n = parse_count("shadowing_block_symbols", *v);
        if (n == 0 || n > 0xffffffffULL)
            throw ValidationError("shadowing_block_symbols", "must be a positive 32-bit integer");
        ch.shadowing_block_symbols = static_cast<std::uint32_t>(n);
    }
    if (auto v = s.get("path_loss_table"))
        ch.path_loss_table = parse_table(*v);
    validate(ch);

    if (auto v = s.get("iterations"))
        base.iterations = parse_count("iterations", *v);
    if (base.iterations == 0)
        throw ValidationError("iterations", "must be positive");
    if (auto v = s.get("seed"))
        base.seed = parse_count("seed", *v);
    if (auto v = s.get("variants"))
        spec.variants = parse_variants(*v);

    if (auto v = s.get("axis"))
    {
        auto axis = parse_axis(*v);
        if (!axis)
            throw ValidationError("axis",
                                  "expected snr_db, duty_cycle, symbol_time, bandwidth or doppler_spread");
        spec.axis = *axis;
        cfg.has_axis = true;
    }
    if (auto v = s.get("grid"))
        spec.grid = parse_grid("grid", *v);
    spec.awgn = flag("awgn", true);
    if (auto v = s.get("awgn_power"))
    {
        if (*v == "receive")
            spec.awgn_uses_transmit_power = false;
        else if (*v == "transmit")
            spec.awgn_uses_transmit_power = true;
        else
            throw ValidationError("awgn_power", "expected receive or transmit");
    }
    spec.common_random_numbers = flag("common_random_numbers", true);
    cfg.snr_columns = flag("snr_columns", false);
    cfg.allow_skips = flag("allow_skips", false);
    cfg.compare_sigma_db = real("compare_sigma_db");
    if (cfg.compare_sigma_db && !(*cfg.compare_sigma_db >= 0))
        throw ValidationError("compare_sigma_db", "must be nonnegative");
    cfg.p_e = real("p_e");
    if (cfg.p_e && !(*cfg.p_e >= 0 && *cfg.p_e <= 1))
        throw ValidationError("p_e", "must lie in [0, 1]");
    return cfg;
}

std::vector<std::pair<std::string, std::string>> canonical_settings(RunConfig const& cfg)
{
    auto const& spec = cfg.sweep;
    auto const& base = spec.base;
    auto const& ph = base.physical;
    auto const& ch = base.channel;
    std::vector<std::pair<std::string, std::string>> out;
    auto put = [&](std::string key, std::string value) { out.emplace_back(std::move(key), std::move(value)); };
    auto boolean = [](bool b) { return std::string(b ? "true" : "false"); };

    put("bandwidth_hz", format_real(ph.bandwidth_hz));
    put("symbol_time_s", format_real(ph.symbol_time_s));
    put("delay_spread_s", format_real(ph.delay_spread_s));
    put("doppler_spread_hz", format_real(ph.doppler_spread_hz));
    put("duty_cycle", format_real(ph.duty_cycle));
    if (ph.spacing_multiplier)
        put("spacing_multiplier", std::to_string(*ph.spacing_multiplier));
    if (ph.guard_time_s)
        put("guard_time_s", format_real(*ph.guard_time_s));

    if (base.power.receive_power)
        put("receive_power", format_real(*base.power.receive_power));
    if (base.power.transmit_power)
        put("transmit_power", format_real(*base.power.transmit_power));
    put("noise_density", format_real(base.power.noise_density));
    put("power_convention",
        base.power.convention == PowerConvention::fixed_transmit ? "fixed_transmit"
                                                                  : "fixed_mean_receive");

    put("large_scale_enabled", boolean(ch.enabled));
    put("distance_m", format_real(ch.distance_m));
    put("reference_distance_m", format_real(ch.reference_distance_m));
    put("wavelength_m", format_real(ch.wavelength_m));
    put("path_loss_exponent", format_real(ch.path_loss_exponent));
    put("shadowing_std_db", format_real(ch.shadowing_std_db));
    put("shadowing_block_symbols", std::to_string(ch.shadowing_block_symbols));
    if (ch.path_loss_table)
    {
        std::string table;
        for (auto const& [d, l] : ch.path_loss_table->points())
        {
            if (!table.empty())
                table += ',';
            table += format_real(d) + ":" + format_real(l);
        }
        put("path_loss_table", table);
    }

    put("iterations", std::to_string(base.iterations));
    put("seed", std::to_string(base.seed));
    std::string variants;
    for (auto v : spec.variants)
    {
        if (!variants.empty())
            variants += ',';
        variants += lower(to_string(v));
    }
    put("variants", variants);

    if (cfg.has_axis)
        put("axis", to_string(spec.axis));
    if (!spec.grid.empty())
        put("grid", join_reals(spec.grid));
    put("awgn", boolean(spec.awgn));
    put("awgn_power", spec.awgn_uses_transmit_power ? "transmit" : "receive");
    put("common_random_numbers", boolean(spec.common_random_numbers));
    put("snr_columns", boolean(cfg.snr_columns));
    put("allow_skips", boolean(cfg.allow_skips));
    if (cfg.compare_sigma_db)
        put("compare_sigma_db", format_real(*cfg.compare_sigma_db));
    if (cfg.p_e)
        put("p_e", format_real(*cfg.p_e));
    return out;
}

}  // namespace wtfc
