#include <sstream>

#include <doctest.h>

#include "wtfc/config.hpp"
#include "wtfc/error.hpp"

using namespace wtfc;

namespace {

Settings parse(std::string const& text)
{
    std::istringstream in(text);
    return parse_settings(in, "test.conf");
}

std::string failing_field(std::string const& text)
{
    try
    {
        resolve_config(parse(text));
    }
    catch (ValidationError const& e)
    {
        return e.field();
    }
    return {};
}

char const* minimal = "bandwidth_hz = 1e6\nsymbol_time_s = 1e-4\nreceive_power = 10\n";

}  // namespace

TEST_CASE("key = value files")
{
    auto s = parse("# comment\n\n  bandwidth_hz = 100e6  # trailing\nduty_cycle=1/100\n");
    CHECK(s.get("bandwidth_hz") == "100e6");
    CHECK(s.get("duty_cycle") == "1/100");
    CHECK_FALSE(s.get("seed"));

    CHECK_THROWS_AS(parse("bandwidth = 3\n"), ConfigSyntaxError);
    CHECK_THROWS_AS(parse("bandwidth_hz 3\n"), ConfigSyntaxError);
    try
    {
        parse("seed = 1\n\nbogus = 2\n");
    }
    catch (ConfigSyntaxError const& e)
    {
        CHECK(std::string(e.what()).find("test.conf:3") != std::string::npos);
    }
}

TEST_CASE("embedded header lines take over")
{
    auto s = parse("# wtfc sweep\n#@ seed = 42\n#@ bandwidth_hz = 1e6\n# note\naxis_name,p_e\nx,0.5\n");
    CHECK(s.get("seed") == "42");
    CHECK(s.get("bandwidth_hz") == "1e6");
    CHECK(s.values().size() == 2);
}

TEST_CASE("number forms")
{
    CHECK(parse_real("k", "1e-6") == 1e-6);
    CHECK(parse_real("k", " 1/100 ") == 0.01);
    CHECK(parse_real("k", "10^3.4") == doctest::Approx(2511.886431509580));
    CHECK_THROWS_AS(parse_real("k", "ten"), ValidationError);
    CHECK_THROWS_AS(parse_real("k", "1/0"), ValidationError);
}

TEST_CASE("grid forms")
{
    CHECK(parse_grid("grid", "1, 0.1,0.01") == std::vector<double>{1, 0.1, 0.01});
    auto lin = parse_grid("grid", "linspace(-20, 10, 4)");
    CHECK(lin == std::vector<double>{-20, -10, 0, 10});
    auto lg = parse_grid("grid", "logspace(5, 8, 10)");
    REQUIRE(lg.size() == 10);
    CHECK(lg.front() == 1e5);
    CHECK(lg.back() == 1e8);
    CHECK(lg[3] == doctest::Approx(1e6));
    CHECK_THROWS_AS(parse_grid("grid", "linspace(1, 2)"), ValidationError);
    CHECK_THROWS_AS(parse_grid("grid", "linspace(1, 2, 0)"), ValidationError);
}

TEST_CASE("resolution and defaults")
{
    auto cfg = resolve_config(parse(minimal));
    auto const& b = cfg.sweep.base;
    CHECK(b.physical.bandwidth_hz == 1e6);
    CHECK(b.physical.duty_cycle == 1);
    CHECK(b.power.noise_density == 1);
    CHECK(b.power.convention == PowerConvention::fixed_transmit);
    CHECK_FALSE(b.channel.enabled);
    CHECK(b.iterations == 1'000'000);
    CHECK(cfg.sweep.common_random_numbers);
    CHECK(cfg.sweep.awgn);
    CHECK_FALSE(cfg.has_axis);

    auto swept = resolve_config(parse("symbol_time_s = 1e-4\naxis = bandwidth\ngrid = 2e6, 4e6\n"));
    CHECK(swept.sweep.base.physical.bandwidth_hz == 2e6);
    CHECK(swept.sweep.axis == SweepAxis::bandwidth);
}

TEST_CASE("invalid settings name the field")
{
    CHECK(failing_field("symbol_time_s = 1e-4\n") == "bandwidth_hz");
    CHECK(failing_field(std::string(minimal) + "duty_cycle = 0.4\n") == "duty_cycle");
    CHECK(failing_field(std::string(minimal) + "transmit_power = 1\n") == "transmit_power");
    CHECK(failing_field(std::string(minimal) + "iterations = 0\n") == "iterations");
    CHECK(failing_field(std::string(minimal) + "iterations = 2.5\n") == "iterations");
    CHECK(failing_field(std::string(minimal) + "axis = theta\n") == "axis");
    CHECK(failing_field(std::string(minimal) + "variants = ofdm\n") == "variants");
    CHECK(failing_field(std::string(minimal) + "awgn = maybe\n") == "awgn");
    CHECK(failing_field(std::string(minimal) + "p_e = 2\n") == "p_e");
    CHECK(failing_field(std::string(minimal) + "distance_m = 0.1\n") == "distance_m");
    CHECK(failing_field(std::string(minimal) + "power_convention = loud\n") == "power_convention");
}

TEST_CASE("environment layer")
{
    auto env = [](char const* name) -> char const* {
        std::string n(name);
        if (n == "WTFC_SEED")
            return "77";
        if (n == "WTFC_DUTY_CYCLE")
            return " 1/10 ";
        return nullptr;
    };
    auto s = environment_settings(env);
    CHECK(s.get("seed") == "77");
    CHECK(s.get("duty_cycle") == "1/10");
    CHECK(s.values().size() == 2);

    Settings file = parse("seed = 1\niterations = 5\n");
    file.merge(s);
    CHECK(file.get("seed") == "77");
    CHECK(file.get("iterations") == "5");
}

TEST_CASE("overrides")
{
    CHECK(parse_override("seed=3") == std::pair<std::string, std::string>{"seed", "3"});
    CHECK(parse_override(" grid = 1, 2 ") == std::pair<std::string, std::string>{"grid", "1, 2"});
    CHECK_THROWS_AS(parse_override("seed"), ConfigSyntaxError);
    CHECK_THROWS_AS(parse_override("sed=3"), ValidationError);
}

TEST_CASE("canonical settings reproduce the configuration")
{
    std::string text = std::string(minimal)
                       + "delay_spread_s = 0.3e-6\ndoppler_spread_hz = 360\nduty_cycle = 1/1000\n"
                         "large_scale_enabled = true\ndistance_m = 120\nshadowing_std_db = 8\n"
                         "path_loss_table = 1:40, 100:80\nvariants = ifsk, wtfc\naxis = snr_db\n"
                         "grid = linspace(-20, 10, 7)\nseed = 9\niterations = 1e5\ncompare_sigma_db = 6\n";
    auto cfg = resolve_config(parse(text));
    auto canon = canonical_settings(cfg);

    std::string again;
    for (auto const& [k, v] : canon)
        again += std::string(embedded_prefix) + k + " = " + v + "\n";
    auto cfg2 = resolve_config(parse(again));
    CHECK(canonical_settings(cfg2) == canon);
    CHECK(cfg2.sweep.grid == cfg.sweep.grid);
    CHECK(cfg2.sweep.base.physical.duty_cycle == cfg.sweep.base.physical.duty_cycle);
    CHECK(cfg2.sweep.base.iterations == 100'000);
    CHECK(cfg2.sweep.variants == std::vector<Modulation>{Modulation::ifsk, Modulation::wtfc});
}
