#include "wtfc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "wtfc/capacity.hpp"
#include "wtfc/config.hpp"
#include "wtfc/detector.hpp"
#include "wtfc/error.hpp"
#include "wtfc/report.hpp"
#include "wtfc/scheme.hpp"
#include "wtfc/sweep.hpp"

namespace wtfc {
namespace {

struct GlobalOptions
{
    std::string config_path;
    std::uint64_t seed{0};
    std::string iterations;  // parsed with the config rules, so 1e6 works
    bool has_seed{false};
    bool has_iterations{false};
    std::string out_path;
    std::string format{"csv"};
    int threads{0};
    bool allow_skips{false};
    std::vector<std::string> overrides;
};

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Destination for command output: --out file, or the console stream.
class Output
{
  public:
    Output(std::string const& path, std::ostream& console) : console_(console)
    {
        if (!path.empty())
        {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw IoError("cannot open output file '" + path + "'");
            path_ = path;
        }
    }

    std::ostream& stream() { return file_ ? *file_ : console_; }
    bool to_file() const { return static_cast<bool>(file_); }

    void close()
    {
        if (file_)
        {
            file_->close();
            if (file_->fail())
                throw IoError("failed writing '" + path_ + "'");
        }
    }

  private:
    std::ostream& console_;
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

Settings gather_settings(GlobalOptions const& opts, EnvLookup const& getenv)
{
    Settings settings;
    if (!opts.config_path.empty())
        settings.merge(load_settings(opts.config_path));
    settings.merge(environment_settings(getenv));
    for (auto const& text : opts.overrides)
    {
        auto [key, value] = parse_override(text);
        settings.set(key, value);
    }
    if (opts.has_seed)
        settings.set("seed", std::to_string(opts.seed));
    if (opts.has_iterations)
        settings.set("iterations", opts.iterations);
    if (opts.allow_skips)
        settings.set("allow_skips", "true");
    return settings;
}

nlohmann::json settings_json(RunConfig const& cfg)
{
    nlohmann::json j = nlohmann::json::object();
    for (auto const& [k, v] : canonical_settings(cfg))
        j[k] = v;
    return j;
}

std::vector<std::string> link_notes(LinkBudget const& link)
{
    return {"resolved receive_power = " + format_real(link.receive_power),
            "resolved transmit_power = " + format_real(link.transmit_power)};
}

void print_pairs(std::ostream& out, std::vector<std::pair<std::string, std::string>> const& pairs)
{
    for (auto const& [k, v] : pairs)
        out << k << " = " << v << '\n';
}

//---------------------------------------------------------------------------//
int cmd_derive(RunConfig const& cfg, GlobalOptions const& opts, std::ostream& out)
{
    auto const& base = cfg.sweep.base;
    auto params = derive_scheme(base.physical);
    auto ifsk = ifsk_variant(params);

    std::vector<std::pair<std::string, std::string>> kv{
        {"q", std::to_string(params.spacing_multiplier)},
        {"tone_spacing_hz", format_real(params.tone_spacing_hz)},
        {"tone_count", std::to_string(params.tone_count)},
        {"slots_per_cycle", std::to_string(params.slots_per_cycle)},
        {"alphabet_size", std::to_string(params.alphabet_size)},
        {"bits_per_symbol", format_real(params.bits_per_symbol)},
        {"ceiling_bps", format_real(params.ceiling_bps())},
        {"ifsk_alphabet_size", std::to_string(ifsk.alphabet_size)},
        {"ifsk_ceiling_bps", format_real(ifsk.ceiling_bps())},
    };
    if (base.power.receive_power || base.power.transmit_power)
    {
        auto link = resolve_link(base.power, base.channel);
        kv.emplace_back("receive_power", format_real(link.receive_power));
        kv.emplace_back("transmit_power", format_real(link.transmit_power));
        kv.emplace_back("amplitude", format_real(amplitude(link.transmit_power, params)));
    }

    Output sink(opts.out_path, out);
    if (opts.format == "json")
    {
        nlohmann::json j;
        j["command"] = "derive";
        j["config"] = settings_json(cfg);
        for (auto const& [k, v] : kv)
            j["scheme"][k] = v;
        sink.stream() << j.dump(2) << '\n';
    }
    else
    {
        if (sink.to_file())
            write_header(sink.stream(), "wtfc derive", canonical_settings(cfg));
        print_pairs(sink.stream(), kv);
    }
    sink.close();
    return exit_code::ok;
}

//---------------------------------------------------------------------------//
// Shared by `pe` and `capacity`: one row per requested variant.
SweepResult single_point(RunConfig const& cfg, GlobalOptions const& opts, bool simulate)
{
    auto const& base = cfg.sweep.base;
    auto params = derive_scheme(base.physical);
    auto link = resolve_link(base.power, base.channel);

    SweepResult result;
    for (auto variant : cfg.sweep.variants)
    {
        auto p = variant == Modulation::ifsk ? ifsk_variant(params) : params;
        SweepRow row;
        row.axis_value = std::nan("");
        row.variant = variant;
        if (simulate)
        {
            McOptions mc{base.iterations, base.seed, opts.threads};
            auto est = estimate_pe(make_slot_model(p, base.channel, link.transmit_power, base.power.noise_density), mc);
            row.p_e = est.p_e;
            row.ci_half_width_95 = est.half_width_95;
            row.seed = est.seed;
            row.iterations = est.iterations;
        }
        else
        {
            row.p_e = *cfg.p_e;
            row.ci_half_width_95 = 0;
        }
        auto cap = dmc_capacity(row.p_e, p);
        row.capacity_bps = cap.capacity_bps;
        row.ceiling_bps = cap.ceiling_bps;
        row.awgn_bps = cfg.sweep.awgn
                           ? awgn_capacity(cfg.sweep.awgn_uses_transmit_power ? link.transmit_power
                                                                              : link.receive_power,
                                           base.power.noise_density,
                                           p.inputs.bandwidth_hz)
                           : std::nan("");
        row.shadowing_enabled = base.channel.enabled && base.channel.shadowing_std_db > 0;
        row.receive_power = link.receive_power;
        row.noise_density = base.power.noise_density;
        row.bandwidth_hz = p.inputs.bandwidth_hz;
        row.alphabet_size = p.alphabet_size;
        row.duty_cycle = p.inputs.duty_cycle;
        row.symbol_time_s = p.inputs.symbol_time_s;
        result.rows.push_back(row);
    }
    return result;
}

int cmd_point(RunConfig const& cfg, GlobalOptions const& opts, std::ostream& out, bool capacity)
{
    bool simulate = !(capacity && cfg.p_e);
    auto result = single_point(cfg, opts, simulate);
    auto link = resolve_link(cfg.sweep.base.power, cfg.sweep.base.channel);
    auto params = derive_scheme(cfg.sweep.base.physical);

    Output sink(opts.out_path, out);
    if (opts.format == "json")
    {
        nlohmann::json j;
        j["command"] = capacity ? "capacity" : "pe";
        j["config"] = settings_json(cfg);
        j["rows"] = to_json(result);
        sink.stream() << j.dump(2) << '\n';
    }
    else if (sink.to_file())
    {
        write_header(sink.stream(), capacity ? "wtfc capacity" : "wtfc pe", canonical_settings(cfg), link_notes(link));
        write_csv(sink.stream(), result, {cfg.snr_columns});
    }
    else
    {
        for (std::size_t i = 0; i < result.rows.size(); ++i)
        {
            auto const& row = result.rows[i];
            auto p = row.variant == Modulation::ifsk ? ifsk_variant(params) : params;
            auto model = make_slot_model(p, cfg.sweep.base.channel, link.transmit_power, cfg.sweep.base.power.noise_density);
            std::vector<std::pair<std::string, std::string>> kv{
                {"variant", to_string(row.variant)},
                {"alphabet_size", std::to_string(row.alphabet_size)},
                {"mu", format_real(model.path_gain * model.energy + 1)},
                {"p_e", format_real(row.p_e)},
                {"half_width_95", format_real(row.ci_half_width_95)},
            };
            if (simulate)
            {
                kv.emplace_back("iterations", std::to_string(row.iterations));
                kv.emplace_back("seed", std::to_string(row.seed));
            }
            if (capacity)
            {
                kv.emplace_back("capacity_bps", format_real(row.capacity_bps));
                kv.emplace_back("ceiling_bps", format_real(row.ceiling_bps));
                kv.emplace_back("awgn_bps", format_real(row.awgn_bps));
            }
            if (i)
                sink.stream() << '\n';
            print_pairs(sink.stream(), kv);
        }
    }
    sink.close();
    return exit_code::ok;
}

//---------------------------------------------------------------------------//
void require_sweep_fields(RunConfig const& cfg)
{
    if (!cfg.has_axis)
        throw ValidationError("axis", "is required for sweeps");
    if (cfg.sweep.grid.empty())
        throw ValidationError("grid", "is required for sweeps");
}

void summarize(std::ostream& out, std::string_view label, SweepResult const& result)
{
    for (auto variant : {Modulation::wtfc, Modulation::ifsk})
    {
        std::size_t rows = 0, skipped = 0;
        double best = 0;
        for (auto const& row : result.rows)
        {
            if (row.variant != variant)
                continue;
            ++rows;
            if (row.skipped())
                ++skipped;
            else
                best = std::max(best, row.capacity_bps);
        }
        if (rows)
            out << label << ' ' << to_string(variant) << ": " << rows << " rows, " << skipped
                << " skipped, max capacity " << format_real(best) << " bps\n";
    }
}

int finish_sweep(RunConfig const& cfg, std::size_t skipped, std::ostream& err)
{
    if (skipped && !cfg.allow_skips)
    {
        err << "error: " << skipped << " rows skipped (pass --allow-skips to accept)\n";
        return exit_code::skipped_rows;
    }
    return exit_code::ok;
}

int cmd_sweep(RunConfig const& cfg, GlobalOptions const& opts, std::ostream& out, std::ostream& err)
{
    require_sweep_fields(cfg);
    auto result = run_sweep(cfg.sweep, opts.threads);

    Output sink(opts.out_path, out);
    if (opts.format == "json")
    {
        nlohmann::json j;
        j["command"] = "sweep";
        j["config"] = settings_json(cfg);
        j["rows"] = to_json(result);
        sink.stream() << j.dump(2) << '\n';
    }
    else
    {
        write_header(sink.stream(), "wtfc sweep", canonical_settings(cfg));
        write_csv(sink.stream(), result, {cfg.snr_columns});
    }
    sink.close();
    summarize(sink.to_file() ? out : err, "sweep", result);
    return finish_sweep(cfg, result.skipped_count(), err);
}

int cmd_compare(RunConfig const& cfg, GlobalOptions const& opts, std::ostream& out, std::ostream& err)
{
    require_sweep_fields(cfg);
    double sigma = cfg.compare_sigma_db.value_or(cfg.sweep.base.channel.shadowing_std_db);
    if (!(sigma > 0) && !cfg.compare_sigma_db)
        throw ValidationError("compare_sigma_db", "is required (or set shadowing_std_db)");
    auto result = compare_shadowing(cfg.sweep, sigma, opts.threads);

    Output sink(opts.out_path, out);
    if (opts.format == "json")
    {
        nlohmann::json j;
        j["command"] = "compare-shadowing";
        j["config"] = settings_json(cfg);
        j["sigma_db"] = sigma;
        nlohmann::json pairs = nlohmann::json::array();
        for (std::size_t i = 0; i < result.unshadowed.rows.size(); ++i)
        {
            nlohmann::json pair;
            pair["unshadowed"] = to_json(result.unshadowed.rows[i], result.unshadowed.axis);
            pair["shadowed"] = to_json(result.shadowed.rows[i], result.shadowed.axis);
            double loss = result.capacity_loss_pct[i];
            pair["capacity_loss_pct"] = std::isnan(loss) ? nlohmann::json(nullptr) : nlohmann::json(loss);
            pairs.push_back(pair);
        }
        j["pairs"] = pairs;
        sink.stream() << j.dump(2) << '\n';
    }
    else
    {
        write_header(sink.stream(),
                     "wtfc compare-shadowing",
                     canonical_settings(cfg),
                     {"shadowed run sigma_db = " + format_real(sigma)});
        write_csv(sink.stream(), result, {cfg.snr_columns});
    }
    sink.close();
    auto& summary = sink.to_file() ? out : err;
    summarize(summary, "unshadowed", result.unshadowed);
    summarize(summary, "shadowed", result.shadowed);
    return finish_sweep(cfg, result.unshadowed.skipped_count() + result.shadowed.skipped_count(), err);
}

}  // namespace

//---------------------------------------------------------------------------//
int run_cli(std::vector<std::string> const& args,
            std::ostream& out,
            std::ostream& err,
            EnvLookup const& getenv)
{
    CLI::App app{"Link-level simulator for wideband time frequency coding"};
    app.require_subcommand(1);
    GlobalOptions opts;

    std::vector<CLI::Option*> seed_options, iteration_options;
    auto add_globals = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "Settings file (key = value lines)");
        seed_options.push_back(cmd->add_option("--seed", opts.seed, "Monte Carlo seed"));
        iteration_options.push_back(
            cmd->add_option("--iters", opts.iterations, "Monte Carlo iterations per point"));
        cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
        cmd->add_option("--format", opts.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--threads", opts.threads, "Worker threads (speed only)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_flag("--allow-skips", opts.allow_skips, "Exit 0 even if grid points were skipped");
        cmd->add_option("--set", opts.overrides, "Override a setting: key=value");
        cmd->add_option("settings", opts.overrides, "Overrides as key=value");
    };

    std::vector<std::pair<std::string, CLI::App*>> commands;
    for (auto const& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"derive", "Print derived scheme parameters"},
             {"pe", "Estimate the symbol error probability"},
             {"capacity", "Capacity from a simulated or given error probability"},
             {"sweep", "Run a parameter sweep and write a table"},
             {"compare-shadowing", "Sweep with and without shadowing"}})
    {
        auto* cmd = app.add_subcommand(name, help);
        add_globals(cmd);
        commands.emplace_back(name, cmd);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_code::ok;
    }
    catch (CLI::ParseError const& e)
    {
        // Subcommand help arrives as CallForHelp above; everything else is usage.
        err << "error: " << e.what() << '\n';
        return exit_code::invalid_input;
    }

    for (auto* o : seed_options)
        opts.has_seed |= o->count() > 0;
    for (auto* o : iteration_options)
        opts.has_iterations |= o->count() > 0;

    std::string command;
    for (auto const& [name, cmd] : commands)
        if (cmd->parsed())
            command = name;

    try
    {
        RunConfig cfg = resolve_config(gather_settings(opts, getenv));
        if (command == "derive")
            return cmd_derive(cfg, opts, out);
        if (command == "pe")
            return cmd_point(cfg, opts, out, false);
        if (command == "capacity")
            return cmd_point(cfg, opts, out, true);
        if (command == "sweep")
            return cmd_sweep(cfg, opts, out, err);
        return cmd_compare(cfg, opts, out, err);
    }
    catch (ValidationError const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_code::invalid_input;
    }
    catch (ConfigSyntaxError const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_code::invalid_input;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

}  // namespace wtfc
