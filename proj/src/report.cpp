#include "wtfc/report.hpp"

#include <cmath>
#include <charconv>
#include <ostream>

namespace wtfc {
namespace {

std::string csv_field(std::string const& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void write_row(std::ostream& out, SweepRow const& row, SweepAxis axis, CsvOptions const& options)
{
    out << to_string(axis) << ',' << format_real(row.axis_value) << ','
        << to_string(row.variant) << ',' << format_real(row.p_e) << ','
        << format_real(row.ci_half_width_95) << ',' << format_real(row.capacity_bps) << ','
        << format_real(row.ceiling_bps) << ',' << format_real(row.awgn_bps) << ','
        << (row.shadowing_enabled ? "true" : "false") << ',' << row.seed << ','
        << row.iterations << ',' << csv_field(row.skipped_reason);
    if (options.snr_columns)
    {
        double const nan = std::nan("");
        double snr = row.skipped() ? nan
                                   : 10 * std::log10(row.receive_power
                                                     / (row.noise_density * row.bandwidth_hz));
        double pr_n0 = row.skipped() ? nan : 10 * std::log10(row.receive_power / row.noise_density);
        out << ',' << format_real(snr) << ',' << format_real(pr_n0);
    }
}

void write_column_names(std::ostream& out, CsvOptions const& options, bool loss)
{
    auto const& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    if (options.snr_columns)
        out << ",snr_db,pr_over_n0_db";
    if (loss)
        out << ",capacity_loss_pct";
    out << '\n';
}

}  // namespace

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    // Shortest form that parses back to the same double.
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::vector<std::string> const& csv_columns()
{
    static std::vector<std::string> const columns{"axis_name",
                                                  "axis_value",
                                                  "variant",
                                                  "p_e",
                                                  "ci_half_width_95",
                                                  "capacity_bps",
                                                  "ceiling_bps",
                                                  "awgn_bps",
                                                  "shadowing_enabled",
                                                  "seed",
                                                  "iterations",
                                                  "skipped_reason"};
    return columns;
}

void write_header(std::ostream& out,
                  std::string_view title,
                  std::vector<std::pair<std::string, std::string>> const& settings,
                  std::vector<std::string> const& notes)
{
    out << "# " << title << '\n';
    for (auto const& [key, value] : settings)
        out << "#@ " << key << " = " << value << '\n';
    for (auto const& note : notes)
        out << "# " << note << '\n';
}

void write_csv(std::ostream& out, SweepResult const& result, CsvOptions const& options)
{
    write_column_names(out, options, false);
    for (auto const& row : result.rows)
    {
        write_row(out, row, result.axis, options);
        out << '\n';
    }
}

void write_csv(std::ostream& out, ShadowingComparison const& result, CsvOptions const& options)
{
    write_column_names(out, options, true);
    for (std::size_t i = 0; i < result.unshadowed.rows.size(); ++i)
    {
        for (auto const* rows : {&result.unshadowed, &result.shadowed})
        {
            write_row(out, rows->rows[i], rows->axis, options);
            out << ',' << format_real(result.capacity_loss_pct[i]) << '\n';
        }
    }
}

nlohmann::json to_json(SweepRow const& row, SweepAxis axis)
{
    auto real = [](double v) -> nlohmann::json {
        if (std::isnan(v))
            return nullptr;
        return v;
    };
    nlohmann::json j;
    j["axis_name"] = to_string(axis);
    j["axis_value"] = real(row.axis_value);
    j["variant"] = to_string(row.variant);
    j["p_e"] = real(row.p_e);
    j["ci_half_width_95"] = real(row.ci_half_width_95);
    j["capacity_bps"] = real(row.capacity_bps);
    j["ceiling_bps"] = real(row.ceiling_bps);
    j["awgn_bps"] = real(row.awgn_bps);
    j["shadowing_enabled"] = row.shadowing_enabled;
    j["seed"] = row.seed;
    j["iterations"] = row.iterations;
    j["skipped_reason"] = row.skipped_reason;
    return j;
}

nlohmann::json to_json(SweepResult const& result)
{
    nlohmann::json rows = nlohmann::json::array();
    for (auto const& row : result.rows)
        rows.push_back(to_json(row, result.axis));
    return rows;
}

}  // namespace wtfc
