#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sweep.hpp"

namespace wtfc {

/// 17 significant digits, enough to round-trip any double; "nan" for NaN.
std::string format_real(double value);

struct CsvOptions
{
    bool snr_columns{false};
};

//! Exact column order of the result table.
std::vector<std::string> const& csv_columns();

/// Comment header: a title line, then one embedded line per setting,
/// then free-form comment lines.
void write_header(std::ostream& out,
                  std::string_view title,
                  std::vector<std::pair<std::string, std::string>> const& settings,
                  std::vector<std::string> const& notes = {});

void write_csv(std::ostream& out, SweepResult const& result, CsvOptions const& options = {});

/// Paired rows (unshadowed, shadowed) with a trailing capacity_loss_pct.
void write_csv(std::ostream& out, ShadowingComparison const& result, CsvOptions const& options = {});

nlohmann::json to_json(SweepRow const& row, SweepAxis axis);
nlohmann::json to_json(SweepResult const& result);

}  // namespace wtfc
