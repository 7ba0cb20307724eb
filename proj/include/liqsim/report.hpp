// Output formats: cells.csv, summary.json, per-run series CSV, per-cell SVG
// charts and the JSON state dump.
#pragma once

#include "liqsim/clipper.hpp"
#include "liqsim/engine.hpp"
#include "liqsim/ledger.hpp"
#include "liqsim/sweep.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace liqsim {

inline constexpr const char* kCellsHeader = "timeframe,chip,tip,run,avg_response_time,total_incentives";
inline constexpr const char* kSeriesHeader = "timestep,n_unsafe,n_liquidations,incentives_paid";

/// Shortest round-trip text, so identical doubles always print identically.
std::string format_number(double v);

/// One row per run; an absent response time is an empty field.
std::string cells_csv(const std::vector<CellResult>& cells);

/// Rebuilds cells (runs only, no samples) from cells.csv and aggregates
/// them. Throws ParseError.
std::vector<CellResult> parse_cells_csv(std::istream& in);

nlohmann::json summary_json(const std::vector<CellResult>& cells);

std::string series_csv(const RunSummary& summary);

/// Reads a series CSV back into a summary carrying only the series.
RunSummary parse_series_csv(std::istream& in);

/// Four aligned panels: unsafe vaults, liquidations, incentives paid and
/// cumulative incentives, all over x in [0, n_timesteps].
std::string cell_svg(const RunSummary& summary, const std::string& title);

std::string cell_slug(const std::string& timeframe, double chip, double tip);

nlohmann::json to_json(const RunSummary& summary);
nlohmann::json state_json(const Ledger& ledger, const Clipper& clipper);

/// Writes cells.csv, summary.json, series/<cell>.csv and svg/<cell>.svg into
/// out_dir and returns the paths written. Throws IoError for empty results
/// (writing nothing) or on filesystem failure.
std::vector<std::filesystem::path> render_report(const std::vector<CellResult>& cells,
                                                 const std::filesystem::path& out_dir);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace liqsim
