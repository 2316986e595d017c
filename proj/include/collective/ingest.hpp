#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace collective {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD; returns nullopt for anything else, including invalid
/// calendar dates such as 2021-02-30.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

/// One asset's price history. Dates strictly increasing, prices > 0.
struct PriceSeries {
  std::string label;
  std::vector<Date> dates;
  std::vector<double> prices;

  std::size_t size() const { return dates.size(); }
};

/// Date-aligned prices: row i is asset labels[i], column t is dates[t].
struct PricePanel {
  std::vector<std::string> labels;
  std::vector<Date> dates;
  Eigen::MatrixXd prices;

  std::size_t assets() const { return labels.size(); }
};

enum class CsvLayout { Wide, Long };

/// Loads price series from a CSV file.
///
/// Wide: header `date,LABEL1,LABEL2,...`, one row per date; an empty cell
/// means the asset has no observation on that date. Long: header
/// `date,label,price`, rows may interleave labels. Series are returned in
/// column order (wide) or order of first appearance (long), each sorted by
/// date. Throws InputError on unparsable dates (with line number),
/// non-numeric or non-positive prices (with asset and date), duplicate
/// dates within a series, and empty files.
std::vector<PriceSeries> load_csv(const std::filesystem::path& path, CsvLayout layout);

/// Same as load_csv but reads from an in-memory buffer; `source` names it in errors.
std::vector<PriceSeries> parse_csv(std::string_view text, CsvLayout layout,
                                   std::string_view source = "<memory>");

struct AlignPolicy {
  enum class Kind { Intersection, ForwardFill };
  Kind kind = Kind::Intersection;
  /// Longest run of consecutive missing calendar dates an asset may have filled.
  std::size_t max_gap = 0;

  static AlignPolicy intersection() { return {}; }
  static AlignPolicy forward_fill(std::size_t max_gap) { return {Kind::ForwardFill, max_gap}; }
};

/// Aligns series onto a common calendar.
///
/// Intersection keeps dates present in every series. Forward fill walks the
/// union calendar and fills an asset's missing date with its last observed
/// price while its current run of missing dates is <= max_gap; a date any
/// asset cannot fill is dropped for all assets. Throws InputError when
/// fewer than two series are given, a series has fewer than 3 points, or
/// fewer than 3 dates survive ("insufficient overlap").
PricePanel align(const std::vector<PriceSeries>& series, AlignPolicy policy = {});

/// Restricts a panel to from <= date <= to (either bound optional). Throws
/// InputError "insufficient overlap" if fewer than 3 dates remain.
PricePanel restrict_dates(const PricePanel& panel, std::optional<Date> from, std::optional<Date> to);

}  // namespace collective
