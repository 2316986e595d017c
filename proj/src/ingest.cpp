#include "collective/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "collective/error.hpp"
#include "csv_util.hpp"

namespace collective {

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    const char* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc{} || ptr != first + len) return std::nullopt;
    return v;
  };
  const auto y = number(0, 4);
  const auto m = number(5, 2);
  const auto d = number(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

namespace {

struct Observation {
  Date date;
  double price;
};

struct Accumulator {
  std::string label;
  std::vector<Observation> obs;
};

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

double parse_price(std::string_view cell, const std::string& label, const Date& date,
                   std::string_view source, std::size_t line) {
  const auto value = detail::parse_double(cell);
  if (!value) {
    throw InputError(where(source, line) + ": non-numeric price '" + std::string(cell) +
                     "' for asset " + label + " on " + format_date(date));
  }
  if (!(*value > 0.0) || !std::isfinite(*value)) {
    throw InputError(where(source, line) + ": non-positive price " + std::string(cell) +
                     " for asset " + label + " on " + format_date(date));
  }
  return *value;
}

Date parse_row_date(std::string_view cell, std::string_view source, std::size_t line) {
  const auto date = parse_date(cell);
  if (!date) {
    throw InputError(where(source, line) + ": unparsable date '" + std::string(cell) + "'");
  }
  return *date;
}

PriceSeries finish(Accumulator acc, std::string_view source) {
  std::stable_sort(acc.obs.begin(), acc.obs.end(),
                   [](const Observation& a, const Observation& b) { return a.date < b.date; });
  PriceSeries s;
  s.label = std::move(acc.label);
  s.dates.reserve(acc.obs.size());
  s.prices.reserve(acc.obs.size());
  for (const auto& o : acc.obs) {
    if (!s.dates.empty() && s.dates.back() == o.date) {
      throw InputError(std::string(source) + ": duplicate date " + format_date(o.date) +
                       " for asset " + s.label);
    }
    s.dates.push_back(o.date);
    s.prices.push_back(o.price);
  }
  return s;
}

}  // namespace

std::vector<PriceSeries> parse_csv(std::string_view text, CsvLayout layout,
                                   std::string_view source) {
  const auto lines = detail::split_lines(text);
  std::size_t header_at = 0;
  while (header_at < lines.size() && lines[header_at].find_first_not_of(" \t") == std::string_view::npos)
    ++header_at;
  if (header_at == lines.size()) throw InputError(std::string(source) + ": empty file");

  const auto header = detail::split_csv_line(lines[header_at]);
  std::vector<Accumulator> accs;
  std::map<std::string, std::size_t> index;

  if (layout == CsvLayout::Wide) {
    if (header.size() < 2) {
      throw InputError(where(source, header_at + 1) + ": wide layout needs date plus asset columns");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
      if (header[c].empty() || !index.emplace(header[c], c - 1).second) {
        throw InputError(where(source, header_at + 1) + ": empty or duplicate asset label '" +
                         header[c] + "'");
      }
      accs.push_back({header[c], {}});
    }
  } else if (header.size() != 3) {
    throw InputError(where(source, header_at + 1) + ": long layout header must be date,label,price");
  }

  std::size_t rows = 0;
  for (std::size_t i = header_at + 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto cells = detail::split_csv_line(lines[i]);
    ++rows;
    const Date date = parse_row_date(cells[0], source, line_no);
    if (layout == CsvLayout::Wide) {
      if (cells.size() != header.size()) {
        throw InputError(where(source, line_no) + ": expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(cells.size()));
      }
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (cells[c].empty()) continue;
        auto& acc = accs[c - 1];
        acc.obs.push_back({date, parse_price(cells[c], acc.label, date, source, line_no)});
      }
    } else {
      if (cells.size() != 3) {
        throw InputError(where(source, line_no) + ": expected 3 fields, found " +
                         std::to_string(cells.size()));
      }
      const auto& label = cells[1];
      if (label.empty()) throw InputError(where(source, line_no) + ": empty asset label");
      auto [it, inserted] = index.emplace(label, accs.size());
      if (inserted) accs.push_back({label, {}});
      auto& acc = accs[it->second];
      acc.obs.push_back({date, parse_price(cells[2], acc.label, date, source, line_no)});
    }
  }
  if (rows == 0) throw InputError(std::string(source) + ": no data rows");

  std::vector<PriceSeries> out;
  out.reserve(accs.size());
  for (auto& acc : accs) out.push_back(finish(std::move(acc), source));
  return out;
}

std::vector<PriceSeries> load_csv(const std::filesystem::path& path, CsvLayout layout) {
  const std::string text = detail::read_file(path.string());
  return parse_csv(text, layout, path.string());
}

namespace {

PricePanel intersect(const std::vector<PriceSeries>& series) {
  std::vector<Date> common = series.front().dates;
  for (std::size_t i = 1; i < series.size(); ++i) {
    std::vector<Date> next;
    std::set_intersection(common.begin(), common.end(), series[i].dates.begin(),
                          series[i].dates.end(), std::back_inserter(next));
    common = std::move(next);
  }
  PricePanel panel;
  panel.dates = common;
  panel.prices.resize(static_cast<Eigen::Index>(series.size()),
                      static_cast<Eigen::Index>(common.size()));
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    std::size_t k = 0;
    for (std::size_t t = 0; t < common.size(); ++t) {
      while (s.dates[k] < common[t]) ++k;
      panel.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = s.prices[k];
    }
  }
  return panel;
}

PricePanel forward_fill(const std::vector<PriceSeries>& series, std::size_t max_gap) {
  std::set<Date> all;
  for (const auto& s : series) all.insert(s.dates.begin(), s.dates.end());
  const std::vector<Date> calendar(all.begin(), all.end());
  const std::size_t n = series.size();

  // filled[i][t]: price for asset i at calendar[t], or nullopt if unfillable.
  std::vector<std::vector<std::optional<double>>> filled(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = series[i];
    auto& row = filled[i];
    row.resize(calendar.size());
    std::size_t k = 0;
    std::optional<double> last;
    std::size_t gap = 0;
    for (std::size_t t = 0; t < calendar.size(); ++t) {
      if (k < s.size() && s.dates[k] == calendar[t]) {
        last = s.prices[k++];
        gap = 0;
        row[t] = last;
      } else {
        ++gap;
        if (last && gap <= max_gap) row[t] = last;
      }
    }
  }

  PricePanel panel;
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < calendar.size(); ++t) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = filled[i][t].has_value();
    if (ok) keep.push_back(t);
  }
  panel.prices.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    panel.dates.push_back(calendar[keep[c]]);
    for (std::size_t i = 0; i < n; ++i) {
      panel.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = *filled[i][keep[c]];
    }
  }
  return panel;
}

}  // namespace

PricePanel align(const std::vector<PriceSeries>& series, AlignPolicy policy) {
  if (series.size() < 2) {
    throw InputError("align: need at least 2 series, got " + std::to_string(series.size()));
  }
  for (const auto& s : series) {
    if (s.size() < 3) {
      throw InputError("align: series " + s.label + " has " + std::to_string(s.size()) +
                       " observations, need at least 3");
    }
  }
  PricePanel panel = policy.kind == AlignPolicy::Kind::Intersection
                         ? intersect(series)
                         : forward_fill(series, policy.max_gap);
  if (panel.dates.size() < 3) {
    throw InputError("align: insufficient overlap (" + std::to_string(panel.dates.size()) +
                     " common dates, need at least 3)");
  }
  panel.labels.reserve(series.size());
  for (const auto& s : series) panel.labels.push_back(s.label);
  return panel;
}

PricePanel restrict_dates(const PricePanel& panel, std::optional<Date> from,
                          std::optional<Date> to) {
  std::vector<Eigen::Index> keep;
  for (std::size_t t = 0; t < panel.dates.size(); ++t) {
    const auto& d = panel.dates[t];
    if ((from && d < *from) || (to && *to < d)) continue;
    keep.push_back(static_cast<Eigen::Index>(t));
  }
  if (keep.size() < 3) {
    throw InputError("date filter: insufficient overlap (" + std::to_string(keep.size()) +
                     " dates in range, need at least 3)");
  }
  PricePanel out;
  out.labels = panel.labels;
  out.prices = panel.prices(Eigen::all, keep);
  for (auto t : keep) out.dates.push_back(panel.dates[static_cast<std::size_t>(t)]);
  return out;
}

}  // namespace collective
