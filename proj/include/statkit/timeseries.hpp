#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace statkit::timeseries {

using Eigen::Index;
using Eigen::VectorXd;

// Days since 1970-01-01 for a strict YYYY-MM-DD Gregorian date,
// years 1583..9999.
std::int64_t parse_date(std::string_view text);
std::string format_date(std::int64_t epoch_days);
std::int64_t add_days(std::int64_t epoch_days, std::int64_t delta);
std::int64_t diff_days(std::int64_t a, std::int64_t b);  // a - b

// Values with optional missing entries and an optional strictly increasing
// datetime index (days or milliseconds since the Unix epoch).
struct Series {
  VectorXd values;
  std::vector<char> missing;          // 1 = missing
  std::vector<std::int64_t> index;    // empty when absent
  bool has_index = false;

  Index size() const { return values.size(); }
  static Series from_values(VectorXd values);
  static Series from_values(VectorXd values, std::vector<char> missing);
};

enum class RollStat { mean, min, median, max };

// Centered windows align positions i..i+k-1 to i + floor((k-1)/2); positions
// without a full window (or with a missing value inside it) come out missing.
// Non-centered windows align to the trailing edge.
Series rolling(const Series& s, Index k, RollStat stat, bool centered = true);

enum class FillMethod { ffill, bfill, linear };

// ffill propagates the last value forward (leading gap stays missing), bfill
// mirrors it, linear interpolates by position and leaves unbracketed runs
// untouched.
Series fill(const Series& s, FillMethod method);

struct Detrended {
  Series trend;      // centered k-moving mean
  Series detrended;  // s - trend
};

Detrended detrend(const Series& s, Index k);

// Two-column CSV (ISO-8601 date, value); missing serialised as an empty cell.
void write_series_csv(const Series& s, std::ostream& out);

}  // namespace statkit::timeseries
