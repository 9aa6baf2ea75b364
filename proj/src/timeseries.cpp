#include "statkit/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "statkit/tabular.hpp"

namespace statkit::timeseries {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yy + (m <= 2));
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("parse_date: malformed date component");
  return value;
}

}  // namespace

std::int64_t parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw std::invalid_argument("parse_date: expected YYYY-MM-DD, got '" + std::string(text) + "'");
  const int y = parse_int(text.substr(0, 4));
  const int m = parse_int(text.substr(5, 2));
  const int d = parse_int(text.substr(8, 2));
  if (y < 1583 || y > 9999) throw std::invalid_argument("parse_date: year out of range [1583, 9999]");
  if (m < 1 || m > 12) throw std::invalid_argument("parse_date: month out of range");
  if (d < 1 || d > days_in_month(y, m))
    throw std::invalid_argument("parse_date: invalid day '" + std::string(text) + "'");
  return days_from_civil(y, m, d);
}

std::string format_date(std::int64_t epoch_days) {
  int y = 0;
  int m = 0;
  int d = 0;
  civil_from_days(epoch_days, y, m, d);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

std::int64_t add_days(std::int64_t epoch_days, std::int64_t delta) { return epoch_days + delta; }

std::int64_t diff_days(std::int64_t a, std::int64_t b) { return a - b; }

Series Series::from_values(VectorXd values) {
  Series s;
  s.missing.assign(static_cast<std::size_t>(values.size()), 0);
  s.values = std::move(values);
  return s;
}

Series Series::from_values(VectorXd values, std::vector<char> missing) {
  if (values.size() != static_cast<Index>(missing.size()))
    throw std::invalid_argument("series: mask length mismatch");
  Series s;
  s.values = std::move(values);
  s.missing = std::move(missing);
  return s;
}

namespace {

Series like(const Series& s) {
  Series out;
  out.values = VectorXd::Zero(s.size());
  out.missing.assign(static_cast<std::size_t>(s.size()), 1);
  out.index = s.index;
  out.has_index = s.has_index;
  return out;
}

double window_stat(const double* data, Index k, RollStat stat) {
  switch (stat) {
    case RollStat::mean: {
      double acc = 0.0;
      for (Index i = 0; i < k; ++i) acc += data[i];
      return acc / static_cast<double>(k);
    }
    case RollStat::min:
      return *std::min_element(data, data + k);
    case RollStat::max:
      return *std::max_element(data, data + k);
    case RollStat::median: {
      std::vector<double> copy(data, data + k);
      const auto mid = copy.begin() + k / 2;
      std::nth_element(copy.begin(), mid, copy.end());
      if (k % 2 == 1) return *mid;
      const double upper = *mid;
      const double lower = *std::max_element(copy.begin(), mid);
      return 0.5 * (lower + upper);
    }
  }
  throw std::logic_error("rolling: unknown statistic");
}

}  // namespace

Series rolling(const Series& s, Index k, RollStat stat, bool centered) {
  const Index n = s.size();
  if (k < 1 || k > n) throw std::invalid_argument("rolling: need 1 <= k <= n");
  Series out = like(s);
  const Index shift = centered ? (k - 1) / 2 : k - 1;
  std::vector<Index> missing_prefix(static_cast<std::size_t>(n) + 1, 0);
  for (Index i = 0; i < n; ++i)
    missing_prefix[static_cast<std::size_t>(i) + 1] =
        missing_prefix[static_cast<std::size_t>(i)] + (s.missing[static_cast<std::size_t>(i)] ? 1 : 0);
  for (Index start = 0; start + k <= n; ++start) {
    if (missing_prefix[static_cast<std::size_t>(start + k)] -
            missing_prefix[static_cast<std::size_t>(start)] >
        0)
      continue;  // incomplete information inside the window
    const Index pos = start + shift;
    out.values[pos] = window_stat(s.values.data() + start, k, stat);
    out.missing[static_cast<std::size_t>(pos)] = 0;
  }
  return out;
}

Series fill(const Series& s, FillMethod method) {
  const Index n = s.size();
  bool any_present = false;
  for (char m : s.missing)
    if (!m) any_present = true;
  if (!any_present) throw std::domain_error("fill: all values missing");

  Series out = s;
  switch (method) {
    case FillMethod::ffill: {
      Index last = -1;
      for (Index i = 0; i < n; ++i) {
        if (!out.missing[static_cast<std::size_t>(i)]) {
          last = i;
        } else if (last >= 0) {
          out.values[i] = out.values[last];
          out.missing[static_cast<std::size_t>(i)] = 0;
        }
      }
      break;
    }
    case FillMethod::bfill: {
      Index next = -1;
      for (Index i = n - 1; i >= 0; --i) {
        if (!out.missing[static_cast<std::size_t>(i)]) {
          next = i;
        } else if (next >= 0) {
          out.values[i] = out.values[next];
          out.missing[static_cast<std::size_t>(i)] = 0;
        }
      }
      break;
    }
    case FillMethod::linear: {
      Index prev = -1;
      for (Index i = 0; i < n; ++i) {
        if (out.missing[static_cast<std::size_t>(i)]) continue;
        if (prev >= 0 && i - prev > 1) {
          const double lo = out.values[prev];
          const double hi = out.values[i];
          const double span = static_cast<double>(i - prev);
          for (Index j = prev + 1; j < i; ++j) {
            out.values[j] = lo + (hi - lo) * static_cast<double>(j - prev) / span;
            out.missing[static_cast<std::size_t>(j)] = 0;
          }
        }
        prev = i;
      }
      break;
    }
  }
  return out;
}

Detrended detrend(const Series& s, Index k) {
  Detrended res;
  res.trend = rolling(s, k, RollStat::mean, true);
  res.detrended = like(s);
  for (Index i = 0; i < s.size(); ++i) {
    if (s.missing[static_cast<std::size_t>(i)] || res.trend.missing[static_cast<std::size_t>(i)])
      continue;
    res.detrended.values[i] = s.values[i] - res.trend.values[i];
    res.detrended.missing[static_cast<std::size_t>(i)] = 0;
  }
  return res;
}

void write_series_csv(const Series& s, std::ostream& out) {
  out << (s.has_index ? "date,value\n" : "value\n");
  for (Index i = 0; i < s.size(); ++i) {
    if (s.has_index) out << format_date(s.index[static_cast<std::size_t>(i)]) << ',';
    if (!s.missing[static_cast<std::size_t>(i)]) out << tabular::format_double(s.values[i]);
    out << '\n';
  }
}

}  // namespace statkit::timeseries
