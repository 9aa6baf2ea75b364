#include "statkit/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "statkit/univariate.hpp"

namespace statkit::tabular {

bool Column::any_missing() const {
  return std::any_of(missing.begin(), missing.end(), [](char m) { return m != 0; });
}

Index Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Index>(i);
  throw std::invalid_argument("table: no column named '" + name + "'");
}

const Column& Table::column(const std::string& name) const {
  return cols[static_cast<std::size_t>(column_index(name))];
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::optional<double> parse_number(std::string_view raw) {
  const std::string_view s = trim(raw);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;  // from_chars rejects a leading plus
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) return std::nullopt;
  return value;
}

struct RawRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC-4180 record reader with comment-prefix skipping between records.
std::vector<RawRecord> read_records(std::istream& in, const std::string& comment_prefix) {
  std::vector<RawRecord> records;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  std::size_t line = 1;
  const std::size_t n = content.size();
  while (pos < n) {
    // skip blank and comment lines between records
    if (content[pos] == '\n') {
      ++pos;
      ++line;
      continue;
    }
    if (content[pos] == '\r' && pos + 1 < n && content[pos + 1] == '\n') {
      pos += 2;
      ++line;
      continue;
    }
    if (!comment_prefix.empty() &&
        content.compare(pos, comment_prefix.size(), comment_prefix) == 0) {
      while (pos < n && content[pos] != '\n') ++pos;
      continue;
    }
    RawRecord rec;
    rec.line = line;
    std::string field;
    bool quoted = false;
    bool done = false;
    while (pos < n && !done) {
      const char c = content[pos];
      if (quoted) {
        if (c == '"') {
          if (pos + 1 < n && content[pos + 1] == '"') {
            field += '"';
            pos += 2;
          } else {
            quoted = false;
            ++pos;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
          ++pos;
        }
      } else if (c == '"') {
        quoted = true;
        ++pos;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        ++pos;
      } else if (c == '\n') {
        ++pos;
        ++line;
        done = true;
      } else if (c == '\r' && pos + 1 < n && content[pos + 1] == '\n') {
        pos += 2;
        ++line;
        done = true;
      } else {
        field += c;
        ++pos;
      }
    }
    if (quoted) throw std::runtime_error("read_csv: unterminated quote in record starting at line " +
                                         std::to_string(rec.line));
    rec.fields.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

Table read_csv(std::istream& in, const CsvOptions& options) {
  const auto records = read_records(in, options.comment_prefix);
  Table t;
  if (records.empty()) return t;

  std::size_t first_data = 0;
  const std::size_t m = records[0].fields.size();
  if (options.header) {
    t.names.assign(records[0].fields.begin(), records[0].fields.end());
    for (auto& name : t.names) name = std::string(trim(name));
    std::set<std::string> seen;
    for (const auto& name : t.names)
      if (!seen.insert(name).second)
        throw std::runtime_error("read_csv: duplicate header name '" + name + "'");
    first_data = 1;
  } else {
    for (std::size_t j = 0; j < m; ++j) t.names.push_back("c" + std::to_string(j));
  }

  const std::size_t n = records.size() - first_data;
  for (std::size_t r = first_data; r < records.size(); ++r)
    if (records[r].fields.size() != m)
      throw std::runtime_error("read_csv: row at line " + std::to_string(records[r].line) +
                               " has " + std::to_string(records[r].fields.size()) +
                               " fields, expected " + std::to_string(m));

  t.n_rows = static_cast<Index>(n);
  t.cols.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    Column& col = t.cols[j];
    col.missing.assign(n, 0);
    std::vector<double> parsed(n, 0.0);
    bool numeric = true;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& cell = records[first_data + i].fields[j];
      if (options.missing_tokens.count(std::string(trim(cell))) != 0) {
        col.missing[i] = 1;
        continue;
      }
      if (numeric) {
        const auto value = parse_number(cell);
        if (!value) {
          numeric = false;
        } else if (std::isnan(*value)) {
          col.missing[i] = 1;
        } else {
          parsed[i] = *value;
        }
      }
    }
    if (numeric) {
      col.kind = Column::Kind::numeric;
      col.num = Eigen::Map<const VectorXd>(parsed.data(), static_cast<Index>(n));
    } else {
      col.kind = Column::Kind::text;
      col.text.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::string& cell = records[first_data + i].fields[j];
        if (!col.missing[i]) col.text[i] = std::string(trim(cell));
      }
    }
  }
  return t;
}

Table read_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
  return read_csv(in, options);
}

namespace {

void write_csv_field(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\n\r") != std::string::npos) {
    out << '"';
    for (char c : s) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  } else {
    out << s;
  }
}

}  // namespace

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t j = 0; j < t.names.size(); ++j) {
    if (j) out << ',';
    write_csv_field(out, t.names[j]);
  }
  if (!t.names.empty()) out << '\n';
  for (Index i = 0; i < t.n_rows; ++i) {
    for (std::size_t j = 0; j < t.cols.size(); ++j) {
      if (j) out << ',';
      const Column& col = t.cols[j];
      if (col.missing[static_cast<std::size_t>(i)]) continue;  // empty cell
      if (col.kind == Column::Kind::numeric)
        out << format_double(col.num[i]);
      else
        write_csv_field(out, col.text[static_cast<std::size_t>(i)]);
    }
    out << '\n';
  }
}

namespace {

std::string level_of(const Column& col, Index i) {
  if (col.kind == Column::Kind::numeric) return format_double(col.num[i]);
  return col.text[static_cast<std::size_t>(i)];
}

}  // namespace

std::vector<std::pair<std::string, Table>> group_split(const Table& t,
                                                       const std::string& key,
                                                       bool allow_missing_key) {
  const Column& col = t.column(key);
  for (Index i = 0; i < t.n_rows; ++i)
    if (col.missing[static_cast<std::size_t>(i)] && !allow_missing_key)
      throw std::invalid_argument("group_split: missing key value at row " + std::to_string(i) +
                                  " (pass the missing-level flag to allow)");

  std::vector<Index> order(static_cast<std::size_t>(t.n_rows));
  std::iota(order.begin(), order.end(), Index{0});
  auto rank = [&](Index i) {
    // missing keys sort after everything else
    return col.missing[static_cast<std::size_t>(i)] ? 1 : 0;
  };
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (rank(a) == 1) return false;
    if (col.kind == Column::Kind::numeric) return col.num[a] < col.num[b];
    return col.text[static_cast<std::size_t>(a)] < col.text[static_cast<std::size_t>(b)];
  });

  std::vector<std::pair<std::string, Table>> out;
  std::size_t i = 0;
  while (i < order.size()) {
    const Index first = order[i];
    const bool miss = col.missing[static_cast<std::size_t>(first)] != 0;
    const std::string level = miss ? "<NA>" : level_of(col, first);
    std::vector<Index> rows;
    while (i < order.size()) {
      const Index r = order[i];
      const bool rmiss = col.missing[static_cast<std::size_t>(r)] != 0;
      if (rmiss != miss) break;
      if (!miss) {
        const bool same = (col.kind == Column::Kind::numeric)
                              ? col.num[r] == col.num[first]
                              : col.text[static_cast<std::size_t>(r)] == col.text[static_cast<std::size_t>(first)];
        if (!same) break;
      }
      rows.push_back(r);
      ++i;
    }
    out.emplace_back(level, select_rows(t, rows));
  }
  return out;
}

VectorXd impute(const VectorXd& values, const std::vector<char>& missing,
                ImputeStrategy strategy) {
  if (values.size() != static_cast<Index>(missing.size()))
    throw std::invalid_argument("impute: mask length mismatch");
  std::vector<double> present;
  present.reserve(static_cast<std::size_t>(values.size()));
  for (Index i = 0; i < values.size(); ++i)
    if (!missing[static_cast<std::size_t>(i)]) present.push_back(values[i]);
  if (present.empty()) throw std::domain_error("impute: all values missing");

  const Eigen::Map<const VectorXd> obs(present.data(), static_cast<Index>(present.size()));
  double fill = 0.0;
  switch (strategy) {
    case ImputeStrategy::mean:
      fill = obs.mean();
      break;
    case ImputeStrategy::median:
      fill = univariate::median(obs);
      break;
    case ImputeStrategy::mode: {
      // most frequent observed value; ties resolved towards the smallest
      std::map<double, Index> counts;
      for (double x : present) ++counts[x];
      Index best = 0;
      for (const auto& [value, count] : counts)
        if (count > best) {
          best = count;
          fill = value;
        }
      break;
    }
  }
  VectorXd out = values;
  for (Index i = 0; i < out.size(); ++i)
    if (missing[static_cast<std::size_t>(i)]) out[i] = fill;
  return out;
}

VectorXd impute_group_mean(const VectorXd& values, const std::vector<char>& missing,
                           const categorical::Factor& groups) {
  if (values.size() != static_cast<Index>(missing.size()) || values.size() != groups.n())
    throw std::invalid_argument("impute: group length mismatch");
  const int l = groups.l();
  std::vector<double> sums(static_cast<std::size_t>(l), 0.0);
  std::vector<Index> counts(static_cast<std::size_t>(l), 0);
  for (Index i = 0; i < values.size(); ++i) {
    if (missing[static_cast<std::size_t>(i)]) continue;
    const auto g = static_cast<std::size_t>(groups.codes[static_cast<std::size_t>(i)]);
    sums[g] += values[i];
    ++counts[g];
  }
  VectorXd out = values;
  for (Index i = 0; i < values.size(); ++i) {
    if (!missing[static_cast<std::size_t>(i)]) continue;
    const auto g = static_cast<std::size_t>(groups.codes[static_cast<std::size_t>(i)]);
    if (counts[g] == 0)
      throw std::domain_error("impute: group '" + groups.levels[g] + "' has no observed values");
    out[i] = sums[g] / static_cast<double>(counts[g]);
  }
  return out;
}

Table drop_missing(const Table& t, DropMode mode) {
  std::vector<Index> keep;
  for (Index i = 0; i < t.n_rows; ++i) {
    Index nmissing = 0;
    for (const Column& col : t.cols) nmissing += (col.missing[static_cast<std::size_t>(i)] != 0);
    const bool drop = (mode == DropMode::any_row) ? nmissing > 0
                                                  : nmissing == t.n_cols() && t.n_cols() > 0;
    if (!drop) keep.push_back(i);
  }
  return select_rows(t, keep);
}

Table select_rows(const Table& t, const std::vector<Index>& rows) {
  Table out;
  out.names = t.names;
  out.n_rows = static_cast<Index>(rows.size());
  out.cols.reserve(t.cols.size());
  for (const Column& col : t.cols) {
    Column c;
    c.kind = col.kind;
    c.missing.resize(rows.size());
    if (col.kind == Column::Kind::numeric) {
      c.num.resize(static_cast<Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        c.num[static_cast<Index>(i)] = col.num.size() > 0 ? col.num[rows[i]] : 0.0;
        c.missing[i] = col.missing[static_cast<std::size_t>(rows[i])];
      }
    } else {
      c.text.resize(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        c.text[i] = col.text[static_cast<std::size_t>(rows[i])];
        c.missing[i] = col.missing[static_cast<std::size_t>(rows[i])];
      }
    }
    out.cols.push_back(std::move(c));
  }
  return out;
}

Table select_columns(const Table& t, const std::vector<std::string>& names) {
  Table out;
  out.n_rows = t.n_rows;
  for (const auto& name : names) {
    out.names.push_back(name);
    out.cols.push_back(t.column(name));
  }
  return out;
}

std::pair<VectorXd, std::vector<char>> numeric_column(const Table& t, const std::string& name) {
  const Column& col = t.column(name);
  if (col.kind != Column::Kind::numeric)
    throw std::invalid_argument("column '" + name + "' is not numeric");
  VectorXd values = col.num.size() > 0 ? col.num : VectorXd::Zero(t.n_rows);
  return {values, col.missing};
}

VectorXd numeric_column_complete(const Table& t, const std::string& name) {
  const auto [values, missing] = numeric_column(t, name);
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(values.size()));
  for (Index i = 0; i < values.size(); ++i)
    if (!missing[static_cast<std::size_t>(i)]) kept.push_back(values[i]);
  return Eigen::Map<const VectorXd>(kept.data(), static_cast<Index>(kept.size()));
}

std::pair<std::vector<Index>, std::vector<Index>> train_test_split_indices(Index n, Index n_test,
                                                                           Rng& rng) {
  if (n_test < 0 || n_test > n)
    throw std::invalid_argument("train_test_split: n_test out of range");
  const auto picked = rng.sample_without_replacement(n, n);
  std::vector<Index> test(picked.begin(), picked.begin() + n_test);
  std::vector<Index> train(picked.begin() + n_test, picked.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {train, test};
}

}  // namespace statkit::tabular
