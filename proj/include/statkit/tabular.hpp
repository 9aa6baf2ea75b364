#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "statkit/categorical.hpp"
#include "statkit/rng.hpp"

namespace statkit::tabular {

using Eigen::Index;
using Eigen::VectorXd;

// A column is numeric iff every non-missing cell of the source parsed as a
// number; otherwise it stays text. Missing entries are tracked explicitly.
struct Column {
  enum class Kind { numeric, text };

  Kind kind = Kind::numeric;
  VectorXd num;                    // per-entry values when numeric
  std::vector<std::string> text;   // per-entry values when text
  std::vector<char> missing;       // 1 = missing

  Index size() const { return static_cast<Index>(missing.size()); }
  bool any_missing() const;
};

struct Table {
  std::vector<std::string> names;
  std::vector<Column> cols;
  Index n_rows = 0;

  Index n_cols() const { return static_cast<Index>(cols.size()); }
  Index column_index(const std::string& name) const;  // throws if absent
  const Column& column(const std::string& name) const;
};

struct CsvOptions {
  std::string comment_prefix = "#";
  std::set<std::string> missing_tokens = {"", "NA", "NaN"};
  bool header = true;  // headerless mode synthesises names c0..c(m-1)
};

Table read_csv(std::istream& in, const CsvOptions& options = {});
Table read_csv_file(const std::string& path, const CsvOptions& options = {});
void write_csv(const Table& t, std::ostream& out);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

// Stable sort by key, then split at the first occurrence of each distinct
// level; levels come back sorted (numerically for numeric keys). Missing keys
// are an error unless allowed, in which case they form a trailing "<NA>"
// group.
std::vector<std::pair<std::string, Table>> group_split(const Table& t,
                                                       const std::string& key,
                                                       bool allow_missing_key = false);

enum class ImputeStrategy { mean, median, mode };

VectorXd impute(const VectorXd& values, const std::vector<char>& missing,
                ImputeStrategy strategy);
VectorXd impute_group_mean(const VectorXd& values, const std::vector<char>& missing,
                           const categorical::Factor& groups);

enum class DropMode { any_row, all_row };
Table drop_missing(const Table& t, DropMode mode);

Table select_rows(const Table& t, const std::vector<Index>& rows);
Table select_columns(const Table& t, const std::vector<std::string>& names);

// Extract a numeric column as (values, missing), the bridge to the vector
// modules. Throws if the column is text.
std::pair<VectorXd, std::vector<char>> numeric_column(const Table& t,
                                                      const std::string& name);
// Same, but with missing entries dropped.
VectorXd numeric_column_complete(const Table& t, const std::string& name);

// Seeded permutation split: (train indices, test indices), each sorted.
std::pair<std::vector<Index>, std::vector<Index>> train_test_split_indices(
    Index n, Index n_test, Rng& rng);

}  // namespace statkit::tabular
