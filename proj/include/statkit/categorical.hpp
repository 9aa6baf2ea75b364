#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "statkit/rng.hpp"

namespace statkit::categorical {

using Eigen::Index;
using Eigen::MatrixXd;
using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Integer codes plus the ordered level list they index into.
struct Factor {
  std::vector<int> codes;
  std::vector<std::string> levels;

  Index n() const { return static_cast<Index>(codes.size()); }
  int l() const { return static_cast<int>(levels.size()); }
};

// Levels listed in order of first appearance.
Factor factorize(const std::vector<std::string>& labels);
std::vector<std::string> decode(const Factor& f);

// Permute the level list by `permutation` and remap codes through its inverse,
// so that decode(recode(f)) == decode(f).
Factor recode(const Factor& f, const std::vector<int>& permutation);

// n-by-l 0/1 matrix with M(i, codes[i]) = 1.
MatrixXd one_hot(const Factor& f);
// Row-argmax decoding; also accepts probability rows (each row must sum to 1).
std::vector<int> decode_one_hot(const MatrixXd& m);

// (a, b] interval coding: code = number of bounds strictly less than the
// value; a value equal to a bound takes the lower interval's code.
std::vector<int> bin_codes(const Eigen::Ref<const Eigen::VectorXd>& v,
                           const Eigen::Ref<const Eigen::VectorXd>& bounds);

struct ContingencyTable {
  std::vector<std::string> row_levels;
  std::vector<std::string> col_levels;
  CountMatrix counts;
};

ContingencyTable crosstab(const Factor& f1, const Factor& f2);
std::pair<std::vector<std::string>, std::vector<std::int64_t>> value_counts(const Factor& f);

// All levels attaining the maximal count, in level order.
std::vector<std::string> mode_set(const Factor& f);
// Deterministic single pick: the tied level with the lowest code.
std::string mode_single(const Factor& f);
// Tie broken uniformly at random via the supplied generator.
std::string mode_single(const Factor& f, Rng& rng);

double binary_rate(const std::vector<char>& mask);

// Median of an ordinal factor (level order = rank order); an ambiguous middle
// returns both candidate codes.
std::vector<int> ordinal_median(const Factor& f);

// ContingencyTable as CSV with header row/col labels.
void write_contingency_csv(const ContingencyTable& t, std::ostream& os);

}  // namespace statkit::categorical
