#include "statkit/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace statkit::categorical {

Factor factorize(const std::vector<std::string>& labels) {
  Factor f;
  std::unordered_map<std::string, int> seen;
  f.codes.reserve(labels.size());
  for (const auto& label : labels) {
    auto [it, inserted] = seen.try_emplace(label, static_cast<int>(f.levels.size()));
    if (inserted) f.levels.push_back(label);
    f.codes.push_back(it->second);
  }
  return f;
}

std::vector<std::string> decode(const Factor& f) {
  std::vector<std::string> out;
  out.reserve(f.codes.size());
  for (int c : f.codes) {
    if (c < 0 || c >= f.l()) throw std::invalid_argument("decode: code out of range");
    out.push_back(f.levels[static_cast<std::size_t>(c)]);
  }
  return out;
}

Factor recode(const Factor& f, const std::vector<int>& permutation) {
  const int l = f.l();
  if (static_cast<int>(permutation.size()) != l)
    throw std::invalid_argument("recode: permutation length mismatch");
  std::vector<char> hit(static_cast<std::size_t>(l), 0);
  for (int p : permutation) {
    if (p < 0 || p >= l || hit[static_cast<std::size_t>(p)])
      throw std::invalid_argument("recode: not a bijection on [0, l)");
    hit[static_cast<std::size_t>(p)] = 1;
  }
  Factor out;
  out.levels.resize(static_cast<std::size_t>(l));
  std::vector<int> inverse(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) {
    out.levels[static_cast<std::size_t>(i)] = f.levels[static_cast<std::size_t>(permutation[static_cast<std::size_t>(i)])];
    inverse[static_cast<std::size_t>(permutation[static_cast<std::size_t>(i)])] = i;
  }
  out.codes.reserve(f.codes.size());
  for (int c : f.codes) out.codes.push_back(inverse[static_cast<std::size_t>(c)]);
  return out;
}

MatrixXd one_hot(const Factor& f) {
  const Index n = f.n();
  const int l = f.l();
  if (l == 0) throw std::invalid_argument("one_hot: factor has no levels");
  MatrixXd m = MatrixXd::Zero(n, l);
  for (Index i = 0; i < n; ++i) {
    const int c = f.codes[static_cast<std::size_t>(i)];
    if (c < 0 || c >= l) throw std::invalid_argument("one_hot: code out of range");
    m(i, c) = 1.0;
  }
  return m;
}

std::vector<int> decode_one_hot(const MatrixXd& m) {
  std::vector<int> codes(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) {
    const double rowsum = m.row(i).sum();
    if (std::abs(rowsum - 1.0) > 1e-6)
      throw std::invalid_argument("decode_one_hot: row " + std::to_string(i) +
                                  " does not sum to 1");
    Index best;
    const double top = m.row(i).maxCoeff(&best);
    if (!(top > 0)) throw std::invalid_argument("decode_one_hot: zero row");
    codes[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return codes;
}

std::vector<int> bin_codes(const Eigen::Ref<const Eigen::VectorXd>& v,
                           const Eigen::Ref<const Eigen::VectorXd>& bounds) {
  for (Index i = 0; i + 1 < bounds.size(); ++i)
    if (!(bounds[i] < bounds[i + 1]))
      throw std::invalid_argument("bin_codes: bounds must be strictly increasing");
  std::vector<int> codes(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) {
    const auto it = std::lower_bound(bounds.begin(), bounds.end(), v[i]);
    codes[static_cast<std::size_t>(i)] = static_cast<int>(it - bounds.begin());
  }
  return codes;
}

ContingencyTable crosstab(const Factor& f1, const Factor& f2) {
  if (f1.n() != f2.n()) throw std::invalid_argument("crosstab: length mismatch");
  ContingencyTable t;
  t.row_levels = f1.levels;
  t.col_levels = f2.levels;
  t.counts = CountMatrix::Zero(f1.l(), f2.l());
  for (Index k = 0; k < f1.n(); ++k)
    ++t.counts(f1.codes[static_cast<std::size_t>(k)], f2.codes[static_cast<std::size_t>(k)]);
  return t;
}

std::pair<std::vector<std::string>, std::vector<std::int64_t>> value_counts(const Factor& f) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(f.l()), 0);
  for (int c : f.codes) ++counts[static_cast<std::size_t>(c)];
  return {f.levels, counts};
}

namespace {

std::vector<int> mode_codes(const Factor& f) {
  if (f.n() == 0) throw std::domain_error("mode: empty factor");
  const auto [levels, counts] = value_counts(f);
  const std::int64_t best = *std::max_element(counts.begin(), counts.end());
  std::vector<int> out;
  for (int c = 0; c < f.l(); ++c)
    if (counts[static_cast<std::size_t>(c)] == best) out.push_back(c);
  return out;
}

}  // namespace

std::vector<std::string> mode_set(const Factor& f) {
  std::vector<std::string> out;
  for (int c : mode_codes(f)) out.push_back(f.levels[static_cast<std::size_t>(c)]);
  return out;
}

std::string mode_single(const Factor& f) {
  return f.levels[static_cast<std::size_t>(mode_codes(f).front())];
}

std::string mode_single(const Factor& f, Rng& rng) {
  const auto candidates = mode_codes(f);
  const auto pick = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
  return f.levels[static_cast<std::size_t>(pick)];
}

double binary_rate(const std::vector<char>& mask) {
  if (mask.empty()) throw std::domain_error("binary_rate: empty input");
  std::int64_t hits = 0;
  for (char m : mask) hits += (m != 0);
  return static_cast<double>(hits) / static_cast<double>(mask.size());
}

std::vector<int> ordinal_median(const Factor& f) {
  if (f.n() == 0) throw std::domain_error("ordinal_median: empty factor");
  std::vector<int> s = f.codes;
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  if (n % 2 == 1) return {s[n / 2]};
  const int a = s[n / 2 - 1];
  const int b = s[n / 2];
  if (a == b) return {a};
  return {a, b};
}

void write_contingency_csv(const ContingencyTable& t, std::ostream& os) {
  os << "";
  for (const auto& c : t.col_levels) os << ',' << c;
  os << '\n';
  for (Index i = 0; i < t.counts.rows(); ++i) {
    os << t.row_levels[static_cast<std::size_t>(i)];
    for (Index j = 0; j < t.counts.cols(); ++j) os << ',' << t.counts(i, j);
    os << '\n';
  }
}

}  // namespace statkit::categorical
