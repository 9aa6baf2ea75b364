#include "statkit/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace statkit::univariate {

namespace {

void require_nonempty(const VecRef& v, const char* stat) {
  if (v.size() == 0) throw std::domain_error(std::string(stat) + ": empty input");
}

}  // namespace

double mean(const VecRef& v) {
  require_nonempty(v, "mean");
  return v.mean();
}

double var(const VecRef& v, int ddof) {
  if (v.size() <= ddof) throw std::domain_error("var: need n > ddof");
  const double m = v.mean();
  return (v.array() - m).square().sum() / static_cast<double>(v.size() - ddof);
}

double stddev(const VecRef& v, int ddof) { return std::sqrt(var(v, ddof)); }

double median(const VecRef& v) { return quantile(v, 0.5); }

double min(const VecRef& v) {
  require_nonempty(v, "min");
  return v.minCoeff();
}

double max(const VecRef& v) {
  require_nonempty(v, "max");
  return v.maxCoeff();
}

double midrange(const VecRef& v) { return 0.5 * (min(v) + max(v)); }

double iqr(const VecRef& v) { return quantile(v, 0.75) - quantile(v, 0.25); }

double skewness(const VecRef& v) {
  require_nonempty(v, "skewness");
  const double m = v.mean();
  const auto centred = v.array() - m;
  const double n = static_cast<double>(v.size());
  const double m2 = centred.square().sum() / n;
  if (!(m2 > 0)) throw std::domain_error("skewness: zero standard deviation");
  const double m3 = centred.cube().sum() / n;
  return m3 / std::pow(m2, 1.5);
}

double gini(const VecRef& v) {
  require_nonempty(v, "gini");
  if ((v.array() < 0).any()) throw std::domain_error("gini: negative values");
  const double total = v.sum();
  if (!(total > 0)) throw std::domain_error("gini: mean must be positive");
  VectorXd s = sorted(v);
  const Index n = s.size();
  if (n == 1) return 0.0;
  // sorted-form identity: sum_i (2i - n - 1) x_(i) / ((n-1) sum x), i = 1..n
  double acc = 0.0;
  for (Index i = 0; i < n; ++i)
    acc += static_cast<double>(2 * (i + 1) - n - 1) * s[i];
  return acc / (static_cast<double>(n - 1) * total);
}

double entropy(const VecRef& v) {
  require_nonempty(v, "entropy");
  if ((v.array() <= 0).any() || (v.array() > 1).any())
    throw std::domain_error("entropy: values must lie in (0, 1]");
  return -(v.array() * v.array().log()).sum();
}

double trimmed_mean(const VecRef& v, Index p) {
  if (p < 0 || v.size() <= 2 * p)
    throw std::domain_error("trimmed_mean: need n > 2p");
  VectorXd s = sorted(v);
  return s.segment(p, s.size() - 2 * p).mean();
}

double winsorized_mean(const VecRef& v, Index p) {
  if (p < 0 || v.size() <= 2 * p)
    throw std::domain_error("winsorized_mean: need n > 2p");
  VectorXd s = sorted(v);
  const Index n = s.size();
  for (Index i = 0; i < p; ++i) {
    s[i] = s[p];
    s[n - 1 - i] = s[n - 1 - p];
  }
  return s.mean();
}

double coeff_variation(const VecRef& v) {
  const double m = mean(v);
  if (m == 0) throw std::domain_error("coeff_variation: zero mean");
  return stddev(v, 0) / m;
}

double mad_mean(const VecRef& v) {
  const double m = mean(v);
  return (v.array() - m).abs().mean();
}

double mad_median(const VecRef& v) {
  const double m = median(v);
  return (v.array() - m).abs().mean();
}

double median_ad(const VecRef& v) {
  const double m = median(v);
  VectorXd dev = (v.array() - m).abs();
  return median(dev);
}

double aggregate(const VecRef& v, const std::string& stat) {
  std::string name = stat;
  std::string arg;
  if (const auto pos = stat.find(':'); pos != std::string::npos) {
    name = stat.substr(0, pos);
    arg = stat.substr(pos + 1);
  }
  if (name == "mean") return mean(v);
  if (name == "median") return median(v);
  if (name == "var") return var(v, arg.empty() ? 0 : std::stoi(arg));
  if (name == "std") return stddev(v, arg.empty() ? 0 : std::stoi(arg));
  if (name == "min") return min(v);
  if (name == "max") return max(v);
  if (name == "midrange") return midrange(v);
  if (name == "iqr") return iqr(v);
  if (name == "skewness") return skewness(v);
  if (name == "gini") return gini(v);
  if (name == "entropy") return entropy(v);
  if (name == "trimmed_mean") return trimmed_mean(v, arg.empty() ? 1 : std::stol(arg));
  if (name == "winsorized_mean") return winsorized_mean(v, arg.empty() ? 1 : std::stol(arg));
  if (name == "coeff_variation") return coeff_variation(v);
  if (name == "mad_mean") return mad_mean(v);
  if (name == "mad_median") return mad_median(v);
  if (name == "median_ad") return median_ad(v);
  throw std::invalid_argument("aggregate: unknown statistic '" + stat + "'");
}

double quantile(const VecRef& v, double p) {
  require_nonempty(v, "quantile");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile: p must be in [0, 1]");
  VectorXd s = sorted(v);
  const Index n = s.size();
  if (n == 1) return s[0];
  const double h = static_cast<double>(n - 1) * p;
  const auto lo = static_cast<Index>(std::floor(h));
  if (lo >= n - 1) return s[n - 1];
  const double frac = h - static_cast<double>(lo);
  return s[lo] + frac * (s[lo + 1] - s[lo]);
}

VectorXd standardize(const VecRef& v) {
  const double m = mean(v);
  const double s = stddev(v, 0);
  if (!(s > 0)) throw std::domain_error("standardize: zero standard deviation");
  return (v.array() - m) / s;
}

VectorXd robust_standardize(const VecRef& v) {
  const double m = median(v);
  const double r = iqr(v);
  if (!(r > 0)) throw std::domain_error("robust_standardize: zero IQR");
  return (v.array() - m) / r;
}

VectorXd minmax_scale(const VecRef& v) {
  const double lo = min(v);
  const double hi = max(v);
  if (!(hi > lo)) throw std::domain_error("minmax: max must exceed min");
  return (v.array() - lo) / (hi - lo);
}

VectorXd clip(const VecRef& v, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("clip: lo > hi");
  return v.array().max(lo).min(hi);
}

VectorXd normalize_l2(const VecRef& v) {
  const double norm = v.norm();
  if (!(norm > 0)) throw std::domain_error("normalize_l2: zero norm");
  return v / norm;
}

VectorXd normalize_l1(const VecRef& v) {
  const double norm = v.array().abs().sum();
  if (!(norm > 0)) throw std::domain_error("normalize_l1: zero norm");
  return v / norm;
}

VectorXd sorted(const VecRef& v) {
  VectorXd s = v;
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Index> argsort_stable(const VecRef& v) {
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return v[a] < v[b]; });
  return idx;
}

VectorXd rank_average(const VecRef& v) {
  const auto order = argsort_stable(v);
  const Index n = v.size();
  VectorXd ranks(n);
  Index i = 0;
  while (i < n) {
    Index j = i;
    while (j + 1 < n && v[order[static_cast<std::size_t>(j + 1)]] == v[order[static_cast<std::size_t>(i)]]) ++j;
    // ordinal ranks i+1 .. j+1 share the run; assign their mean
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Index k = i; k <= j; ++k) ranks[order[static_cast<std::size_t>(k)]] = r;
    i = j + 1;
  }
  return ranks;
}

std::vector<Index> rank_ordinal(const VecRef& v) {
  const auto order = argsort_stable(v);
  std::vector<Index> ranks(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    ranks[static_cast<std::size_t>(order[k])] = static_cast<Index>(k) + 1;
  return ranks;
}

VectorXd cumsum(const VecRef& v) {
  VectorXd out(v.size());
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    acc += v[i];
    out[i] = acc;
  }
  return out;
}

VectorXd diff(const VecRef& v) {
  if (v.size() < 1) throw std::domain_error("diff: need n >= 1");
  VectorXd out(v.size() - 1);
  for (Index i = 0; i + 1 < v.size(); ++i) out[i] = v[i + 1] - v[i];
  return out;
}

Ecdf::Ecdf(const VecRef& v) : sorted_(sorted(v)) {
  if (sorted_.size() == 0) throw std::domain_error("ecdf: empty input");
}

double Ecdf::operator()(double t) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::vector<std::pair<double, double>> Ecdf::step_points() const {
  const Index n = sorted_.size();
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    pts[static_cast<std::size_t>(i)] = {sorted_[i],
                               static_cast<double>(i + 1) / static_cast<double>(n)};
  return pts;
}

HistogramResult histogram(const VecRef& v, const VecRef& edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram: need at least 2 edges");
  for (Index i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i] < edges[i + 1]))
      throw std::invalid_argument("histogram: edges must be strictly increasing");
  const Index k = edges.size() - 1;
  HistogramResult res;
  res.edges = edges;
  res.counts.assign(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < v.size(); ++i) {
    const double x = v[i];
    if (x < edges[0] || x > edges[k]) continue;
    Index bin;
    if (x == edges[k]) {
      bin = k - 1;  // closed final bin
    } else {
      const auto it = std::upper_bound(edges.begin(), edges.end(), x);
      bin = static_cast<Index>(it - edges.begin()) - 1;
    }
    ++res.counts[static_cast<std::size_t>(bin)];
  }
  return res;
}

HistogramResult histogram_equal_width(const VecRef& v, int k) {
  if (k < 1) throw std::invalid_argument("histogram: k must be >= 1");
  if (v.size() == 0) throw std::domain_error("histogram: empty input");
  double lo = v.minCoeff();
  double hi = v.maxCoeff();
  if (lo == hi) {  // degenerate range: widen by 0.5 on both sides
    lo -= 0.5;
    hi += 0.5;
  }
  VectorXd edges(k + 1);
  const double step = (hi - lo) / static_cast<double>(k);
  for (int i = 0; i <= k; ++i) edges[i] = lo + step * static_cast<double>(i);
  edges[k] = hi;
  return histogram(v, edges);
}

HistogramResult histogram_geometric(const VecRef& v, int k) {
  if (k < 1) throw std::invalid_argument("histogram: k must be >= 1");
  if (v.size() == 0) throw std::domain_error("histogram: empty input");
  const double lo = v.minCoeff();
  const double hi = v.maxCoeff();
  if (!(lo > 0)) throw std::domain_error("histogram_geometric: requires min(v) > 0");
  if (lo == hi) {
    VectorXd edges(2);
    edges << lo * 0.5, hi * 2.0;
    return histogram(v, edges);
  }
  VectorXd edges(k + 1);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i <= k; ++i)
    edges[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(k));
  edges[0] = lo;
  edges[k] = hi;
  return histogram(v, edges);
}

bool approx_equal(double a, double b, double atol, double rtol) {
  if (atol < 0 || rtol < 0) throw std::invalid_argument("approx_equal: negative tolerance");
  return std::abs(a - b) <= atol + rtol * std::abs(b);
}

}  // namespace statkit::univariate
