#include "statkit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "statkit/univariate.hpp"

namespace statkit::distributions {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

void validate(const Normal& d) {
  if (!(d.sigma > 0)) throw std::invalid_argument("normal: sigma must be positive");
}
void validate(const LogNormal& d) {
  if (!(d.sigma > 0)) throw std::invalid_argument("lognormal: sigma must be positive");
}
void validate(const Pareto& d) {
  if (!(d.alpha > 0)) throw std::invalid_argument("pareto: alpha must be positive");
  if (!(d.scale > 0)) throw std::invalid_argument("pareto: scale must be positive");
}
void validate(const Uniform& d) {
  if (!(d.a < d.b)) throw std::invalid_argument("uniform: requires a < b");
}
void validate(const Exponential& d) {
  if (!(d.scale > 0)) throw std::invalid_argument("exponential: scale must be positive");
}
void validate(const Mixture& d) {
  if (d.components.empty()) throw std::invalid_argument("mixture: no components");
  if (d.weights.size() != d.components.size())
    throw std::invalid_argument("mixture: weights/components length mismatch");
  double total = 0.0;
  for (double w : d.weights) {
    if (w < 0) throw std::invalid_argument("mixture: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture: weights must sum to 1");
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0) || std::isnan(p))
    throw std::domain_error("ppf: p must lie in [0, 1]");
}

[[noreturn]] void infinite_endpoint() {
  throw std::domain_error("ppf: support endpoint is infinite");
}

}  // namespace

DistSpec::DistSpec(Normal d) : value(d) { validate(d); }
DistSpec::DistSpec(LogNormal d) : value(d) { validate(d); }
DistSpec::DistSpec(Pareto d) : value(d) { validate(d); }
DistSpec::DistSpec(Uniform d) : value(d) { validate(d); }
DistSpec::DistSpec(Exponential d) : value(d) { validate(d); }
DistSpec::DistSpec(Mixture d) : value(std::move(d)) { validate(std::get<Mixture>(value)); }

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

namespace {

// Acklam's rational approximation to the standard normal quantile, refined by
// one Halley step; relative error well below 1e-14 after refinement.
double acklam_ppf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley step on Phi(x) = p
  const double e = standard_normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double standard_normal_ppf(double p) {
  if (!(p > 0.0 && p < 1.0)) infinite_endpoint();
  return acklam_ppf(p);
}

namespace {

struct PdfVisitor {
  double x;
  double operator()(const Normal& d) const {
    const double z = (x - d.mu) / d.sigma;
    return kInvSqrt2Pi / d.sigma * std::exp(-0.5 * z * z);
  }
  double operator()(const LogNormal& d) const {
    if (x <= 0) return 0.0;
    const double z = (std::log(x) - d.mu) / d.sigma;
    return kInvSqrt2Pi / (x * d.sigma) * std::exp(-0.5 * z * z);
  }
  double operator()(const Pareto& d) const {
    if (x < d.scale) return 0.0;
    return d.alpha * std::pow(d.scale, d.alpha) / std::pow(x, d.alpha + 1.0);
  }
  double operator()(const Uniform& d) const {
    if (x < d.a || x > d.b) return 0.0;
    return 1.0 / (d.b - d.a);
  }
  double operator()(const Exponential& d) const {
    if (x < 0) return 0.0;
    return std::exp(-x / d.scale) / d.scale;
  }
  double operator()(const Mixture& d) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.weights.size(); ++i)
      acc += d.weights[i] * pdf(d.components[i], x);
    return acc;
  }
};

struct CdfVisitor {
  double x;
  double operator()(const Normal& d) const {
    return standard_normal_cdf((x - d.mu) / d.sigma);
  }
  double operator()(const LogNormal& d) const {
    if (x <= 0) return 0.0;
    return standard_normal_cdf((std::log(x) - d.mu) / d.sigma);
  }
  double operator()(const Pareto& d) const {
    if (x < d.scale) return 0.0;
    return 1.0 - std::pow(d.scale / x, d.alpha);
  }
  double operator()(const Uniform& d) const {
    if (x <= d.a) return 0.0;
    if (x >= d.b) return 1.0;
    return (x - d.a) / (d.b - d.a);
  }
  double operator()(const Exponential& d) const {
    if (x <= 0) return 0.0;
    return -std::expm1(-x / d.scale);
  }
  double operator()(const Mixture& d) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.weights.size(); ++i)
      acc += d.weights[i] * cdf(d.components[i], x);
    return acc;
  }
};

struct PpfVisitor {
  double p;
  double operator()(const Normal& d) const {
    if (p == 0.0 || p == 1.0) infinite_endpoint();
    return d.mu + d.sigma * acklam_ppf(p);
  }
  double operator()(const LogNormal& d) const {
    if (p == 0.0) return 0.0;
    if (p == 1.0) infinite_endpoint();
    return std::exp(d.mu + d.sigma * acklam_ppf(p));
  }
  double operator()(const Pareto& d) const {
    if (p == 0.0) return d.scale;
    if (p == 1.0) infinite_endpoint();
    return d.scale * std::pow(1.0 - p, -1.0 / d.alpha);
  }
  double operator()(const Uniform& d) const { return d.a + p * (d.b - d.a); }
  double operator()(const Exponential& d) const {
    if (p == 0.0) return 0.0;
    if (p == 1.0) infinite_endpoint();
    return -d.scale * std::log1p(-p);
  }
  double operator()(const Mixture& d) const {
    // F is monotone; bracket by the extreme component quantiles and bisect.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& comp : d.components) {
      lo = std::min(lo, ppf(comp, p));
      hi = std::max(hi, ppf(comp, p));
    }
    if (lo == hi) return lo;
    const DistSpec spec{Mixture{d.weights, d.components}};
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (cdf(spec, mid) < p)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }
};

struct SampleVisitor {
  Rng& rng;
  template <typename D>
  double operator()(const D& d) const {
    return PpfVisitor{rng.next_open()}(d);
  }
  double operator()(const Mixture& d) const {
    const double u = rng.next_double();
    double acc = 0.0;
    std::size_t pick = d.components.size() - 1;
    for (std::size_t i = 0; i < d.weights.size(); ++i) {
      acc += d.weights[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    return std::visit(SampleVisitor{rng}, d.components[pick].value);
  }
};

}  // namespace

double pdf(const DistSpec& d, double x) { return std::visit(PdfVisitor{x}, d.value); }

double cdf(const DistSpec& d, double x) { return std::visit(CdfVisitor{x}, d.value); }

double ppf(const DistSpec& d, double p) {
  check_p(p);
  return std::visit(PpfVisitor{p}, d.value);
}

std::string family_name(const DistSpec& d) {
  struct Visitor {
    std::string operator()(const Normal&) const { return "normal"; }
    std::string operator()(const LogNormal&) const { return "lognormal"; }
    std::string operator()(const Pareto&) const { return "pareto"; }
    std::string operator()(const Uniform&) const { return "uniform"; }
    std::string operator()(const Exponential&) const { return "exponential"; }
    std::string operator()(const Mixture&) const { return "mixture"; }
  };
  return std::visit(Visitor{}, d.value);
}

DistSpec fit_normal(const VecRef& v, bool robust) {
  if (v.size() < 2) throw std::domain_error("fit_normal: need n >= 2");
  if (robust) {
    const double sigma = univariate::iqr(v) / 1.349;
    if (!(sigma > 0)) throw std::domain_error("fit_normal: zero IQR");
    return Normal{univariate::median(v), sigma};
  }
  return Normal{v.mean(), univariate::stddev(v, 1)};
}

DistSpec fit_lognormal(const VecRef& v) {
  if (v.size() < 2) throw std::domain_error("fit_lognormal: need n >= 2");
  if ((v.array() <= 0).any())
    throw std::domain_error("fit_lognormal: data must be positive");
  const VectorXd logs = v.array().log();
  return LogNormal{logs.mean(), univariate::stddev(logs, 1)};
}

DistSpec fit_pareto(const VecRef& v, std::optional<double> scale) {
  if (v.size() < 1) throw std::domain_error("fit_pareto: empty input");
  const double s = scale.value_or(v.minCoeff());
  if (!(s > 0)) throw std::domain_error("fit_pareto: scale must be positive");
  if ((v.array() < s).any())
    throw std::domain_error("fit_pareto: all values must be >= scale");
  const double mean_log = (v.array() / s).log().mean();
  if (!(mean_log > 0)) throw std::domain_error("fit_pareto: degenerate sample");
  return Pareto{1.0 / mean_log, s};
}

DistSpec fit_uniform(const VecRef& v, std::optional<double> a, std::optional<double> b) {
  if (v.size() < 1) throw std::domain_error("fit_uniform: empty input");
  return Uniform{a.value_or(v.minCoeff()), b.value_or(v.maxCoeff())};
}

DistSpec fit_exponential(const VecRef& v) {
  if (v.size() < 1) throw std::domain_error("fit_exponential: empty input");
  if ((v.array() < 0).any())
    throw std::domain_error("fit_exponential: data must be nonnegative");
  return Exponential{v.mean()};
}

VectorXd sample(const DistSpec& d, Index n, Rng& rng) {
  if (n < 0) throw std::invalid_argument("sample: negative count");
  VectorXd out(n);
  for (Index i = 0; i < n; ++i) out[i] = std::visit(SampleVisitor{rng}, d.value);
  return out;
}

std::vector<std::pair<double, double>> qq_pairs(const VecRef& v, const DistSpec& d) {
  const Index n = v.size();
  if (n < 1) throw std::domain_error("qq_pairs: empty input");
  const VectorXd s = univariate::sorted(v);
  std::vector<std::pair<double, double>> pairs(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    pairs[static_cast<std::size_t>(i)] = {
        ppf(d, static_cast<double>(i + 1) / static_cast<double>(n + 1)), s[i]};
  return pairs;
}

}  // namespace statkit::distributions
