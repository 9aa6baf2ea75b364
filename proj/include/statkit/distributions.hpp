#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "statkit/rng.hpp"

namespace statkit::distributions {

using Eigen::Index;
using Eigen::VectorXd;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

struct Normal {
  double mu;
  double sigma;  // > 0
};

struct LogNormal {
  double mu;     // mean of log(x)
  double sigma;  // std of log(x), > 0
};

struct Pareto {
  double alpha;  // shape, > 0
  double scale;  // support starts here, > 0
};

struct Uniform {
  double a;
  double b;  // a < b
};

struct Exponential {
  double scale;  // expected value, > 0
};

struct DistSpec;

struct Mixture {
  std::vector<double> weights;  // nonnegative, sum to 1 within 1e-12
  std::vector<DistSpec> components;
};

struct DistSpec {
  std::variant<Normal, LogNormal, Pareto, Uniform, Exponential, Mixture> value;

  DistSpec(Normal d);       // NOLINT(google-explicit-constructor)
  DistSpec(LogNormal d);    // NOLINT
  DistSpec(Pareto d);       // NOLINT
  DistSpec(Uniform d);      // NOLINT
  DistSpec(Exponential d);  // NOLINT
  DistSpec(Mixture d);      // NOLINT
};

double pdf(const DistSpec& d, double x);
double cdf(const DistSpec& d, double x);
// Quantile function; p in (0, 1), with p in {0, 1} admitted where the
// corresponding support endpoint is finite.
double ppf(const DistSpec& d, double p);

std::string family_name(const DistSpec& d);

// Estimators follow the moment/plug-in recipes: normal via mean and std
// (ddof=1), or median and IQR/1.349 when robust; log-normal via moments of
// the log data; Pareto via the reciprocal mean of log(x/s); exponential via
// the mean.
DistSpec fit_normal(const VecRef& v, bool robust = false);
DistSpec fit_lognormal(const VecRef& v);
DistSpec fit_pareto(const VecRef& v, std::optional<double> scale = std::nullopt);
DistSpec fit_uniform(const VecRef& v, std::optional<double> a = std::nullopt,
                     std::optional<double> b = std::nullopt);
DistSpec fit_exponential(const VecRef& v);

// Inverse-transform sampling; deterministic given the generator state.
VectorXd sample(const DistSpec& d, Index n, Rng& rng);

// (theoretical quantile at i/(n+1), i-th order statistic), i = 1..n.
std::vector<std::pair<double, double>> qq_pairs(const VecRef& v, const DistSpec& d);

// Standard-normal helpers shared with the hypothesis module.
double standard_normal_cdf(double z);
double standard_normal_ppf(double p);

}  // namespace statkit::distributions
