// Acceptance suite: one pass/fail line per criterion. Criteria that need the
// published datasets look them up in $STATKIT_DATA_DIR (default: ./data) and
// are skipped, not failed, when the cache has not been populated yet (see
// tools/fetch_data.py).

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "statkit/statkit.hpp"

using namespace statkit;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct Skip {
  std::string reason;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void expect_rel(double actual, double expected, double rtol, const std::string& what) {
    const double err = std::abs(actual - expected) /
                       std::max(std::abs(expected), 1e-300);
    std::ostringstream msg;
    msg << what << ": got " << std::setprecision(17) << actual << ", want " << expected
        << " (rel err " << err << ")";
    expect(err <= rtol, msg.str());
  }
  void expect_abs(double actual, double expected, double atol, const std::string& what) {
    std::ostringstream msg;
    msg << what << ": got " << std::setprecision(17) << actual << ", want " << expected;
    expect(std::abs(actual - expected) <= atol, msg.str());
  }
  int checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  int checks_ = 0;
  std::vector<std::string> failures_;
};

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("STATKIT_DATA_DIR")) return env;
  return "data";
}

std::string data_path(const std::string& name) {
  const auto path = data_dir() / name;
  if (!std::filesystem::exists(path))
    throw Skip{"dataset '" + name + "' not cached; run tools/fetch_data.py"};
  return path.string();
}

// numeric matrix from whitespace- or comma-separated text (numpy.loadtxt
// style), '#' comments skipped
MatrixXd load_matrix(const std::string& name) {
  std::ifstream in(data_path(name));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    std::istringstream ss(line);
    std::vector<double> row;
    double value = 0.0;
    while (ss >> value) row.push_back(value);
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(name + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(name + ": no data");
  MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

VectorXd load_vector(const std::string& name) {
  const MatrixXd m = load_matrix(name);
  if (m.cols() != 1) throw std::runtime_error(name + ": expected one column");
  return m.col(0);
}

tabular::Table load_csv(const std::string& name) {
  return tabular::read_csv_file(data_path(name));
}

VectorXd heights() { return load_vector("nhanes_adult_female_height_2020.txt"); }
VectorXd income() { return load_vector("uk_income_simulated_2020.txt"); }

// Body measurements; columns: weight, height, arm len, leg len, arm circ,
// hip circ, waist circ.
MatrixXd body() {
  const auto t = load_csv("nhanes_adult_female_bmx_2020.csv");
  std::vector<std::string> names = t.names;
  MatrixXd m(t.n_rows, t.n_cols());
  for (Index j = 0; j < t.n_cols(); ++j) {
    const auto [v, miss] = tabular::numeric_column(t, t.names[static_cast<std::size_t>(j)]);
    m.col(j) = v;
  }
  return m;
}

// Two numeric columns: per-capita GDP (PPP) and life expectancy at birth.
MatrixXd world() {
  const auto t = load_csv("world_factbook_2020_subset1.csv");
  std::vector<VectorXd> numeric;
  for (const auto& col : t.cols)
    if (col.kind == tabular::Column::Kind::numeric && !col.any_missing())
      numeric.push_back(col.num);
  if (numeric.size() < 2)
    throw std::runtime_error("world factbook: expected two complete numeric columns");
  MatrixXd m(t.n_rows, 2);
  m.col(0) = numeric[numeric.size() - 2];
  m.col(1) = numeric[numeric.size() - 1];
  return m;
}

// The adult NHANES demographic/body table filtered the way the reference
// analysis does: US-born flag in {1, 2}, age >= 18, complete cases only.
tabular::Table nhanes_filtered() {
  const auto raw = load_csv("nhanes_p_demo_bmx_2020.csv");
  const auto sub = tabular::select_columns(
      raw, {"RIDAGEYR", "BMXWT", "BMXHT", "BMXBMI", "RIAGENDR", "DMDBORN4"});
  const auto [age, age_miss] = tabular::numeric_column(sub, "RIDAGEYR");
  const auto [born, born_miss] = tabular::numeric_column(sub, "DMDBORN4");
  std::vector<Index> keep;
  for (Index i = 0; i < sub.n_rows; ++i) {
    if (age_miss[static_cast<std::size_t>(i)] || born_miss[static_cast<std::size_t>(i)]) continue;
    if (born[i] > 2 || age[i] < 18) continue;
    keep.push_back(i);
  }
  return tabular::drop_missing(tabular::select_rows(sub, keep), tabular::DropMode::any_row);
}

// permutation-free comparison of centre sets
double centre_set_distance(const MatrixXd& got, const MatrixXd& want) {
  double worst = 0.0;
  for (Index i = 0; i < want.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < got.rows(); ++j)
      best = std::min(best, (got.row(j) - want.row(i)).cwiseAbs().maxCoeff());
    worst = std::max(worst, best);
  }
  return worst;
}

// ---- criteria -------------------------------------------------------------

void criterion_univariate(Checker& c) {
  const VectorXd h = heights();
  c.expect_rel(univariate::mean(h), 160.13679222932953, 1e-9, "heights mean");
  c.expect_rel(univariate::median(h), 160.1, 1e-9, "heights median");
  c.expect_rel(univariate::stddev(h, 0), 7.062021850008261, 1e-9, "heights std0");
  c.expect_rel(univariate::iqr(h), 9.5, 1e-9, "heights IQR");
  c.expect_rel(univariate::skewness(h), 0.0811184528074054, 1e-9, "heights skewness");
  const double hq[] = {131.1, 155.3, 160.1, 164.8, 189.3};
  const double ps[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 5; ++i)
    c.expect_rel(univariate::quantile(h, ps[i]), hq[i], 1e-9, "heights quantile");
  const univariate::Ecdf ecdf(h);
  c.expect_abs(ecdf(166.0), 0.80, 0.02, "heights ECDF at 166");

  const VectorXd inc = income();
  c.expect_rel(univariate::mean(inc), 35779.994, 1e-9, "income mean");
  c.expect_rel(univariate::median(inc), 30042.0, 1e-9, "income median");
  c.expect_rel(univariate::iqr(inc), 23454.0, 1e-9, "income IQR");
  c.expect_rel(univariate::skewness(inc), 1.9768735693998942, 1e-9, "income skewness");
  const double iq[] = {5750.0, 20669.75, 30042.0, 44123.75, 199969.0};
  for (int i = 0; i < 5; ++i)
    c.expect_rel(univariate::quantile(inc, ps[i]), iq[i], 1e-9, "income quantile");
}

void criterion_scaling(Checker& c) {
  VectorXd x(6);
  x << -1.5, 0.5, 3.5, -1.33, 0.25, 0.8;
  const VectorXd mm = univariate::minmax_scale(x);
  const double mm_printed[] = {0.0, 0.4, 1.0, 0.034, 0.35, 0.46};  // 2 significant figures
  for (Index i = 0; i < 6; ++i) {
    double rounded = mm[i];
    if (rounded != 0.0) {
      const double mag = std::pow(10.0, 1 - std::floor(std::log10(std::abs(rounded))));
      rounded = std::round(rounded * mag) / mag;
    }
    c.expect_abs(rounded, mm_printed[i], 1e-12, "minmax at printed precision");
  }
  const VectorXd cl = univariate::clip(x, 0, 1);
  const double cl_ref[] = {0.0, 0.5, 1.0, 0.0, 0.25, 0.8};
  for (Index i = 0; i < 6; ++i) c.expect_abs(cl[i], cl_ref[i], 0.0, "clip");

  VectorXd y(5);
  y << 1, 5, -4, 2, 2.5;
  const VectorXd l2 = univariate::normalize_l2(y);
  const double l2_ref[] = {0.13834289, 0.69171446, -0.55337157, 0.27668579, 0.34585723};
  for (Index i = 0; i < 5; ++i) c.expect_abs(l2[i], l2_ref[i], 1e-8, "l2 normalization");
  const VectorXd l1 = univariate::normalize_l1(y);
  const double l1_ref[] = {0.06896552, 0.34482759, -0.27586207, 0.13793103, 0.17241379};
  for (Index i = 0; i < 5; ++i) c.expect_abs(l1[i], l1_ref[i], 1e-8, "l1 normalization");

  VectorXd p(6);
  p << 0.1, 0.3, 0.25, 0.15, 0.12, 0.08;
  c.expect_rel(univariate::entropy(p), 1.6790818544987114, 1e-12, "entropy");
}

void criterion_histograms(Checker& c) {
  const auto inc = univariate::histogram_equal_width(income(), 20);
  const std::vector<std::int64_t> income_counts{131, 238, 238, 147, 95, 55, 29, 23, 10, 12,
                                                5,   7,   4,   3,   2,  0,  0,  0,  0,  1};
  c.expect(inc.counts == income_counts, "income 20-bin counts");
  c.expect_rel(inc.edges[0], 5750.0, 1e-9, "income first edge");
  c.expect_rel(inc.edges[20], 199969.0, 1e-9, "income last edge");

  const auto h = univariate::histogram_equal_width(heights(), 11);
  const std::vector<std::int64_t> height_counts{2, 11, 116, 409, 992, 1206, 948, 404, 110, 20, 3};
  c.expect(h.counts == height_counts, "heights 11-bin counts");
}

void criterion_fits(Checker& c) {
  // the quantile/mass checks depend only on the printed parameters
  const distributions::DistSpec ref{
      distributions::Normal{160.13679222932953, 7.062858532891359}};
  c.expect_rel(distributions::ppf(ref, 0.9), 169.18820963937648, 1e-9, "normal ppf(0.9)");
  c.expect_rel(distributions::cdf(ref, 160.13679222932953 + 3 * 7.062858532891359) -
                   distributions::cdf(ref, 160.13679222932953 - 3 * 7.062858532891359),
               0.9973002039367398, 1e-9, "three-sigma mass");

  const auto nfit =
      std::get<distributions::Normal>(distributions::fit_normal(heights()).value);
  c.expect_rel(nfit.mu, 160.13679222932953, 1e-10, "normal fit mu");
  c.expect_rel(nfit.sigma, 7.062858532891359, 1e-10, "normal fit sigma");

  const auto lfit =
      std::get<distributions::LogNormal>(distributions::fit_lognormal(income()).value);
  c.expect_rel(lfit.mu, 10.314409794364623, 1e-10, "lognormal fit mu");
  c.expect_rel(lfit.sigma, 0.5816585197803816, 1e-10, "lognormal fit sigma");

  const VectorXd cities = load_vector("us_cities_2000.txt");
  std::vector<double> large;
  for (Index i = 0; i < cities.size(); ++i)
    if (cities[i] >= 10000.0) large.push_back(cities[i]);
  const Eigen::Map<VectorXd> large_cities(large.data(), static_cast<Index>(large.size()));
  const auto pfit = std::get<distributions::Pareto>(
      distributions::fit_pareto(large_cities, 10000.0).value);
  c.expect_rel(pfit.alpha, 0.9496171695997675, 1e-10, "pareto fit alpha");
}

void criterion_ks(Checker& c) {
  c.expect_rel(hypothesis::ks_critical(4221, 0.001, hypothesis::KsMethod::exact),
               0.029964456376393188, 1e-9, "exact K_4221(0.001)");
  c.expect_rel(hypothesis::ks_critical(4221, 0.001, hypothesis::KsMethod::asymptotic),
               0.029964456376393188, 0.005, "asymptotic K within 0.5%");

  const VectorXd h = heights();
  const distributions::DistSpec fitted{
      distributions::Normal{160.13679222932953, 7.062858532891359}};
  c.expect_rel(hypothesis::ks_statistic(h, fitted), 0.010470976524201148, 1e-12,
               "heights KS statistic");

  const auto nhanes = nhanes_filtered();
  // two-sample test on weights by country of birth (1 = US-born)
  const auto groups = tabular::group_split(nhanes, "DMDBORN4");
  c.expect(groups.size() == 2, "US-born flag has two levels");
  const VectorXd w1 = tabular::numeric_column_complete(groups[0].second, "BMXWT");
  const VectorXd w2 = tabular::numeric_column_complete(groups[1].second, "BMXWT");
  const auto test = hypothesis::ks_two_sample(w1, w2, 0.001);
  c.expect_rel(test.statistic, 0.22068075889911914, 1e-9, "two-sample D");
  c.expect_rel(test.critical_value, 0.04607410479813944, 1e-9, "two-sample K");
  c.expect(test.reject, "two-sample test rejects");

  // the same filtered table drives the group-split and imputation examples
  const auto by_gender = tabular::group_split(nhanes, "RIAGENDR");
  c.expect(by_gender.size() == 2, "two gender groups");
  c.expect(by_gender[0].second.n_rows == 4271, "male group size 4271");   // code 1
  c.expect(by_gender[1].second.n_rows == 4514, "female group size 4514");  // code 2

  // group-mean imputation against a two-pass oracle, on the adult rows of
  // the raw table (heights still contain gaps there)
  const auto raw = load_csv("nhanes_p_demo_bmx_2020.csv");
  const auto [age, age_miss] = tabular::numeric_column(raw, "RIDAGEYR");
  std::vector<Index> adults;
  for (Index i = 0; i < raw.n_rows; ++i)
    if (!age_miss[static_cast<std::size_t>(i)] && age[i] >= 18) adults.push_back(i);
  const auto adult_rows = tabular::select_rows(raw, adults);
  const auto [height, height_miss] = tabular::numeric_column(adult_rows, "BMXHT");
  const auto [gender, gender_miss] = tabular::numeric_column(adult_rows, "RIAGENDR");
  categorical::Factor gender_factor;
  gender_factor.levels = {"male", "female"};
  gender_factor.codes.resize(static_cast<std::size_t>(adult_rows.n_rows));
  for (Index i = 0; i < adult_rows.n_rows; ++i)
    gender_factor.codes[static_cast<std::size_t>(i)] = gender[i] == 1 ? 0 : 1;
  const VectorXd imputed = tabular::impute_group_mean(height, height_miss, gender_factor);
  double sums[2] = {0, 0};
  Index counts[2] = {0, 0};
  for (Index i = 0; i < adult_rows.n_rows; ++i) {
    if (height_miss[static_cast<std::size_t>(i)]) continue;
    const int g = gender_factor.codes[static_cast<std::size_t>(i)];
    sums[g] += height[i];
    ++counts[g];
  }
  bool impute_ok = true;
  Index n_imputed = 0;
  for (Index i = 0; i < adult_rows.n_rows; ++i) {
    if (!height_miss[static_cast<std::size_t>(i)]) {
      impute_ok = impute_ok && imputed[i] == height[i];
      continue;
    }
    ++n_imputed;
    const int g = gender_factor.codes[static_cast<std::size_t>(i)];
    impute_ok = impute_ok &&
                std::abs(imputed[i] - sums[g] / static_cast<double>(counts[g])) < 1e-12;
  }
  c.expect(impute_ok && n_imputed > 0, "group-mean imputation matches the two-pass oracle");

  // drop_missing row count equals a per-row scan
  const auto selected = tabular::select_columns(
      raw, {"RIDAGEYR", "BMXWT", "BMXHT", "BMXBMI", "RIAGENDR", "DMDBORN4"});
  Index complete = 0;
  for (Index i = 0; i < selected.n_rows; ++i) {
    bool full = true;
    for (const auto& col : selected.cols)
      full = full && !col.missing[static_cast<std::size_t>(i)];
    complete += full;
  }
  c.expect(tabular::drop_missing(selected, tabular::DropMode::any_row).n_rows == complete,
           "drop_missing(any_row) equals the per-row scan oracle");
}

void criterion_chisq(Checker& c) {
  VectorXd observed(2);
  observed << 516, 1017 - 516;
  VectorXd expected(2);
  expected << 0.5, 0.5;
  const auto poll = hypothesis::chisq_gof_counts(observed, expected, 0.001);
  c.expect_rel(poll.statistic, 0.2212389380530986, 1e-9, "poll T");
  c.expect_rel(poll.critical_value, 10.827566170662733, 1e-6, "poll K");
  c.expect(!poll.reject, "poll does not reject");

  VectorXd women(5);
  women << 240, 449, 262, 43, 19;
  VectorXd men(5);
  men << 879, 2200, 1708, 541, 170;
  const auto marathon = hypothesis::chisq_two_sample_counts(women, men, 0.001);
  c.expect_rel(marathon.statistic, 75.31373854741857, 1e-9, "marathon T");
  c.expect_rel(marathon.critical_value, 18.46682695290317, 1e-6, "marathon K");
  c.expect(marathon.reject, "marathon rejects");

  categorical::CountMatrix health(10, 3);
  health << 360000, 1489000, 1772000, 1069000, 741000, 433000, 1469000, 1513000, 955000,
      28000, 162000, 237000, 103000, 207000, 251000, 135000, 427000, 607000, 94000, 344000,
      716000, 29000, 67000, 123000, 2218000, 1390000, 725000, 36000, 312000, 564000;
  const auto independence = hypothesis::chisq_independence(health, 0.001);
  c.expect_rel(independence.test.statistic, 3715440.465191512, 1e-9, "independence T");
  c.expect_rel(independence.test.critical_value, 32.90949040736021, 1e-6, "independence K");
  c.expect_rel(hypothesis::cramers_v(health), 0.316237999724298, 1e-9, "Cramer's V");
}

void criterion_regression(Checker& c) {
  const MatrixXd b = body();
  c.expect(b(0, 0) == 97.1 && b(1, 0) == 91.1, "body weight column starts 97.1, 91.1");
  const VectorXd weight = b.col(0);
  const VectorXd arm = b.col(4);
  const VectorXd hip = b.col(5);

  MatrixXd design(b.rows(), 2);
  design.col(0) = hip;
  design.col(1).setOnes();
  const auto simple = regression::lstsq(design, weight);
  c.expect_abs(simple.coefficients[0], 1.3052463, 1e-6, "weight~hip slope");
  c.expect_abs(simple.coefficients[1], -65.10087248, 1e-6, "weight~hip intercept");
  c.expect_rel(simple.diag.rmse, 6.948470091176111, 1e-9, "simple RMSE");
  c.expect_rel(simple.diag.mae, 5.207073583769202, 1e-9, "simple MAE");
  c.expect_rel(simple.diag.r2, 0.8959634726270759, 1e-9, "simple R2");

  MatrixXd design2(b.rows(), 3);
  design2.col(0) = arm;
  design2.col(1) = hip;
  design2.col(2).setOnes();
  const auto multiple = regression::lstsq(design2, weight);
  c.expect_abs(std::round(multiple.coefficients[0] * 100) / 100, 1.30, 1e-9,
               "multiple arm coefficient (2dp)");
  c.expect_abs(std::round(multiple.coefficients[1] * 100) / 100, 0.90, 1e-9,
               "multiple hip coefficient (2dp)");
  c.expect_abs(std::round(multiple.coefficients[2] * 100) / 100, -63.38, 1e-9,
               "multiple intercept (2dp)");
  c.expect_rel(multiple.diag.r2, 0.9243996585518783, 1e-6, "multiple R2");
  c.expect_rel(multiple.diag.rmse, 5.923223870044694, 1e-6, "multiple RMSE");
  c.expect_rel(multiple.diag.mae, 4.431548244333893, 1e-6, "multiple MAE");

  const MatrixXd w = world();
  const VectorXd gdp = w.col(0);
  const VectorXd life = w.col(1);
  const double r2_expected[] = {0.431, 0.567, 0.607, 0.651};
  for (int degree = 1; degree <= 3; ++degree) {
    std::vector<regression::ColumnTransform> spec;
    spec.push_back(regression::ColumnTransform::power(0));
    for (int p = 1; p <= degree; ++p)
      spec.push_back(regression::ColumnTransform::power(p));
    const auto model = regression::lstsq(regression::design_matrix(gdp, spec), life);
    c.expect_abs(std::round(model.diag.r2 * 1000) / 1000, r2_expected[degree - 1], 1e-9,
                 "polynomial R2 (3dp), degree " + std::to_string(degree));
  }
  const auto logmodel = regression::lstsq(
      regression::design_matrix(
          gdp, {regression::ColumnTransform::power(0), regression::ColumnTransform::log()}),
      life);
  c.expect_abs(std::round(logmodel.diag.r2 * 1000) / 1000, r2_expected[3], 1e-9,
               "logarithmic R2 (3dp)");

  MatrixXd degree4(w.rows(), 5);
  for (int p = 0; p < 5; ++p) degree4.col(p) = gdp.array().pow(p);
  const auto raw_kappa = linalg::condition_number(degree4);
  c.expect(raw_kappa.finite, "raw degree-4 condition number finite");
  c.expect(raw_kappa.value > 9.774017018467434e19 / 2 &&
               raw_kappa.value < 9.774017018467434e19 * 2,
           "raw degree-4 condition number within 2x of 9.774e19");

  const auto model4 = regression::lstsq(degree4, life);
  c.expect(model4.standardized_path, "degree-4 model takes the standardized path");
  c.expect_rel(model4.condition_number, 139.42792257372338, 1e-3,
               "standardized degree-4 condition number");
}

void criterion_correlation(Checker& c) {
  const MatrixXd b = body();
  c.expect_rel(regression::pearson(b.col(4), b.col(5)), 0.8680627457873239, 1e-12,
               "arm/hip Pearson");
  const MatrixXd r = regression::pearson_matrix(b);
  const auto [i, j] = regression::most_correlated_pair(r);
  c.expect(i == 0 && j == 5, "most correlated pair is (weight, hip circumference)");

  const MatrixXd w = world();
  c.expect_rel(regression::pearson(w.col(0), w.col(1)), 0.656471945486374, 1e-12,
               "GDP/life Pearson");
  const VectorXd loggdp = w.col(0).array().log();
  c.expect_rel(regression::pearson(loggdp, w.col(1)), 0.8066505089380016, 1e-12,
               "log GDP/life Pearson");
  c.expect_rel(regression::spearman(w.col(0), w.col(1)), 0.8275220380818622, 1e-12,
               "GDP/life Spearman");
}

void criterion_pca(Checker& c) {
  const auto t = load_csv("ssi_2016_indicators.csv");
  const Index picks[] = {3, 5, 13, 15, 19};
  MatrixXd x(t.n_rows, 5);
  for (int j = 0; j < 5; ++j) {
    const auto& col = t.cols[static_cast<std::size_t>(picks[j])];
    if (col.kind != tabular::Column::Kind::numeric)
      throw std::runtime_error("ssi indicator column is not numeric");
    x.col(j) = col.num;
  }
  const auto res = linalg::pca(x, linalg::PcaPreprocess::standardize);
  const double sdev_ref[] = {2.02953531, 0.7529221, 0.3943008, 0.31897889, 0.23848286};
  const double root_n = std::sqrt(static_cast<double>(x.rows()));
  for (int i = 0; i < 5; ++i)
    c.expect_abs(res.singular_values[i] / root_n, sdev_ref[i], 1e-6, "component sdev");
  const double cumvar_ref[] = {0.82380272, 0.93718105, 0.96827568, 0.98862519, 1.0};
  for (int i = 0; i < 5; ++i)
    c.expect_abs(res.cumvar_ratio[i], cumvar_ref[i], 1e-6, "cumulative variance ratio");

  const double row0_ref[] = {-0.43, -0.43, 0.44, 0.45, -0.47};
  const double row1_ref[] = {0.52, 0.5, 0.52, 0.45, -0.02};
  for (int row = 0; row < 2; ++row) {
    const double* ref = row == 0 ? row0_ref : row1_ref;
    double direct = 0.0;
    double flipped = 0.0;
    for (int j = 0; j < 5; ++j) {
      direct = std::max(direct, std::abs(res.loadings(row, j) - ref[j]));
      flipped = std::max(flipped, std::abs(-res.loadings(row, j) - ref[j]));
    }
    c.expect(std::min(direct, flipped) <= 0.01,
             "loadings row " + std::to_string(row) + " within 0.01 up to global sign");
  }
}

void criterion_spatial(Checker& c) {
  MatrixXd pts(4, 2);
  pts << 0, 0, 1, 0, -1.5, 1, 1, 1;
  const MatrixXd d = spatial::cdist(pts, pts);
  MatrixXd dref(4, 4);
  dref << 0.0, 1.0, 1.80277564, 1.41421356, 1.0, 0.0, 2.6925824, 1.0, 1.80277564, 2.6925824,
      0.0, 2.5, 1.41421356, 1.0, 2.5, 0.0;
  c.expect((d - dref).cwiseAbs().maxCoeff() <= 1e-8, "4-point distance matrix");
  const VectorXd centre = spatial::centroid(pts);
  c.expect(centre[0] == 0.125 && centre[1] == 0.5, "centroid (0.125, 0.5)");
  c.expect_rel(spatial::dispersion(pts), 1.1388041973930374, 1e-10, "dispersion");

  const MatrixXd blobs1 = load_matrix("blobs1.txt");
  const auto blob_fit = spatial::kmeans_restarts(blobs1, 2, 16, 1);
  std::array<Index, 2> sizes{0, 0};
  for (int label : blob_fit.labels) ++sizes[static_cast<std::size_t>(label)];
  std::sort(sizes.begin(), sizes.end());
  c.expect(sizes[0] == 1017 && sizes[1] == 1039, "blobs1 cluster sizes {1017, 1039}");
  MatrixXd blob_ref(2, 2);
  blob_ref << 0.99622971, 1.052801, -0.90041365, -1.08411794;
  c.expect(centre_set_distance(blob_fit.centres, blob_ref) <= 1e-3,
           "blobs1 centres within 1e-3 up to permutation");

  const auto ssi = load_csv("ssi_2016_categories.csv");
  MatrixXd x(ssi.n_rows, 3);
  const char* names[] = {"PersonalDevelopmentAndHealth", "WellBalancedSociety", "Economy"};
  for (int j = 0; j < 3; ++j) {
    const auto [v, miss] = tabular::numeric_column(ssi, names[j]);
    x.col(j) = v;
  }
  const auto best = spatial::kmeans_restarts(x, 3, 1000, 1);
  c.expect_abs(best.wcss, 437.51120966832775, 1e-4, "SSI best-of-1000 WCSS");
  MatrixXd ssi_ref(3, 3);
  ssi_ref << 7.80779013, 5.19409177, 6.97790733, 7.92606993, 6.35691349, 3.91202972,
      6.31794579, 3.12048584, 3.84519706;
  c.expect(centre_set_distance(best.centres, ssi_ref) <= 1e-4,
           "SSI centres within 1e-4 up to permutation");

  // optional: hand-picked centres near the global optimum beat every random
  // start of the unbalanced benchmark
  try {
    const MatrixXd unbalance = load_matrix("sipu_unbalance.csv");
    MatrixXd hand(8, 2);
    hand << -15, 5, -12, 10, -10, 5, 15, 0, 15, 10, 20, 5, 25, 0, 25, 10;
    const auto tuned = spatial::kmeans_lloyd(unbalance, hand);
    const auto random_runs = spatial::kmeans_restarts(unbalance, 8, 100, 7);
    bool never_beaten = true;
    for (double w : random_runs.restart_wcss) never_beaten = never_beaten && tuned.wcss <= w + 1e-9;
    c.expect(never_beaten, "hand-picked centres beat 100 random initialisations");
  } catch (const Skip&) {
    // sipu_unbalance.csv not cached; the golden checks above stand
  }
}

void criterion_classification(Checker& c) {
  // The reference run scores the training file itself (its printed outputs
  // match that reading), z-scored by training statistics.
  const auto train = load_csv("sweetwhitewine_train2.csv");
  MatrixXd x(train.n_rows, 2);
  {
    const auto [alcohol, m1] = tabular::numeric_column(train, "alcohol");
    const auto [sugar, m2] = tabular::numeric_column(train, "sugar");
    x.col(0) = alcohol;
    x.col(1) = sugar;
  }
  const auto [bad, bad_missing] = tabular::numeric_column(train, "bad");
  std::vector<int> y(static_cast<std::size_t>(train.n_rows));
  for (Index i = 0; i < train.n_rows; ++i) y[static_cast<std::size_t>(i)] = bad[i] > 0.5;

  MatrixXd z = x;
  for (Index j = 0; j < 2; ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().mean());
    z.col(j) = (x.col(j).array() - mean) / sd;
  }
  const auto pred = spatial::knn_classify(z, y, z, 5);
  const int first10[] = {0, 1, 0, 0, 1, 0, 0, 0, 0, 0};
  bool head_ok = true;
  for (int i = 0; i < 10; ++i) head_ok = head_ok && pred[static_cast<std::size_t>(i)] == first10[i];
  c.expect(head_ok, "first ten wine predictions");

  const auto metrics = spatial::classification_metrics(y, pred);
  c.expect_abs(metrics.accuracy, 0.788, 0.005, "wine accuracy");
  c.expect_abs(metrics.precision.value_or(-1), 0.7250755287009063, 0.005, "wine precision");
  c.expect_abs(metrics.recall.value_or(-1), 0.6648199445983379, 0.005, "wine recall");
  c.expect_abs(metrics.f1.value_or(-1), 0.6936416184971098, 0.005, "wine F measure");
}

void criterion_outliers(Checker& c) {
  const VectorXd blobs2 = load_vector("blobs2.txt");
  const auto flags = spatial::outlier_low_density(blobs2, 1.0, 0.001);
  std::vector<double> flagged;
  for (Index i = 0; i < blobs2.size(); ++i)
    if (flags[static_cast<std::size_t>(i)]) flagged.push_back(blobs2[i]);
  std::sort(flagged.begin(), flagged.end());
  const std::vector<double> expected{0.0, 13.57157922, 15.0, 45.0, 50.0};
  bool match = flagged.size() == expected.size();
  for (std::size_t i = 0; match && i < expected.size(); ++i)
    match = std::abs(flagged[i] - expected[i]) <= 1e-6;
  c.expect(match, "blobs2 low-density flagged values");

  const MatrixXd blobs1 = load_matrix("blobs1.txt");
  const auto counts = spatial::neighbour_counts(blobs1, 0.2);
  const Index n = blobs1.rows();
  c.expect(counts[0] == 42, "blobs1 neighbour count row 0");
  c.expect(counts[1] == 30, "blobs1 neighbour count row 1");
  c.expect(counts[static_cast<std::size_t>(n - 2)] == 1, "blobs1 neighbour count row n-2");
  c.expect(counts[static_cast<std::size_t>(n - 1)] == 1, "blobs1 neighbour count row n-1");
  const auto isolated = spatial::outlier_isolated(blobs1, 0.2);
  bool only_last8 = true;
  for (Index i = 0; i < n; ++i) {
    const bool should = i >= n - 8;
    only_last8 = only_last8 && (isolated[static_cast<std::size_t>(i)] != 0) == should;
  }
  c.expect(only_last8, "exactly the 8 injected junk points are isolated");
}

void criterion_categorical(Checker& c) {
  const std::vector<std::string> cntrs16 = {"KE", "KE", "KE", "ET", "KE", "KE", "ET", "MA",
                                            "PL", "PL", "IL", "PL", "KE", "KE", "PL", "PL"};
  const auto f = categorical::factorize(cntrs16);
  c.expect(f.levels == std::vector<std::string>{"KE", "ET", "MA", "PL", "IL"},
           "cntrs16 levels");
  c.expect(f.codes == std::vector<int>{0, 0, 0, 1, 0, 0, 1, 2, 3, 3, 4, 3, 0, 0, 3, 3},
           "cntrs16 codes");
  const auto recoded = categorical::recode(f, {3, 0, 2, 4, 1});
  c.expect(recoded.levels == std::vector<std::string>{"PL", "KE", "MA", "IL", "ET"},
           "recode levels");
  c.expect(recoded.codes ==
               std::vector<int>{1, 1, 1, 4, 1, 1, 4, 2, 0, 0, 3, 0, 1, 1, 0, 0},
           "recode codes");

  categorical::Factor small;
  small.codes = {0, 1, 2, 1};
  small.levels = {"a", "b", "c", "d"};
  MatrixXd onehot_ref(4, 4);
  onehot_ref << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0;
  c.expect((categorical::one_hot(small) - onehot_ref).cwiseAbs().maxCoeff() == 0.0,
           "one-hot example");

  VectorXd mins16(16);
  mins16 << 129.32, 130.75, 130.97, 134.17, 134.68, 135.97, 139.88, 143.2, 145.22, 145.92,
      146.83, 147.8, 149.65, 149.88, 152.65, 152.88;
  VectorXd bounds(3);
  bounds << 130, 140, 150;
  c.expect(categorical::bin_codes(mins16, bounds) ==
               std::vector<int>{0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 3, 3},
           "mins16 bin codes");

  // marathon-dependent checks
  const auto marathon = load_csv("37_pzu_warsaw_marathon_simplified.csv");
  const tabular::Column& sex_col = marathon.column("sex");
  const tabular::Column& cat_col = marathon.column("category");
  const tabular::Column& country_col = marathon.column("country");
  std::vector<std::string> sexes;
  std::vector<std::string> ages;
  for (Index i = 0; i < marathon.n_rows; ++i) {
    if (sex_col.missing[static_cast<std::size_t>(i)] ||
        cat_col.missing[static_cast<std::size_t>(i)])
      continue;
    std::string age = cat_col.text[static_cast<std::size_t>(i)].substr(1);
    if (age >= "60") age = "60+";
    sexes.push_back(sex_col.text[static_cast<std::size_t>(i)]);
    ages.push_back(age);
  }
  auto sex_factor = categorical::factorize(sexes);
  auto age_factor = categorical::factorize(ages);
  const auto table = categorical::crosstab(sex_factor, age_factor);
  auto count_of = [&](const std::string& sex, const std::string& age) -> std::int64_t {
    Index si = -1;
    Index ai = -1;
    for (std::size_t k = 0; k < table.row_levels.size(); ++k)
      if (table.row_levels[k] == sex) si = static_cast<Index>(k);
    for (std::size_t k = 0; k < table.col_levels.size(); ++k)
      if (table.col_levels[k] == age) ai = static_cast<Index>(k);
    if (si < 0 || ai < 0) return -1;
    return table.counts(si, ai);
  };
  const std::int64_t fcounts[] = {240, 449, 262, 43, 19};
  const std::int64_t mcounts[] = {879, 2200, 1708, 541, 170};
  const char* age_levels[] = {"20", "30", "40", "50", "60+"};
  for (int k = 0; k < 5; ++k) {
    c.expect(count_of("F", age_levels[k]) == fcounts[k],
             std::string("contingency F x ") + age_levels[k]);
    c.expect(count_of("M", age_levels[k]) == mcounts[k],
             std::string("contingency M x ") + age_levels[k]);
  }

  std::vector<std::string> top22;
  for (Index i = 0; i < marathon.n_rows && top22.size() < 22; ++i)
    top22.push_back(country_col.text[static_cast<std::size_t>(i)]);
  auto mode = categorical::mode_set(categorical::factorize(top22));
  std::sort(mode.begin(), mode.end());
  c.expect(mode == std::vector<std::string>{"KE", "PL"}, "top-22 mode tie {KE, PL}");

  std::vector<char> is_pl;
  for (Index i = 0; i < marathon.n_rows; ++i) {
    if (country_col.missing[static_cast<std::size_t>(i)]) continue;
    is_pl.push_back(country_col.text[static_cast<std::size_t>(i)] == "PL" ? 1 : 0);
  }
  c.expect_rel(categorical::binary_rate(is_pl), 0.9265857779142989, 1e-12,
               "share of Polish runners");
}

void criterion_timeseries(Checker& c) {
  VectorXd tail(7);
  tail << -1.4, -5.0, -9.4, -12.8, -12.2, -11.4, -11.4;
  const VectorXd deltas = univariate::diff(tail);
  const double deltas_ref[] = {-3.6, -4.4, -3.4, 0.6, 0.8, 0.0};
  for (int i = 0; i < 6; ++i)
    c.expect_abs(deltas[i], deltas_ref[i], 1e-12, "December deltas");

  const auto s = timeseries::Series::from_values(tail);
  const auto k3 = timeseries::rolling(s, 3, timeseries::RollStat::mean);
  const double k3_ref[] = {-5.27, -9.07, -11.47, -12.13, -11.67};
  c.expect(k3.missing == std::vector<char>{1, 0, 0, 0, 0, 0, 1}, "k=3 missing pattern");
  for (int i = 0; i < 5; ++i)
    c.expect_abs(std::round(k3.values[i + 1] * 100) / 100, k3_ref[i], 1e-9,
                 "k=3 rolling mean (2dp)");
  const auto k5 = timeseries::rolling(s, 5, timeseries::RollStat::mean);
  const double k5_ref[] = {-8.16, -10.16, -11.44};
  c.expect(k5.missing == std::vector<char>{1, 1, 0, 0, 0, 1, 1}, "k=5 missing pattern");
  for (int i = 0; i < 3; ++i)
    c.expect_abs(std::round(k5.values[i + 2] * 100) / 100, k5_ref[i], 1e-9,
                 "k=5 rolling mean (2dp)");

  VectorXd solar(12);
  solar << 190, 118, 149, 313, 0, 0, 299, 99, 19, 194, 0, 256;
  const auto sol =
      timeseries::Series::from_values(solar, {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0});
  const auto ff = timeseries::fill(sol, timeseries::FillMethod::ffill);
  c.expect(ff.values[4] == 313.0 && ff.values[5] == 313.0 && ff.values[10] == 194.0,
           "solar forward fill");
  const auto bf = timeseries::fill(sol, timeseries::FillMethod::bfill);
  c.expect(bf.values[4] == 299.0 && bf.values[5] == 299.0 && bf.values[10] == 256.0,
           "solar backward fill");
  const auto lin = timeseries::fill(sol, timeseries::FillMethod::linear);
  c.expect_abs(lin.values[4], 308.333333, 1e-6, "solar linear fill row 4");
  c.expect_abs(lin.values[5], 303.666667, 1e-6, "solar linear fill row 5");
  c.expect_abs(lin.values[10], 225.0, 1e-6, "solar linear fill row 10");

  // optional: with the full temperature record cached, check the tail against
  // the printed values and the long-window smoothing against a naive oracle
  try {
    const VectorXd temps = load_vector("spokane_temperature.txt");
    c.expect(temps.size() == 48365, "temperature record length");
    bool tail_ok = true;
    for (int i = 0; i < 7; ++i) tail_ok = tail_ok && temps[temps.size() - 7 + i] == tail[i];
    c.expect(tail_ok, "December tail equals the printed values");

    const Index start = 29372;  // 1970-01-01 in epoch days after 1889-08-01
    const VectorXd recent = temps.segment(start, temps.size() - start);
    const auto series = timeseries::Series::from_values(recent);
    const auto parts = timeseries::detrend(series, 3653);
    const auto seasonal = timeseries::rolling(parts.detrended, 365, timeseries::RollStat::mean);
    bool smooth_ok = true;
    for (Index pos : {Index{5000}, Index{9000}, Index{14000}}) {
      // naive window oracle for the trend at an interior position
      const Index lo = pos - 3653 / 2;
      double acc = 0.0;
      for (Index i = lo; i < lo + 3653; ++i) acc += recent[i];
      smooth_ok = smooth_ok && !parts.trend.missing[static_cast<std::size_t>(pos)] &&
                  std::abs(parts.trend.values[pos] - acc / 3653.0) < 1e-9;
      smooth_ok = smooth_ok && !seasonal.missing[static_cast<std::size_t>(pos)] &&
                  std::isfinite(seasonal.values[pos]);
    }
    c.expect(smooth_ok, "long-window smoothing matches the naive oracle");
  } catch (const Skip&) {
    // spokane_temperature.txt not cached; the printed-fragment checks above stand
  }
}

void criterion_properties(Checker& c) {
  // kd-tree vs brute force on 200 randomized instances
  {
    Rng rng(424242);
    int mismatches = 0;
    for (int instance = 0; instance < 200; ++instance) {
      const Index dims = 1 + static_cast<Index>(rng.below(6));
      const Index n = 2 + static_cast<Index>(rng.below(999));
      MatrixXd points(n, dims);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < dims; ++j) points(i, j) = rng.next_double() * 6 - 3;
      const spatial::KdTree tree(points);
      VectorXd q(dims);
      for (Index j = 0; j < dims; ++j) q[j] = rng.next_double() * 7 - 3.5;
      const Index k = 1 + static_cast<Index>(rng.below(
          static_cast<std::uint64_t>(std::min<Index>(n, 11))));

      std::vector<std::pair<double, Index>> all;
      for (Index i = 0; i < n; ++i)
        all.emplace_back((points.row(i).transpose() - q).squaredNorm(), i);
      std::sort(all.begin(), all.end());
      const auto got = tree.query_knn(q, k);
      for (Index i = 0; i < k; ++i)
        if (got.indices[static_cast<std::size_t>(i)] != all[static_cast<std::size_t>(i)].second)
          ++mismatches;

      const double r = rng.next_double() * 2;
      std::vector<Index> ball_ref;
      for (Index i = 0; i < n; ++i)
        if ((points.row(i).transpose() - q).squaredNorm() <= r * r) ball_ref.push_back(i);
      if (tree.query_ball(q, r) != ball_ref) ++mismatches;
    }
    c.expect(mismatches == 0, "kd-tree matches brute force on 200 instances");
  }

  // SVD reconstruction/orthonormality on random matrices up to 200x20
  {
    Rng rng(515151);
    bool ok = true;
    const std::pair<Index, Index> shapes[] = {{10, 3}, {50, 8}, {120, 15}, {200, 20}};
    for (const auto& [n, m] : shapes) {
      MatrixXd x(n, m);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j) x(i, j) = rng.next_double() * 10 - 5;
      const auto svd = linalg::svd_compact(x);
      ok = ok && (svd.u.transpose() * svd.u - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <
                     1e-10;
      ok = ok &&
           (svd.vt * svd.vt.transpose() - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <
               1e-10;
      ok = ok && ((svd.u * svd.s.asDiagonal() * svd.vt - x).norm() / x.norm()) < 1e-9;
    }
    c.expect(ok, "SVD reconstruction and orthonormality up to 200x20");
  }

  // cdf(ppf(p)) identity across families at 1e-10
  {
    distributions::Mixture mixture;
    mixture.weights = {0.35, 0.1, 0.55};
    mixture.components.emplace_back(distributions::Normal{8, 1});
    mixture.components.emplace_back(distributions::Normal{12, 1});
    mixture.components.emplace_back(distributions::Normal{17, 2});
    std::vector<distributions::DistSpec> zoo;
    zoo.emplace_back(distributions::Normal{0, 1});
    zoo.emplace_back(distributions::LogNormal{10.3, 0.58});
    zoo.emplace_back(distributions::Pareto{0.95, 10000});
    zoo.emplace_back(distributions::Uniform{1, 50});
    zoo.emplace_back(distributions::Exponential{12});
    zoo.emplace_back(std::move(mixture));
    bool ok = true;
    for (const auto& d : zoo)
      for (double p : {0.001, 0.05, 0.25, 0.5, 0.75, 0.95, 0.999})
        ok = ok && std::abs(distributions::cdf(d, distributions::ppf(d, p)) - p) <= 1e-10;
    c.expect(ok, "cdf(ppf(p)) identity at 1e-10 across families");

    // seeded sampler KS self-tests at alpha = 0.001
    bool sampling_ok = true;
    std::uint64_t seed = 83000;
    for (const auto& d : zoo) {
      Rng rng(seed++);
      const VectorXd draws = distributions::sample(d, 100000, rng);
      sampling_ok = sampling_ok && !hypothesis::ks_one_sample(draws, d, 0.001).reject;
    }
    c.expect(sampling_ok, "seeded sampler KS self-tests pass at alpha=0.001");
  }

  // KS calibration over 2000 seeded null samples
  {
    const distributions::DistSpec d{distributions::Normal{0, 1}};
    int rejections = 0;
    for (int i = 0; i < 2000; ++i) {
      Rng rng(static_cast<std::uint64_t>(90000 + i));
      const VectorXd v = distributions::sample(d, 100, rng);
      rejections += hypothesis::ks_one_sample(v, d, 0.001).reject;
    }
    c.expect(rejections <= 10, "KS rejection rate <= 0.5% over 2000 null samples");
  }

  // residual-mean-zero and TSS = ESS + RSS on 100 random intercept models
  {
    Rng rng(616161);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      const Index n = 20 + static_cast<Index>(rng.below(100));
      const Index m = 2 + static_cast<Index>(rng.below(4));
      MatrixXd x(n, m);
      for (Index j = 0; j + 1 < m; ++j)
        for (Index i = 0; i < n; ++i) x(i, j) = rng.next_double() * 8 - 4;
      x.col(m - 1).setOnes();
      VectorXd y(n);
      for (Index i = 0; i < n; ++i) y[i] = rng.next_double() * 10 - 5;
      const auto model = regression::lstsq(x, y);
      const VectorXd yhat = x * model.coefficients;
      const VectorXd resid = y - yhat;
      ok = ok && std::abs(resid.mean()) <= 1e-9 * std::max(1.0, univariate::stddev(y, 0));
      const double tss = (y.array() - y.mean()).square().sum();
      const double ess = (yhat.array() - y.mean()).square().sum();
      ok = ok && std::abs(tss - (ess + resid.squaredNorm())) <= 1e-8 * tss;
    }
    c.expect(ok, "residual mean zero and TSS = ESS + RSS on 100 models");
  }
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "univariate goldens (heights/income)", criterion_univariate},
      {2, "scaling and entropy goldens", criterion_scaling},
      {3, "histogram goldens", criterion_histograms},
      {4, "distribution fits and normal quantiles", criterion_fits},
      {5, "Kolmogorov-Smirnov goldens", criterion_ks},
      {6, "chi-squared family goldens", criterion_chisq},
      {7, "regression goldens", criterion_regression},
      {8, "correlation goldens", criterion_correlation},
      {9, "PCA on the SSI indicators", criterion_pca},
      {10, "spatial goldens (distances, k-means)", criterion_spatial},
      {11, "wine classification", criterion_classification},
      {12, "outlier goldens", criterion_outliers},
      {13, "categorical goldens", criterion_categorical},
      {14, "time-series goldens", criterion_timeseries},
      {15, "property suites", criterion_properties},
  };

  int failed = 0;
  int skipped = 0;
  for (const auto& criterion : criteria) {
    Checker checker;
    std::string skip_reason;
    std::string error;
    try {
      criterion.run(checker);
    } catch (const Skip& s) {
      skip_reason = s.reason;
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::ostringstream label;
    label << "criterion " << std::setw(2) << criterion.id << ": " << criterion.name;
    if (!skip_reason.empty() && checker.failures().empty()) {
      ++skipped;
      if (checker.checks() > 0)
        std::cout << "[PART] " << label.str() << " (" << checker.checks()
                  << " dataset-free checks passed; rest skipped -- " << skip_reason << ")\n";
      else
        std::cout << "[SKIP] " << label.str() << " -- " << skip_reason << '\n';
    } else if (!error.empty()) {
      ++failed;
      std::cout << "[FAIL] " << label.str() << " -- error: " << error << '\n';
    } else if (!checker.failures().empty()) {
      ++failed;
      std::cout << "[FAIL] " << label.str() << " (" << checker.failures().size() << " of "
                << checker.checks() << " checks failed)\n";
      for (const auto& failure : checker.failures())
        std::cout << "       " << failure << '\n';
    } else {
      std::cout << "[PASS] " << label.str() << " (" << checker.checks() << " checks)\n";
    }
  }
  std::cout << (failed == 0 ? "ACCEPTANCE OK" : "ACCEPTANCE FAILED") << " -- "
            << criteria.size() - static_cast<std::size_t>(failed + skipped) << " passed, "
            << failed << " failed, " << skipped
            << " skipped (populate the data cache with tools/fetch_data.py to run skipped "
               "criteria)\n";
  return failed == 0 ? 0 : 1;
}
