// statkit command-line front end: CSV in, JSON/CSV out.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "statkit/statkit.hpp"

using json = nlohmann::ordered_json;
using namespace statkit;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

tabular::Table load_table(const std::string& path) {
  tabular::Table t;
  if (path == "-") {
    t = tabular::read_csv(std::cin);
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    t = tabular::read_csv(in);
  }
  if (t.n_rows == 0 || t.n_cols() == 0) throw std::runtime_error("empty input");
  return t;
}

VectorXd complete_column(const tabular::Table& t, const std::string& name) {
  const VectorXd v = tabular::numeric_column_complete(t, name);
  if (v.size() == 0) throw std::runtime_error("column '" + name + "' has no observed values");
  return v;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

VectorXd parse_numbers(const std::string& csv) {
  const auto items = split_list(csv);
  VectorXd v(static_cast<Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) v[static_cast<Index>(i)] = std::stod(items[i]);
  return v;
}

json vec_to_json(const VectorXd& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json mat_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i).transpose()));
  return rows;
}

void emit_json(const json& payload) { std::cout << payload.dump() << '\n'; }

// numeric columns of a table, in order; an empty selection means all of them
MatrixXd numeric_matrix(const tabular::Table& t, std::vector<std::string> cols,
                        std::vector<std::string>* names_out = nullptr) {
  if (cols.empty())
    for (std::size_t c = 0; c < t.cols.size(); ++c)
      if (t.cols[c].kind == tabular::Column::Kind::numeric) cols.push_back(t.names[c]);
  if (cols.empty()) throw std::runtime_error("no numeric columns in input");
  MatrixXd x(t.n_rows, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto [values, missing] = tabular::numeric_column(t, cols[j]);
    for (Index i = 0; i < t.n_rows; ++i) {
      if (missing[static_cast<std::size_t>(i)])
        throw std::runtime_error("column '" + cols[j] + "' has missing values (impute first)");
      x(i, static_cast<Index>(j)) = values[i];
    }
  }
  if (names_out) *names_out = cols;
  return x;
}

void print_column_csv(const std::string& name, const VectorXd& v) {
  std::cout << name << '\n';
  for (Index i = 0; i < v.size(); ++i) std::cout << tabular::format_double(v[i]) << '\n';
}

distributions::DistSpec fit_by_family(const std::string& family, const VectorXd& v,
                                      bool robust, std::optional<double> scale_param) {
  if (family == "normal") return distributions::fit_normal(v, robust);
  if (family == "lognormal") return distributions::fit_lognormal(v);
  if (family == "pareto") return distributions::fit_pareto(v, scale_param);
  if (family == "uniform") return distributions::fit_uniform(v);
  if (family == "exponential") return distributions::fit_exponential(v);
  throw std::runtime_error("unknown family '" + family + "'");
}

json dist_to_json(const distributions::DistSpec& d) {
  json out;
  out["family"] = distributions::family_name(d);
  if (const auto* n = std::get_if<distributions::Normal>(&d.value)) {
    out["mu"] = n->mu;
    out["sigma"] = n->sigma;
  } else if (const auto* ln = std::get_if<distributions::LogNormal>(&d.value)) {
    out["mu"] = ln->mu;
    out["sigma"] = ln->sigma;
  } else if (const auto* p = std::get_if<distributions::Pareto>(&d.value)) {
    out["alpha"] = p->alpha;
    out["scale"] = p->scale;
  } else if (const auto* u = std::get_if<distributions::Uniform>(&d.value)) {
    out["a"] = u->a;
    out["b"] = u->b;
  } else if (const auto* e = std::get_if<distributions::Exponential>(&d.value)) {
    out["scale"] = e->scale;
  }
  return out;
}

json test_to_json(const hypothesis::TestResult& r) {
  json out;
  out["test"] = r.test;
  out["statistic"] = r.statistic;
  out["critical"] = r.critical_value;
  out["alpha"] = r.alpha;
  out["dof"] = r.dof_or_n;
  out["reject"] = r.reject;
  return out;
}

categorical::Factor factor_from_column(const tabular::Table& t, const std::string& name) {
  const tabular::Column& col = t.column(name);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(t.n_rows));
  for (Index i = 0; i < t.n_rows; ++i) {
    if (col.missing[static_cast<std::size_t>(i)])
      throw std::runtime_error("column '" + name + "' has missing values");
    labels.push_back(col.kind == tabular::Column::Kind::text
                         ? col.text[static_cast<std::size_t>(i)]
                         : tabular::format_double(col.num[i]));
  }
  return categorical::factorize(labels);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statkit: a self-contained statistical data-wrangling engine"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string out_format = "json";
  std::string col;
  std::string cols_list;
  std::string method;
  std::string family = "normal";
  double alpha = 0.001;
  std::uint64_t seed = 123;

  // ---- summary ----
  auto* cmd_summary = app.add_subcommand("summary", "univariate aggregates of a column");
  cmd_summary->add_option("--col", col, "column name")->required();
  cmd_summary->add_option("input", input, "CSV path or - for stdin");
  cmd_summary->callback([&] {
    const auto t = load_table(input);
    const VectorXd v = complete_column(t, col);
    json out;
    out["col"] = col;
    out["n"] = v.size();
    out["mean"] = univariate::mean(v);
    out["median"] = univariate::median(v);
    out["min"] = univariate::min(v);
    out["max"] = univariate::max(v);
    out["q25"] = univariate::quantile(v, 0.25);
    out["q75"] = univariate::quantile(v, 0.75);
    out["iqr"] = univariate::iqr(v);
    out["std0"] = univariate::stddev(v, 0);
    out["std1"] = v.size() > 1 ? univariate::stddev(v, 1) : 0.0;
    out["midrange"] = univariate::midrange(v);
    try {
      out["skewness"] = univariate::skewness(v);
    } catch (const std::domain_error&) {
      out["skewness"] = nullptr;
    }
    emit_json(out);
  });

  // ---- quantile ----
  std::string probs = "0,0.25,0.5,0.75,1";
  auto* cmd_quantile = app.add_subcommand("quantile", "type-7 sample quantiles");
  cmd_quantile->add_option("--col", col)->required();
  cmd_quantile->add_option("--p", probs, "comma-separated probabilities");
  cmd_quantile->add_option("--out", out_format, "json|csv");
  cmd_quantile->add_option("input", input);
  cmd_quantile->callback([&] {
    const auto t = load_table(input);
    const VectorXd v = complete_column(t, col);
    const VectorXd ps = parse_numbers(probs);
    VectorXd qs(ps.size());
    for (Index i = 0; i < ps.size(); ++i) qs[i] = univariate::quantile(v, ps[i]);
    if (out_format == "csv") {
      std::cout << "p,q\n";
      for (Index i = 0; i < ps.size(); ++i)
        std::cout << tabular::format_double(ps[i]) << ',' << tabular::format_double(qs[i])
                  << '\n';
    } else {
      json out;
      out["col"] = col;
      out["p"] = vec_to_json(ps);
      out["q"] = vec_to_json(qs);
      emit_json(out);
    }
  });

  // ---- scale ----
  double clip_lo = 0.0;
  double clip_hi = 1.0;
  auto* cmd_scale = app.add_subcommand("scale", "feature scaling of a column");
  cmd_scale->add_option("--col", col)->required();
  cmd_scale->add_option("--method", method, "standardize|robust|minmax|clip|l2|l1")->required();
  cmd_scale->add_option("--lo", clip_lo, "clip lower bound");
  cmd_scale->add_option("--hi", clip_hi, "clip upper bound");
  cmd_scale->add_option("--out", out_format, "json|csv");
  cmd_scale->add_option("input", input);
  cmd_scale->callback([&] {
    const auto t = load_table(input);
    const VectorXd v = complete_column(t, col);
    VectorXd scaled;
    if (method == "standardize")
      scaled = univariate::standardize(v);
    else if (method == "robust")
      scaled = univariate::robust_standardize(v);
    else if (method == "minmax")
      scaled = univariate::minmax_scale(v);
    else if (method == "clip")
      scaled = univariate::clip(v, clip_lo, clip_hi);
    else if (method == "l2")
      scaled = univariate::normalize_l2(v);
    else if (method == "l1")
      scaled = univariate::normalize_l1(v);
    else
      throw std::runtime_error("unknown scaling method '" + method + "'");
    if (out_format == "json")
      emit_json(json{{"col", col}, {"method", method}, {"values", vec_to_json(scaled)}});
    else
      print_column_csv(col, scaled);
  });

  // ---- hist ----
  std::string bins = "10";
  auto* cmd_hist = app.add_subcommand("hist", "histogram plot data");
  cmd_hist->add_option("--col", col)->required();
  cmd_hist->add_option("--bins", bins, "bin count or comma-separated edges");
  cmd_hist->add_option("--method", method, "equal|geometric (for a bin count)");
  cmd_hist->add_option("--out", out_format, "json|csv");
  cmd_hist->add_option("input", input);
  cmd_hist->callback([&] {
    const auto t = load_table(input);
    const VectorXd v = complete_column(t, col);
    univariate::HistogramResult hist;
    if (bins.find(',') != std::string::npos)
      hist = univariate::histogram(v, parse_numbers(bins));
    else if (method == "geometric")
      hist = univariate::histogram_geometric(v, std::stoi(bins));
    else
      hist = univariate::histogram_equal_width(v, std::stoi(bins));
    if (out_format == "json") {
      json out;
      out["col"] = col;
      out["edges"] = vec_to_json(hist.edges);
      out["counts"] = hist.counts;
      emit_json(out);
    } else {
      std::cout << "edge,count\n";
      for (Index i = 0; i < hist.edges.size(); ++i) {
        std::cout << tabular::format_double(hist.edges[i]) << ',';
        if (i + 1 < hist.edges.size()) std::cout << hist.counts[static_cast<std::size_t>(i)];
        std::cout << '\n';
      }
    }
  });

  // ---- ecdf ----
  auto* cmd_ecdf = app.add_subcommand("ecdf", "empirical CDF step points");
  cmd_ecdf->add_option("--col", col)->required();
  cmd_ecdf->add_option("--out", out_format, "json|csv");
  cmd_ecdf->add_option("input", input);
  cmd_ecdf->callback([&] {
    const auto t = load_table(input);
    const univariate::Ecdf f(complete_column(t, col));
    const auto pts = f.step_points();
    if (out_format == "json") {
      json values = json::array();
      json heights = json::array();
      for (const auto& [v, h] : pts) {
        values.push_back(v);
        heights.push_back(h);
      }
      emit_json(json{{"col", col}, {"values", values}, {"heights", heights}});
    } else {
      std::cout << "value,height\n";
      for (const auto& [v, h] : pts)
        std::cout << tabular::format_double(v) << ',' << tabular::format_double(h) << '\n';
    }
  });

  // ---- fit ----
  bool robust = false;
  bool qq = false;
  double pareto_scale = 0.0;
  std::string curve;
  Index curve_points = 257;
  auto* cmd_fit = app.add_subcommand("fit", "parametric distribution fitting");
  cmd_fit->add_option("--col", col)->required();
  cmd_fit->add_option("--family", family, "normal|lognormal|pareto|uniform|exponential");
  cmd_fit->add_flag("--robust", robust, "normal fit via median and IQR/1.349");
  cmd_fit->add_option("--scale-param", pareto_scale, "Pareto scale s (default: sample min)");
  cmd_fit->add_flag("--qq", qq, "emit Q-Q pairs as CSV instead of parameters");
  cmd_fit->add_option("--curve", curve, "emit pdf|cdf samples as CSV instead of parameters");
  cmd_fit->add_option("--points", curve_points, "curve sample count");
  cmd_fit->add_option("input", input);
  cmd_fit->callback([&] {
    const auto t = load_table(input);
    const VectorXd v = complete_column(t, col);
    const auto d = fit_by_family(
        family, v, robust,
        pareto_scale > 0 ? std::optional<double>(pareto_scale) : std::nullopt);
    if (qq) {
      std::cout << "theoretical,sample\n";
      for (const auto& [theo, sample] : distributions::qq_pairs(v, d))
        std::cout << tabular::format_double(theo) << ',' << tabular::format_double(sample)
                  << '\n';
    } else if (!curve.empty()) {
      if (curve != "pdf" && curve != "cdf")
        throw std::runtime_error("--curve expects pdf or cdf");
      if (curve_points < 2) throw std::runtime_error("--points must be at least 2");
      const double lo = std::min(univariate::min(v), distributions::ppf(d, 0.001));
      const double hi = std::max(univariate::max(v), distributions::ppf(d, 0.999));
      std::cout << "x," << curve << '\n';
      for (Index i = 0; i < curve_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(curve_points - 1);
        const double y = curve == "pdf" ? distributions::pdf(d, x)
                                        : distributions::cdf(d, x);
        std::cout << tabular::format_double(x) << ',' << tabular::format_double(y) << '\n';
      }
    } else {
      emit_json(dist_to_json(d));
    }
  });

  // ---- test-ks ----
  std::string col2;
  std::string by;
  std::string ks_method = "asymptotic";
  double mu_param = 0.0;
  double sigma_param = 1.0;
  auto* cmd_ks = app.add_subcommand("test-ks", "Kolmogorov-Smirnov tests");
  cmd_ks->add_option("--col", col)->required();
  cmd_ks->add_option("--col2", col2, "second sample column (two-sample test)");
  cmd_ks->add_option("--by", by, "binary group column (two-sample test)");
  cmd_ks->add_option("--family", family, "one-sample reference family");
  cmd_ks->add_option("--mu", mu_param, "normal location (else fitted)");
  cmd_ks->add_option("--sigma", sigma_param, "normal scale (else fitted)");
  cmd_ks->add_option("--alpha", alpha);
  cmd_ks->add_option("--method", ks_method, "asymptotic|exact critical value");
  cmd_ks->add_option("input", input);
  cmd_ks->callback([&] {
    const auto t = load_table(input);
    const VectorXd x = complete_column(t, col);
    if (!col2.empty()) {
      emit_json(test_to_json(hypothesis::ks_two_sample(x, complete_column(t, col2), alpha)));
      return;
    }
    if (!by.empty()) {
      const auto groups = tabular::group_split(t, by);
      if (groups.size() != 2)
        throw std::runtime_error("--by column must have exactly two levels");
      const VectorXd a = complete_column(groups[0].second, col);
      const VectorXd b = complete_column(groups[1].second, col);
      emit_json(test_to_json(hypothesis::ks_two_sample(a, b, alpha)));
      return;
    }
    const bool have_params = cmd_ks->count("--mu") > 0 && family == "normal";
    const distributions::DistSpec d =
        have_params
            ? distributions::DistSpec(distributions::Normal{mu_param, sigma_param})
            : fit_by_family(family, x, false, std::nullopt);
    const auto mode = ks_method == "exact" ? hypothesis::KsMethod::exact
                                           : hypothesis::KsMethod::asymptotic;
    emit_json(test_to_json(hypothesis::ks_one_sample(x, d, alpha, mode)));
  });

  // ---- test-chisq ----
  std::string observed;
  std::string observed2;
  std::string expected;
  bool independence = false;
  bool classical_dof = false;
  auto* cmd_chisq = app.add_subcommand("test-chisq", "Pearson chi-squared tests");
  cmd_chisq->add_option("--observed", observed, "comma-separated counts");
  cmd_chisq->add_option("--observed2", observed2, "second sample counts (two-sample)");
  cmd_chisq->add_option("--expected", expected, "expected proportions (goodness of fit)");
  cmd_chisq->add_flag("--independence", independence,
                      "treat the input's numeric columns as a contingency table");
  cmd_chisq->add_flag("--classical-dof", classical_dof, "(n-1)(m-1) degrees of freedom");
  cmd_chisq->add_option("--alpha", alpha);
  cmd_chisq->add_option("input", input);
  cmd_chisq->callback([&] {
    if (independence) {
      const auto t = load_table(input);
      const MatrixXd m = numeric_matrix(t, {});
      categorical::CountMatrix counts(m.rows(), m.cols());
      for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
          counts(i, j) = static_cast<std::int64_t>(std::llround(m(i, j)));
      const auto res = hypothesis::chisq_independence(
          counts, alpha,
          classical_dof ? hypothesis::IndependenceDof::classical
                        : hypothesis::IndependenceDof::rows_plus_cols_minus_1);
      json out = test_to_json(res.test);
      out["cramers_v"] = hypothesis::cramers_v(counts);
      out["expected"] = mat_to_json(res.expected);
      emit_json(out);
      return;
    }
    if (observed.empty()) throw std::runtime_error("test-chisq: --observed is required");
    const VectorXd counts1 = parse_numbers(observed);
    if (!observed2.empty()) {
      emit_json(test_to_json(
          hypothesis::chisq_two_sample_counts(counts1, parse_numbers(observed2), alpha)));
      return;
    }
    if (expected.empty())
      throw std::runtime_error("test-chisq: --expected proportions are required");
    emit_json(
        test_to_json(hypothesis::chisq_gof_counts(counts1, parse_numbers(expected), alpha)));
  });

  // ---- corr ----
  bool matrix_mode = false;
  auto* cmd_corr = app.add_subcommand("corr", "correlation coefficients");
  cmd_corr->add_option("--cols", cols_list, "two column names, e.g. a,b");
  cmd_corr->add_option("--method", method, "pearson|spearman");
  cmd_corr->add_flag("--matrix", matrix_mode, "full correlation matrix of numeric columns");
  cmd_corr->add_option("input", input);
  cmd_corr->callback([&] {
    const auto t = load_table(input);
    const bool use_spearman = method == "spearman";
    if (matrix_mode) {
      std::vector<std::string> names;
      MatrixXd x = numeric_matrix(t, split_list(cols_list), &names);
      if (use_spearman)
        for (Index j = 0; j < x.cols(); ++j) x.col(j) = univariate::rank_average(x.col(j));
      const MatrixXd r = regression::pearson_matrix(x);
      const auto [i, j] = regression::most_correlated_pair(r);
      json out;
      out["method"] = use_spearman ? "spearman" : "pearson";
      out["cols"] = names;
      out["matrix"] = mat_to_json(r);
      out["most_correlated"] = json::array(
          {names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]});
      emit_json(out);
      return;
    }
    const auto names = split_list(cols_list);
    if (names.size() != 2) throw std::runtime_error("corr: --cols expects exactly two names");
    const VectorXd x = complete_column(t, names[0]);
    const VectorXd y = complete_column(t, names[1]);
    if (x.size() != y.size())
      throw std::runtime_error("corr: columns have different observed lengths");
    json out;
    out["method"] = use_spearman ? "spearman" : "pearson";
    out["cols"] = names;
    out["r"] = use_spearman ? regression::spearman(x, y) : regression::pearson(x, y);
    emit_json(out);
  });

  // ---- regress ----
  std::string y_col;
  std::string x_cols;
  int powers = 0;
  bool no_intercept = false;
  bool log_x = false;
  std::string path_mode = "auto";
  auto* cmd_regress = app.add_subcommand("regress", "least squares linear models");
  cmd_regress->add_option("--y", y_col)->required();
  cmd_regress->add_option("--x", x_cols, "predictor columns, comma-separated");
  cmd_regress->add_option("--powers", powers, "single predictor: use powers 1..K");
  cmd_regress->add_flag("--log", log_x, "single predictor: use its natural log");
  cmd_regress->add_flag("--no-intercept", no_intercept);
  cmd_regress->add_option("--path", path_mode, "auto|on|off standardized solve");
  cmd_regress->add_option("input", input);
  cmd_regress->callback([&] {
    const auto t = load_table(input);
    std::vector<std::string> requested = split_list(x_cols);
    if (requested.empty()) {  // default: every numeric column except the target
      for (std::size_t cidx = 0; cidx < t.cols.size(); ++cidx)
        if (t.cols[cidx].kind == tabular::Column::Kind::numeric && t.names[cidx] != y_col)
          requested.push_back(t.names[cidx]);
    }
    std::vector<std::string> names;
    MatrixXd base = numeric_matrix(t, requested, &names);
    const auto [yv, ymiss] = tabular::numeric_column(t, y_col);
    for (char m : ymiss)
      if (m) throw std::runtime_error("column '" + y_col + "' has missing values");

    MatrixXd design;
    std::vector<std::string> design_names;
    if (powers > 0 || log_x) {
      if (base.cols() != 1)
        throw std::runtime_error("--powers/--log expect exactly one predictor column");
      std::vector<regression::ColumnTransform> spec;
      if (log_x) {
        spec.push_back(regression::ColumnTransform::log());
        design_names.push_back("log(" + names[0] + ")");
      } else {
        for (int p = 1; p <= powers; ++p) {
          spec.push_back(regression::ColumnTransform::power(p));
          design_names.push_back(names[0] + "^" + std::to_string(p));
        }
      }
      if (!no_intercept) {
        spec.push_back(regression::ColumnTransform::const1());
        design_names.push_back("const");
      }
      design = regression::design_matrix(base.col(0), spec);
    } else {
      design_names = names;
      if (no_intercept) {
        design = base;
      } else {
        design.resize(base.rows(), base.cols() + 1);
        design.leftCols(base.cols()) = base;
        design.col(base.cols()).setOnes();
        design_names.push_back("const");
      }
    }
    const auto path = path_mode == "on"    ? regression::StandardizePath::on
                      : path_mode == "off" ? regression::StandardizePath::off
                                           : regression::StandardizePath::automatic;
    const auto model = regression::lstsq(design, yv, path);
    json out;
    out["y"] = y_col;
    out["columns"] = design_names;
    out["coefficients"] = vec_to_json(model.coefficients);
    json diag;
    diag["ssr"] = model.diag.ssr;
    diag["rmse"] = model.diag.rmse;
    diag["mae"] = model.diag.mae;
    diag["r2"] = model.diag.r2;
    diag["adj_r2"] = std::isnan(model.diag.adj_r2) ? json() : json(model.diag.adj_r2);
    diag["aic"] = model.diag.aic;
    diag["bic"] = model.diag.bic;
    out["diagnostics"] = diag;
    out["condition_number"] = model.condition_number;
    out["standardized_path"] = model.standardized_path;
    emit_json(out);
  });

  // ---- pca ----
  bool emit_scores = false;
  auto* cmd_pca = app.add_subcommand("pca", "principal component analysis");
  cmd_pca->add_option("--cols", cols_list, "columns (default: all numeric)");
  cmd_pca->add_option("--method", method, "center|standardize (default standardize)");
  cmd_pca->add_flag("--scores", emit_scores, "emit the score matrix as CSV");
  cmd_pca->add_option("input", input);
  cmd_pca->callback([&] {
    const auto t = load_table(input);
    std::vector<std::string> names;
    const MatrixXd x = numeric_matrix(t, split_list(cols_list), &names);
    const auto preprocess = method == "center" ? linalg::PcaPreprocess::center
                                               : linalg::PcaPreprocess::standardize;
    const auto res = linalg::pca(x, preprocess);
    if (emit_scores) {
      linalg::write_matrix_csv(res.scores, std::cout);
      return;
    }
    json out;
    out["cols"] = names;
    out["singular_values"] = vec_to_json(res.singular_values);
    out["sdev"] =
        vec_to_json(res.singular_values / std::sqrt(static_cast<double>(x.rows())));
    out["cumvar_ratio"] = vec_to_json(res.cumvar_ratio);
    out["loadings"] = mat_to_json(res.loadings);
    emit_json(out);
  });

  // ---- knn ----
  std::string train_path;
  std::string test_path;
  Index k = 5;
  std::string task = "regress";
  bool z_score = false;
  auto* cmd_knn = app.add_subcommand("knn", "k-nearest-neighbour prediction");
  cmd_knn->add_option("--train", train_path)->required();
  cmd_knn->add_option("--test", test_path)->required();
  cmd_knn->add_option("--y", y_col, "target column in the training file")->required();
  cmd_knn->add_option("--k", k);
  cmd_knn->add_option("--task", task, "regress|classify");
  cmd_knn->add_option("--cols", cols_list, "feature columns (default: shared numeric)");
  cmd_knn->add_flag("--standardize", z_score, "z-score features by training statistics");
  cmd_knn->callback([&] {
    const auto train = load_table(train_path);
    const auto test = load_table(test_path);
    std::vector<std::string> feature_names = split_list(cols_list);
    if (feature_names.empty()) {
      for (std::size_t c = 0; c < train.cols.size(); ++c) {
        if (train.cols[c].kind != tabular::Column::Kind::numeric || train.names[c] == y_col)
          continue;
        bool in_test = true;
        try {
          (void)test.column_index(train.names[c]);
        } catch (const std::exception&) {
          in_test = false;
        }
        if (in_test) feature_names.push_back(train.names[c]);
      }
    }
    MatrixXd x_train = numeric_matrix(train, feature_names);
    MatrixXd x_test = numeric_matrix(test, feature_names);
    if (z_score) {
      for (Index j = 0; j < x_train.cols(); ++j) {
        const double mean = x_train.col(j).mean();
        const double sd = std::sqrt((x_train.col(j).array() - mean).square().mean());
        if (!(sd > 0)) throw std::runtime_error("zero-variance feature column");
        x_train.col(j) = (x_train.col(j).array() - mean) / sd;
        x_test.col(j) = (x_test.col(j).array() - mean) / sd;
      }
    }
    if (task == "classify") {
      const auto f = factor_from_column(train, y_col);
      const auto codes = spatial::knn_classify(x_train, f.codes, x_test, k);
      std::cout << "prediction\n";
      for (int code : codes) std::cout << f.levels[static_cast<std::size_t>(code)] << '\n';
    } else {
      const auto [yv, ymiss] = tabular::numeric_column(train, y_col);
      for (char m : ymiss)
        if (m) throw std::runtime_error("column '" + y_col + "' has missing values");
      print_column_csv("prediction", spatial::knn_regress(x_train, yv, x_test, k));
    }
  });

  // ---- kmeans ----
  Index n_clusters = 2;
  Index restarts = 100;
  auto* cmd_kmeans = app.add_subcommand("kmeans", "Lloyd k-means with random restarts");
  cmd_kmeans->add_option("--k", n_clusters)->required();
  cmd_kmeans->add_option("--restarts", restarts);
  cmd_kmeans->add_option("--seed", seed);
  cmd_kmeans->add_option("--cols", cols_list, "columns (default: all numeric)");
  cmd_kmeans->add_option("input", input);
  cmd_kmeans->callback([&] {
    const auto t = load_table(input);
    const MatrixXd x = numeric_matrix(t, split_list(cols_list));
    const auto res = spatial::kmeans_restarts(x, n_clusters, restarts, seed);
    json out;
    out["k"] = n_clusters;
    out["wcss"] = res.wcss;
    out["restarts"] = res.restarts_run;
    out["best_seed"] = res.best_seed;
    out["reseeded"] = res.reseeded;
    out["centres"] = mat_to_json(res.centres);
    out["labels"] = res.labels;
    emit_json(out);
  });

  // ---- outliers ----
  double radius = 1.0;
  double threshold = 0.001;
  auto* cmd_outliers = app.add_subcommand("outliers", "outlier flags");
  cmd_outliers->add_option("--col", col, "column (iqr/density methods)");
  cmd_outliers->add_option("--cols", cols_list, "columns (isolated method)");
  cmd_outliers->add_option("--method", method, "iqr|density|isolated")->required();
  cmd_outliers->add_option("--r", radius, "radius");
  cmd_outliers->add_option("--threshold", threshold, "density threshold");
  cmd_outliers->add_option("input", input);
  cmd_outliers->callback([&] {
    const auto t = load_table(input);
    std::vector<char> flags;
    if (method == "iqr")
      flags = spatial::outlier_iqr(complete_column(t, col));
    else if (method == "density")
      flags = spatial::outlier_low_density(complete_column(t, col), radius, threshold);
    else if (method == "isolated")
      flags = spatial::outlier_isolated(numeric_matrix(t, split_list(cols_list)), radius);
    else
      throw std::runtime_error("unknown outlier method '" + method + "'");
    std::cout << "flag\n";
    for (char f : flags) std::cout << (f ? 1 : 0) << '\n';
  });

  // ---- ts ----
  std::string op;
  std::string date_col;
  std::string stat = "mean";
  std::string fill_method = "linear";
  Index window = 3;
  bool trailing = false;
  auto* cmd_ts = app.add_subcommand("ts", "time-series operations");
  cmd_ts->add_option("--col", col)->required();
  cmd_ts->add_option("--date-col", date_col, "YYYY-MM-DD index column");
  cmd_ts->add_option("--op", op, "diff|cumsum|rolling|fill|detrend")->required();
  cmd_ts->add_option("--k", window, "window length");
  cmd_ts->add_option("--stat", stat, "mean|min|median|max");
  cmd_ts->add_option("--fill-method", fill_method, "ffill|bfill|linear");
  cmd_ts->add_flag("--trailing", trailing, "trailing instead of centered windows");
  cmd_ts->add_option("input", input);
  cmd_ts->callback([&] {
    const auto t = load_table(input);
    const auto [values, missing] = tabular::numeric_column(t, col);
    timeseries::Series s = timeseries::Series::from_values(values, missing);
    if (!date_col.empty()) {
      const tabular::Column& dates = t.column(date_col);
      if (dates.kind != tabular::Column::Kind::text)
        throw std::runtime_error("--date-col must hold YYYY-MM-DD text");
      s.index.reserve(static_cast<std::size_t>(t.n_rows));
      for (Index i = 0; i < t.n_rows; ++i)
        s.index.push_back(timeseries::parse_date(dates.text[static_cast<std::size_t>(i)]));
      s.has_index = true;
      for (std::size_t i = 1; i < s.index.size(); ++i)
        if (s.index[i] <= s.index[i - 1])
          throw std::runtime_error("--date-col must be strictly increasing");
    }
    const auto roll_stat = stat == "min"      ? timeseries::RollStat::min
                           : stat == "max"    ? timeseries::RollStat::max
                           : stat == "median" ? timeseries::RollStat::median
                                              : timeseries::RollStat::mean;
    if (op == "diff" || op == "cumsum") {
      for (char m : missing)
        if (m) throw std::runtime_error("column '" + col + "' has missing values");
      print_column_csv(col + "_" + op,
                       op == "diff" ? univariate::diff(values) : univariate::cumsum(values));
    } else if (op == "rolling") {
      timeseries::write_series_csv(timeseries::rolling(s, window, roll_stat, !trailing),
                                   std::cout);
    } else if (op == "fill") {
      const auto fm = fill_method == "ffill"   ? timeseries::FillMethod::ffill
                      : fill_method == "bfill" ? timeseries::FillMethod::bfill
                                               : timeseries::FillMethod::linear;
      timeseries::write_series_csv(timeseries::fill(s, fm), std::cout);
    } else if (op == "detrend") {
      const auto parts = timeseries::detrend(s, window);
      std::cout << (s.has_index ? "date,trend,detrended\n" : "trend,detrended\n");
      for (Index i = 0; i < s.size(); ++i) {
        if (s.has_index)
          std::cout << timeseries::format_date(s.index[static_cast<std::size_t>(i)]) << ',';
        if (!parts.trend.missing[static_cast<std::size_t>(i)])
          std::cout << tabular::format_double(parts.trend.values[i]);
        std::cout << ',';
        if (!parts.detrended.missing[static_cast<std::size_t>(i)])
          std::cout << tabular::format_double(parts.detrended.values[i]);
        std::cout << '\n';
      }
    } else {
      throw std::runtime_error("unknown ts op '" + op + "'");
    }
  });

  // ---- impute ----
  std::string strategy = "mean";
  auto* cmd_impute = app.add_subcommand("impute", "missing-value imputation");
  cmd_impute->add_option("--col", col)->required();
  cmd_impute->add_option("--strategy", strategy, "mean|median|mode|group_mean");
  cmd_impute->add_option("--by", by, "group column for group_mean");
  cmd_impute->add_option("input", input);
  cmd_impute->callback([&] {
    const auto t = load_table(input);
    const auto [values, missing] = tabular::numeric_column(t, col);
    VectorXd imputed;
    if (strategy == "group_mean") {
      if (by.empty()) throw std::runtime_error("impute: group_mean needs --by");
      imputed = tabular::impute_group_mean(values, missing, factor_from_column(t, by));
    } else {
      const auto s = strategy == "median" ? tabular::ImputeStrategy::median
                     : strategy == "mode" ? tabular::ImputeStrategy::mode
                                          : tabular::ImputeStrategy::mean;
      imputed = tabular::impute(values, missing, s);
    }
    print_column_csv(col, imputed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::string where = "statkit";
    for (const auto* sub : app.get_subcommands())
      if (sub->parsed()) where = sub->get_name();
    json err;
    err["error"] = e.what();
    err["detail"] = where;
    std::cerr << err.dump() << '\n';
    return 2;
  }
  return 0;
}
