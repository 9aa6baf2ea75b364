#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "statkit/rng.hpp"

namespace statkit::spatial {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using MatRef = Eigen::Ref<const Eigen::MatrixXd>;
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

// Pairwise Euclidean distances between the rows of x and the rows of y.
MatrixXd cdist(const MatRef& x, const MatRef& y);

// Exact spatial search over a fixed point set: median splits on cycling axes
// with backtracking. Query results follow the canonical ordering (knn: by
// distance, ties by point index; ball: by index), so they coincide with a
// brute-force scan.
class KdTree {
 public:
  explicit KdTree(MatrixXd points, Index leaf_size = 16);

  struct KnnResult {
    std::vector<Index> indices;
    VectorXd distances;
  };

  KnnResult query_knn(const VecRef& query, Index k) const;
  std::vector<Index> query_ball(const VecRef& query, double radius) const;

  Index size() const { return points_.rows(); }
  Index dims() const { return points_.cols(); }
  const MatrixXd& points() const { return points_; }

 private:
  struct Node {
    Index left = -1;    // child node ids, -1 for leaves
    Index right = -1;
    Index begin = 0;    // index range into order_ (leaves)
    Index end = 0;
    Index axis = 0;
    double split = 0.0;
  };

  Index build(Index begin, Index end, Index depth);

  MatrixXd points_;
  Index leaf_size_;
  std::vector<Index> order_;
  std::vector<Node> nodes_;
  Index root_ = -1;
};

VectorXd knn_regress(const MatRef& x_train, const VecRef& y_train, const MatRef& x_test,
                     Index k);

enum class TiePolicy { lowest_label, seeded_random };

std::vector<int> knn_classify(const MatRef& x_train, const std::vector<int>& y_train,
                              const MatRef& x_test, Index k,
                              TiePolicy policy = TiePolicy::lowest_label,
                              Rng* rng = nullptr);

struct ConfusionMatrix {
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tp = 0;
  std::int64_t total() const { return tn + fp + fn + tp; }
};

struct ClassificationMetrics {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  std::optional<double> precision;  // unset when TP + FP = 0
  std::optional<double> recall;     // unset when TP + FN = 0
  std::optional<double> f1;         // unset when either side is undefined
};

ClassificationMetrics classification_metrics(const std::vector<int>& y_true,
                                             const std::vector<int>& y_pred);

VectorXd centroid(const MatRef& x);
// sqrt of the average squared distance to the centroid.
double dispersion(const MatRef& x);

struct ClusteringResult {
  MatrixXd centres;          // k x m
  std::vector<int> labels;   // argmin-distance assignment, ties to lowest j
  double wcss = 0.0;
  int iterations = 0;
  bool converged = false;
  bool reseeded = false;     // an empty cluster was re-seeded during iteration
  Index restarts_run = 1;
  std::uint64_t best_seed = 0;
  std::vector<double> wcss_trace;    // per-iteration objective (single run)
  std::vector<double> restart_wcss;  // per-restart optimum (restart driver)
};

// Lloyd fixed-point iteration; stops when |delta WCSS| < eps. An empty cluster
// is re-seeded at the point farthest from its assigned centre.
ClusteringResult kmeans_lloyd(const MatRef& x, const MatRef& init_centres, double eps = 1e-9,
                              int max_iter = 300);

// Best of n_restarts Lloyd runs; restart i draws k distinct data points as
// initial centres from Rng(seed + i). Ties on WCSS go to the lowest restart
// index, making the reduction order-independent.
ClusteringResult kmeans_restarts(const MatRef& x, Index k, Index n_restarts,
                                 std::uint64_t seed, double eps = 1e-9, int max_iter = 300);

// |B_r(x_i)| (neighbours within radius r, the point itself included).
std::vector<Index> neighbour_counts(const MatRef& x, double radius);

std::vector<char> outlier_iqr(const VecRef& v);
// Flags x_i with density estimate |B_r(x_i)| / (2 r n) below the threshold.
std::vector<char> outlier_low_density(const VecRef& v, double radius, double threshold);
// Flags points with no neighbour other than themselves within r.
std::vector<char> outlier_isolated(const MatRef& x, double radius);

}  // namespace statkit::spatial
