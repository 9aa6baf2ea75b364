#include "statkit/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "statkit/univariate.hpp"

namespace statkit::spatial {

MatrixXd cdist(const MatRef& x, const MatRef& y) {
  if (x.cols() != y.cols())
    throw std::invalid_argument("cdist: dimension mismatch (" + std::to_string(x.cols()) +
                                " vs " + std::to_string(y.cols()) + ")");
  MatrixXd d(x.rows(), y.rows());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < y.rows(); ++j) d(i, j) = (x.row(i) - y.row(j)).norm();
  return d;
}

KdTree::KdTree(MatrixXd points, Index leaf_size)
    : points_(std::move(points)), leaf_size_(std::max<Index>(1, leaf_size)) {
  if (points_.rows() == 0 || points_.cols() == 0)
    throw std::invalid_argument("KdTree: empty point set");
  order_.resize(static_cast<std::size_t>(points_.rows()));
  std::iota(order_.begin(), order_.end(), Index{0});
  root_ = build(0, points_.rows(), 0);
}

Index KdTree::build(Index begin, Index end, Index depth) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin <= leaf_size_) {
    nodes_.push_back(node);
    return static_cast<Index>(nodes_.size()) - 1;
  }
  const Index axis = depth % points_.cols();
  const Index mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](Index a, Index b) { return points_(a, axis) < points_(b, axis); });
  node.axis = axis;
  node.split = points_(order_[static_cast<std::size_t>(mid)], axis);
  const Index id = static_cast<Index>(nodes_.size());
  nodes_.push_back(node);
  const Index left = build(begin, mid, depth + 1);
  const Index right = build(mid, end, depth + 1);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

namespace {

// (squared distance, index) with the canonical tie order
using Candidate = std::pair<double, Index>;

struct KnnHeap {
  explicit KnnHeap(Index k) : k(k) {}
  Index k;
  std::vector<Candidate> heap;  // max-heap of the k best candidates

  bool full() const { return static_cast<Index>(heap.size()) == k; }
  const Candidate& worst() const { return heap.front(); }

  void offer(Candidate c) {
    if (!full()) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end());
    } else if (c < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = c;
      std::push_heap(heap.begin(), heap.end());
    }
  }
};

}  // namespace

KdTree::KnnResult KdTree::query_knn(const VecRef& query, Index k) const {
  if (query.size() != points_.cols()) throw std::invalid_argument("query_knn: dimension mismatch");
  if (k < 1 || k > points_.rows())
    throw std::invalid_argument("query_knn: k must lie in [1, n]");

  KnnHeap best(k);
  // iterative depth-first traversal, nearer child first
  std::vector<std::pair<Index, double>> stack;  // (node id, squared axis gap)
  stack.emplace_back(root_, 0.0);
  while (!stack.empty()) {
    const auto [id, gap2] = stack.back();
    stack.pop_back();
    if (best.full() && gap2 > best.worst().first) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (Index t = node.begin; t < node.end; ++t) {
        const Index p = order_[static_cast<std::size_t>(t)];
        best.offer({(points_.row(p).transpose() - query).squaredNorm(), p});
      }
      continue;
    }
    const double delta = query[node.axis] - node.split;
    const Index near = delta < 0 ? node.left : node.right;
    const Index far = delta < 0 ? node.right : node.left;
    stack.emplace_back(far, delta * delta);
    stack.emplace_back(near, 0.0);
  }

  std::sort(best.heap.begin(), best.heap.end());
  KnnResult res;
  res.indices.reserve(best.heap.size());
  res.distances.resize(static_cast<Index>(best.heap.size()));
  for (std::size_t i = 0; i < best.heap.size(); ++i) {
    res.indices.push_back(best.heap[i].second);
    res.distances[static_cast<Index>(i)] = std::sqrt(best.heap[i].first);
  }
  return res;
}

std::vector<Index> KdTree::query_ball(const VecRef& query, double radius) const {
  if (query.size() != points_.cols())
    throw std::invalid_argument("query_ball: dimension mismatch");
  if (radius < 0) throw std::invalid_argument("query_ball: negative radius");
  const double r2 = radius * radius;
  std::vector<Index> hits;
  std::vector<Index> stack{root_};
  while (!stack.empty()) {
    const Index id = stack.back();
    stack.pop_back();
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (Index t = node.begin; t < node.end; ++t) {
        const Index p = order_[static_cast<std::size_t>(t)];
        if ((points_.row(p).transpose() - query).squaredNorm() <= r2) hits.push_back(p);
      }
      continue;
    }
    const double delta = query[node.axis] - node.split;
    const Index near = delta < 0 ? node.left : node.right;
    const Index far = delta < 0 ? node.right : node.left;
    stack.push_back(near);
    if (delta * delta <= r2) stack.push_back(far);
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

VectorXd knn_regress(const MatRef& x_train, const VecRef& y_train, const MatRef& x_test,
                     Index k) {
  if (x_train.rows() != y_train.size())
    throw std::invalid_argument("knn_regress: training shapes do not match");
  const KdTree tree(x_train);
  VectorXd pred(x_test.rows());
  for (Index i = 0; i < x_test.rows(); ++i) {
    const auto nn = tree.query_knn(x_test.row(i), k);
    double acc = 0.0;
    for (Index idx : nn.indices) acc += y_train[idx];
    pred[i] = acc / static_cast<double>(k);
  }
  return pred;
}

std::vector<int> knn_classify(const MatRef& x_train, const std::vector<int>& y_train,
                              const MatRef& x_test, Index k, TiePolicy policy, Rng* rng) {
  if (x_train.rows() != static_cast<Index>(y_train.size()))
    throw std::invalid_argument("knn_classify: training shapes do not match");
  if (policy == TiePolicy::seeded_random && rng == nullptr)
    throw std::invalid_argument("knn_classify: seeded_random requires an Rng");
  const KdTree tree(x_train);
  std::vector<int> pred(static_cast<std::size_t>(x_test.rows()));
  for (Index i = 0; i < x_test.rows(); ++i) {
    const auto nn = tree.query_knn(x_test.row(i), k);
    std::map<int, Index> counts;
    for (Index idx : nn.indices) ++counts[y_train[static_cast<std::size_t>(idx)]];
    Index top = 0;
    for (const auto& [label, count] : counts) top = std::max(top, count);
    std::vector<int> tied;
    for (const auto& [label, count] : counts)
      if (count == top) tied.push_back(label);
    if (tied.size() == 1 || policy == TiePolicy::lowest_label)
      pred[static_cast<std::size_t>(i)] = tied.front();
    else
      pred[static_cast<std::size_t>(i)] = tied[static_cast<std::size_t>(rng->below(tied.size()))];
  }
  return pred;
}

ClassificationMetrics classification_metrics(const std::vector<int>& y_true,
                                             const std::vector<int>& y_pred) {
  if (y_true.size() != y_pred.size())
    throw std::invalid_argument("classification_metrics: length mismatch");
  if (y_true.empty()) throw std::invalid_argument("classification_metrics: empty input");
  ClassificationMetrics m;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1))
      throw std::invalid_argument("classification_metrics: codes must be binary");
    if (t == 0 && p == 0) ++m.confusion.tn;
    if (t == 0 && p == 1) ++m.confusion.fp;
    if (t == 1 && p == 0) ++m.confusion.fn;
    if (t == 1 && p == 1) ++m.confusion.tp;
  }
  const auto& c = m.confusion;
  m.accuracy = static_cast<double>(c.tn + c.tp) / static_cast<double>(c.total());
  if (c.tp + c.fp > 0)
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0)
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (m.precision && m.recall && (*m.precision + *m.recall) > 0)
    m.f1 = 2.0 * (*m.precision) * (*m.recall) / (*m.precision + *m.recall);
  return m;
}

VectorXd centroid(const MatRef& x) {
  if (x.rows() == 0) throw std::invalid_argument("centroid: empty matrix");
  return x.colwise().mean().transpose();
}

double dispersion(const MatRef& x) {
  const VectorXd c = centroid(x);
  double acc = 0.0;
  for (Index i = 0; i < x.rows(); ++i) acc += (x.row(i).transpose() - c).squaredNorm();
  return std::sqrt(acc / static_cast<double>(x.rows()));
}

namespace {

// assignment step: labels by nearest centre (ties to lowest j) + objective
double assign_labels(const MatRef& x, const MatrixXd& centres, std::vector<int>& labels) {
  double wcss = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_d = (x.row(i) - centres.row(0)).squaredNorm();
    for (Index j = 1; j < centres.rows(); ++j) {
      const double d = (x.row(i) - centres.row(j)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    labels[static_cast<std::size_t>(i)] = best;
    wcss += best_d;
  }
  return wcss;
}

}  // namespace

ClusteringResult kmeans_lloyd(const MatRef& x, const MatRef& init_centres, double eps,
                              int max_iter) {
  const Index n = x.rows();
  const Index m = x.cols();
  const Index k = init_centres.rows();
  if (k < 2) throw std::invalid_argument("kmeans: need k >= 2");
  if (k > n) throw std::invalid_argument("kmeans: more centres than points");
  if (init_centres.cols() != m) throw std::invalid_argument("kmeans: centre dimension mismatch");
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b)
      if ((init_centres.row(a) - init_centres.row(b)).norm() == 0.0)
        throw std::invalid_argument("kmeans: initial centres must be distinct");

  ClusteringResult res;
  res.centres = init_centres;
  res.labels.assign(static_cast<std::size_t>(n), 0);
  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    res.wcss = assign_labels(x, res.centres, res.labels);
    res.wcss_trace.push_back(res.wcss);
    res.iterations = iter + 1;
    if (res.wcss == 0.0 || std::abs(prev - res.wcss) < eps) {
      res.converged = true;
      return res;
    }
    prev = res.wcss;

    MatrixXd sums = MatrixXd::Zero(k, m);
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(res.labels[static_cast<std::size_t>(i)]);
      sums.row(static_cast<Index>(j)) += x.row(i);
      ++counts[j];
    }
    for (Index j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) {
        res.centres.row(j) = sums.row(j) / static_cast<double>(counts[static_cast<std::size_t>(j)]);
      } else {
        // empty cluster: re-seed at the point farthest from its assigned centre
        Index farthest = 0;
        double worst = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double d =
              (x.row(i) - res.centres.row(res.labels[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > worst) {
            worst = d;
            farthest = i;
          }
        }
        res.centres.row(j) = x.row(farthest);
        res.reseeded = true;
      }
    }
  }
  // max_iter hit: make labels/wcss consistent with the final centres
  res.wcss = assign_labels(x, res.centres, res.labels);
  res.wcss_trace.push_back(res.wcss);
  res.converged = false;
  return res;
}

ClusteringResult kmeans_restarts(const MatRef& x, Index k, Index n_restarts,
                                 std::uint64_t seed, double eps, int max_iter) {
  if (n_restarts < 1) throw std::invalid_argument("kmeans_restarts: need n_restarts >= 1");
  if (k < 2) throw std::invalid_argument("kmeans_restarts: need k >= 2");

  ClusteringResult best;
  std::vector<double> all_wcss;
  all_wcss.reserve(static_cast<std::size_t>(n_restarts));
  bool have_best = false;
  for (Index r = 0; r < n_restarts; ++r) {
    const std::uint64_t restart_seed = seed + static_cast<std::uint64_t>(r);
    Rng rng(restart_seed);
    MatrixXd init(k, x.cols());
    bool distinct = false;
    for (int attempt = 0; attempt < 64 && !distinct; ++attempt) {
      const auto rows = rng.sample_without_replacement(x.rows(), k);
      for (Index j = 0; j < k; ++j) init.row(j) = x.row(rows[static_cast<std::size_t>(j)]);
      distinct = true;
      for (Index a = 0; a < k && distinct; ++a)
        for (Index b = a + 1; b < k; ++b)
          if ((init.row(a) - init.row(b)).norm() == 0.0) {
            distinct = false;
            break;
          }
    }
    if (!distinct)
      throw std::invalid_argument("kmeans_restarts: fewer than k distinct points");
    ClusteringResult run = kmeans_lloyd(x, init, eps, max_iter);
    all_wcss.push_back(run.wcss);
    if (!have_best || run.wcss < best.wcss) {
      best = std::move(run);
      best.best_seed = restart_seed;
      have_best = true;
    }
  }
  best.restarts_run = n_restarts;
  best.restart_wcss = std::move(all_wcss);
  return best;
}

std::vector<Index> neighbour_counts(const MatRef& x, double radius) {
  if (radius <= 0) throw std::invalid_argument("neighbour_counts: radius must be positive");
  const KdTree tree(x);
  std::vector<Index> counts(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < x.rows(); ++i)
    counts[static_cast<std::size_t>(i)] =
        static_cast<Index>(tree.query_ball(x.row(i), radius).size());
  return counts;
}

std::vector<char> outlier_iqr(const VecRef& v) {
  const double q1 = univariate::quantile(v, 0.25);
  const double q3 = univariate::quantile(v, 0.75);
  const double spread = q3 - q1;
  const double lo = q1 - 1.5 * spread;
  const double hi = q3 + 1.5 * spread;
  std::vector<char> flags(static_cast<std::size_t>(v.size()), 0);
  for (Index i = 0; i < v.size(); ++i)
    flags[static_cast<std::size_t>(i)] = (v[i] < lo || v[i] > hi) ? 1 : 0;
  return flags;
}

std::vector<char> outlier_low_density(const VecRef& v, double radius, double threshold) {
  const MatrixXd points = v;
  const auto counts = neighbour_counts(points, radius);
  const double denom = 2.0 * radius * static_cast<double>(v.size());
  std::vector<char> flags(static_cast<std::size_t>(v.size()), 0);
  for (std::size_t i = 0; i < flags.size(); ++i)
    flags[i] = (static_cast<double>(counts[i]) / denom < threshold) ? 1 : 0;
  return flags;
}

std::vector<char> outlier_isolated(const MatRef& x, double radius) {
  const auto counts = neighbour_counts(x, radius);
  std::vector<char> flags(static_cast<std::size_t>(x.rows()), 0);
  for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = counts[i] <= 1 ? 1 : 0;
  return flags;
}

}  // namespace statkit::spatial
