#include "ucast/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ucast/parallel.hpp"

namespace ucast::forest {

void ForestParams::validate() const {
  if (n_estimators < 1) throw std::invalid_argument("n_estimators must be >= 1");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (max_features <= 0.0 || max_features > 1.0) {
    throw std::invalid_argument("max_features must be in (0, 1]");
  }
  if (min_samples_split < 2) throw std::invalid_argument("min_samples_split must be >= 2");
}

double RegressionTree::predict_row(const std::vector<double>& row) const {
  int idx = 0;
  while (nodes[idx].feature >= 0) {
    const TreeNode& node = nodes[idx];
    idx = row[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes[idx].value;
}

namespace {

struct Split {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

double sum_of(const std::vector<double>& targets, const std::vector<int>& idx) {
  double s = 0.0;
  for (int i : idx) s += targets[i];
  return s;
}

// Best SSE-reduction split over the candidate features. Candidates are
// scanned in ascending feature order with ascending midpoint thresholds and
// strict improvement required, which yields the deterministic tie-break.
Split best_split(const Matrix& rows, const std::vector<double>& targets,
                 const std::vector<int>& node_idx, const std::vector<int>& features) {
  const std::size_t n = node_idx.size();
  const double total_sum = sum_of(targets, node_idx);

  Split best;
  std::vector<std::pair<double, double>> points(n);  // (feature value, target)
  for (int f : features) {
    for (std::size_t i = 0; i < n; ++i) {
      points[i] = {rows[node_idx[i]][f], targets[node_idx[i]]};
    }
    std::sort(points.begin(), points.end());

    double left_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_sum += points[i].second;
      if (points[i].first == points[i + 1].first) continue;
      const double threshold = points[i].first + 0.5 * (points[i + 1].first - points[i].first);
      const double nl = static_cast<double>(i + 1);
      const double nr = static_cast<double>(n - i - 1);
      const double right_sum = total_sum - left_sum;
      // SSE reduction = sum_l^2/n_l + sum_r^2/n_r - sum^2/n (the
      // sum-of-squares terms cancel out of the difference).
      const double gain = left_sum * left_sum / nl + right_sum * right_sum / nr -
                          total_sum * total_sum / static_cast<double>(n);
      if (!best.found || gain > best.gain) {
        best = {true, f, threshold, gain};
      }
    }
  }
  return best;
}

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& rows, const std::vector<double>& targets, const ForestParams& params,
              Rng& rng)
      : rows_(rows), targets_(targets), params_(params), rng_(rng) {}

  RegressionTree build(std::vector<int> node_idx) {
    RegressionTree tree;
    grow(tree, std::move(node_idx), 0);
    return tree;
  }

 private:
  int grow(RegressionTree& tree, std::vector<int> node_idx, int depth) {
    const int self = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[self].samples = static_cast<int>(node_idx.size());

    const double mean = sum_of(targets_, node_idx) / static_cast<double>(node_idx.size());
    tree.nodes[self].value = mean;

    if (depth >= params_.max_depth ||
        static_cast<int>(node_idx.size()) < params_.min_samples_split || zero_variance(node_idx)) {
      return self;
    }

    const Split split = best_split(rows_, targets_, node_idx, candidate_features());
    if (!split.found || split.gain <= 0.0) return self;

    std::vector<int> left_idx;
    std::vector<int> right_idx;
    for (int i : node_idx) {
      (rows_[i][split.feature] <= split.threshold ? left_idx : right_idx).push_back(i);
    }
    if (left_idx.empty() || right_idx.empty()) return self;

    tree.nodes[self].feature = split.feature;
    tree.nodes[self].threshold = split.threshold;
    node_idx.clear();
    node_idx.shrink_to_fit();
    const int left = grow(tree, std::move(left_idx), depth + 1);
    tree.nodes[self].left = left;
    const int right = grow(tree, std::move(right_idx), depth + 1);
    tree.nodes[self].right = right;
    return self;
  }

  bool zero_variance(const std::vector<int>& idx) const {
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (targets_[idx[i]] != targets_[idx[0]]) return false;
    }
    return true;
  }

  std::vector<int> candidate_features() {
    const int width = static_cast<int>(rows_.front().size());
    std::vector<int> features(width);
    std::iota(features.begin(), features.end(), 0);
    if (params_.max_features >= 1.0) return features;
    const int keep =
        std::max(1, static_cast<int>(std::ceil(params_.max_features * width)));
    // Partial Fisher-Yates, then sorted so threshold scanning stays ordered.
    for (int i = 0; i < keep; ++i) {
      const std::size_t j = i + rng_.index(features.size() - i);
      std::swap(features[i], features[j]);
    }
    features.resize(keep);
    std::sort(features.begin(), features.end());
    return features;
  }

  const Matrix& rows_;
  const std::vector<double>& targets_;
  const ForestParams& params_;
  Rng& rng_;
};

}  // namespace

RegressionTree fit_tree(const Matrix& rows, const std::vector<double>& targets,
                        const ForestParams& params, Rng& rng) {
  params.validate();
  if (rows.empty()) throw std::invalid_argument("fit_tree: empty input");
  if (rows.size() != targets.size()) {
    throw std::invalid_argument("fit_tree: rows and targets differ in length");
  }
  std::vector<int> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  return TreeBuilder(rows, targets, params, rng).build(std::move(all));
}

ForestModel fit_forest(const Matrix& rows, const std::vector<double>& targets,
                       const ForestParams& params, std::vector<std::string> feature_names) {
  params.validate();
  if (rows.size() < 2) throw std::invalid_argument("fit_forest: need at least 2 training rows");
  if (rows.size() != targets.size()) {
    throw std::invalid_argument("fit_forest: rows and targets differ in length");
  }

  ForestModel model;
  model.params = params;
  if (feature_names.empty()) {
    for (std::size_t f = 0; f < rows.front().size(); ++f) {
      feature_names.push_back("f" + std::to_string(f));
    }
  }
  if (feature_names.size() != rows.front().size()) {
    throw std::invalid_argument("fit_forest: feature_names length mismatch");
  }
  model.feature_names = std::move(feature_names);

  const std::size_t n = rows.size();
  model.trees.resize(params.n_estimators);
  parallel_for(static_cast<std::size_t>(params.n_estimators), params.workers, [&](std::size_t t) {
    Rng rng = derive_stream(params.seed, t);
    std::vector<int> sample(n);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) sample[i] = static_cast<int>(rng.index(n));
    } else {
      std::iota(sample.begin(), sample.end(), 0);
    }
    model.trees[t] = TreeBuilder(rows, targets, params, rng).build(std::move(sample));
  });
  return model;
}

std::vector<double> ForestModel::predict(const Matrix& rows) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != feature_names.size()) {
      throw std::invalid_argument("predict: row width " + std::to_string(row.size()) +
                                  " != feature count " + std::to_string(feature_names.size()));
    }
    double sum = 0.0;
    for (const auto& tree : trees) sum += tree.predict_row(row);
    out.push_back(sum / static_cast<double>(trees.size()));
  }
  return out;
}

}  // namespace ucast::forest
