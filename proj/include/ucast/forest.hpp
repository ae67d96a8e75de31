#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucast/rng.hpp"

namespace ucast::forest {

using Matrix = std::vector<std::vector<double>>;

struct ForestParams {
  int n_estimators = 100;
  int max_depth = 100;
  bool bootstrap = true;
  double max_features = 1.0;  // fraction of features considered per split
  int min_samples_split = 2;
  std::uint64_t seed = 0;
  int workers = 1;

  void validate() const;
};

// Flattened tree; feature < 0 marks a leaf holding the node mean.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  int samples = 0;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict_row(const std::vector<double>& row) const;
};

struct ForestModel {
  std::vector<RegressionTree> trees;
  ForestParams params;
  std::vector<std::string> feature_names;

  std::vector<double> predict(const Matrix& rows) const;
};

// Greedy CART fit: best sum-of-squared-error reduction over midpoint
// thresholds, ties broken toward the lowest feature index then the lowest
// threshold. rng drives the per-split feature subsample when
// max_features < 1.
RegressionTree fit_tree(const Matrix& rows, const std::vector<double>& targets,
                        const ForestParams& params, Rng& rng);

// Trees are fitted in parallel; tree i draws from a stream derived from
// (seed, i), so any worker count produces the identical model.
ForestModel fit_forest(const Matrix& rows, const std::vector<double>& targets,
                       const ForestParams& params, std::vector<std::string> feature_names = {});

}  // namespace ucast::forest
