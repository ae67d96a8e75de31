#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ucast::svr {

using Matrix = std::vector<std::vector<double>>;

enum class KernelKind { poly, rbf, sigmoid };
KernelKind kernel_from_string(const std::string& text);
const char* to_string(KernelKind kind);

struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  int degree = 3;                 // poly only
  std::optional<double> gamma;    // empty = auto-scale at fit time
  double coef0 = 0.0;
};

struct SvrParams {
  KernelSpec kernel;
  double C = 1.0;
  double epsilon = 0.1;
  double tolerance = 1e-3;          // KKT violation threshold
  long long max_iterations = 200000;  // SMO pair updates
  bool standardize = true;

  void validate() const;
};

// Per-feature z-scoring state (population standard deviation). Features that
// were constant in training pass through centered only.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> stdev;

  std::vector<double> transform_row(const std::vector<double>& row) const;
  Matrix transform(const Matrix& rows) const;
};

Scaler fit_scaler(const Matrix& rows);

// gamma for the auto-scale setting: 1 / (n_features * variance of the
// (standardized) training entries).
double resolve_gamma(const KernelSpec& kernel, const Matrix& rows);

double kernel_eval(const KernelSpec& kernel, const std::vector<double>& a,
                   const std::vector<double>& b);

struct SvrModel {
  Matrix support_vectors;                  // stored in scaled space
  std::vector<double> dual_coefficients;   // beta_i = alpha_i - alpha_i*
  double bias = 0.0;
  Scaler scaler;
  KernelSpec kernel;                       // gamma resolved
  bool converged = true;
  double final_violation = 0.0;
  long long iterations = 0;

  std::vector<double> predict(const Matrix& rows) const;
};

// Epsilon-SVR dual solved by SMO on maximal KKT-violating pairs. Running out
// of iterations is not an error: the model comes back flagged not-converged
// with the residual violation, so a caller scoring many candidate parameter
// sets still gets a usable fit.
SvrModel fit_svr(const Matrix& rows, const std::vector<double>& targets, const SvrParams& params);

// Dual objective for a coefficient vector (the maximized form):
//   -1/2 b'Kb - epsilon*sum|b_i| + y'b
double dual_objective(const Matrix& kernel_matrix, const std::vector<double>& beta,
                      const std::vector<double>& targets, double epsilon);

Matrix kernel_matrix(const KernelSpec& kernel, const Matrix& rows);

}  // namespace ucast::svr
