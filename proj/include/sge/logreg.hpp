#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sge/graph.hpp"
#include "sge/sparse_matrix.hpp"

namespace sge {

struct LogRegOptions {
  /// Coefficient of (1/2)||w||^2; biases are not penalized.
  double l2 = 1.0;
  std::size_t max_iterations = 500;
  /// Softmax over all classes instead of one-vs-rest.
  bool multinomial = false;
  /// Stop once max |gradient| falls below this.
  double tolerance = 1e-4;
};

struct LinearModel {
  std::size_t num_classes = 0;
  std::size_t dim = 0;
  /// Row c holds the weights of class c.
  std::vector<double> weights;
  std::vector<double> biases;

  std::vector<double> decision(const SparseRow& row) const;
  /// Highest decision value; ties go to the lower class id.
  ClassId predict(const SparseRow& row) const;
  std::vector<ClassId> predict(const CsrMatrix& rows) const;
};

/// Sum of log(1 + exp(-y_i (w.x_i + b))) + (l2/2)||w||^2 with y_i in {-1, +1}.
/// params = [w_0 .. w_{d-1}, b]; grad (same layout) is overwritten.
double binary_logistic_objective(const CsrMatrix& x, std::span<const double> targets, std::span<const double> params,
                                 double l2, std::span<double> grad);

/// Sum of cross-entropy under a softmax + (l2/2) sum_c ||w_c||^2.
/// params holds one [w_c, b_c] block of length d+1 per class.
double softmax_objective(const CsrMatrix& x, std::span<const ClassId> labels, std::size_t num_classes,
                         std::span<const double> params, double l2, std::span<double> grad);

struct LbfgsResult {
  std::size_t iterations = 0;
  double value = 0.0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Limited-memory BFGS with Armijo backtracking. x is updated in place.
LbfgsResult minimize_lbfgs(const Objective& f, std::span<double> x, std::size_t max_iterations, double tolerance,
                           std::size_t history = 10);

/// Fits an L2-regularized logistic regression (one-vs-rest unless
/// options.multinomial). Throws ValidationError for a single-class training
/// set, zero feature columns, or non-finite feature values.
LinearModel train_logreg(const CsrMatrix& features, std::span<const ClassId> labels, std::size_t num_classes,
                         const LogRegOptions& options = {});

}  // namespace sge
