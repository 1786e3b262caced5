#include "sge/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "sge/error.hpp"
#include "sge/simd/kernels.hpp"

namespace sge {
namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double row_dot(const SparseRow& row, const double* w) {
  return simd::active_kernels().gather_dot(row.cols.data(), row.values.data(), w, row.nnz());
}

void row_scatter(const SparseRow& row, double alpha, double* g) {
  for (std::size_t i = 0; i < row.nnz(); ++i) g[row.cols[i]] += alpha * row.values[i];
}

}  // namespace

std::vector<double> LinearModel::decision(const SparseRow& row) const {
  std::vector<double> out(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) out[c] = row_dot(row, weights.data() + c * dim) + biases[c];
  return out;
}

ClassId LinearModel::predict(const SparseRow& row) const {
  const auto scores = decision(row);
  return static_cast<ClassId>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

std::vector<ClassId> LinearModel::predict(const CsrMatrix& rows) const {
  std::vector<ClassId> out(rows.rows);
  for (std::size_t r = 0; r < rows.rows; ++r) out[r] = predict(rows.row(r));
  return out;
}

double binary_logistic_objective(const CsrMatrix& x, std::span<const double> targets, std::span<const double> params,
                                 double l2, std::span<double> grad) {
  const std::size_t d = x.cols;
  const double* w = params.data();
  const double b = params[d];
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  double grad_b = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto row = x.row(i);
    const double y = targets[i];
    const double margin = y * (row_dot(row, w) + b);
    loss += softplus(-margin);
    const double coeff = -y * sigmoid(-margin);
    row_scatter(row, coeff, grad.data());
    grad_b += coeff;
  }
  const std::span<const double> wv(w, d);
  loss += 0.5 * l2 * simd::sum_squares(wv);
  simd::axpy(l2, wv, grad.first(d));
  grad[d] = grad_b;
  return loss;
}

double softmax_objective(const CsrMatrix& x, std::span<const ClassId> labels, std::size_t num_classes,
                         std::span<const double> params, double l2, std::span<double> grad) {
  const std::size_t d = x.cols;
  const std::size_t stride = d + 1;
  std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<double> z(num_classes);
  double loss = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto row = x.row(i);
    for (std::size_t c = 0; c < num_classes; ++c) z[c] = row_dot(row, params.data() + c * stride) + params[c * stride + d];
    const double zmax = *std::max_element(z.begin(), z.end());
    double norm = 0.0;
    for (auto& v : z) {
      v = std::exp(v - zmax);
      norm += v;
    }
    loss += std::log(norm) + zmax - (std::log(z[labels[i]]) + zmax);
    for (std::size_t c = 0; c < num_classes; ++c) {
      const double coeff = z[c] / norm - (labels[i] == c ? 1.0 : 0.0);
      row_scatter(row, coeff, grad.data() + c * stride);
      grad[c * stride + d] += coeff;
    }
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    const std::span<const double> wc = params.subspan(c * stride, d);
    loss += 0.5 * l2 * simd::sum_squares(wc);
    simd::axpy(l2, wc, grad.subspan(c * stride, d));
  }
  return loss;
}

LbfgsResult minimize_lbfgs(const Objective& f, std::span<double> x, std::size_t max_iterations, double tolerance,
                           std::size_t history) {
  const std::size_t n = x.size();
  std::vector<double> g(n), g_new(n), x_new(n), dir(n);
  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> mem;
  std::vector<double> alpha(history);

  LbfgsResult result;
  double fx = f(x, g);
  for (; result.iterations < max_iterations; ++result.iterations) {
    if (simd::max_abs(g) <= tolerance) {
      result.converged = true;
      break;
    }
    // Two-loop recursion: dir = -H g.
    std::copy(g.begin(), g.end(), dir.begin());
    for (std::size_t k = mem.size(); k-- > 0;) {
      alpha[k] = mem[k].rho * simd::dot(mem[k].s, dir);
      simd::axpy(-alpha[k], mem[k].y, dir);
    }
    if (!mem.empty()) {
      const auto& last = mem.back();
      simd::scale(simd::dot(last.s, last.y) / simd::dot(last.y, last.y), dir);
    } else {
      simd::scale(1.0 / std::max(1.0, std::sqrt(simd::sum_squares(g))), dir);
    }
    for (std::size_t k = 0; k < mem.size(); ++k) {
      const double beta = mem[k].rho * simd::dot(mem[k].y, dir);
      simd::axpy(alpha[k] - beta, mem[k].s, dir);
    }
    simd::scale(-1.0, dir);

    double slope = simd::dot(g, dir);
    if (!(slope < 0.0)) {
      mem.clear();
      std::transform(g.begin(), g.end(), dir.begin(), [](double v) { return -v; });
      simd::scale(1.0 / std::max(1.0, std::sqrt(simd::sum_squares(g))), dir);
      slope = simd::dot(g, dir);
    }

    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      std::copy(x.begin(), x.end(), x_new.begin());
      simd::axpy(step, dir, x_new);
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      p.s[i] = x_new[i] - x[i];
      p.y[i] = g_new[i] - g[i];
    }
    const double sy = simd::dot(p.s, p.y);
    std::copy(x_new.begin(), x_new.end(), x.begin());
    std::swap(g, g_new);
    const double decrease = fx - f_new;
    fx = f_new;
    if (sy > 1e-12) {
      p.rho = 1.0 / sy;
      if (mem.size() == history) mem.pop_front();
      mem.push_back(std::move(p));
    }
    if (decrease <= 1e-15 * std::max(1.0, std::abs(fx))) {
      result.converged = simd::max_abs(g) <= tolerance;
      ++result.iterations;
      break;
    }
  }
  result.value = fx;
  return result;
}

LinearModel train_logreg(const CsrMatrix& features, std::span<const ClassId> labels, std::size_t num_classes,
                         const LogRegOptions& options) {
  if (labels.size() != features.rows) throw ValidationError("label count does not match feature rows");
  if (features.cols == 0) throw ValidationError("cannot train on zero feature columns");
  if (num_classes < 2) throw ValidationError("need at least 2 classes");
  if (!(options.l2 >= 0.0) || !std::isfinite(options.l2)) throw ValidationError("l2 strength must be finite and >= 0");
  for (double v : features.values)
    if (!std::isfinite(v)) throw ValidationError("non-finite feature value");
  std::set<ClassId> present;
  for (auto y : labels) {
    if (y >= num_classes) throw ValidationError("class id out of range");
    present.insert(y);
  }
  if (present.size() < 2) {
    throw ValidationError("training split contains a single class; use stratified splitting");
  }

  const std::size_t d = features.cols;
  LinearModel model;
  model.num_classes = num_classes;
  model.dim = d;
  model.weights.assign(num_classes * d, 0.0);
  model.biases.assign(num_classes, 0.0);

  if (options.multinomial) {
    std::vector<double> params(num_classes * (d + 1), 0.0);
    minimize_lbfgs(
        [&](std::span<const double> p, std::span<double> g) {
          return softmax_objective(features, labels, num_classes, p, options.l2, g);
        },
        params, options.max_iterations, options.tolerance);
    for (std::size_t c = 0; c < num_classes; ++c) {
      std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(c * (d + 1)), d,
                  model.weights.begin() + static_cast<std::ptrdiff_t>(c * d));
      model.biases[c] = params[c * (d + 1) + d];
    }
    return model;
  }

  std::vector<double> targets(labels.size());
  std::vector<double> params(d + 1);
  for (std::size_t c = 0; c < num_classes; ++c) {
    for (std::size_t i = 0; i < labels.size(); ++i) targets[i] = labels[i] == c ? 1.0 : -1.0;
    std::fill(params.begin(), params.end(), 0.0);
    minimize_lbfgs(
        [&](std::span<const double> p, std::span<double> g) {
          return binary_logistic_objective(features, targets, p, options.l2, g);
        },
        params, options.max_iterations, options.tolerance);
    std::copy_n(params.begin(), d, model.weights.begin() + static_cast<std::ptrdiff_t>(c * d));
    model.biases[c] = params[d];
  }
  return model;
}

}  // namespace sge
