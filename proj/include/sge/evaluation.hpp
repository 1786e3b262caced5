#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sge/graph.hpp"
#include "sge/logreg.hpp"
#include "sge/random.hpp"
#include "sge/sparse_matrix.hpp"
#include "sge/vectorizer.hpp"

namespace sge {

struct EvalConfig {
  std::vector<double> train_fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t repetitions = 10;
  double l2 = 1.0;
  std::size_t max_iterations = 500;
  bool multinomial = false;
  /// Repeated stratified k-fold instead of the train-fraction sweep.
  bool cross_validation = false;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  unsigned workers = 0;

  void validate() const;
};

struct EvalCell {
  double fraction = 0.0;
  std::size_t repetition = 0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

struct EvalSummary {
  double fraction = 0.0;
  double micro_mean = 0.0, micro_std = 0.0;
  double macro_mean = 0.0, macro_std = 0.0;
  std::size_t cells = 0;
};

struct EvalReport {
  EvalConfig config;
  std::vector<EvalCell> cells;
  std::vector<EvalSummary> summary;
  std::vector<std::string> warnings;
};

struct F1Scores {
  double micro = 0.0;
  double macro = 0.0;
};

/// Micro- and macro-averaged F1 over the classes present in `truth`.
F1Scores f1_scores(std::span<const ClassId> truth, std::span<const ClassId> predicted);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Positions into `labels`. Each class contributes round(fraction * size)
/// members to train, clamped so that it keeps one train member and, when it
/// has two or more, one test member. Warnings are appended for singleton classes.
Split stratified_split(std::span<const ClassId> labels, std::size_t num_classes, double fraction, Rng& rng,
                       std::vector<std::string>* warnings = nullptr);

/// Stratified fold assignment: fold id per position of `labels`.
std::vector<std::size_t> stratified_folds(std::span<const ClassId> labels, std::size_t num_classes, std::size_t folds,
                                          Rng& rng);

/// Runs the protocol on explicit (row, class) pairs of `features`.
EvalReport evaluate(const CsrMatrix& features, std::span<const std::pair<std::size_t, ClassId>> labeled,
                    std::size_t num_classes, const EvalConfig& config);

/// Maps labels onto embedding rows; every labeled node must have a row.
EvalReport evaluate(const SymbolicEmbedding& embedding, const LabelSet& labels, const EvalConfig& config);

/// `fraction,repetition,micro_f1,macro_f1`
void write_report_csv(const EvalReport& report, const std::filesystem::path& path);
/// Percentages as columns, mean (and std) micro/macro F1 as rows.
void write_report_markdown(const EvalReport& report, const std::filesystem::path& path, const std::string& method_name);

}  // namespace sge
