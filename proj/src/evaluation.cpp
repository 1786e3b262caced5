#include "sge/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>

#include "sge/error.hpp"
#include "sge/parallel.hpp"

namespace sge {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", std::round(fraction * 1000.0) / 10.0);
  return buf;
}

std::vector<std::vector<std::size_t>> members_by_class(std::span<const ClassId> labels, std::size_t num_classes) {
  std::vector<std::vector<std::size_t>> members(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) throw ValidationError("class id out of range");
    members[labels[i]].push_back(i);
  }
  return members;
}

EvalCell run_cell(const CsrMatrix& features, std::span<const std::pair<std::size_t, ClassId>> labeled,
                  std::size_t num_classes, const LogRegOptions& options, const Split& split, double fraction,
                  std::size_t repetition) {
  std::vector<std::size_t> train_rows, test_rows;
  std::vector<ClassId> train_y, test_y;
  for (auto i : split.train) {
    train_rows.push_back(labeled[i].first);
    train_y.push_back(labeled[i].second);
  }
  for (auto i : split.test) {
    test_rows.push_back(labeled[i].first);
    test_y.push_back(labeled[i].second);
  }
  const auto model = train_logreg(features.select_rows(train_rows), train_y, num_classes, options);
  const auto predicted = model.predict(features.select_rows(test_rows));
  const auto f1 = f1_scores(test_y, predicted);
  return {fraction, repetition, f1.micro, f1.macro, train_rows.size(), test_rows.size()};
}

}  // namespace

void EvalConfig::validate() const {
  if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
  if (cross_validation) {
    if (folds < 2) throw ValidationError("cross validation needs at least 2 folds");
  } else {
    if (train_fractions.empty()) throw ValidationError("no train fractions given");
    for (double f : train_fractions)
      if (!(f > 0.0 && f < 1.0)) throw ValidationError("train fractions must lie strictly between 0 and 1");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw ValidationError("l2 strength must be finite and >= 0");
  if (max_iterations < 1) throw ValidationError("max iterations must be >= 1");
}

F1Scores f1_scores(std::span<const ClassId> truth, std::span<const ClassId> predicted) {
  if (truth.size() != predicted.size()) throw ValidationError("truth and prediction lengths differ");
  if (truth.empty()) throw ValidationError("cannot score an empty test set");
  std::map<ClassId, std::array<std::size_t, 3>> counts;  // tp, fp, fn
  for (auto t : truth) counts[t];
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) {
      ++counts[truth[i]][0];
    } else {
      ++counts[truth[i]][2];
      if (auto it = counts.find(predicted[i]); it != counts.end()) ++it->second[1];
    }
  }
  std::size_t tp = 0, fp = 0, fn = 0;
  double macro = 0.0;
  for (const auto& [cls, c] : counts) {
    tp += c[0];
    fp += c[1];
    fn += c[2];
    const auto denom = 2 * c[0] + c[1] + c[2];
    macro += denom == 0 ? 0.0 : 2.0 * static_cast<double>(c[0]) / static_cast<double>(denom);
  }
  F1Scores out;
  out.macro = macro / static_cast<double>(counts.size());
  const auto denom = 2 * tp + fp + fn;
  out.micro = denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  return out;
}

Split stratified_split(std::span<const ClassId> labels, std::size_t num_classes, double fraction, Rng& rng,
                       std::vector<std::string>* warnings) {
  auto members = members_by_class(labels, num_classes);
  Split split;
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& m = members[c];
    if (m.empty()) continue;
    rng.shuffle(m.begin(), m.end());
    auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(m.size())));
    if (m.size() == 1) {
      n_train = 1;
      if (warnings) warnings->push_back("class " + std::to_string(c) + " has a single member; it is only used for training");
    } else {
      n_train = std::clamp<std::size_t>(n_train, 1, m.size() - 1);
    }
    split.train.insert(split.train.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), m.begin() + static_cast<std::ptrdiff_t>(n_train), m.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::size_t> stratified_folds(std::span<const ClassId> labels, std::size_t num_classes, std::size_t folds,
                                          Rng& rng) {
  auto members = members_by_class(labels, num_classes);
  std::vector<std::size_t> fold_of(labels.size());
  std::size_t offset = 0;
  for (auto& m : members) {
    rng.shuffle(m.begin(), m.end());
    // Continue the round-robin across classes so fold sizes stay balanced.
    for (std::size_t i = 0; i < m.size(); ++i) fold_of[m[i]] = (offset + i) % folds;
    offset = (offset + m.size()) % folds;
  }
  return fold_of;
}

EvalReport evaluate(const CsrMatrix& features, std::span<const std::pair<std::size_t, ClassId>> labeled,
                    std::size_t num_classes, const EvalConfig& config) {
  config.validate();
  if (labeled.empty()) throw ValidationError("no labeled rows to evaluate");
  for (const auto& [row, cls] : labeled) {
    if (row >= features.rows) throw ValidationError("labeled row outside the embedding");
    if (cls >= num_classes) throw ValidationError("class id out of range");
  }
  std::vector<ClassId> labels;
  labels.reserve(labeled.size());
  for (const auto& p : labeled) labels.push_back(p.second);

  const LogRegOptions options{config.l2, config.max_iterations, config.multinomial, 1e-4};
  EvalReport report;
  report.config = config;

  struct Job {
    double fraction;
    std::size_t fraction_index, repetition, fold;
  };
  std::vector<Job> jobs;
  if (config.cross_validation) {
    const double f = static_cast<double>(config.folds - 1) / static_cast<double>(config.folds);
    for (std::size_t r = 0; r < config.repetitions; ++r)
      for (std::size_t k = 0; k < config.folds; ++k) jobs.push_back({f, 0, r, k});
  } else {
    for (std::size_t fi = 0; fi < config.train_fractions.size(); ++fi)
      for (std::size_t r = 0; r < config.repetitions; ++r) jobs.push_back({config.train_fractions[fi], fi, r, 0});
  }

  report.cells.resize(jobs.size());
  std::vector<std::vector<std::string>> cell_warnings(jobs.size());
  parallel_for(
      jobs.size(), config.workers,
      [&](std::size_t j) {
        const auto& job = jobs[j];
        Split split;
        if (config.cross_validation) {
          Rng rng(derive_seed(config.seed, 0xcf, job.repetition));
          const auto fold_of = stratified_folds(labels, num_classes, config.folds, rng);
          for (std::size_t i = 0; i < fold_of.size(); ++i) (fold_of[i] == job.fold ? split.test : split.train).push_back(i);
        } else {
          Rng rng(derive_seed(config.seed, job.fraction_index, job.repetition));
          split = stratified_split(labels, num_classes, job.fraction, rng, &cell_warnings[j]);
        }
        if (split.test.empty()) throw ValidationError("a split produced an empty test set");
        const auto repetition = config.cross_validation ? job.repetition * config.folds + job.fold : job.repetition;
        report.cells[j] = run_cell(features, labeled, num_classes, options, split, job.fraction, repetition);
      },
      1);

  for (auto& w : cell_warnings)
    for (auto& msg : w)
      if (std::find(report.warnings.begin(), report.warnings.end(), msg) == report.warnings.end())
        report.warnings.push_back(std::move(msg));

  std::map<double, std::vector<const EvalCell*>> by_fraction;
  std::vector<double> order;
  for (const auto& c : report.cells) {
    if (!by_fraction.contains(c.fraction)) order.push_back(c.fraction);
    by_fraction[c.fraction].push_back(&c);
  }
  for (double f : order) {
    const auto& cells = by_fraction[f];
    EvalSummary s;
    s.fraction = f;
    s.cells = cells.size();
    for (const auto* c : cells) {
      s.micro_mean += c->micro_f1;
      s.macro_mean += c->macro_f1;
    }
    const double n = static_cast<double>(cells.size());
    s.micro_mean /= n;
    s.macro_mean /= n;
    for (const auto* c : cells) {
      s.micro_std += (c->micro_f1 - s.micro_mean) * (c->micro_f1 - s.micro_mean);
      s.macro_std += (c->macro_f1 - s.macro_mean) * (c->macro_f1 - s.macro_mean);
    }
    s.micro_std = std::sqrt(s.micro_std / n);
    s.macro_std = std::sqrt(s.macro_std / n);
    report.summary.push_back(s);
  }
  return report;
}

EvalReport evaluate(const SymbolicEmbedding& embedding, const LabelSet& labels, const EvalConfig& config) {
  std::map<NodeIndex, std::size_t> row_of;
  for (std::size_t r = 0; r < embedding.row_nodes.size(); ++r) row_of.emplace(embedding.row_nodes[r], r);
  std::vector<std::pair<std::size_t, ClassId>> labeled;
  for (const auto& [node, cls] : labels.assignments()) {
    auto it = row_of.find(node);
    if (it == row_of.end()) throw ValidationError("labeled node " + std::to_string(node) + " has no embedding row");
    labeled.emplace_back(it->second, cls);
  }
  return evaluate(embedding.matrix, labeled, labels.num_classes(), config);
}

void write_report_csv(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "fraction,repetition,micro_f1,macro_f1\n";
  for (const auto& c : report.cells) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%g,%zu,%.6f,%.6f\n", c.fraction, c.repetition, c.micro_f1, c.macro_f1);
    out << buf;
  }
  if (!out) throw IoError("write failure on " + path.string());
}

void write_report_markdown(const EvalReport& report, const std::filesystem::path& path,
                           const std::string& method_name) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "| Method / Percentage |";
  for (const auto& s : report.summary) out << ' ' << percent(s.fraction) << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < report.summary.size(); ++i) out << "---|";
  out << '\n';
  auto row = [&](const std::string& label, auto pick) {
    out << "| " << label << " |";
    for (const auto& s : report.summary) out << ' ' << pick(s) << " |";
    out << '\n';
  };
  auto section = [&](const char* title) {
    out << "| **" << title << "** |";
    for (std::size_t i = 0; i < report.summary.size(); ++i) out << " |";
    out << '\n';
  };
  section("Macro-F1");
  row(method_name, [](const EvalSummary& s) { return fixed(s.macro_mean, 3); });
  row(method_name + " (std)", [](const EvalSummary& s) { return fixed(s.macro_std, 3); });
  section("Micro-F1");
  row(method_name, [](const EvalSummary& s) { return fixed(s.micro_mean, 3); });
  row(method_name + " (std)", [](const EvalSummary& s) { return fixed(s.micro_std, 3); });
  out << "\nMode: " << (report.config.cross_validation ? "repeated stratified k-fold" : "stratified shuffle split")
      << ", repetitions: " << report.config.repetitions;
  if (report.config.cross_validation) out << ", folds: " << report.config.folds;
  out << ", seed: " << report.config.seed << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace sge
