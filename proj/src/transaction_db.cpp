#include "sge/pattern_miner.hpp"

#include <algorithm>
#include <fstream>

#include "sge/error.hpp"

namespace sge {

std::optional<TokenId> TransactionDB::find(const WalkTuple& tuple) const {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), tuple);
  if (it == tuples_.end() || *it != tuple) return std::nullopt;
  return static_cast<TokenId>(it - tuples_.begin());
}

TransactionDB build_transaction_db(std::span<const NodeDocument> documents) {
  if (documents.empty()) throw ValidationError("cannot build a transaction database from zero documents");
  TransactionDB db;
  for (const auto& doc : documents) db.tuples_.insert(db.tuples_.end(), doc.tuples.begin(), doc.tuples.end());
  std::sort(db.tuples_.begin(), db.tuples_.end());
  db.tuples_.erase(std::unique(db.tuples_.begin(), db.tuples_.end()), db.tuples_.end());
  db.tuples_.shrink_to_fit();

  std::vector<std::size_t> order(documents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return documents[a].start < documents[b].start; });

  db.documents_.resize(documents.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& src = documents[order[i]];
    auto& dst = db.documents_[i];
    dst.owner = src.start;
    dst.walk_offsets = src.walk_offsets;
    dst.tokens.reserve(src.tuples.size());
    for (const auto& t : src.tuples) dst.tokens.push_back(*db.find(t));
    dst.unique = dst.tokens;
    std::sort(dst.unique.begin(), dst.unique.end());
    dst.unique.erase(std::unique(dst.unique.begin(), dst.unique.end()), dst.unique.end());
  }
  return db;
}

std::string describe_pattern(const Pattern& pattern, const TransactionDB& db, std::span<const std::string> node_names) {
  std::string out;
  for (std::size_t i = 0; i < pattern.tokens.size(); ++i) {
    const auto& t = db.tuple(pattern.tokens[i]);
    if (i > 0) out += ';';
    out += '(';
    out += t.node < node_names.size() ? node_names[t.node] : std::to_string(t.node);
    out += ',';
    out += std::to_string(t.order);
    out += ')';
  }
  return out;
}

void write_vocabulary(const PatternVocabulary& vocab, const TransactionDB& db, std::span<const std::string> node_names,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "#kind=" << (vocab.kind == PatternKind::kKgram ? "kgram" : "itemset") << '\n';
  for (const auto& [k, v] : vocab.provenance) out << '#' << k << '=' << v << '\n';
  for (std::size_t i = 0; i < vocab.patterns.size(); ++i) {
    out << i << '\t' << vocab.patterns[i].frequency << '\t' << describe_pattern(vocab.patterns[i], db, node_names)
        << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace sge
