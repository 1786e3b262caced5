#include <algorithm>
#include <unordered_map>

#include "kgram_key.hpp"
#include "sge/error.hpp"
#include "sge/parallel.hpp"
#include "sge/pattern_miner.hpp"

namespace sge {

using detail::KgramKey;
using detail::KgramKeyHash;

PatternVocabulary mine_kgrams(const TransactionDB& db, std::size_t k, std::size_t d, unsigned workers) {
  if (k < 1 || k > kMaxKgramOrder) {
    throw ValidationError("k-gram order must be in [1, " + std::to_string(kMaxKgramOrder) + "]");
  }
  if (d < 1) throw ValidationError("number of features d must be >= 1");

  using CountMap = std::unordered_map<KgramKey, std::uint64_t, KgramKeyHash>;
  if (workers == 0) workers = default_workers();
  const std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(workers, db.num_documents()));
  std::vector<CountMap> partial(shards);
  parallel_for(
      shards, workers,
      [&](std::size_t shard) {
        auto& counts = partial[shard];
        std::vector<KgramKey> seen;
        for (std::size_t doc = shard; doc < db.num_documents(); doc += shards) {
          seen.clear();
          detail::for_each_kgram(db.document(doc), k, [&](const KgramKey& key) { seen.push_back(key); });
          std::sort(seen.begin(), seen.end());
          seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
          for (const auto& key : seen) ++counts[key];
        }
      },
      1);
  CountMap& counts = partial.front();
  for (std::size_t s = 1; s < shards; ++s) {
    for (const auto& [key, c] : partial[s]) counts[key] += c;
    CountMap{}.swap(partial[s]);
  }

  std::vector<std::pair<KgramKey, std::uint64_t>> ranked(counts.begin(), counts.end());
  CountMap{}.swap(counts);
  auto better = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  const std::size_t keep = std::min(d, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(), better);

  PatternVocabulary vocab;
  vocab.kind = PatternKind::kKgram;
  vocab.provenance = {{"miner", "kgram"}, {"k", std::to_string(k)}, {"d", std::to_string(d)}};
  vocab.patterns.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto ids = ranked[i].first.view();
    vocab.patterns.push_back({{ids.begin(), ids.end()}, PatternKind::kKgram, ranked[i].second});
  }
  if (ranked.empty()) {
    vocab.warnings.push_back("no k-grams found: every document is empty; vocabulary is empty");
  } else if (ranked.size() < d) {
    vocab.warnings.push_back("only " + std::to_string(ranked.size()) + " distinct k-grams exist; requested d=" +
                             std::to_string(d));
  }
  return vocab;
}

}  // namespace sge
