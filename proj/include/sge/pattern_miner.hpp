#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sge/walk_sampler.hpp"

namespace sge {

using TokenId = std::uint32_t;

/// Node documents with walk tuples interned to dense token ids.
/// Token ids follow the (node, order) ordering of the tuples they stand for.
class TransactionDB {
 public:
  struct Document {
    NodeIndex owner = 0;
    /// Walks concatenated in sampling order.
    std::vector<TokenId> tokens;
    std::vector<std::uint32_t> walk_offsets{0};
    /// Sorted distinct tokens (the transaction seen as an itemset).
    std::vector<TokenId> unique;

    std::size_t num_walks() const { return walk_offsets.size() - 1; }
    std::span<const TokenId> walk(std::size_t i) const {
      return {tokens.data() + walk_offsets[i], tokens.data() + walk_offsets[i + 1]};
    }
  };

  std::size_t num_documents() const { return documents_.size(); }
  std::size_t num_tokens() const { return tuples_.size(); }
  const Document& document(std::size_t i) const { return documents_.at(i); }
  const std::vector<Document>& documents() const { return documents_; }
  const WalkTuple& tuple(TokenId token) const { return tuples_.at(token); }
  std::optional<TokenId> find(const WalkTuple& tuple) const;

 private:
  friend TransactionDB build_transaction_db(std::span<const NodeDocument> documents);
  std::vector<Document> documents_;
  std::vector<WalkTuple> tuples_;
};

/// Interns tuples and orders documents by owning node index.
/// Throws ValidationError on an empty collection.
TransactionDB build_transaction_db(std::span<const NodeDocument> documents);

enum class PatternKind { kKgram, kItemset };

struct Pattern {
  /// Ordered for k-grams, strictly increasing for itemsets.
  std::vector<TokenId> tokens;
  PatternKind kind = PatternKind::kKgram;
  /// Number of documents containing the pattern.
  std::uint64_t frequency = 0;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// The selected patterns; pattern i is embedding column i.
struct PatternVocabulary {
  PatternKind kind = PatternKind::kKgram;
  std::vector<Pattern> patterns;
  /// Mining parameters, echoed into manifests and the vocabulary file.
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<std::string> warnings;

  std::size_t size() const { return patterns.size(); }
};

inline constexpr std::size_t kMaxKgramOrder = 8;

/// Contiguous n-grams of orders 1..k inside individual walks, ranked by
/// document frequency (ties: lexicographic token order, a prefix first).
/// Keeps the top d.
PatternVocabulary mine_kgrams(const TransactionDB& db, std::size_t k, std::size_t d, unsigned workers = 1);

struct FpGrowthOptions {
  std::uint64_t support = 1;
  /// 0 disables the size filters.
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  /// Abort with ValidationError once more itemsets than this are found. 0 = no limit.
  std::size_t max_patterns = 0;
  unsigned workers = 1;
};

/// All itemsets whose document frequency is >= support, mined with an fp-tree.
/// Sorted by frequency (desc), size (asc), tokens (lexicographic).
PatternVocabulary mine_fpgrowth(const TransactionDB& db, const FpGrowthOptions& options);
inline PatternVocabulary mine_fpgrowth(const TransactionDB& db, std::uint64_t support) {
  return mine_fpgrowth(db, FpGrowthOptions{.support = support});
}

/// "(name,order);(name,order)" rendering of a pattern.
std::string describe_pattern(const Pattern& pattern, const TransactionDB& db, std::span<const std::string> node_names);

/// One line per pattern: `column<TAB>frequency<TAB>description`, preceded by
/// `#` lines carrying the provenance.
void write_vocabulary(const PatternVocabulary& vocab, const TransactionDB& db, std::span<const std::string> node_names,
                      const std::filesystem::path& path);

}  // namespace sge
