#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sge/pattern_miner.hpp"
#include "sge/sparse_matrix.hpp"

namespace sge {

enum class WeightingScheme { kBinary, kTf, kTfidf, kFpBinary };

std::string_view to_string(WeightingScheme scheme);
/// "binary", "tf", "tfidf" (or "tf-idf"), "fp-growth" (or "fp_binary").
WeightingScheme parse_weighting_scheme(std::string_view text);
/// fp_binary pairs with itemset vocabularies, the others with k-grams.
bool compatible(WeightingScheme scheme, PatternKind kind);

/// Sparse |rows| x d matrix; row i describes the owner of document i.
struct SymbolicEmbedding {
  CsrMatrix matrix;
  WeightingScheme scheme = WeightingScheme::kBinary;
  std::vector<NodeIndex> row_nodes;
};

/// (1 + ln tf) * ln(num_docs / docs_containing). Natural logarithms.
/// Throws ValidationError unless tf >= 1 and 1 <= docs_containing <= num_docs.
double tfidf_weight(std::uint64_t tf, std::uint64_t num_docs, std::uint64_t docs_containing);

/// Evaluates every pattern against every document. Entries that evaluate to
/// zero are not stored. Throws ValidationError for an incompatible scheme.
SymbolicEmbedding represent_nodes(const TransactionDB& db, const PatternVocabulary& vocab, WeightingScheme scheme,
                                  unsigned workers = 1);

enum class EmbeddingFormat { kSparseText, kDenseCsv };

/// sparse-text: "rows cols nnz" then "row col value" per entry, row-major.
/// dense-csv: header "node,<pattern>..." then one line per row; needs
/// row_names (rows) and column_names (cols).
void export_embedding(const CsrMatrix& matrix, EmbeddingFormat format, const std::filesystem::path& path,
                      std::span<const std::string> row_names = {}, std::span<const std::string> column_names = {});

/// Reads the sparse-text format back.
CsrMatrix import_sparse_text(const std::filesystem::path& path);

/// One name per line; the companion file of a sparse-text embedding.
void write_row_names(std::span<const std::string> names, const std::filesystem::path& path);
std::vector<std::string> read_row_names(const std::filesystem::path& path);

}  // namespace sge
