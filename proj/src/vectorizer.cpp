#include "sge/vectorizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "kgram_key.hpp"
#include "sge/error.hpp"
#include "sge/parallel.hpp"

namespace sge {
namespace {

using Counts = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (column, occurrences)

std::vector<Counts> kgram_counts(const TransactionDB& db, const PatternVocabulary& vocab, unsigned workers) {
  std::unordered_map<detail::KgramKey, std::uint32_t, detail::KgramKeyHash> column_of;
  std::size_t longest = 0;
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    const auto& tokens = vocab.patterns[j].tokens;
    if (tokens.empty() || tokens.size() > kMaxKgramOrder) throw ValidationError("k-gram pattern has invalid length");
    column_of.emplace(detail::KgramKey::of(tokens), static_cast<std::uint32_t>(j));
    longest = std::max(longest, tokens.size());
  }
  std::vector<Counts> rows(db.num_documents());
  parallel_for(db.num_documents(), workers, [&](std::size_t r) {
    std::vector<std::uint32_t> hits;
    detail::for_each_kgram(db.document(r), longest, [&](const detail::KgramKey& key) {
      if (auto it = column_of.find(key); it != column_of.end()) hits.push_back(it->second);
    });
    std::sort(hits.begin(), hits.end());
    auto& out = rows[r];
    for (auto c : hits) {
      if (!out.empty() && out.back().first == c) {
        ++out.back().second;
      } else {
        out.emplace_back(c, 1);
      }
    }
  });
  return rows;
}

std::vector<Counts> itemset_counts(const TransactionDB& db, const PatternVocabulary& vocab, unsigned workers) {
  // Posting list per token; a document matches an itemset iff it appears in
  // the posting list of every member.
  std::vector<std::vector<std::uint32_t>> postings(db.num_tokens());
  for (std::size_t r = 0; r < db.num_documents(); ++r)
    for (auto t : db.document(r).unique) postings[t].push_back(static_cast<std::uint32_t>(r));

  std::vector<std::vector<std::uint32_t>> matches(vocab.size());
  parallel_for(vocab.size(), workers, [&](std::size_t j) {
    const auto& tokens = vocab.patterns[j].tokens;
    if (tokens.empty()) return;
    for (auto t : tokens)
      if (t >= db.num_tokens()) throw ValidationError("itemset refers to an unknown token");
    std::vector<std::uint32_t> current = postings[tokens.front()];
    std::vector<std::uint32_t> next;
    for (std::size_t i = 1; i < tokens.size() && !current.empty(); ++i) {
      next.clear();
      const auto& p = postings[tokens[i]];
      std::set_intersection(current.begin(), current.end(), p.begin(), p.end(), std::back_inserter(next));
      current.swap(next);
    }
    matches[j] = std::move(current);
  });

  std::vector<Counts> rows(db.num_documents());
  for (std::size_t j = 0; j < matches.size(); ++j)
    for (auto r : matches[j]) rows[r].emplace_back(static_cast<std::uint32_t>(j), 1);
  return rows;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view to_string(WeightingScheme scheme) {
  switch (scheme) {
    case WeightingScheme::kBinary: return "binary";
    case WeightingScheme::kTf: return "tf";
    case WeightingScheme::kTfidf: return "tfidf";
    case WeightingScheme::kFpBinary: return "fp-growth";
  }
  return "?";
}

WeightingScheme parse_weighting_scheme(std::string_view text) {
  if (text == "binary") return WeightingScheme::kBinary;
  if (text == "tf") return WeightingScheme::kTf;
  if (text == "tfidf" || text == "tf-idf") return WeightingScheme::kTfidf;
  if (text == "fp-growth" || text == "fp_binary" || text == "fpgrowth") return WeightingScheme::kFpBinary;
  throw ValidationError("unknown weighting scheme '" + std::string(text) + "'");
}

bool compatible(WeightingScheme scheme, PatternKind kind) {
  return (scheme == WeightingScheme::kFpBinary) == (kind == PatternKind::kItemset);
}

double tfidf_weight(std::uint64_t tf, std::uint64_t num_docs, std::uint64_t docs_containing) {
  if (tf < 1) throw ValidationError("tf-idf needs tf >= 1");
  if (docs_containing < 1 || docs_containing > num_docs) {
    throw ValidationError("tf-idf needs 1 <= document frequency <= number of documents");
  }
  return (1.0 + std::log(static_cast<double>(tf))) *
         std::log(static_cast<double>(num_docs) / static_cast<double>(docs_containing));
}

SymbolicEmbedding represent_nodes(const TransactionDB& db, const PatternVocabulary& vocab, WeightingScheme scheme,
                                  unsigned workers) {
  if (!compatible(scheme, vocab.kind)) {
    throw ValidationError("weighting scheme '" + std::string(to_string(scheme)) + "' cannot be used with a " +
                          (vocab.kind == PatternKind::kKgram ? "k-gram" : "itemset") + " vocabulary");
  }
  const auto rows = vocab.kind == PatternKind::kKgram ? kgram_counts(db, vocab, workers)
                                                      : itemset_counts(db, vocab, workers);

  std::vector<std::uint64_t> doc_freq(vocab.size(), 0);
  if (scheme == WeightingScheme::kTfidf)
    for (const auto& row : rows)
      for (const auto& [c, n] : row) ++doc_freq[c];

  SymbolicEmbedding emb;
  emb.scheme = scheme;
  auto& m = emb.matrix;
  m.rows = db.num_documents();
  m.cols = vocab.size();
  m.row_offsets.reserve(m.rows + 1);
  emb.row_nodes.reserve(m.rows);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    emb.row_nodes.push_back(db.document(r).owner);
    for (const auto& [c, n] : rows[r]) {
      double value = 1.0;
      if (scheme == WeightingScheme::kTf) value = n;
      if (scheme == WeightingScheme::kTfidf) value = tfidf_weight(n, db.num_documents(), doc_freq[c]);
      if (value == 0.0) continue;
      m.col_indices.push_back(c);
      m.values.push_back(value);
    }
    m.row_offsets.push_back(m.col_indices.size());
  }
  return emb;
}

void export_embedding(const CsrMatrix& matrix, EmbeddingFormat format, const std::filesystem::path& path,
                      std::span<const std::string> row_names, std::span<const std::string> column_names) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  std::string line;
  if (format == EmbeddingFormat::kSparseText) {
    out << matrix.rows << ' ' << matrix.cols << ' ' << matrix.nnz();
    for (std::size_t r = 0; r < matrix.rows; ++r) {
      const auto row = matrix.row(r);
      for (std::size_t i = 0; i < row.nnz(); ++i) {
        line.clear();
        line += '\n';
        line += std::to_string(r);
        line += ' ';
        line += std::to_string(row.cols[i]);
        line += ' ';
        append_double(line, row.values[i]);
        out << line;
      }
    }
  } else {
    if (row_names.size() != matrix.rows || column_names.size() != matrix.cols) {
      throw ValidationError("dense CSV export needs one name per row and per column");
    }
    out << "node";
    for (const auto& c : column_names) out << ',' << csv_quote(c);
    out << '\n';
    std::vector<double> dense(matrix.cols);
    for (std::size_t r = 0; r < matrix.rows; ++r) {
      std::fill(dense.begin(), dense.end(), 0.0);
      const auto row = matrix.row(r);
      for (std::size_t i = 0; i < row.nnz(); ++i) dense[row.cols[i]] = row.values[i];
      line = csv_quote(row_names[r]);
      for (double v : dense) {
        line += ',';
        append_double(line, v);
      }
      line += '\n';
      out << line;
    }
  }
  if (!out) throw IoError("write failure on " + path.string());
}

CsrMatrix import_sparse_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsrMatrix m;
  std::size_t nnz = 0;
  if (!(in >> m.rows >> m.cols >> nnz)) throw ParseError(path.string(), 1, "expected 'rows cols nnz' header");
  m.row_offsets.assign(m.rows + 1, 0);
  m.col_indices.reserve(nnz);
  m.values.reserve(nnz);
  std::size_t prev_row = 0;
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (!(in >> r >> c >> v)) throw ParseError(path.string(), i + 2, "expected 'row col value'");
    if (r >= m.rows || c >= m.cols) throw ParseError(path.string(), i + 2, "entry outside the matrix shape");
    const bool ordered = i == 0 || r > prev_row || (r == prev_row && c > m.col_indices.back());
    if (!ordered) throw ParseError(path.string(), i + 2, "entries must be sorted row-major without duplicates");
    if (!std::isfinite(v)) throw ParseError(path.string(), i + 2, "non-finite value");
    ++m.row_offsets[r + 1];
    m.col_indices.push_back(static_cast<std::uint32_t>(c));
    m.values.push_back(v);
    prev_row = r;
  }
  for (std::size_t r = 0; r < m.rows; ++r) m.row_offsets[r + 1] += m.row_offsets[r];
  std::string rest;
  if (in >> rest) throw ParseError(path.string(), nnz + 2, "trailing data after " + std::to_string(nnz) + " entries");
  return m;
}

void write_row_names(std::span<const std::string> names, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& n : names) out << n << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

std::vector<std::string> read_row_names(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    names.push_back(line);
  }
  return names;
}

}  // namespace sge
