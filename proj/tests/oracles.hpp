#pragma once

// Deliberately naive reference implementations. They share no code with the
// library and favor obviousness over speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace sge::oracle {

using Itemset = std::vector<std::uint32_t>;

/// Every itemset over `universe` items contained in >= support transactions,
/// found by enumerating all 2^universe - 1 non-empty subsets.
inline std::map<Itemset, std::uint64_t> frequent_itemsets(const std::vector<std::set<std::uint32_t>>& transactions,
                                                          std::uint32_t universe, std::uint64_t support) {
  std::map<Itemset, std::uint64_t> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << universe); ++mask) {
    Itemset items;
    for (std::uint32_t i = 0; i < universe; ++i) {
      if (mask >> i & 1) items.push_back(i);
    }
    std::uint64_t count = 0;
    for (const auto& t : transactions) {
      bool all = true;
      for (auto i : items) all = all && t.count(i) > 0;
      count += all;
    }
    if (count >= support) out[items] = count;
  }
  return out;
}

/// Same enumeration with transactions as bitmasks over <= 20 items.
inline std::map<Itemset, std::uint64_t> frequent_itemsets_bitmask(const std::vector<std::uint32_t>& transactions,
                                                                  std::uint32_t universe, std::uint64_t support) {
  std::map<Itemset, std::uint64_t> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << universe); ++mask) {
    std::uint64_t count = 0;
    for (auto t : transactions) count += (t & mask) == mask;
    if (count < support) continue;
    Itemset items;
    for (std::uint32_t i = 0; i < universe; ++i) {
      if (mask >> i & 1) items.push_back(i);
    }
    out[items] = count;
  }
  return out;
}

/// Document frequency of every contiguous n-gram (1 <= n <= k) that lies
/// inside a single walk. documents[doc][walk] is a token sequence.
inline std::map<std::vector<std::uint32_t>, std::uint64_t> ngram_document_frequency(
    const std::vector<std::vector<std::vector<std::uint32_t>>>& documents, std::size_t k) {
  std::map<std::vector<std::uint32_t>, std::uint64_t> df;
  for (const auto& doc : documents) {
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& walk : doc) {
      for (std::size_t n = 1; n <= k; ++n) {
        for (std::size_t i = 0; i + n <= walk.size(); ++i) {
          seen.insert(std::vector<std::uint32_t>(walk.begin() + i, walk.begin() + i + n));
        }
      }
    }
    for (const auto& g : seen) ++df[g];
  }
  return df;
}

/// Number of occurrences of `gram` inside the walks of one document.
inline std::uint64_t ngram_count(const std::vector<std::vector<std::uint32_t>>& doc,
                                 const std::vector<std::uint32_t>& gram) {
  std::uint64_t c = 0;
  for (const auto& walk : doc) {
    for (std::size_t i = 0; i + gram.size() <= walk.size(); ++i) {
      c += std::equal(gram.begin(), gram.end(), walk.begin() + i);
    }
  }
  return c;
}

/// (1 + log tf) * log(N / T) written the long way round.
inline double tfidf(std::uint64_t tf, std::uint64_t n, std::uint64_t t) {
  const long double first = 1.0L + std::log(static_cast<long double>(tf));
  const long double second = std::log(static_cast<long double>(n)) - std::log(static_cast<long double>(t));
  return static_cast<double>(first * second);
}

/// Central differences of f at x, step h per coordinate.
inline std::vector<double> numeric_gradient(const std::function<double(std::span<const double>)>& f,
                                            std::vector<double> x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = f(x);
    x[i] = keep - h;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2 * h);
  }
  return g;
}

/// max_i |a_i - b_i| / max(1, max_i |b_i|)
inline double relative_error(std::span<const double> a, std::span<const double> b) {
  double diff = 0, scale = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / scale;
}

}  // namespace sge::oracle
