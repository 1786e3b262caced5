#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>

#include "sge/pattern_miner.hpp"
#include "sge/random.hpp"

namespace sge::detail {

// Fixed-capacity n-gram key; avoids a heap allocation per counted n-gram.
struct KgramKey {
  std::array<TokenId, kMaxKgramOrder> ids{};
  std::uint8_t size = 0;

  static KgramKey of(std::span<const TokenId> tokens) {
    KgramKey key;
    key.size = static_cast<std::uint8_t>(tokens.size());
    std::copy(tokens.begin(), tokens.end(), key.ids.begin());
    return key;
  }

  std::span<const TokenId> view() const { return {ids.data(), size}; }

  bool operator==(const KgramKey& o) const {
    return size == o.size && std::equal(ids.begin(), ids.begin() + size, o.ids.begin());
  }
  // Lexicographic; a proper prefix sorts first.
  bool operator<(const KgramKey& o) const {
    return std::lexicographical_compare(ids.begin(), ids.begin() + size, o.ids.begin(), o.ids.begin() + o.size);
  }
};

struct KgramKeyHash {
  std::size_t operator()(const KgramKey& key) const noexcept {
    std::uint64_t h = key.size;
    for (std::uint8_t i = 0; i < key.size; ++i) h = mix64(h ^ key.ids[i]);
    return static_cast<std::size_t>(h);
  }
};

// Calls fn(key) for every contiguous n-gram (1 <= n <= k) inside each walk.
template <typename Fn>
void for_each_kgram(const TransactionDB::Document& doc, std::size_t k, Fn&& fn) {
  for (std::size_t w = 0; w < doc.num_walks(); ++w) {
    const auto walk = doc.walk(w);
    for (std::size_t pos = 0; pos < walk.size(); ++pos) {
      const std::size_t longest = std::min(k, walk.size() - pos);
      for (std::size_t n = 1; n <= longest; ++n) fn(KgramKey::of(walk.subspan(pos, n)));
    }
  }
}

}  // namespace sge::detail
