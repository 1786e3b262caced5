#include <algorithm>
#include <atomic>
#include <limits>

#include "sge/error.hpp"
#include "sge/parallel.hpp"
#include "sge/pattern_miner.hpp"

namespace sge {
namespace {

// Items are ranks in the global frequency order: 0 is the most frequent
// token, ties broken by token id. Every path from the root is increasing.
using Item = std::uint32_t;
constexpr std::uint32_t kNull = std::numeric_limits<std::uint32_t>::max();

struct WeightedPath {
  std::vector<Item> items;
  std::uint64_t weight = 0;
};

class FpTree {
 public:
  struct Header {
    Item item = 0;
    std::uint64_t count = 0;
    std::uint32_t head = kNull;
  };

  FpTree(const std::vector<WeightedPath>& paths, std::uint64_t support) {
    std::vector<std::pair<Item, std::uint64_t>> totals;
    {
      std::vector<Item> all;
      for (const auto& p : paths) all.insert(all.end(), p.items.begin(), p.items.end());
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      totals.reserve(all.size());
      for (auto item : all) totals.emplace_back(item, 0);
    }
    for (const auto& p : paths) {
      for (auto item : p.items) slot(totals, item)->second += p.weight;
    }
    for (const auto& [item, count] : totals) {
      if (count >= support) headers_.push_back({item, count, kNull});
    }
    if (headers_.empty()) return;

    nodes_.push_back({kNull, kNull, kNull, kNull, kNull, 0});
    root_children_.assign(headers_.size(), kNull);
    std::vector<std::uint32_t> kept;
    for (const auto& p : paths) {
      kept.clear();
      for (auto item : p.items) {
        const auto h = header_index(item);
        if (h != kNull) kept.push_back(h);
      }
      insert(kept, p.weight);
    }
  }

  bool empty() const { return headers_.empty(); }
  const std::vector<Header>& headers() const { return headers_; }

  /// Prefix paths (conditional pattern base) of every node carrying header h.
  std::vector<WeightedPath> prefix_paths(std::size_t h) const {
    std::vector<WeightedPath> out;
    for (auto n = headers_[h].head; n != kNull; n = nodes_[n].link) {
      WeightedPath path;
      path.weight = nodes_[n].count;
      for (auto p = nodes_[n].parent; p != 0; p = nodes_[p].parent) path.items.push_back(headers_[nodes_[p].header].item);
      if (path.items.empty()) continue;
      std::reverse(path.items.begin(), path.items.end());
      out.push_back(std::move(path));
    }
    return out;
  }

 private:
  struct Node {
    std::uint32_t header;
    std::uint32_t parent;
    std::uint32_t first_child;
    std::uint32_t next_sibling;
    std::uint32_t link;
    std::uint64_t count;
  };

  static std::pair<Item, std::uint64_t>* slot(std::vector<std::pair<Item, std::uint64_t>>& totals, Item item) {
    return &*std::lower_bound(totals.begin(), totals.end(), std::pair<Item, std::uint64_t>{item, 0},
                              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  std::uint32_t header_index(Item item) const {
    auto it = std::lower_bound(headers_.begin(), headers_.end(), item,
                               [](const Header& h, Item i) { return h.item < i; });
    if (it == headers_.end() || it->item != item) return kNull;
    return static_cast<std::uint32_t>(it - headers_.begin());
  }

  std::uint32_t new_node(std::uint32_t header, std::uint32_t parent) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({header, parent, kNull, kNull, headers_[header].head, 0});
    headers_[header].head = id;
    return id;
  }

  // `path` holds header indices in increasing item order.
  void insert(const std::vector<std::uint32_t>& path, std::uint64_t weight) {
    if (path.empty()) return;
    auto& top = root_children_[path.front()];
    if (top == kNull) top = new_node(path.front(), 0);
    std::uint32_t current = top;
    nodes_[current].count += weight;
    for (std::size_t i = 1; i < path.size(); ++i) {
      std::uint32_t child = nodes_[current].first_child;
      while (child != kNull && nodes_[child].header != path[i]) child = nodes_[child].next_sibling;
      if (child == kNull) {
        child = new_node(path[i], current);
        nodes_[child].next_sibling = nodes_[current].first_child;
        nodes_[current].first_child = child;
      }
      nodes_[child].count += weight;
      current = child;
    }
  }

  std::vector<Header> headers_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> root_children_;
};

struct Found {
  std::vector<Item> items;
  std::uint64_t count;
};

class Miner {
 public:
  Miner(const FpGrowthOptions& options, std::atomic<std::size_t>& total) : options_(options), total_(total) {}

  void mine_header(const FpTree& tree, std::size_t h, std::vector<Item>& prefix, std::vector<Found>& out) {
    const auto& header = tree.headers()[h];
    prefix.push_back(header.item);
    out.push_back({prefix, header.count});
    if (options_.max_patterns != 0 && total_.fetch_add(1) + 1 > options_.max_patterns) {
      throw ValidationError("frequent itemset count exceeds " + std::to_string(options_.max_patterns) +
                            "; raise the support or set a maximum itemset size");
    }
    if (options_.max_size == 0 || prefix.size() < options_.max_size) {
      const auto base = tree.prefix_paths(h);
      if (!base.empty()) {
        const FpTree conditional(base, options_.support);
        for (std::size_t c = 0; c < conditional.headers().size(); ++c) mine_header(conditional, c, prefix, out);
      }
    }
    prefix.pop_back();
  }

 private:
  const FpGrowthOptions& options_;
  std::atomic<std::size_t>& total_;
};

}  // namespace

PatternVocabulary mine_fpgrowth(const TransactionDB& db, const FpGrowthOptions& options) {
  if (options.support < 1) throw ValidationError("support must be >= 1");
  if (options.max_size != 0 && options.min_size > options.max_size) {
    throw ValidationError("minimum itemset size exceeds maximum");
  }
  PatternVocabulary vocab;
  vocab.kind = PatternKind::kItemset;
  vocab.provenance = {{"miner", "fp-growth"}, {"support", std::to_string(options.support)}};
  if (options.min_size != 0) vocab.provenance.emplace_back("min_size", std::to_string(options.min_size));
  if (options.max_size != 0) vocab.provenance.emplace_back("max_size", std::to_string(options.max_size));

  if (options.support > db.num_documents()) {
    vocab.warnings.push_back("support " + std::to_string(options.support) + " exceeds the number of transactions (" +
                             std::to_string(db.num_documents()) + "); vocabulary is empty");
    return vocab;
  }

  // Document frequency of each token, then the rank order used in the tree.
  std::vector<std::uint64_t> frequency(db.num_tokens(), 0);
  for (const auto& doc : db.documents())
    for (auto t : doc.unique) ++frequency[t];
  std::vector<TokenId> by_rank;
  for (TokenId t = 0; t < db.num_tokens(); ++t)
    if (frequency[t] >= options.support) by_rank.push_back(t);
  std::stable_sort(by_rank.begin(), by_rank.end(),
                   [&](TokenId a, TokenId b) { return frequency[a] > frequency[b]; });
  std::vector<Item> rank_of(db.num_tokens(), kNull);
  for (std::size_t r = 0; r < by_rank.size(); ++r) rank_of[by_rank[r]] = static_cast<Item>(r);

  std::vector<WeightedPath> transactions;
  transactions.reserve(db.num_documents());
  for (const auto& doc : db.documents()) {
    WeightedPath p;
    p.weight = 1;
    for (auto t : doc.unique)
      if (rank_of[t] != kNull) p.items.push_back(rank_of[t]);
    if (p.items.empty()) continue;
    std::sort(p.items.begin(), p.items.end());
    transactions.push_back(std::move(p));
  }

  const FpTree tree(transactions, options.support);
  std::vector<WeightedPath>{}.swap(transactions);
  std::atomic<std::size_t> total{0};
  std::vector<std::vector<Found>> per_header(tree.headers().size());
  parallel_for(
      tree.headers().size(), options.workers,
      [&](std::size_t h) {
        Miner miner(options, total);
        std::vector<Item> prefix;
        miner.mine_header(tree, h, prefix, per_header[h]);
      },
      1);

  for (auto& found : per_header) {
    for (auto& f : found) {
      if (options.min_size != 0 && f.items.size() < options.min_size) continue;
      Pattern p;
      p.kind = PatternKind::kItemset;
      p.frequency = f.count;
      p.tokens.reserve(f.items.size());
      for (auto item : f.items) p.tokens.push_back(by_rank[item]);
      std::sort(p.tokens.begin(), p.tokens.end());
      vocab.patterns.push_back(std::move(p));
    }
    std::vector<Found>{}.swap(found);
  }
  std::sort(vocab.patterns.begin(), vocab.patterns.end(), [](const Pattern& a, const Pattern& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
    return a.tokens < b.tokens;
  });
  if (vocab.patterns.empty()) vocab.warnings.push_back("no frequent itemsets at this support; vocabulary is empty");
  return vocab;
}

}  // namespace sge
