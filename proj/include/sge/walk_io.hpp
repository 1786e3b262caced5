#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sge/walk_sampler.hpp"

namespace sge {

/// Sampled documents plus the node-name table they index into. This is what
/// `sge sample` persists and `sge embed` reads back.
struct WalkCorpus {
  std::vector<std::string> node_names;
  std::vector<NodeDocument> documents;
  /// Free-form key/value metadata echoed from the sampling run.
  std::vector<std::pair<std::string, std::string>> params;
};

/// Text format:
///   #sge-walks v1
///   #param <key>=<value>        (zero or more)
///   #nodes <N>
///   <name>                      (N lines; line i is node index i)
///   #documents <M>
///   <start>[<TAB><walk>]...     (M lines; walk = space-separated node:order)
void write_walk_corpus(const WalkCorpus& corpus, const std::filesystem::path& path);
WalkCorpus read_walk_corpus(const std::filesystem::path& path);

/// Human-readable debug dump: `name<TAB>(neighbor,order):multiplicity ...`.
void write_walk_dump(std::span<const std::string> node_names, std::span<const NodeDocument> documents,
                     const std::filesystem::path& path);

}  // namespace sge
