#include "sge/walk_io.hpp"

#include <charconv>
#include <fstream>

#include "sge/error.hpp"

namespace sge {
namespace {

constexpr std::string_view kHeader = "#sge-walks v1";

template <typename T>
T parse_number(std::string_view text, const std::filesystem::path& path, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(path.string(), line, "bad integer '" + std::string(text) + "'");
  }
  return value;
}

std::string_view after_prefix(std::string_view line, std::string_view prefix, const std::filesystem::path& path,
                              std::size_t line_no) {
  if (line.substr(0, prefix.size()) != prefix) {
    throw ParseError(path.string(), line_no, "expected '" + std::string(prefix) + "'");
  }
  return line.substr(prefix.size());
}

}  // namespace

void write_walk_corpus(const WalkCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << kHeader << '\n';
  for (const auto& [k, v] : corpus.params) out << "#param " << k << '=' << v << '\n';
  out << "#nodes " << corpus.node_names.size() << '\n';
  for (const auto& n : corpus.node_names) out << n << '\n';
  out << "#documents " << corpus.documents.size() << '\n';
  for (const auto& doc : corpus.documents) {
    out << doc.start;
    for (std::size_t w = 0; w < doc.num_walks(); ++w) {
      out << '\t';
      bool first = true;
      for (const auto& t : doc.walk(w)) {
        if (!first) out << ' ';
        out << t.node << ':' << t.order;
        first = false;
      }
    }
    out << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

WalkCorpus read_walk_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  WalkCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::string_view {
    if (!std::getline(in, line)) throw ParseError(path.string(), line_no + 1, "unexpected end of file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != kHeader) throw ParseError(path.string(), 1, "not a walk corpus (missing '#sge-walks v1')");
  std::string_view current = next_line();
  while (current.starts_with("#param ")) {
    auto kv = current.substr(7);
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw ParseError(path.string(), line_no, "expected '#param key=value'");
    corpus.params.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
    current = next_line();
  }
  const auto num_nodes = parse_number<std::size_t>(after_prefix(current, "#nodes ", path, line_no), path, line_no);
  corpus.node_names.reserve(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) corpus.node_names.emplace_back(next_line());

  const auto num_docs = parse_number<std::size_t>(after_prefix(next_line(), "#documents ", path, line_no), path, line_no);
  corpus.documents.resize(num_docs);
  for (auto& doc : corpus.documents) {
    const auto fields = split_tabs(next_line());
    doc.start = parse_number<NodeIndex>(fields[0], path, line_no);
    if (doc.start >= num_nodes) throw ParseError(path.string(), line_no, "start node index out of range");
    for (std::size_t f = 1; f < fields.size(); ++f) {
      std::string_view walk = fields[f];
      if (walk.empty()) throw ParseError(path.string(), line_no, "empty walk");
      while (!walk.empty()) {
        const auto space = walk.find(' ');
        const auto item = walk.substr(0, space);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) throw ParseError(path.string(), line_no, "expected node:order");
        const WalkTuple t{parse_number<NodeIndex>(item.substr(0, colon), path, line_no),
                          parse_number<std::uint32_t>(item.substr(colon + 1), path, line_no)};
        if (t.node >= num_nodes) throw ParseError(path.string(), line_no, "node index out of range");
        doc.tuples.push_back(t);
        walk = space == std::string_view::npos ? std::string_view{} : walk.substr(space + 1);
      }
      doc.close_walk();
    }
  }
  return corpus;
}

void write_walk_dump(std::span<const std::string> node_names, std::span<const NodeDocument> documents,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& doc : documents) {
    out << node_names[doc.start];
    bool first = true;
    for (const auto& [t, count] : doc.multiset()) {
      out << (first ? '\t' : ' ') << '(' << node_names[t.node] << ',' << t.order << "):" << count;
      first = false;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace sge
