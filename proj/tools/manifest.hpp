#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace sge::cli {

/// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

/// Reproducibility record written once per command invocation.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  nlohmann::json& parameters() { return doc_["parameters"]; }
  void set_seed(std::uint64_t seed) { doc_["seed"] = seed; }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  void add_warning(const std::string& message);
  void set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }

  /// Starts/stops a named wall-clock stage timer.
  void begin_stage(const std::string& name);
  void end_stage();

  void write(const std::filesystem::path& path);

 private:
  nlohmann::json doc_;
  std::string stage_;
  std::chrono::steady_clock::time_point stage_start_;
};

}  // namespace sge::cli
