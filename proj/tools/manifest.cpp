#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "sge/error.hpp"
#include "sge/simd/kernels.hpp"

namespace sge::cli {

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

RunManifest::RunManifest(std::string command) {
  doc_["tool"] = "sge";
  doc_["version"] = SGE_VERSION;
  doc_["command"] = std::move(command);
  doc_["simd"] = std::string(simd::to_string(simd::active_kernels().isa));
  doc_["parameters"] = nlohmann::json::object();
  doc_["inputs"] = nlohmann::json::array();
  doc_["outputs"] = nlohmann::json::array();
  doc_["timings_seconds"] = nlohmann::json::object();
  doc_["warnings"] = nlohmann::json::array();
}

void RunManifest::add_input(const std::filesystem::path& path) {
  doc_["inputs"].push_back({{"path", path.string()}, {"sha256", file_sha256(path)}});
}

void RunManifest::add_output(const std::filesystem::path& path) {
  doc_["outputs"].push_back(
      {{"path", path.string()}, {"bytes", std::filesystem::file_size(path)}, {"sha256", file_sha256(path)}});
}

void RunManifest::add_warning(const std::string& message) { doc_["warnings"].push_back(message); }

void RunManifest::begin_stage(const std::string& name) {
  stage_ = name;
  stage_start_ = std::chrono::steady_clock::now();
}

void RunManifest::end_stage() {
  doc_["timings_seconds"][stage_] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - stage_start_).count();
}

void RunManifest::write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc_.dump(2) << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace sge::cli
