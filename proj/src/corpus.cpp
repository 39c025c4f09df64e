#include "fpverify/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#ifndef FPVERIFY_CORPUS_DIR
#define FPVERIFY_CORPUS_DIR "corpus"
#endif

namespace fpv {

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace

std::filesystem::path default_corpus_dir() {
  if (const char* env = std::getenv("FPVERIFY_CORPUS_DIR"); env && *env) {
    return env;
  }
  return FPVERIFY_CORPUS_DIR;
}

const std::vector<std::string>& registered_scenarios() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v{
        "pi1-E0-tilde",      "eleven-new-relators", "elimination-y-w",
        "pi1-N-full",        "pi1-N-reduced",       "derive-qc-commute",
        "derive-cx-commute", "derive-gx2",          "conjugacy-x",
        "redundancy-nine"};
    std::sort(v.begin(), v.end());
    return v;
  }();
  return ids;
}

std::vector<ScenarioSummary> list_scenarios(const std::filesystem::path& dir) {
  std::vector<ScenarioSummary> out;
  for (const std::string& id : registered_scenarios()) {
    const auto j = read_json(dir / (id + ".expect.json"));
    out.push_back({id, j.value("summary", std::string{})});
  }
  return out;
}

Scenario load_scenario(std::string_view id, CommutatorConvention convention,
                       const std::filesystem::path& dir) {
  const auto& ids = registered_scenarios();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw UnknownScenario(std::string(id));
  }
  const std::string name(id);
  const auto expect = read_json(dir / (name + ".expect.json"));
  if (expect.at("id").get<std::string>() != name) {
    throw std::runtime_error(name + ".expect.json names scenario '" +
                             expect.at("id").get<std::string>() + "'");
  }
  Scenario s;
  s.id = name;
  s.summary = expect.value("summary", std::string{});
  s.location = expect.at("provenance").at("location").get<std::string>();
  s.quote = expect.at("provenance").at("quote").get<std::string>();
  s.presentation_path = dir / expect.at("presentation").get<std::string>();
  s.convention = convention;
  s.presentation =
      load_presentation(s.presentation_path.string(), {convention, nullptr});
  for (const auto& c : expect.at("checks")) {
    s.checks.push_back({c.at("kind").get<std::string>(), c});
  }
  const auto certs = dir / (name + ".certs.json");
  if (std::filesystem::exists(certs)) {
    s.certificates = read_json(certs);
  }
  return s;
}

// Regenerate with tools/pin_corpus.sh after an intentional edit.
const std::vector<PinnedFile>& pinned_files() {
  static const std::vector<PinnedFile> pins{
#include "corpus_pins.inc"
  };
  return pins;
}

std::string sha256_hex(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + file.string());
  }
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 8192> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::vector<std::string> checksum_mismatches(const std::filesystem::path& dir) {
  std::vector<std::string> bad;
  for (const PinnedFile& f : pinned_files()) {
    const auto path = dir / std::string(f.name);
    if (!std::filesystem::exists(path) || sha256_hex(path) != f.sha256) {
      bad.emplace_back(f.name);
    }
  }
  return bad;
}

}  // namespace fpv
