#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <faaf/core.hpp>
#include <faaf/dataset.hpp>

namespace faaf_test {

inline std::filesystem::path repo_root() {
  return std::filesystem::path(FAAF_REPO_ROOT);
}

inline std::filesystem::path fixture_path(const std::string& name) {
  return repo_root() / "tests" / "fixtures" / name;
}

inline std::filesystem::path shipped_dataset_path() {
  return repo_root() / "data" / "wikievalfacts.jsonl";
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("faaf_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Two-record dataset used by gateway and engine tests. Record "alpha" has
/// three facts, record "beta" two; gold labels cover all variants.
inline faaf::DatasetFile small_dataset() {
  using faaf::VariantKind;
  faaf::DatasetFile dataset;
  dataset.source = "unit-fixture";
  dataset.dataset_version = "1";

  faaf::QARecord alpha;
  alpha.id = "alpha";
  alpha.question = "What powers the alpha station?";
  alpha.answers[VariantKind::GroundTruth] =
      "The alpha station is powered by a tidal turbine. The turbine was "
      "installed in 2011. The station serves two hundred homes.";
  alpha.answers[VariantKind::Ungrounded] =
      "The alpha station uses a diesel generator installed decades ago. The "
      "station serves two hundred homes.";
  alpha.answers[VariantKind::Poor] =
      "The alpha station is a well known landmark.";
  alpha.facts = {{0, "The alpha station is powered by a tidal turbine."},
                 {1, "The turbine was installed in 2011."},
                 {2, "The alpha station serves two hundred homes."}};
  alpha.gold_labels[VariantKind::GroundTruth] = {{0, true}, {1, true}, {2, true}};
  alpha.gold_labels[VariantKind::Ungrounded] = {{0, false}, {1, false}, {2, true}};
  alpha.gold_labels[VariantKind::Poor] = {{0, false}, {1, false}, {2, false}};
  dataset.records.push_back(std::move(alpha));

  faaf::QARecord beta;
  beta.id = "beta";
  beta.question = "Who designed the beta bridge?";
  beta.answers[VariantKind::GroundTruth] =
      "The beta bridge was designed by Mara Voss. Construction finished in "
      "1931.";
  beta.answers[VariantKind::Ungrounded] =
      "The beta bridge is a suspension bridge crossing a gorge.";
  beta.answers[VariantKind::Poor] = "The beta bridge is quite old.";
  beta.facts = {{0, "The beta bridge was designed by Mara Voss."},
                {1, "Construction of the beta bridge finished in 1931."}};
  beta.gold_labels[VariantKind::GroundTruth] = {{0, true}, {1, true}};
  beta.gold_labels[VariantKind::Ungrounded] = {{0, false}, {1, false}};
  beta.gold_labels[VariantKind::Poor] = {{0, false}, {1, false}};
  dataset.records.push_back(std::move(beta));

  return dataset;
}

}  // namespace faaf_test
