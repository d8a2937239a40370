#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "igape/persistence.hpp"

namespace igape::testing {

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(IGAPE_DATA_DIR) / name; }

inline const ModelDocument& payment_document() {
  static const ModelDocument doc = load_model(data_path("payment.igape.json"));
  return doc;
}

inline std::size_t index_of(const std::vector<GoalId>& ids, const std::string& id) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i].value == id) return i;
  }
  return ids.size();
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("igape-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace igape::testing
