#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stocksent/correlate.h"
#include "stocksent/ml.h"

namespace stocksent::testing {

std::string DataPath(const std::string& name);

// tests/data/blobs_3class_10d.csv as a dense dataset with classes (1, 0, 2).
Dataset LoadBlobs();

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Synthetic window instances: counts drawn uniformly from [0, max_count];
// movement = 1 iff positive > negative. Dates consecutive from 2015-09-03.
std::vector<WindowInstance> SyntheticWindows(std::size_t n, std::uint64_t seed,
                                             long max_count = 30);

// Small deterministic pipeline inputs: tweets.csv (id,timestamp,text),
// labels.csv (id,sentiment), embeddings.txt (dimension 8) and prices.csv
// (date,open,close with missing days), all for September 2015.
void WriteSampleWorkspace(const std::filesystem::path& dir);

// Runs the stocksent binary with `args`, stdout and stderr sent to the given
// files (discarded when empty). Returns the exit status.
int RunCli(const std::vector<std::string>& args, const std::string& stdout_path = "",
           const std::string& stderr_path = "");

std::string ReadText(const std::filesystem::path& path);

}  // namespace stocksent::testing
