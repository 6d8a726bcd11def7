#include "fixtures.h"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <charconv>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

#include "stocksent/csv.h"
#include "stocksent/random.h"

namespace stocksent::testing {

std::string DataPath(const std::string& name) {
  return std::string(STOCKSENT_TEST_DATA_DIR) + "/" + name;
}

Dataset LoadBlobs() {
  auto table = csv::Table::FromFile(DataPath("blobs_3class_10d.csv"));
  Dataset data{FeatureKind::kEmbeddingSum, table.header().size() - 1, kSentimentClasses, {}};
  for (const auto& row : table.rows()) {
    std::vector<double> values;
    for (std::size_t j = 1; j < row.fields.size(); ++j) values.push_back(std::stod(row.fields[j]));
    auto x = FeatureVector::Dense(std::move(values));
    x.label = std::stoi(row.fields[0]);
    data.instances.push_back(std::move(x));
  }
  return data;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("stocksent-" + tag + "-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::vector<WindowInstance> SyntheticWindows(std::size_t n, std::uint64_t seed, long max_count) {
  Rng rng(seed);
  std::vector<WindowInstance> out;
  Date date(2015, 9, 3);
  for (std::size_t i = 0; i < n; ++i) {
    WindowInstance w;
    w.target = date + static_cast<int>(i);
    w.positive = static_cast<long>(rng.Below(static_cast<std::uint64_t>(max_count) + 1));
    w.negative = static_cast<long>(rng.Below(static_cast<std::uint64_t>(max_count) + 1));
    w.neutral = static_cast<long>(rng.Below(static_cast<std::uint64_t>(max_count) + 1));
    w.movement = w.positive > w.negative ? 1 : 0;
    out.push_back(w);
  }
  return out;
}

namespace {

const std::vector<std::string> kPositiveWords = {"great", "love", "awesome", "cool",
                                                 "win", "happy", "strong", "gain"};
const std::vector<std::string> kNegativeWords = {"bad", "hate", "awful", "crash",
                                                 "lose", "sad", "weak", "drop"};
const std::vector<std::string> kNeutralWords = {"today", "microsoft", "windows", "office",
                                                "news", "update", "surface", "azure"};

const std::string& Pick(const std::vector<std::string>& words, Rng& rng) {
  return words[rng.Below(words.size())];
}

}  // namespace

void WriteSampleWorkspace(const std::filesystem::path& dir) {
  Rng rng(20150901);
  std::string tweets = "id,timestamp,text\n";
  std::string labels = "id,sentiment\n";
  for (int i = 0; i < 150; ++i) {
    const int sentiment = static_cast<int>(rng.Below(3));
    const auto& words = sentiment == 1   ? kPositiveWords
                        : sentiment == 2 ? kNegativeWords
                                         : kNeutralWords;
    std::string text = "#Microsoft " + Pick(kNeutralWords, rng) + " " + Pick(words, rng) +
                       ", " + Pick(words, rng);
    if (rng.Below(3) == 0) text += " http://t.co/x" + std::to_string(i);
    if (rng.Below(4) == 0) text = "@Billgates " + text;
    const int day = 1 + i % 28;
    const int hour = static_cast<int>(rng.Below(24));
    char stamp[32];
    std::snprintf(stamp, sizeof stamp, "2015-09-%02dT%02d:15:00Z", day, hour);
    const std::string id = "t" + std::to_string(i);
    tweets += id + "," + stamp + "," + csv::Quote(text) + "\n";
    labels += id + "," + std::to_string(sentiment) + "\n";
  }
  csv::WriteFile((dir / "tweets.csv").string(), tweets);
  csv::WriteFile((dir / "labels.csv").string(), labels);

  std::string embeddings;
  auto add_words = [&](const std::vector<std::string>& words, double axis0, double axis1) {
    for (const auto& word : words) {
      embeddings += word;
      for (int k = 0; k < 8; ++k) {
        double v = 0.3 * rng.Normal();
        if (k == 0) v += axis0;
        if (k == 1) v += axis1;
        embeddings += " " + std::to_string(v);
      }
      embeddings += "\n";
    }
  };
  add_words(kPositiveWords, 1.0, 0.0);
  add_words(kNegativeWords, -1.0, 0.0);
  add_words(kNeutralWords, 0.0, 1.0);
  csv::WriteFile((dir / "embeddings.txt").string(), embeddings);

  std::string prices = "date,open,close\n";
  double price = 43.5;
  for (int day = 1; day <= 30; ++day) {
    price += rng.Normal();
    if (day == 5 || day == 6 || day == 12 || day == 19 || day == 26) continue;
    char row[64];
    std::snprintf(row, sizeof row, "2015-09-%02d,%.2f,%.2f\n", day, price - 0.25, price);
    prices += row;
  }
  csv::WriteFile((dir / "prices.csv").string(), prices);
}

int RunCli(const std::vector<std::string>& args, const std::string& stdout_path,
           const std::string& stderr_path) {
  std::string command = "'" STOCKSENT_CLI "'";
  for (const auto& arg : args) command += " '" + arg + "'";
  command += " >'" + (stdout_path.empty() ? std::string("/dev/null") : stdout_path) + "'";
  command += " 2>'" + (stderr_path.empty() ? std::string("/dev/null") : stderr_path) + "'";
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string ReadText(const std::filesystem::path& path) { return csv::ReadFile(path.string()); }

}  // namespace stocksent::testing
