#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "stocksent/correlate.h"
#include "stocksent/csv.h"
#include "stocksent/error.h"
#include "stocksent/eval.h"
#include "stocksent/features.h"
#include "stocksent/ingest.h"
#include "stocksent/ml.h"
#include "stocksent/preprocess.h"

namespace fs = std::filesystem;
using namespace stocksent;

namespace {

// Every knob a run can take. Defaults match the library defaults.
struct RunConfig {
  std::string in;
  std::string out;
  std::string out_dir;
  std::string labels;
  std::string model;
  std::string days;
  std::string truth;
  std::string predictions;
  std::vector<std::string> tweets;
  std::string stopwords;
  std::string embeddings;
  std::string features = "ngram";
  std::string algo;  // per-command default
  int ngram_max = 3;
  double split = 0.9;
  std::string split_mode;
  std::uint64_t seed = 1;
  int window = 3;
  std::string price_field = "close";
  bool drop_empty = false;
  int trees = 100;
  int features_per_split = 0;
  int threads = 1;
  double l2 = 1e-8;
  double learning_rate = 0.01;
  int epochs = 500;
  double c = 1.0;
  double tolerance = 1e-3;
  int max_passes = 10;
  int verbosity = 0;
};

void Log(const RunConfig& config, const std::string& message) {
  if (config.verbosity > 0) std::cerr << message << '\n';
}

std::string FormatNumber(double value) { return fmt::format("{}", value); }

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  csv::WriteFile(path, text);
}

fs::path MakeDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

Label ParseSentiment(const std::string& text, std::size_t line) {
  if (text == "0") return kNeutral;
  if (text == "1") return kPositive;
  if (text == "2") return kNegative;
  throw ValueError("line " + std::to_string(line) + ": sentiment must be 0, 1 or 2, got '" +
                   text + "'");
}

// id -> sentiment from an `id,sentiment` file.
std::map<std::string, Label> ReadLabels(const std::string& path) {
  auto table = csv::Table::FromFile(path);
  const auto id_col = table.Column("id");
  const auto label_col = table.Column("sentiment");
  std::map<std::string, Label> labels;
  for (const auto& row : table.rows()) {
    const auto& id = table.Field(row, id_col);
    const Label label = ParseSentiment(table.Field(row, label_col), row.line);
    if (!labels.emplace(id, label).second) {
      throw DataError(path + ": duplicate label for id '" + id + "'");
    }
  }
  return labels;
}

struct LabeledTweets {
  std::vector<CleanTweet> tweets;
  std::vector<Label> labels;
};

LabeledTweets JoinLabels(const std::vector<CleanTweet>& corpus,
                         const std::map<std::string, Label>& labels) {
  LabeledTweets joined;
  std::size_t matched = 0;
  for (const auto& tweet : corpus) {
    auto it = labels.find(tweet.id);
    if (it == labels.end()) continue;
    joined.tweets.push_back(tweet);
    joined.labels.push_back(it->second);
    ++matched;
  }
  if (matched != labels.size()) {
    throw DataError(fmt::format("{} labeled ids do not appear in the corpus",
                                labels.size() - matched));
  }
  return joined;
}

// Turns tweets into feature vectors with either an n-gram vocabulary or an
// embedding table.
class Featurizer {
 public:
  static Featurizer Ngram(NgramVocabulary vocab) {
    Featurizer f;
    f.kind_ = FeatureKind::kNgramBinary;
    f.vocab_ = std::move(vocab);
    return f;
  }
  static Featurizer Embedding(const EmbeddingTable* table) {
    Featurizer f;
    f.kind_ = FeatureKind::kEmbeddingSum;
    f.table_ = table;
    return f;
  }

  FeatureKind kind() const { return kind_; }
  const NgramVocabulary& vocabulary() const { return vocab_; }
  std::size_t dimension() const {
    return kind_ == FeatureKind::kNgramBinary ? vocab_.size() : table_->dimension();
  }
  FeatureVector operator()(const CleanTweet& tweet) const {
    return kind_ == FeatureKind::kNgramBinary ? vocab_.Vectorize(tweet) : table_->Embed(tweet);
  }

 private:
  FeatureKind kind_ = FeatureKind::kNgramBinary;
  NgramVocabulary vocab_;
  const EmbeddingTable* table_ = nullptr;
};

std::vector<FeatureKind> SelectedKinds(const std::string& text) {
  if (text == "all") return {FeatureKind::kNgramBinary, FeatureKind::kEmbeddingSum};
  return {ParseFeatureKind(text)};
}

std::vector<Algorithm> SelectedAlgorithms(const std::string& text) {
  if (text == "all") {
    return {Algorithm::kRandomForest, Algorithm::kLogisticRegression, Algorithm::kSvmSmo};
  }
  return {ParseAlgorithm(text)};
}

std::string DisplayName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRandomForest:
      return "Random Forest";
    case Algorithm::kLogisticRegression:
      return "Logistic Regression";
    case Algorithm::kSvmSmo:
      return "SMO";
  }
  return "?";
}

std::string DisplayName(FeatureKind kind) {
  return kind == FeatureKind::kNgramBinary ? "N-gram" : "Word2vec";
}

SentimentModel Train(Algorithm algorithm, const Dataset& data, const RunConfig& config) {
  switch (algorithm) {
    case Algorithm::kRandomForest: {
      ForestOptions options;
      options.num_trees = config.trees;
      options.features_per_split = config.features_per_split;
      options.seed = config.seed;
      options.threads = config.threads;
      return TrainRandomForest(data, options);
    }
    case Algorithm::kLogisticRegression: {
      LogisticOptions options;
      options.l2 = config.l2;
      options.learning_rate = config.learning_rate;
      options.epochs = config.epochs;
      if (config.verbosity > 1) {
        options.on_epoch = [](int epoch, double loss) {
          std::cerr << fmt::format("epoch {} loss {}\n", epoch, loss);
        };
      }
      return TrainLogisticRegression(data, options);
    }
    case Algorithm::kSvmSmo: {
      SmoOptions options;
      options.c = config.c;
      options.tolerance = config.tolerance;
      options.max_passes = config.max_passes;
      options.seed = config.seed;
      return TrainSvmSmo(data, options);
    }
  }
  throw ArgumentError("unknown algorithm");
}

// Model file plus, for n-gram models, the vocabulary that defines the columns.
void SaveModel(const std::string& path, const SentimentModel& model,
               const Featurizer& featurizer) {
  std::ostringstream out;
  model.Save(out);
  if (featurizer.kind() == FeatureKind::kNgramBinary) {
    const auto& vocab = featurizer.vocabulary();
    out << "vocabulary " << vocab.n_max() << ' ' << vocab.size() << '\n' << vocab.Format();
  }
  csv::WriteFile(path, out.str());
}

struct LoadedModel {
  SentimentModel model;
  std::optional<NgramVocabulary> vocabulary;
};

LoadedModel LoadModel(const std::string& path) {
  std::istringstream in(csv::ReadFile(path));
  auto model = SentimentModel::Load(in);
  if (model.kind() != FeatureKind::kNgramBinary) return {std::move(model), std::nullopt};
  std::string tag;
  int n_max = 0;
  std::size_t count = 0;
  if (!(in >> tag >> n_max >> count) || tag != "vocabulary") {
    throw FormatError(path + ": n-gram model has no vocabulary section");
  }
  in.ignore(1);
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto vocab = NgramVocabulary::Parse(rest, n_max);
  if (vocab.size() != count || vocab.size() != model.dimension()) {
    throw FormatError(path + ": vocabulary size does not match the model dimension");
  }
  return {std::move(model), std::move(vocab)};
}

std::vector<CleanTweet> ReadClean(const RunConfig& config) {
  auto tweets = ReadCleanTweets(config.in);
  Log(config, fmt::format("read {} tweets from {}", tweets.size(), config.in));
  return tweets;
}

// ---------------------------------------------------------------------------
// Subcommands

void RunPreprocess(const RunConfig& config) {
  const auto stopwords =
      config.stopwords.empty() ? Stopwords::Default() : Stopwords::FromFile(config.stopwords);
  const auto corpus = ReadTweetCorpus(config.in);
  std::vector<CleanTweet> clean;
  clean.reserve(corpus.size());
  for (const auto& tweet : corpus) clean.push_back(Preprocess(tweet, stopwords));
  WriteCleanTweets(config.out, clean);
  Log(config, fmt::format("wrote {} clean tweets", clean.size()));
}

void RunFeaturize(const RunConfig& config) {
  const auto tweets = ReadClean(config);
  std::map<std::string, Label> labels;
  if (!config.labels.empty()) labels = ReadLabels(config.labels);

  EmbeddingTable table;
  std::optional<Featurizer> featurizer;
  if (ParseFeatureKind(config.features) == FeatureKind::kNgramBinary) {
    featurizer = Featurizer::Ngram(NgramVocabulary::Build(tweets, config.ngram_max));
  } else {
    if (config.embeddings.empty()) throw ArgumentError("word2vec features need --embeddings");
    table = EmbeddingTable::Load(config.embeddings);
    featurizer = Featurizer::Embedding(&table);
  }

  std::string text = fmt::format("features {} {}\n", ToString(featurizer->kind()),
                                 featurizer->dimension());
  for (const auto& tweet : tweets) {
    auto it = labels.find(tweet.id);
    text += tweet.id;
    text += '\t';
    text += it == labels.end() ? "?" : std::to_string(it->second);
    text += '\t';
    bool first = true;
    (*featurizer)(tweet).ForEachNonZero([&](std::size_t j, double v) {
      if (!first) text += ' ';
      first = false;
      text += fmt::format("{}:{}", j, v);
    });
    text += '\n';
  }
  WriteText(config.out, text);
}

void RunTrainSentiment(const RunConfig& config) {
  const auto joined = JoinLabels(ReadClean(config), ReadLabels(config.labels));
  const auto kinds = SelectedKinds(config.features);
  const auto algorithms = SelectedAlgorithms(config.algo.empty() ? "random-forest" : config.algo);
  const auto mode = ParseSplitMode(config.split_mode.empty() ? "shuffled" : config.split_mode);

  EmbeddingTable table;
  if (std::count(kinds.begin(), kinds.end(), FeatureKind::kEmbeddingSum) > 0) {
    if (config.embeddings.empty()) throw ArgumentError("word2vec features need --embeddings");
    table = EmbeddingTable::Load(config.embeddings);
  }

  const auto [train_rows, test_rows] =
      SplitIndices(joined.tweets.size(), config.split, mode, config.seed);
  const auto dir = MakeDir(config.out_dir);

  std::vector<ResultRow> results;
  std::vector<bool> in_train(joined.tweets.size(), false);
  for (auto r : train_rows) in_train[r] = true;
  std::string manifest = "id,part\n";
  for (std::size_t i = 0; i < joined.tweets.size(); ++i) {
    manifest += csv::Quote(joined.tweets[i].id) + (in_train[i] ? ",train\n" : ",test\n");
  }
  csv::WriteFile((dir / "split.csv").string(), manifest);

  for (FeatureKind kind : kinds) {
    std::vector<CleanTweet> train_tweets;
    for (auto r : train_rows) train_tweets.push_back(joined.tweets[r]);
    const auto featurizer =
        kind == FeatureKind::kNgramBinary
            ? Featurizer::Ngram(NgramVocabulary::Build(train_tweets, config.ngram_max))
            : Featurizer::Embedding(&table);

    auto make_dataset = [&](const std::vector<std::size_t>& rows) {
      Dataset data;
      data.kind = kind;
      data.dimension = featurizer.dimension();
      data.classes = kSentimentClasses;
      for (auto r : rows) {
        auto x = featurizer(joined.tweets[r]);
        x.label = joined.labels[r];
        data.instances.push_back(std::move(x));
      }
      return data;
    };
    const Dataset train = make_dataset(train_rows);
    const Dataset test = make_dataset(test_rows);

    for (Algorithm algorithm : algorithms) {
      const std::string stem = fmt::format("{}-{}", ToString(algorithm), ToString(kind));
      Log(config, fmt::format("training {} on {} instances (dimension {})", stem, train.size(),
                              train.dimension));
      const auto model = Train(algorithm, train, config);
      SaveModel((dir / ("model-" + stem + ".txt")).string(), model, featurizer);

      std::vector<Label> truth, predicted;
      std::string scores = "id\ttruth";
      for (Label c : model.classes()) scores += fmt::format("\t{}", c);
      scores += '\n';
      for (std::size_t i = 0; i < test.size(); ++i) {
        const auto s = model.PredictScores(test.instances[i]);
        truth.push_back(test.label(i));
        predicted.push_back(model.classes()[ArgMax(s)]);
        scores += fmt::format("{}\t{}", joined.tweets[test_rows[i]].id, test.label(i));
        for (double v : s) scores += '\t' + FormatNumber(v);
        scores += '\n';
      }
      csv::WriteFile((dir / ("scores-" + stem + ".tsv")).string(), scores);

      const ConfusionMatrix cm(truth, predicted, kSentimentClasses);
      const auto report = Classify(cm);
      csv::WriteFile((dir / ("report-" + stem + ".txt")).string(), FormatReport(report, cm));
      csv::WriteFile((dir / ("report-" + stem + ".kv")).string(),
                     FormatReportKeyValues(report));
      results.push_back({DisplayName(algorithm), DisplayName(kind), report});
    }
  }
  const auto table_text = FormatResultsTable(results);
  csv::WriteFile((dir / "results.txt").string(), table_text);
  std::cout << table_text;
}

void RunPredict(const RunConfig& config) {
  const auto loaded = LoadModel(config.model);
  EmbeddingTable table;
  std::optional<Featurizer> featurizer;
  if (loaded.vocabulary) {
    featurizer = Featurizer::Ngram(*loaded.vocabulary);
  } else {
    if (config.embeddings.empty()) throw ArgumentError("word2vec models need --embeddings");
    table = EmbeddingTable::Load(config.embeddings);
    featurizer = Featurizer::Embedding(&table);
  }
  std::ostringstream out;
  csv::WriteRow(out, {"id", "timestamp", "sentiment"});
  for (const auto& tweet : ReadClean(config)) {
    const Label label = loaded.model.PredictLabel((*featurizer)(tweet));
    csv::WriteRow(out, {tweet.id, FormatTimestamp(tweet.timestamp), std::to_string(label)});
  }
  WriteText(config.out, out.str());
}

void RunFillGaps(const RunConfig& config) {
  const auto filled = FillGaps(ReadStockSeries(config.in));
  WriteText(config.out, FormatStockSeries(filled));
}

void RunLabelDays(const RunConfig& config) {
  const auto labels =
      LabelTradingDays(ReadStockSeries(config.in), ParsePriceField(config.price_field));
  WriteText(config.out, FormatDayLabels(labels));
}

// Accepts any delimited file with `sentiment` and either `timestamp` or `date`.
std::vector<DatedSentiment> ReadDatedSentiments(const std::string& path) {
  auto table = csv::Table::FromFile(path);
  const auto label_col = table.Column("sentiment");
  const auto ts_col = table.FindColumn("timestamp");
  const auto date_col = ts_col == std::string::npos ? table.Column("date") : std::string::npos;
  std::vector<DatedSentiment> out;
  for (const auto& row : table.rows()) {
    DatedSentiment item;
    item.sentiment = ParseSentiment(table.Field(row, label_col), row.line);
    try {
      item.date = ts_col != std::string::npos ? DateOf(ParseTimestamp(table.Field(row, ts_col)))
                                              : Date::Parse(table.Field(row, date_col));
    } catch (const FormatError& e) {
      throw FormatError(path + ": line " + std::to_string(row.line) + ": " + e.what());
    }
    out.push_back(item);
  }
  return out;
}

void RunBuildWindows(const RunConfig& config) {
  std::vector<DatedSentiment> tweets;
  for (const auto& path : config.tweets) {
    auto part = ReadDatedSentiments(path);
    tweets.insert(tweets.end(), part.begin(), part.end());
  }
  const auto days = ParseDayLabels(csv::ReadFile(config.days));
  const auto instances = BuildWindowInstances(tweets, days, config.window, config.drop_empty);
  Log(config, fmt::format("{} window instances from {} tweets and {} days", instances.size(),
                          tweets.size(), days.size()));
  WriteText(config.out, FormatWindowInstances(instances));
}

void RunTrainCorrelation(const RunConfig& config) {
  const auto instances = ParseWindowInstances(csv::ReadFile(config.in));
  CorrelationOptions options;
  options.algorithm = ParseAlgorithm(config.algo.empty() ? "logistic" : config.algo);
  options.train_fraction = config.split;
  options.mode = ParseSplitMode(config.split_mode.empty() ? "ordered" : config.split_mode);
  options.seed = config.seed;
  options.logistic.l2 = config.l2;
  options.logistic.learning_rate = config.learning_rate;
  options.logistic.epochs = config.epochs;
  options.smo.c = config.c;
  options.smo.tolerance = config.tolerance;
  options.smo.max_passes = config.max_passes;
  options.smo.seed = config.seed;
  const auto result = RunCorrelationExperiment(instances, options);

  const auto text = FormatReport(result.report, result.confusion);
  if (config.out_dir.empty()) {
    std::cout << text;
    return;
  }
  const auto dir = MakeDir(config.out_dir);
  csv::WriteFile((dir / "report.txt").string(), text);
  csv::WriteFile((dir / "report.kv").string(), FormatReportKeyValues(result.report));
  csv::WriteFile((dir / "manifest.csv").string(), FormatManifest(result.manifest));
  std::cout << text;
}

void RunEvaluate(const RunConfig& config) {
  const auto truth = ReadLabels(config.truth);
  const auto predicted = ReadLabels(config.predictions);
  std::vector<Label> t, p;
  for (const auto& [id, label] : truth) {
    auto it = predicted.find(id);
    if (it == predicted.end()) throw DataError("no prediction for id '" + id + "'");
    t.push_back(label);
    p.push_back(it->second);
  }
  const ConfusionMatrix cm(t, p, kSentimentClasses);
  const auto report = Classify(cm);
  if (!config.out_dir.empty()) {
    const auto dir = MakeDir(config.out_dir);
    csv::WriteFile((dir / "report.txt").string(), FormatReport(report, cm));
    csv::WriteFile((dir / "report.kv").string(), FormatReportKeyValues(report));
  }
  std::cout << FormatReport(report, cm);
}

void RunRoc(const RunConfig& config) {
  // Scores file: id, truth, then one column per class label.
  std::istringstream in(csv::ReadFile(config.in));
  std::string line;
  if (!std::getline(in, line)) throw FormatError(config.in + ": empty scores file");
  std::vector<std::string> header;
  {
    std::istringstream fields(line);
    for (std::string f; std::getline(fields, f, '\t');) header.push_back(f);
  }
  if (header.size() < 3 || header[0] != "id" || header[1] != "truth") {
    throw FormatError(config.in + ": header must be id, truth, then class columns");
  }
  std::vector<Label> classes;
  for (std::size_t k = 2; k < header.size(); ++k) {
    classes.push_back(ParseSentiment(header[k], 1));
  }
  std::vector<Label> truth;
  std::vector<std::vector<double>> scores(classes.size());
  for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    for (std::string f; std::getline(row, f, '\t');) fields.push_back(f);
    if (fields.size() != header.size()) {
      throw FormatError(fmt::format("{}: line {}: expected {} fields, got {}", config.in,
                                    line_no, header.size(), fields.size()));
    }
    truth.push_back(ParseSentiment(fields[1], line_no));
    for (std::size_t k = 0; k < classes.size(); ++k) {
      try {
        std::size_t used = 0;
        scores[k].push_back(std::stod(fields[k + 2], &used));
        if (used != fields[k + 2].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw FormatError(fmt::format("{}: line {}: bad score '{}'", config.in, line_no,
                                      fields[k + 2]));
      }
    }
  }

  const std::map<Label, std::string> names = {
      {kPositive, "positive"}, {kNeutral, "neutral"}, {kNegative, "negative"}};
  std::vector<std::pair<std::string, std::vector<RocPoint>>> curves;
  std::string summary;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::vector<bool> is_positive;
    for (Label t : truth) is_positive.push_back(t == classes[k]);
    auto points = RocPoints(scores[k], is_positive);
    summary += fmt::format("auc.{}={}\n", names.at(classes[k]),
                           FormatNumber(TrapezoidArea(points)));
    curves.emplace_back(names.at(classes[k]), std::move(points));
  }
  const auto dir = MakeDir(config.out_dir);
  for (const auto& [name, points] : curves) {
    csv::WriteFile((dir / ("roc-" + name + ".tsv")).string(), FormatRocPoints(points));
  }
  csv::WriteFile((dir / "auc.kv").string(), summary);
  std::cout << summary;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"Tweet sentiment and stock movement pipeline"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", config.verbosity, "Diagnostics on stderr (repeat for more)");

  auto* preprocess = app.add_subcommand("preprocess", "Normalize, tokenize and filter tweets");
  preprocess->add_option("--in", config.in, "Tweet corpus (id,timestamp,text)")->required();
  preprocess->add_option("--out", config.out, "Clean token file")->required();
  preprocess->add_option("--stopwords", config.stopwords, "Stopword list, one per line");

  auto* featurize = app.add_subcommand("featurize", "Write feature vectors for clean tweets");
  featurize->add_option("--in", config.in, "Clean token file")->required();
  featurize->add_option("--out", config.out, "Feature file (default stdout)");
  featurize->add_option("--labels", config.labels, "Labels (id,sentiment)");
  featurize->add_option("--features", config.features)
      ->check(CLI::IsMember({"ngram", "word2vec"}));
  featurize->add_option("--ngram-max", config.ngram_max)->check(CLI::PositiveNumber);
  featurize->add_option("--embeddings", config.embeddings, "Embedding text file");

  auto* train = app.add_subcommand("train-sentiment", "Train and evaluate sentiment models");
  train->add_option("--in", config.in, "Clean token file")->required();
  train->add_option("--labels", config.labels, "Labels (id,sentiment)")->required();
  train->add_option("--out-dir", config.out_dir, "Output directory")->required();
  train->add_option("--features", config.features)
      ->check(CLI::IsMember({"ngram", "word2vec", "all"}));
  train->add_option("--algo", config.algo, "Default random-forest")
      ->check(CLI::IsMember({"random-forest", "logistic", "smo", "all"}));
  train->add_option("--ngram-max", config.ngram_max)->check(CLI::PositiveNumber);
  train->add_option("--embeddings", config.embeddings, "Embedding text file");
  train->add_option("--split", config.split, "Training fraction")->check(CLI::Range(0.0, 1.0));
  train->add_option("--split-mode", config.split_mode, "Default shuffled")
      ->check(CLI::IsMember({"ordered", "shuffled"}));
  train->add_option("--seed", config.seed);
  train->add_option("--trees", config.trees)->check(CLI::PositiveNumber);
  train->add_option("--features-per-split", config.features_per_split, "0 = sqrt(d)")
      ->check(CLI::NonNegativeNumber);
  train->add_option("--threads", config.threads)->check(CLI::PositiveNumber);
  train->add_option("--l2", config.l2)->check(CLI::NonNegativeNumber);
  train->add_option("--learning-rate", config.learning_rate)->check(CLI::PositiveNumber);
  train->add_option("--epochs", config.epochs)->check(CLI::PositiveNumber);
  train->add_option("--c", config.c)->check(CLI::PositiveNumber);
  train->add_option("--tolerance", config.tolerance)->check(CLI::PositiveNumber);
  train->add_option("--max-passes", config.max_passes)->check(CLI::PositiveNumber);

  auto* predict = app.add_subcommand("predict", "Label clean tweets with a trained model");
  predict->add_option("--model", config.model)->required();
  predict->add_option("--in", config.in, "Clean token file")->required();
  predict->add_option("--out", config.out, "Predictions (default stdout)");
  predict->add_option("--embeddings", config.embeddings, "Embedding text file");

  auto* fill = app.add_subcommand("fill-gaps", "Complete missing calendar days in a series");
  fill->add_option("--in", config.in, "Price series (date,open,close)")->required();
  fill->add_option("--out", config.out, "Filled series (default stdout)");

  auto* label_days = app.add_subcommand("label-days", "Label each day up or down");
  label_days->add_option("--in", config.in, "Gap-free price series")->required();
  label_days->add_option("--out", config.out, "Day labels (default stdout)");
  label_days->add_option("--price-field", config.price_field)
      ->check(CLI::IsMember({"open", "close"}));

  auto* windows = app.add_subcommand("build-windows", "Count sentiment before each day");
  windows->add_option("--tweets", config.tweets, "Dated sentiment files")->required();
  windows->add_option("--days", config.days, "Day labels")->required();
  windows->add_option("--out", config.out, "Window instances (default stdout)");
  windows->add_option("--window", config.window)->check(CLI::PositiveNumber);
  windows->add_flag("--drop-empty", config.drop_empty, "Skip windows without tweets");

  auto* correlation = app.add_subcommand("train-correlation", "Predict movement from counts");
  correlation->add_option("--in", config.in, "Window instances")->required();
  correlation->add_option("--out-dir", config.out_dir, "Output directory");
  correlation->add_option("--algo", config.algo, "Default logistic")->check(CLI::IsMember({"logistic", "smo"}));
  correlation->add_option("--split", config.split)->check(CLI::Range(0.0, 1.0));
  correlation->add_option("--split-mode", config.split_mode, "Default ordered")
      ->check(CLI::IsMember({"ordered", "shuffled"}));
  correlation->add_option("--seed", config.seed);
  correlation->add_option("--l2", config.l2)->check(CLI::NonNegativeNumber);
  correlation->add_option("--learning-rate", config.learning_rate)->check(CLI::PositiveNumber);
  correlation->add_option("--epochs", config.epochs)->check(CLI::PositiveNumber);
  correlation->add_option("--c", config.c)->check(CLI::PositiveNumber);
  correlation->add_option("--tolerance", config.tolerance)->check(CLI::PositiveNumber);
  correlation->add_option("--max-passes", config.max_passes)->check(CLI::PositiveNumber);

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against labels");
  evaluate->add_option("--truth", config.truth, "Labels (id,sentiment)")->required();
  evaluate->add_option("--predictions", config.predictions, "Predictions (id,sentiment)")
      ->required();
  evaluate->add_option("--out-dir", config.out_dir, "Output directory");

  auto* roc = app.add_subcommand("roc", "One-vs-rest ROC curves from a scores file");
  roc->add_option("--in", config.in, "Scores (id, truth, per-class scores)")->required();
  roc->add_option("--out-dir", config.out_dir, "Output directory")->required();

  const std::vector<std::pair<CLI::App*, void (*)(const RunConfig&)>> handlers = {
      {preprocess, RunPreprocess},   {featurize, RunFeaturize},     {train, RunTrainSentiment},
      {predict, RunPredict},         {fill, RunFillGaps},           {label_days, RunLabelDays},
      {windows, RunBuildWindows},    {correlation, RunTrainCorrelation},
      {evaluate, RunEvaluate},       {roc, RunRoc},
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) handler(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
