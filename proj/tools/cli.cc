//
// Copyright 2026 The CADEC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cadec/augment.h"
#include "cadec/checkpoint.h"
#include "cadec/cluster.h"
#include "cadec/corpus.h"
#include "cadec/embed.h"
#include "cadec/error.h"
#include "cadec/eval.h"
#include "cadec/io.h"
#include "cadec/lexicon.h"
#include "cadec/train.h"

namespace cadec::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level_from_env() {
  const char* env = std::getenv("CADEC_LOG_LEVEL");
  if (env == nullptr) return LogLevel::kInfo;
  const std::string v = env;
  if (v == "quiet" || v == "error" || v == "0") return LogLevel::kQuiet;
  if (v == "debug" || v == "2") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

struct Settings {
  TrainConfig train;
  std::string corpus;
  std::string lexicon;
  std::string synonyms;
  std::string embeddings;
  std::string checkpoint;
  std::string out;
  std::string ids;
  std::string backbone = "hash";
  std::size_t backbone_dim = 64;
  std::uint64_t backbone_seed = kDefaultSeed;
  std::string method = "pca";
  std::set<std::string> explicit_keys;
};

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("invalid value for " + key + ": \"" + text + "\"");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    return false;
  }
  throw UsageError("invalid boolean for " + key + ": \"" + text + "\"");
}

std::vector<std::size_t> parse_dims(const std::string& key,
                                    const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    dims.push_back(parse_number<std::size_t>(key, part));
  }
  return dims;
}

std::string join_dims(const std::vector<std::size_t>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

// One configurable setting: config-file key, its --flag, and accessors.
struct Key {
  std::string name;
  std::string help;
  std::function<void(Settings&, const std::string&)> set;
  std::function<std::string(const Settings&)> get;

  std::string flag() const {
    std::string f = "--" + name;
    for (char& c : f) {
      if (c == '_') c = '-';
    }
    return f;
  }
};

#define CADEC_STRING_KEY(key, field, help)                                \
  Key {                                                                   \
    key, help, [](Settings& s, const std::string& v) { s.field = v; },    \
        [](const Settings& s) { return s.field; }                         \
  }

#define CADEC_NUMBER_KEY(key, type, field, help)                          \
  Key {                                                                   \
    key, help,                                                            \
        [](Settings& s, const std::string& v) {                           \
          s.field = parse_number<type>(key, v);                           \
        },                                                                \
        [](const Settings& s) { return std::to_string(s.field); }         \
  }

#define CADEC_DOUBLE_KEY(key, field, help)                                \
  Key {                                                                   \
    key, help,                                                            \
        [](Settings& s, const std::string& v) {                           \
          s.field = parse_number<double>(key, v);                         \
        },                                                                \
        [](const Settings& s) { return format_double(s.field); }          \
  }

const std::vector<Key>& all_keys() {
  static const std::vector<Key> keys = {
      CADEC_STRING_KEY("corpus", corpus, "corpus JSON Lines file"),
      CADEC_STRING_KEY("lexicon", lexicon, "emotion lexicon TSV"),
      CADEC_STRING_KEY("synonyms", synonyms, "synonym TSV"),
      CADEC_STRING_KEY("embeddings", embeddings,
                       "embedding store for the file backbone"),
      CADEC_STRING_KEY("checkpoint", checkpoint, "input checkpoint"),
      CADEC_STRING_KEY("out", out, "output path (stdout when omitted)"),
      CADEC_STRING_KEY("ids", ids, "comma-separated utterance ids"),
      CADEC_STRING_KEY("method", method, "projection method (pca)"),
      Key{"backbone", "backbone provider: hash or file",
          [](Settings& s, const std::string& v) {
            if (v != "hash" && v != "file") {
              throw UsageError("backbone must be \"hash\" or \"file\"");
            }
            s.backbone = v;
          },
          [](const Settings& s) { return s.backbone; }},
      CADEC_NUMBER_KEY("backbone_dim", std::size_t, backbone_dim,
                       "hash backbone dimension d_b"),
      CADEC_NUMBER_KEY("backbone_seed", std::uint64_t, backbone_seed,
                       "hash backbone seed"),
      CADEC_NUMBER_KEY("batch_size", std::size_t, train.batch_size,
                       "minibatch size"),
      CADEC_DOUBLE_KEY("lr", train.lr, "Adam learning rate"),
      CADEC_NUMBER_KEY("stage1_epochs", std::size_t, train.stage1_epochs,
                       "Stage-1 epochs"),
      CADEC_NUMBER_KEY("stage2_max_epochs", std::size_t,
                       train.stage2_max_epochs, "Stage-2 epoch cap"),
      CADEC_DOUBLE_KEY("convergence_delta", train.convergence_delta,
                       "stop Stage 2 when the label change rate is below"),
      Key{"seed", "seed for initialization, batching and augmentation",
          [](Settings& s, const std::string& v) {
            s.train.seed = parse_number<std::uint64_t>("seed", v);
            s.train.augment.seed = s.train.seed;
          },
          [](const Settings& s) { return std::to_string(s.train.seed); }},
      CADEC_DOUBLE_KEY("tau", train.loss.tau, "contrastive temperature"),
      CADEC_DOUBLE_KEY("beta", train.loss.beta, "clustering loss weight"),
      CADEC_DOUBLE_KEY("gamma", train.loss.gamma,
                       "reconstruction loss weight"),
      CADEC_DOUBLE_KEY("alpha", train.loss.alpha,
                       "Student's t degrees of freedom"),
      Key{"contrastive_mode", "paper_exact or symmetric",
          [](Settings& s, const std::string& v) {
            if (v == "paper_exact") {
              s.train.loss.contrastive_mode = ContrastiveMode::kPaperExact;
            } else if (v == "symmetric") {
              s.train.loss.contrastive_mode = ContrastiveMode::kSymmetric;
            } else {
              throw UsageError(
                  "contrastive_mode must be paper_exact or symmetric");
            }
          },
          [](const Settings& s) {
            return std::string(s.train.loss.contrastive_mode ==
                                       ContrastiveMode::kPaperExact
                                   ? "paper_exact"
                                   : "symmetric");
          }},
      CADEC_NUMBER_KEY("clusters", std::size_t, train.clusters,
                       "number of clusters K"),
      CADEC_NUMBER_KEY("context", std::size_t, train.context,
                       "context utterances on each side (m)"),
      CADEC_NUMBER_KEY("segment_len", std::size_t, train.augment.segment_len,
                       "augmentation segment length"),
      CADEC_DOUBLE_KEY("top_pct", train.augment.top_pct,
                       "percentage of lexicon words replaced per segment"),
      Key{"hidden_dims", "comma-separated encoder hidden layer sizes",
          [](Settings& s, const std::string& v) {
            s.train.hidden_dims = parse_dims("hidden_dims", v);
          },
          [](const Settings& s) { return join_dims(s.train.hidden_dims); }},
      CADEC_NUMBER_KEY("embedding_dim", std::size_t, train.embedding_dim,
                       "style embedding dimension d_h"),
      Key{"reaugment_each_epoch", "re-sample augmentations every epoch",
          [](Settings& s, const std::string& v) {
            s.train.reaugment_each_epoch =
                parse_bool("reaugment_each_epoch", v);
          },
          [](const Settings& s) {
            return std::string(s.train.reaugment_each_epoch ? "true"
                                                            : "false");
          }},
      CADEC_NUMBER_KEY("kmeans_max_iter", std::size_t, train.kmeans_max_iter,
                       "Lloyd iterations for centroid initialization"),
      CADEC_NUMBER_KEY("threads", std::size_t, train.threads,
                       "worker threads for embedding"),
  };
  return keys;
}

#undef CADEC_STRING_KEY
#undef CADEC_NUMBER_KEY
#undef CADEC_DOUBLE_KEY

const Key& find_key(const std::string& name) {
  for (const Key& k : all_keys()) {
    if (k.name == name) return k;
  }
  throw UsageError("unknown setting: " + name);
}

const std::vector<std::string> kBackboneKeys = {
    "backbone", "backbone_dim", "backbone_seed", "embeddings", "context",
    "threads"};
const std::vector<std::string> kTrainKeys = {
    "batch_size",   "lr",          "stage1_epochs",   "stage2_max_epochs",
    "convergence_delta", "seed",   "tau",             "beta",
    "gamma",        "alpha",       "contrastive_mode", "clusters",
    "segment_len",  "top_pct",     "hidden_dims",     "embedding_dim",
    "reaugment_each_epoch", "kmeans_max_iter"};

std::vector<std::string> concat(
    std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

struct Command {
  CLI::App* app = nullptr;
  std::vector<std::string> keys;
  std::map<std::string, std::string> raw;
  std::string config_path;
};

void add_options(Command& cmd) {
  cmd.app->add_option("--config", cmd.config_path,
                      "flat key = value configuration file");
  for (const std::string& name : cmd.keys) {
    const Key& key = find_key(name);
    cmd.app->add_option(key.flag(), cmd.raw[name], key.help);
  }
}

// Defaults, then the config file, then flags.
Settings resolve(const Command& cmd) {
  Settings s;
  std::map<std::string, std::string> config;
  if (!cmd.config_path.empty()) config = parse_config_file(cmd.config_path);
  for (const auto& [name, value] : config) find_key(name);
  for (const Key& key : all_keys()) {
    const bool on_command =
        std::find(cmd.keys.begin(), cmd.keys.end(), key.name) !=
        cmd.keys.end();
    const CLI::Option* opt =
        on_command ? cmd.app->get_option(key.flag()) : nullptr;
    if (opt != nullptr && opt->count() > 0) {
      key.set(s, cmd.raw.at(key.name));
      s.explicit_keys.insert(key.name);
    } else if (const auto it = config.find(key.name); it != config.end()) {
      key.set(s, it->second);
      s.explicit_keys.insert(key.name);
    }
  }
  return s;
}

void require(const std::string& value, const std::string& key) {
  if (value.empty()) {
    throw UsageError("missing required option " + find_key(key).flag() +
                     " (or `" + key + "` in the config file)");
  }
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err)
      : out_(out), err_(err), level_(log_level_from_env()) {}

  void info(const std::string& line) const {
    if (level_ >= LogLevel::kInfo) err_ << line << '\n';
  }

  void echo_config(const Settings& s, const std::vector<std::string>& keys) {
    if (level_ < LogLevel::kInfo) return;
    for (const std::string& name : keys) {
      err_ << "config " << name << " = " << find_key(name).get(s) << '\n';
    }
  }

  void emit(const Settings& s, const std::string& contents) {
    if (s.out.empty()) {
      out_ << contents;
      out_.flush();
    } else {
      write_file_atomic(s.out, contents);
      info("wrote " + s.out);
    }
  }

  void lexicon_stats(const Settings& s) {
    require(s.lexicon, "lexicon");
    const EmotionLexicon lexicon = parse_lexicon(s.lexicon);
    Json report;
    report["entries"] = lexicon.size();
    report["duplicates"] = lexicon.duplicate_count();
    double vad_sum[3] = {0, 0, 0};
    double be5_sum[kBe5Size] = {};
    double arousal_min = 0.0, arousal_max = 0.0;
    for (std::size_t i = 0; i < lexicon.size(); ++i) {
      const EmotionEntry& e = lexicon.entries()[i];
      vad_sum[0] += e.vad.valence;
      vad_sum[1] += e.vad.arousal;
      vad_sum[2] += e.vad.dominance;
      for (std::size_t k = 0; k < kBe5Size; ++k) be5_sum[k] += e.be5[k];
      arousal_min = i == 0 ? e.vad.arousal : std::min(arousal_min, e.vad.arousal);
      arousal_max = i == 0 ? e.vad.arousal : std::max(arousal_max, e.vad.arousal);
    }
    const double n = lexicon.empty() ? 1.0 : static_cast<double>(lexicon.size());
    report["vad_mean"] = {{"valence", vad_sum[0] / n},
                          {"arousal", vad_sum[1] / n},
                          {"dominance", vad_sum[2] / n}};
    static constexpr const char* kBe5Names[] = {"joy", "anger", "sadness",
                                                "fear", "disgust"};
    Json be5;
    for (std::size_t k = 0; k < kBe5Size; ++k) be5[kBe5Names[k]] = be5_sum[k] / n;
    report["be5_mean"] = be5;
    report["arousal_range"] = {arousal_min, arousal_max};
    if (!s.synonyms.empty()) {
      const SynonymTable synonyms = parse_synonyms(s.synonyms);
      std::size_t with_entry = 0;
      for (const EmotionEntry& e : lexicon.entries()) {
        if (synonyms.find(e.word) != nullptr) ++with_entry;
      }
      report["synonym_words"] = synonyms.size();
      report["synonym_duplicates"] = synonyms.duplicate_count();
      report["lexicon_words_with_synonyms"] = with_entry;
    }
    emit(s, report.dump(2) + "\n");
  }

  void augment(const Settings& s) {
    require(s.corpus, "corpus");
    require(s.lexicon, "lexicon");
    require(s.synonyms, "synonyms");
    s.train.augment.validate();
    const Corpus corpus = load_corpus(s.corpus);
    const EmotionLexicon lexicon = parse_lexicon(s.lexicon);
    const SynonymTable synonyms = parse_synonyms(s.synonyms);
    std::ostringstream buf;
    write_augmented_corpus(buf, corpus, lexicon, synonyms, s.train.augment);
    info("augmented " + std::to_string(corpus.size()) + " utterances");
    emit(s, buf.str());
  }

  void train_stage1(const Settings& s) {
    require(s.corpus, "corpus");
    require(s.out, "out");
    const Inputs in = load_training_inputs(s);
    const auto backbone = make_backbone(s, std::nullopt);
    PairDataset dataset = build_pairs(s, in, *backbone);
    const StageResult result =
        stage1(dataset, s.train, hooks(s, in, *backbone));
    save_checkpoint(s.out, result.checkpoint);
    info("stage1 finished: epochs=" +
         std::to_string(result.report.epochs.size()) + " seconds=" +
         format_double(result.report.seconds) + " checkpoint=" + s.out);
  }

  void train_stage2(const Settings& s) {
    require(s.corpus, "corpus");
    require(s.out, "out");
    require(s.checkpoint, "checkpoint");
    const Checkpoint initial = load_checkpoint(s.checkpoint);
    const Inputs in = load_training_inputs(s);
    const auto backbone = make_backbone(s, initial.backbone_dim());
    check_model_dims(s, initial);
    PairDataset dataset = build_pairs(s, in, *backbone);
    const StageResult result =
        stage2(dataset, initial, s.train, hooks(s, in, *backbone));
    save_checkpoint(s.out, result.checkpoint);
    info(std::string("stage2 finished: ") +
         (result.report.converged ? "converged" : "epoch cap reached") +
         " epochs=" + std::to_string(result.report.epochs.size()) +
         " seconds=" + format_double(result.report.seconds) +
         " checkpoint=" + s.out);
  }

  void classify_ids(const Settings& s) {
    require(s.ids, "ids");
    const Scoring sc = load_scoring(s);
    std::vector<std::size_t> rows;
    std::stringstream ss(s.ids);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (id.empty()) continue;
      const auto index = sc.corpus.find(id);
      if (!index) throw DataError("unknown utterance id: " + id);
      rows.push_back(*index);
    }
    emit(s, assignments_jsonl(s, sc, rows));
  }

  void cluster_all(const Settings& s) {
    const Scoring sc = load_scoring(s);
    std::vector<std::size_t> rows(sc.corpus.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    emit(s, assignments_jsonl(s, sc, rows));
  }

  void eval(const Settings& s) {
    const Scoring sc = load_scoring(s);
    const Matrix r = initial_matrix(s, sc);
    std::vector<std::optional<std::string>> gold;
    for (const Utterance& u : sc.corpus.utterances()) gold.push_back(u.label);
    const EvalReport report =
        evaluate(sc.checkpoint, r, gold, s.train.loss.alpha);
    if (report.evaluated == 0) {
      throw DataError("corpus has no gold labels to evaluate against",
                      s.corpus);
    }
    Json j;
    j["accuracy"] = report.accuracy;
    j["evaluated"] = report.evaluated;
    j["categories"] = report.categories;
    j["confusion"] = report.confusion;
    j["cluster_sizes"] = report.cluster_sizes;
    j["silhouette"] = report.silhouette;
    emit(s, j.dump(2) + "\n");
  }

  void project(const Settings& s) {
    if (s.method == "tsne") {
      throw UsageError("t-SNE projection is reserved and not implemented; "
                       "use --method pca");
    }
    if (s.method != "pca") throw UsageError("unknown projection method");
    const Scoring sc = load_scoring(s);
    const Matrix r = initial_matrix(s, sc);
    const Matrix h = encode(sc.checkpoint.model, r);
    const Matrix xy = project2d(h);
    std::vector<std::size_t> clusters;
    if (sc.checkpoint.cluster_count() > 0) {
      clusters = hard_labels(
          soft_assign(h, sc.checkpoint.centroids, s.train.loss.alpha));
    }
    std::string csv = "id,x,y,label,cluster\n";
    for (std::size_t i = 0; i < sc.corpus.size(); ++i) {
      const Utterance& u = sc.corpus.utterances()[i];
      const auto row = static_cast<Eigen::Index>(i);
      csv += csv_field(u.id) + "," + format_double(xy(row, 0)) + "," +
             format_double(xy(row, 1)) + "," +
             csv_field(u.label.value_or("")) + "," +
             (clusters.empty() ? std::string() : std::to_string(clusters[i])) +
             "\n";
    }
    emit(s, csv);
  }

 private:
  struct Inputs {
    Corpus corpus;
    EmotionLexicon lexicon;
    SynonymTable synonyms;
  };

  struct Scoring {
    Corpus corpus;
    EmotionLexicon lexicon;
    Checkpoint checkpoint;
    std::unique_ptr<BackboneProvider> backbone;
  };

  static std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }

  Inputs load_training_inputs(const Settings& s) {
    require(s.corpus, "corpus");
    require(s.lexicon, "lexicon");
    require(s.synonyms, "synonyms");
    s.train.validate();
    Inputs in{load_corpus(s.corpus), parse_lexicon(s.lexicon),
              parse_synonyms(s.synonyms)};
    if (in.corpus.empty()) throw DataError("corpus is empty", s.corpus);
    info("loaded " + std::to_string(in.corpus.size()) + " utterances in " +
         std::to_string(in.corpus.document_count()) + " documents, " +
         std::to_string(in.lexicon.size()) + " lexicon entries, " +
         std::to_string(in.synonyms.size()) + " synonym entries");
    return in;
  }

  Scoring load_scoring(const Settings& s) {
    require(s.checkpoint, "checkpoint");
    require(s.corpus, "corpus");
    require(s.lexicon, "lexicon");
    Scoring sc{load_corpus(s.corpus), parse_lexicon(s.lexicon),
               load_checkpoint(s.checkpoint), nullptr};
    sc.backbone = make_backbone(s, sc.checkpoint.backbone_dim());
    return sc;
  }

  // With a checkpoint, the hash backbone defaults to its d_b; an explicit
  // mismatch is a data error.
  std::unique_ptr<BackboneProvider> make_backbone(
      const Settings& s, std::optional<std::size_t> checkpoint_dim) {
    if (s.backbone == "file") {
      require(s.embeddings, "embeddings");
      auto store = std::make_shared<const EmbeddingStore>(
          read_embedding_store(std::filesystem::path(s.embeddings)));
      if (checkpoint_dim && *checkpoint_dim != store->dim()) {
        throw DataError("embedding store dim " + std::to_string(store->dim()) +
                            " does not match checkpoint d_b " +
                            std::to_string(*checkpoint_dim),
                        s.embeddings);
      }
      return std::make_unique<FileBackbone>(store, store->dim());
    }
    std::size_t dim = s.backbone_dim;
    if (checkpoint_dim) {
      if (s.explicit_keys.contains("backbone_dim") && dim != *checkpoint_dim) {
        throw DataError("backbone_dim " + std::to_string(dim) +
                            " does not match checkpoint d_b " +
                            std::to_string(*checkpoint_dim),
                        s.checkpoint);
      }
      dim = *checkpoint_dim;
    }
    return std::make_unique<HashBackbone>(dim, s.backbone_seed);
  }

  void check_model_dims(const Settings& s, const Checkpoint& ckpt) {
    if (s.explicit_keys.contains("embedding_dim") &&
        s.train.embedding_dim != ckpt.embedding_dim()) {
      throw DataError("embedding_dim does not match the checkpoint",
                      s.checkpoint);
    }
  }

  PairDataset build_pairs(const Settings& s, const Inputs& in,
                          const BackboneProvider& backbone) {
    PairDataset dataset =
        make_pairs(in.corpus, in.lexicon, in.synonyms, backbone, s.train);
    info("embedded " + std::to_string(dataset.size()) + " pairs (d_r = " +
         std::to_string(dataset.originals.cols()) + ")");
    return dataset;
  }

  TrainHooks hooks(const Settings& s, const Inputs& in,
                   const BackboneProvider& backbone) {
    TrainHooks h;
    h.on_epoch = [this](const EpochLog& log) { info(format_epoch_log(log)); };
    if (s.train.reaugment_each_epoch) {
      h.reaugment = [&s, &in, &backbone](std::size_t epoch,
                                         PairDataset& dataset) {
        dataset.augmented = augmented_embeddings(
            in.corpus, in.lexicon, in.synonyms, backbone, s.train, epoch);
      };
    }
    return h;
  }

  Matrix initial_matrix(const Settings& s, const Scoring& sc) {
    Matrix r(static_cast<Eigen::Index>(sc.corpus.size()),
             static_cast<Eigen::Index>(sc.backbone->dim() + kBe5Size));
    for (std::size_t i = 0; i < sc.corpus.size(); ++i) {
      r.row(static_cast<Eigen::Index>(i)) =
          initial_embedding(sc.corpus.window_at(i, s.train.context),
                            *sc.backbone, sc.lexicon)
              .values.transpose();
    }
    return r;
  }

  std::string assignments_jsonl(const Settings& s, const Scoring& sc,
                                const std::vector<std::size_t>& rows) {
    Matrix r(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(sc.backbone->dim() + kBe5Size));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      r.row(static_cast<Eigen::Index>(i)) =
          initial_embedding(sc.corpus.window_at(rows[i], s.train.context),
                            *sc.backbone, sc.lexicon)
              .values.transpose();
    }
    const auto results = classify(sc.checkpoint, r, s.train.loss.alpha);
    std::string lines;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Json j;
      j["id"] = sc.corpus.utterances()[rows[i]].id;
      j["cluster"] = results[i].cluster;
      j["q"] = std::vector<double>(results[i].q.data(),
                                   results[i].q.data() + results[i].q.size());
      lines += j.dump() + "\n";
    }
    return lines;
  }

  std::ostream& out_;
  std::ostream& err_;
  LogLevel level_;
};

}  // namespace

std::map<std::string, std::string> parse_config_text(
    const std::string& text, const std::string& source) {
  std::map<std::string, std::string> values;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  const auto trim = [](std::string v) {
    const auto begin = v.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return std::string();
    const auto end = v.find_last_not_of(" \t\r");
    return v.substr(begin, end - begin + 1);
  };
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(source + ":" + std::to_string(line_no) +
                       ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw UsageError(source + ":" + std::to_string(line_no) +
                       ": empty key");
    }
    values[key] = trim(t.substr(eq + 1));
  }
  return values;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file", path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Self-supervised text style embeddings: augmentation, "
               "contrastive pre-training, deep embedded clustering",
               "cadec"};
  app.require_subcommand(1);

  const auto data_keys = std::vector<std::string>{"corpus", "lexicon",
                                                  "synonyms", "out"};
  const auto scoring_keys = concat(
      {{"corpus", "lexicon", "checkpoint", "out", "alpha"}, kBackboneKeys});

  std::vector<std::unique_ptr<Command>> commands;
  const auto make = [&](CLI::App* parent, const std::string& name,
                        const std::string& description,
                        std::vector<std::string> keys) {
    auto cmd = std::make_unique<Command>();
    cmd->app = parent->add_subcommand(name, description);
    cmd->keys = std::move(keys);
    add_options(*cmd);
    commands.push_back(std::move(cmd));
    return commands.back().get();
  };

  CLI::App* lexicon_app =
      app.add_subcommand("lexicon", "inspect the emotion lexicon");
  lexicon_app->require_subcommand(1);
  Command* stats = make(lexicon_app, "stats", "summary statistics as JSON",
                        {"lexicon", "synonyms", "out"});
  Command* augment = make(&app, "augment",
                          "write the augmented corpus as JSON Lines",
                          concat({data_keys, {"segment_len", "top_pct", "seed"}}));
  CLI::App* train_app = app.add_subcommand("train", "train the style encoder");
  train_app->require_subcommand(1);
  Command* stage1_cmd =
      make(train_app, "stage1", "contrastive pre-training",
           concat({data_keys, kBackboneKeys, kTrainKeys}));
  Command* stage2_cmd =
      make(train_app, "stage2", "joint clustering fine-tuning",
           concat({data_keys, {"checkpoint"}, kBackboneKeys, kTrainKeys}));
  Command* classify_cmd =
      make(&app, "classify", "cluster assignment for selected utterances",
           concat({scoring_keys, {"ids"}}));
  Command* cluster_cmd = make(&app, "cluster",
                              "cluster assignment for every utterance",
                              scoring_keys);
  Command* eval_cmd = make(&app, "eval",
                           "clustering accuracy against gold labels",
                           scoring_keys);
  Command* project_cmd = make(&app, "project",
                              "2-D projection of the embeddings as CSV",
                              concat({scoring_keys, {"method"}}));

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Runner runner(out, err);
  try {
    for (const auto& cmd : commands) {
      if (!cmd->app->parsed()) continue;
      const Settings s = resolve(*cmd);
      if (cmd.get() != stats) runner.echo_config(s, cmd->keys);
      if (cmd.get() == stats) runner.lexicon_stats(s);
      else if (cmd.get() == augment) runner.augment(s);
      else if (cmd.get() == stage1_cmd) runner.train_stage1(s);
      else if (cmd.get() == stage2_cmd) runner.train_stage2(s);
      else if (cmd.get() == classify_cmd) runner.classify_ids(s);
      else if (cmd.get() == cluster_cmd) runner.cluster_all(s);
      else if (cmd.get() == eval_cmd) runner.eval(s);
      else if (cmd.get() == project_cmd) runner.project(s);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace cadec::cli
