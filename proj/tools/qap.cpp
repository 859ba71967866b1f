// qap: command-line front end for question-answer-pair annotation.
//
// Exit codes: 0 success, 1 violations or evaluation mismatches found,
// 2 usage, input or parse errors.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qap/agreement.hpp"
#include "qap/error.hpp"
#include "qap/ingest.hpp"
#include "qap/metrics.hpp"
#include "qap/pipeline.hpp"
#include "qap/tree.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

// Carries the file an error came from, for messages like "x.tsv: line 17: ...".
struct FileError : qap::Error {
  FileError(const std::string& path, const std::string& what) : qap::Error(path + ": " + what) {}
};

class MissingModel : public qap::Error {
 public:
  MissingModel() : qap::Error("tree mode requires --model") {}
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path, "cannot open for reading");
  return in;
}

template <class F>
auto with_file(const std::string& path, F parse) {
  std::ifstream in = open_in(path);
  try {
    return parse(in);
  } catch (const FileError&) {
    throw;
  } catch (const qap::Error& e) {
    throw FileError(path, e.what());
  }
}

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw FileError(path, "cannot open for writing");
  out << content;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void stamp(ordered_json& j, bool deterministic) {
  if (!deterministic) j["generated_at"] = timestamp();
}

std::vector<qap::Dialogue> read_dialogues(const std::string& path) {
  return with_file(path, [](std::istream& in) { return qap::parse_dialogue_jsonl(in); });
}

qap::AnnotationSet read_annotation_file(const std::string& path) {
  return with_file(path, [](std::istream& in) { return qap::read_annotations(in); });
}

struct ExtractorOptions {
  std::string config;
  std::vector<std::string> lexicons;  // NAME=PATH
  std::optional<double> threshold;
  std::string language;
  std::string wh_map;
  std::size_t length_cap = qap::RuleConfig{}.cliche_length_cap;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config, "Extractor config JSON");
    cmd->add_option("--lexicon", lexicons, "Lexicon override NAME=PATH (wh, aux, tag, cliche)");
    cmd->add_option("--threshold", threshold, "Similarity threshold for last_utt_similar")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--language", language, "Language of the extractor lexicons");
    cmd->add_option("--wh-map", wh_map, "wh-token to feature map (two columns)");
    cmd->add_option("--length-cap", length_cap, "Rule classifier: longest 'short' question");
  }

  qap::ExtractorConfig extractor() const {
    qap::ExtractorConfig cfg = qap::ExtractorConfig::english();
    if (!config.empty()) {
      cfg = with_file(config, [&](std::istream& in) {
        return qap::load_extractor_config(in, fs::path(config).parent_path());
      });
    }
    for (const std::string& spec : lexicons) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw qap::Error("--lexicon expects NAME=PATH, got '" + spec + "'");
      const std::string name = spec.substr(0, eq), path = spec.substr(eq + 1);
      qap::Lexicon lex = with_file(path, [&](std::istream& in) { return qap::load_lexicon(in, name); });
      if (name == "wh") cfg.wh_lexicon = std::move(lex);
      else if (name == "aux") cfg.aux_lexicon = std::move(lex);
      else if (name == "tag") cfg.tag_lexicon = std::move(lex);
      else if (name == "cliche") cfg.cliche_lexicon = std::move(lex);
      else throw qap::Error("unknown lexicon name '" + name + "' (expected wh, aux, tag or cliche)");
    }
    if (threshold) cfg.similarity_threshold = *threshold;
    if (!language.empty()) cfg.language = language;
    return cfg;
  }
};

struct SplitOptions {
  std::optional<std::size_t> count;
  std::string list;
  std::string part;

  void add(CLI::App* cmd, const std::string& default_part) {
    part = default_part;
    auto* c = cmd->add_option("--split-count", count, "Gold portion: first N utterances in (dialogue, turn) order");
    cmd->add_option("--split-list", list, "Gold portion: file listing dialogue ids, one per line")->excludes(c);
    cmd->add_option("--split-part", part, "Portion to use when splitting")
        ->check(CLI::IsMember({"gold", "test", "all"}));
  }

  std::vector<qap::Dialogue> apply(std::vector<qap::Dialogue> dialogues) const {
    if (part == "all" || (!count && list.empty())) return dialogues;
    qap::DatasetSplit split;
    if (count) {
      std::size_t total = 0;
      for (const auto& d : dialogues) total += d.utterances.size();
      if (*count > total) {
        throw qap::Error("--split-count " + std::to_string(*count) + " exceeds corpus size " + std::to_string(total));
      }
      split = qap::split_by_utterance_count(dialogues, *count);
    } else {
      std::set<std::string> ids;
      std::ifstream in = open_in(list);
      for (std::string line; std::getline(in, line);) {
        const auto t = qap::trim(line);
        if (!t.empty() && t.front() != '#') ids.emplace(t);
      }
      split = qap::split_by_dialogue_ids(dialogues, ids);
    }
    return part == "gold" ? split.gold : split.test;
  }
};

// ---------------------------------------------------------------------------

struct IngestCmd {
  std::string input, output, format = "jsonl", dialogue_id, language = "en", marker = "--";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("ingest", "Normalize a transcript into canonical dialogue JSONL");
    cmd->add_option("--input", input, "Transcript file")->required();
    cmd->add_option("--format", format, "Input format")->check(CLI::IsMember({"jsonl", "tsv", "eaf"}));
    cmd->add_option("--output", output, "Output JSONL (default stdout)");
    cmd->add_option("--dialogue-id", dialogue_id, "Dialogue id for tsv/eaf input (default: file stem)");
    cmd->add_option("--language", language, "Language code for tsv/eaf input");
    cmd->add_option("--marker", marker, "Interruption marker at the end of a turn");
    cmd->callback([this] { run(); });
  }

  int status = 0;
  void run() {
    qap::TranscriptOptions opt{dialogue_id.empty() ? fs::path(input).stem().string() : dialogue_id, language, marker};
    std::vector<qap::Dialogue> dialogues = with_file(input, [&](std::istream& in) {
      if (format == "tsv") return qap::parse_tsv_transcript(in, opt);
      if (format == "eaf") return qap::parse_eaf(in, opt);
      return qap::parse_dialogue_jsonl(in);
    });
    std::ostringstream out;
    qap::write_dialogue_jsonl(out, dialogues);
    emit(output, out.str());
    for (const auto& d : dialogues) {
      std::cerr << "ingest: " << d.dialogue_id << ": " << d.utterances.size() << " utterances\n";
    }
  }
};

struct ClassifyCmd {
  std::string input, output, mode = "rule", model, questions, annotator_id;
  ExtractorOptions extractor;
  SplitOptions split;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("classify", "Assign question types to the questions of a corpus");
    cmd->add_option("--input", input, "Canonical dialogue JSONL")->required();
    cmd->add_option("--output", output, "Annotation JSONL (default stdout)");
    cmd->add_option("--mode", mode, "Classifier")->check(CLI::IsMember({"rule", "tree"}));
    cmd->add_option("--model", model, "Tree model file (tree mode)");
    cmd->add_option("--questions", questions, "Annotation file whose questions override '?' detection");
    cmd->add_option("--annotator-id", annotator_id, "annotator_id written to the output (default: the mode)");
    extractor.add(cmd);
    split.add(cmd, "test");
    cmd->callback([this] { run(); });
  }

  void run() {
    qap::Classifier c;
    c.extractor = extractor.extractor();
    c.rules.cliche_length_cap = extractor.length_cap;
    if (!extractor.wh_map.empty()) {
      c.wh_map = with_file(extractor.wh_map, [](std::istream& in) { return qap::load_wh_feature_map(in); });
    }
    if (mode == "tree") {
      if (model.empty()) throw MissingModel();
      c.model = with_file(model, [](std::istream& in) { return qap::load_model(in); });
    }
    c.annotator_id = annotator_id.empty() ? mode : annotator_id;

    const auto dialogues = split.apply(read_dialogues(input));
    for (const auto& d : dialogues) {
      if (d.language != c.extractor.language) {
        std::cerr << "classify: warning: dialogue " << d.dialogue_id << " is '" << d.language
                  << "' but the lexicons are '" << c.extractor.language << "'\n";
        break;
      }
    }
    std::optional<qap::AnnotationSet> targets;
    if (!questions.empty()) targets = read_annotation_file(questions);

    const qap::AnnotationSet out = qap::classify_dialogues(dialogues, c, targets ? &*targets : nullptr);
    std::ostringstream buf;
    qap::write_annotations(buf, out);
    emit(output, buf.str());
  }
};

struct TrainCmd {
  std::string input, annotations, output, summary, annotator;
  std::optional<std::size_t> max_depth;
  std::size_t min_samples_leaf = 1;
  bool deterministic = false;
  ExtractorOptions extractor;
  SplitOptions split;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("train", "Train a decision tree on gold question annotations");
    cmd->add_option("--input", input, "Canonical dialogue JSONL")->required();
    cmd->add_option("--annotations", annotations, "Gold annotation JSONL")->required();
    cmd->add_option("--output", output, "Model file")->required();
    cmd->add_option("--summary", summary, "Training summary JSON (default stdout)");
    cmd->add_option("--annotator", annotator, "Use only this annotator's questions");
    cmd->add_option("--max-depth", max_depth, "Maximum tree depth")->check(CLI::PositiveNumber);
    cmd->add_option("--min-samples-leaf", min_samples_leaf, "Minimum instances per leaf")->check(CLI::PositiveNumber);
    cmd->add_flag("--deterministic", deterministic, "Omit the timestamp from the summary");
    extractor.add(cmd);
    split.add(cmd, "gold");
    cmd->callback([this] { run(); });
  }

  void run() {
    const auto dialogues = split.apply(read_dialogues(input));
    qap::AnnotationSet gold = read_annotation_file(annotations);
    if (!annotator.empty()) {
      std::erase_if(gold.questions, [&](const qap::QuestionAnnotation& q) { return q.annotator_id != annotator; });
    }
    std::size_t skipped = 0;
    auto data = qap::build_instances(dialogues, gold, extractor.extractor(), &skipped);
    if (data.empty()) throw qap::EmptyTrainingSet();

    qap::TrainConfig cfg;
    cfg.max_depth = max_depth;
    cfg.min_samples_leaf = min_samples_leaf;
    const qap::TreeModel model = qap::train_tree(data, cfg);
    std::ostringstream buf;
    qap::save_model(buf, model);
    emit(output, buf.str());

    std::vector<qap::QuestionType> labels, predicted;
    for (const auto& x : data) {
      labels.push_back(x.label);
      predicted.push_back(qap::predict(model, x.fv));
    }
    ordered_json j;
    j["instances"] = data.size();
    j["skipped_annotations"] = skipped;
    j["depth"] = model.depth();
    j["leaves"] = model.leaf_count();
    j["training_accuracy"] = qap::score(qap::confusion(labels, predicted)).accuracy;
    j["majority_label"] = qap::to_string(qap::majority_baseline(labels).label());
    ordered_json dist = ordered_json::object();
    const auto counts = qap::count_labels(labels);
    for (auto q : qap::kReportOrder) dist[std::string(qap::to_string(q))] = counts[qap::index_of(q)];
    j["label_distribution"] = dist;
    stamp(j, deterministic);
    emit(summary, j.dump(2) + "\n");
  }
};

struct EvaluateCmd {
  std::string gold, pred, output, table, baseline_from;
  bool deterministic = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Score predicted question types against gold annotations");
    cmd->add_option("--gold", gold, "Gold annotation JSONL")->required();
    cmd->add_option("--pred", pred, "Predicted annotation JSONL")->required();
    cmd->add_option("--output", output, "Report JSON (default stdout)");
    cmd->add_option("--table", table, "Also write the confusion matrix as a text table");
    cmd->add_option("--baseline-from", baseline_from,
                    "Training annotations; adds a majority-class baseline scored on the gold items");
    cmd->add_flag("--deterministic", deterministic, "Omit the timestamp from the report");
    cmd->callback([this] { status = run(); });
  }

  int status = 0;
  int run() {
    const auto first_by_key = [](const qap::AnnotationSet& s) {
      std::map<qap::ItemKey, qap::QuestionType> m;
      for (const auto& q : s.questions) m.emplace(q.key(), q.q_type);
      return m;
    };
    const auto g = first_by_key(read_annotation_file(gold));
    const auto p = first_by_key(read_annotation_file(pred));
    std::vector<qap::QuestionType> gl, pl;
    std::size_t missing = 0;
    for (const auto& [key, label] : g) {
      auto it = p.find(key);
      if (it == p.end()) {
        ++missing;
        continue;
      }
      gl.push_back(label);
      pl.push_back(it->second);
    }
    const std::size_t unmatched_pred = p.size() - gl.size();

    const qap::EvalReport report = qap::score(qap::confusion(gl, pl));
    ordered_json j = qap::to_json(report);
    j["items"] = gl.size();
    j["gold_without_prediction"] = missing;
    j["predictions_without_gold"] = unmatched_pred;
    if (!baseline_from.empty()) {
      std::vector<qap::QuestionType> train;
      for (const auto& q : read_annotation_file(baseline_from).questions) train.push_back(q.q_type);
      const auto baseline = qap::majority_baseline(train);
      const std::vector<qap::QuestionType> constant(gl.size(), baseline.label());
      ordered_json b = qap::to_json(qap::score(qap::confusion(gl, constant)));
      b["label"] = qap::to_string(baseline.label());
      j["baseline"] = b;
    }
    stamp(j, deterministic);
    emit(output, j.dump(2) + "\n");
    if (!table.empty()) emit(table, qap::format_table(report.matrix));
    return missing + unmatched_pred > 0 ? kExitViolations : 0;
  }
};

struct AgreeCmd {
  std::vector<std::string> inputs;
  std::vector<std::string> layers{"questions", "features", "answers"};
  std::string output, disagreements;
  bool deterministic = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("agree", "Inter-annotator agreement (A_o and Cohen's kappa)");
    cmd->add_option("--input", inputs, "Annotation JSONL file(s); annotators are told apart by annotator_id")
        ->required();
    cmd->add_option("--layer", layers, "Layers to compare")->check(CLI::IsMember({"questions", "features", "answers"}));
    cmd->add_option("--output", output, "Report JSON (default stdout)");
    cmd->add_option("--disagreements", disagreements, "Write disagreement records as JSONL");
    cmd->add_flag("--deterministic", deterministic, "Omit the timestamp from the report");
    cmd->callback([this] { run(); });
  }

  void run() {
    // An annotator id seen in more than one file is suffixed with "#<file>"
    // so that two files by the same person can still be compared.
    std::map<std::string, std::set<std::size_t>> files_of;
    std::vector<qap::AnnotationSet> sets;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      sets.push_back(read_annotation_file(inputs[i]));
      for (const auto& q : sets.back().questions) files_of[q.annotator_id].insert(i);
      for (const auto& a : sets.back().answers) files_of[a.annotator_id].insert(i);
    }
    qap::AnnotationSet merged;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto rename = [&](std::string& id) {
        if (files_of[id].size() > 1) id += "#" + std::to_string(i + 1);
      };
      for (auto q : sets[i].questions) {
        rename(q.annotator_id);
        merged.questions.push_back(std::move(q));
      }
      for (auto a : sets[i].answers) {
        rename(a.annotator_id);
        merged.answers.push_back(std::move(a));
      }
    }

    ordered_json j;
    j["layers"] = ordered_json::array();
    for (const std::string& name : layers) {
      const qap::Layer layer = qap::parse_layer(name);
      try {
        j["layers"].push_back(qap::to_json(qap::pairwise_agreement(merged, layer)));
      } catch (const qap::NoAlignedItems& e) {
        if (layer == qap::Layer::Questions) throw;
        std::cerr << "agree: skipping layer " << name << ": " << e.what() << "\n";
      }
    }
    stamp(j, deterministic);
    emit(output, j.dump(2) + "\n");

    if (!disagreements.empty()) {
      std::ostringstream buf;
      for (const auto& r : qap::disagreement_report(merged)) buf << qap::to_json(r).dump() << '\n';
      emit(disagreements, buf.str());
    }
  }
};

struct ValidateCmd {
  std::string input, dialogues, output;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("validate", "Check annotations against the tagset constraints");
    cmd->add_option("--input", input, "Annotation JSONL")->required();
    cmd->add_option("--dialogues", dialogues, "Canonical dialogue JSONL for reference and span checks");
    cmd->add_option("--output", output, "Violations as JSONL (default stdout)");
    cmd->callback([this] { status = run(); });
  }

  int status = 0;
  int run() {
    const qap::AnnotationSet set = read_annotation_file(input);
    std::vector<qap::Dialogue> ds;
    if (!dialogues.empty()) ds = read_dialogues(dialogues);
    const auto violations = qap::validate_annotation_set(set, ds);
    std::ostringstream buf;
    for (const auto& v : violations) {
      ordered_json j;
      j["violation"] = qap::to_string(v.kind);
      j["dialogue_id"] = v.item.dialogue_id;
      j["turn_index"] = v.item.turn_index;
      j["span_start"] = v.item.span.start;
      j["span_end"] = v.item.span.end;
      j["annotator_id"] = v.annotator_id;
      j["detail"] = v.detail;
      buf << j.dump() << '\n';
    }
    emit(output, buf.str());
    std::cerr << "validate: " << violations.size() << " violation(s)\n";
    return violations.empty() ? 0 : kExitViolations;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Question-answer pair annotation toolkit"};
  app.require_subcommand(1);

  IngestCmd ingest;
  ClassifyCmd classify;
  TrainCmd train;
  EvaluateCmd evaluate;
  AgreeCmd agree;
  ValidateCmd validate;
  ingest.add(app);
  classify.add(app);
  train.add(app);
  evaluate.add(app);
  agree.add(app);
  validate.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qap: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return std::max({evaluate.status, validate.status});
}
