// Copyright 2026 the dialex authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dialex/bli_eval.hpp"
#include "dialex/candidates.hpp"
#include "dialex/forest.hpp"
#include "dialex/io.hpp"
#include "dialex/lexicon.hpp"
#include "dialex/retrieval.hpp"

namespace {

using namespace dialex;

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string fmt_count(double v) {
  if (v == static_cast<double>(static_cast<long long>(v))) {
    return std::to_string(static_cast<long long>(v));
  }
  return fmt(v, 1);
}

// Effective-config provenance header prepended to every text output.
class Header {
 public:
  explicit Header(std::string subcommand) : sub_(std::move(subcommand)) {}
  Header& kv(std::string_view key, std::string_view value) {
    line_ += ' ';
    line_ += key;
    line_ += '=';
    line_ += value;
    return *this;
  }
  Header& kv(std::string_view key, std::uint64_t value) { return kv(key, std::to_string(value)); }
  Header& kv(std::string_view key, int value) { return kv(key, std::to_string(value)); }
  Header& kv(std::string_view key, double value) { return kv(key, fmt(value, 6)); }
  std::string str() const { return "# dialex " + sub_ + line_ + "\n"; }

 private:
  std::string sub_;
  std::string line_;
};

unsigned resolve_jobs_option(unsigned jobs_flag) {
  if (jobs_flag > 0) return jobs_flag;
  if (const char* env = std::getenv("DIALEX_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw UsageError("empty seed list '" + text + "'");
  return seeds;
}

std::vector<double> parse_fraction_list(const std::string& text) {
  std::vector<double> fractions;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    fractions.push_back(std::stod(item));
  }
  if (fractions.empty()) throw UsageError("empty fraction list '" + text + "'");
  return fractions;
}

// ---- shared option blocks ----

struct ForestOpts {
  int trees = 100;
  int max_features = 3;
  bool no_bootstrap = false;
  int min_samples_split = 2;
  int max_depth = 0;
  double pos_weight = 1.0;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--trees", trees, "number of trees (default 100)");
    cmd->add_option("--max-features", max_features, "features per split (default 3)");
    cmd->add_flag("--no-bootstrap", no_bootstrap, "train every tree on the full sample");
    cmd->add_option("--min-samples-split", min_samples_split, "minimum rows to split (default 2)");
    cmd->add_option("--max-depth", max_depth, "depth cap, 0 = unlimited");
    cmd->add_option("--pos-weight", pos_weight, "positive class weight (default 1)");
    cmd->add_option("--seed", seed, "RNG seed (default 0)");
  }

  ForestParams params() const {
    ForestParams p;
    p.n_trees = trees;
    p.max_features = max_features;
    p.bootstrap = !no_bootstrap;
    p.min_samples_split = min_samples_split;
    p.max_depth = max_depth;
    p.positive_class_weight = pos_weight;
    p.seed = seed;
    return p;
  }

  void describe(Header& h) const {
    h.kv("trees", trees)
        .kv("max_features", max_features)
        .kv("bootstrap", no_bootstrap ? "0" : "1")
        .kv("min_samples_split", min_samples_split)
        .kv("max_depth", max_depth)
        .kv("pos_weight", pos_weight)
        .kv("seed", seed);
  }
};

struct PairOpts {
  std::string pairs_path;
  bool keep_case = false;
  bool inflected_positive = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pairs", pairs_path, "labeled pairs TSV (german<TAB>dialect<TAB>label)")
        ->required();
    cmd->add_flag("--keep-case", keep_case, "skip lowercasing during normalization");
    cmd->add_flag("--inflected-positive", inflected_positive,
                  "map the 'inflected' class to positive");
  }

  std::vector<LabeledPair> load() const {
    return read_labeled_pairs_tsv(read_file(pairs_path),
                                  NormalizeOptions{.lowercase = !keep_case},
                                  LabelOptions{.inflected_positive = inflected_positive});
  }

  void describe(Header& h) const {
    h.kv("pairs", pairs_path)
        .kv("keep_case", keep_case ? "1" : "0")
        .kv("inflected_positive", inflected_positive ? "1" : "0");
  }
};

std::string metrics_tsv_row(const Metrics& m, const std::string& row_name) {
  std::string out = row_name;
  out += '\t' + fmt(m.precision) + '\t' + fmt(m.recall) + '\t' + fmt(m.f1);
  out += '\t' + std::to_string(m.tp) + '\t' + std::to_string(m.fp) + '\t' +
         std::to_string(m.fn) + '\t' + std::to_string(m.tn) + '\n';
  return out;
}

// ---- subcommand implementations ----

int cmd_features(const PairOpts& pair_opts, const std::string& out_path) {
  const auto pairs = pair_opts.load();
  Header header("features");
  pair_opts.describe(header);
  std::string out = header.str();
  out += "# german\tdialect";
  for (const auto& name : kFeatureNames) out += '\t' + std::string(name);
  out += "\tlabel\n";
  for (const auto& pair : pairs) {
    out += pair.german.text() + '\t' + pair.dialect.text();
    for (const double v : pair.features) out += '\t' + fmt(v, 12);
    out += '\t';
    out += pair.positive ? '1' : '0';
    out += '\n';
  }
  atomic_write_file(out_path, out);
  return 0;
}

int cmd_train(const PairOpts& pair_opts, const ForestOpts& forest_opts,
              const std::string& out_path, unsigned jobs) {
  const auto pairs = pair_opts.load();
  const Forest forest = train_forest(pairs, forest_opts.params(), jobs);
  atomic_write_file(out_path, save_forest(forest));
  return 0;
}

int cmd_eval_bli(const std::string& model_path, const PairOpts& pair_opts, double threshold,
                 bool random_baseline_flag, std::uint64_t baseline_seed,
                 const std::string& out_path) {
  const Forest forest = load_forest(read_file(model_path));
  const auto pairs = pair_opts.load();
  const Metrics m = evaluate(forest, pairs, threshold);
  Header header("eval-bli");
  header.kv("model", model_path).kv("threshold", threshold);
  pair_opts.describe(header);
  std::string out = header.str();
  out += "# model\tprecision\trecall\tf1\ttp\tfp\tfn\ttn\n";
  out += metrics_tsv_row(m, "forest");
  if (random_baseline_flag) {
    // rate-matched coin flip over the same pairs, context only
    out += metrics_tsv_row(random_baseline(pairs, pairs, baseline_seed), "random");
  }
  atomic_write_file(out_path, out);
  return 0;
}

int cmd_cross(const std::vector<std::string>& set_specs, const std::string& seeds_text,
              const ForestOpts& forest_opts, bool keep_case, bool inflected_positive,
              double train_fraction, const std::string& out_prefix, unsigned jobs) {
  std::vector<std::pair<std::string, std::vector<LabeledPair>>> datasets;
  for (const auto& spec : set_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--set expects name=path, got '" + spec + "'");
    }
    datasets.emplace_back(spec.substr(0, eq),
                          read_labeled_pairs_tsv(
                              read_file(spec.substr(eq + 1)),
                              NormalizeOptions{.lowercase = !keep_case},
                              LabelOptions{.inflected_positive = inflected_positive}));
  }
  const auto seeds = parse_seed_list(seeds_text);
  const CrossMatrix matrix =
      cross_dialect_matrix(datasets, seeds, forest_opts.params(), train_fraction, jobs);

  const auto write_matrix = [&](const std::string& metric, double MeanMetrics::* field) {
    Header header("cross");
    header.kv("metric", metric).kv("seeds", seeds_text).kv("train_fraction", train_fraction);
    forest_opts.describe(header);
    std::string out = header.str();
    out += "train/test";
    for (const auto& t : matrix.targets) out += '\t' + t;
    out += '\n';
    for (std::size_t src = 0; src < matrix.sources.size(); ++src) {
      out += matrix.sources[src];
      for (std::size_t tgt = 0; tgt < matrix.targets.size(); ++tgt) {
        out += '\t' + fmt(matrix.cells[src][tgt].*field);
      }
      out += '\n';
    }
    atomic_write_file(out_prefix + "." + metric + ".tsv", out);
  };
  write_matrix("f1", &MeanMetrics::f1);
  write_matrix("precision", &MeanMetrics::precision);
  write_matrix("recall", &MeanMetrics::recall);
  return 0;
}

int cmd_ablate(const PairOpts& pair_opts, const std::string& fractions_text,
               const std::string& seeds_text, std::uint64_t split_seed,
               const ForestOpts& forest_opts, const std::string& out_path, unsigned jobs) {
  const auto pairs = pair_opts.load();
  const auto fractions = parse_fraction_list(fractions_text);
  const auto seeds = parse_seed_list(seeds_text);
  const auto curve = ablation_curve(pairs, fractions, seeds, forest_opts.params(),
                                    SplitSpec{0.8, split_seed, false}, jobs);
  Header header("ablate");
  header.kv("fractions", fractions_text).kv("seeds", seeds_text).kv("split_seed", split_seed);
  pair_opts.describe(header);
  forest_opts.describe(header);
  std::string out = header.str();
  out += "# fraction\tmean_f1\tstd_f1\n";
  for (const auto& point : curve) {
    out += fmt(point.fraction) + '\t' + fmt(point.mean_f1) + '\t' + fmt(point.std_f1) + '\n';
  }
  atomic_write_file(out_path, out);
  return 0;
}

int cmd_induce(const std::string& lemmas_path, const std::string& vocab_path,
               const std::string& model_path, int k, double threshold,
               const std::string& dialect_id, std::size_t top_lemmas, std::size_t top_vocab,
               bool keep_case, const std::string& out_path, const std::string& stats_path,
               const std::string& candidates_path, unsigned jobs) {
  const NormalizeOptions norm{.lowercase = !keep_case};
  const Vocabulary lemmas = read_vocabulary_tsv(read_file(lemmas_path), top_lemmas, norm);
  const Vocabulary vocab = read_vocabulary_tsv(read_file(vocab_path), top_vocab, norm);
  const Forest forest = load_forest(read_file(model_path));
  InduceOptions opts;
  opts.k = k;
  opts.threshold = threshold;
  opts.dialect_id = dialect_id;
  opts.jobs = jobs;
  const auto candidate_sets = generate_candidates(lemmas, vocab, k, jobs);
  if (!candidates_path.empty()) {
    atomic_write_file(candidates_path, candidates_tsv(candidate_sets));
  }
  const Dictionary dict = classify_candidates(candidate_sets, forest, opts);

  Header header("induce");
  header.kv("lemmas", lemmas_path)
      .kv("vocab", vocab_path)
      .kv("model", model_path)
      .kv("k", k)
      .kv("threshold", threshold)
      .kv("dialect", dialect_id);
  atomic_write_file(out_path, header.str() + export_tsv(dict));

  if (!stats_path.empty()) {
    const DictStats stats = dictionary_stats(dict);
    std::string out = header.str();
    out += "# dialect\tlemmas\tvariants\tvariants_per_lemma\n";
    out += dialect_id + '\t' + std::to_string(stats.lemma_count) + '\t' +
           std::to_string(stats.variant_count) + '\t' + fmt(stats.variants_per_lemma, 2) + '\n';
    atomic_write_file(stats_path, out);
  }
  return 0;
}

int cmd_stats(const std::string& dict_path, const std::string& dialect_id,
              const std::string& out_path) {
  const DictImport imported = import_tsv(read_file(dict_path), dialect_id);
  const DictStats stats = dictionary_stats(imported.dict);
  Header header("stats");
  header.kv("dict", dict_path).kv("duplicates_dropped", imported.duplicates);
  std::string out = header.str();
  out += "# dialect\tlemmas\tvariants\tvariants_per_lemma\n";
  out += imported.dict.dialect_id() + '\t' + std::to_string(stats.lemma_count) + '\t' +
         std::to_string(stats.variant_count) + '\t' + fmt(stats.variants_per_lemma, 2) + '\n';
  atomic_write_file(out_path, out);
  if (imported.duplicates > 0) {
    std::cerr << "warning: dropped " << imported.duplicates << " duplicate pairs\n";
  }
  return 0;
}

int cmd_index(const std::string& docs_path, const std::string& out_dir) {
  const auto docs = read_documents_jsonl(read_file(docs_path));
  const Index index = Index::build(docs);
  Header header("index");
  header.kv("docs", docs_path).kv("doc_count", static_cast<std::uint64_t>(index.doc_count()));
  index.save(out_dir, header.str());
  return 0;
}

int cmd_search(const std::string& index_dir, const std::string& queries_path,
               const std::string& dict_path, std::size_t k, double k1, double b,
               const std::string& tag, const std::string& out_path) {
  const Index index = Index::load(index_dir);
  const auto queries = read_queries_tsv(read_file(queries_path));
  Dictionary dict;
  if (!dict_path.empty()) dict = import_tsv(read_file(dict_path)).dict;
  const Bm25Params params{k1, b};

  std::vector<RunEntry> run;
  run.reserve(queries.size());
  std::uint64_t n_aug = 0;
  for (const auto& query : queries) {
    std::string text = query.text;
    if (!dict_path.empty()) {
      const ExpandedQuery expanded = expand_query(query.text, dict);
      text = expanded.text;
      n_aug += expanded.augmented ? 1 : 0;
    }
    run.push_back(RunEntry{query.id, index.search(text, k, params)});
  }
  Header header("search");
  header.kv("index", index_dir)
      .kv("queries", queries_path)
      .kv("dict", dict_path.empty() ? "-" : dict_path)
      .kv("k", static_cast<std::uint64_t>(k))
      .kv("k1", k1)
      .kv("b", b)
      .kv("n_aug", n_aug)
      .kv("n_query", static_cast<std::uint64_t>(queries.size()));
  atomic_write_file(out_path, header.str() + write_run_trec(run, tag));
  if (!dict_path.empty()) {
    std::cerr << "expanded " << n_aug << " of " << queries.size() << " queries\n";
  }
  return 0;
}

int cmd_eval_ir(const std::string& run_path, const std::string& qrels_path, std::size_t ndcg_k,
                std::size_t recall_k, const std::string& out_path) {
  const auto run = read_run_trec(read_file(run_path));
  const Qrels qrels = read_qrels_trec(read_file(qrels_path));

  std::map<std::string, const RunEntry*> by_query;
  for (const auto& entry : run) by_query[entry.query_id] = &entry;

  Header header("eval-ir");
  header.kv("run", run_path)
      .kv("qrels", qrels_path)
      .kv("ndcg_k", static_cast<std::uint64_t>(ndcg_k))
      .kv("recall_k", static_cast<std::uint64_t>(recall_k));
  std::string out = header.str();
  out += "# qid\tndcg@" + std::to_string(ndcg_k) + "\trecall@" + std::to_string(recall_k) + '\n';
  // Averages over judged queries; a judged query missing from the run scores 0.
  double ndcg_sum = 0.0, recall_sum = 0.0;
  std::size_t n = 0;
  static const std::vector<ScoredDoc> kEmptyRun;
  for (const auto& [qid, judged] : qrels.judgments()) {
    const auto it = by_query.find(qid);
    const auto& ranking = it == by_query.end() ? kEmptyRun : it->second->ranking;
    const double nd = ndcg_at_k(ranking, qrels, qid, ndcg_k);
    const double rc = recall_at_k(ranking, qrels, qid, recall_k);
    out += qid + '\t' + fmt(nd) + '\t' + fmt(rc) + '\n';
    ndcg_sum += nd;
    recall_sum += rc;
    ++n;
  }
  out += "all\t" + fmt(n ? ndcg_sum / double(n) : 0.0) + '\t' +
         fmt(n ? recall_sum / double(n) : 0.0) + '\n';
  atomic_write_file(out_path, out);
  return 0;
}

std::string qe_report_tsv(const QeReport& report, const Header& header) {
  std::string out = header.str();
  out +=
      "# dialect\tndcg10_base\tndcg10_qe\tndcg10_delta\tndcg10_delta_pct\t"
      "recall100_base\trecall100_qe\trecall100_delta\trecall100_delta_pct\t"
      "n_aug\tn_query\tpct_aug\n";
  for (const auto& row : report.rows) {
    out += row.name;
    out += '\t' + fmt(row.ndcg_base) + '\t' + fmt(row.ndcg_qe) + '\t' +
           fmt(row.ndcg_qe - row.ndcg_base) + '\t' + fmt(100.0 * row.ndcg_delta_pct, 2);
    out += '\t' + fmt(row.recall_base) + '\t' + fmt(row.recall_qe) + '\t' +
           fmt(row.recall_qe - row.recall_base) + '\t' + fmt(100.0 * row.recall_delta_pct, 2);
    out += '\t' + fmt_count(row.n_aug) + '\t' + fmt_count(row.n_query) + '\t' +
           fmt(100.0 * row.pct_aug, 2) + '\n';
  }
  return out;
}

int cmd_qe_experiment(const std::string& manifest_path, const std::string& name,
                      const std::string& docs_path, const std::string& queries_path,
                      const std::string& qrels_path, const std::string& dict_path,
                      std::size_t ndcg_k, std::size_t recall_k, double k1, double b,
                      const std::string& out_path) {
  std::vector<QeDialectData> data;
  const auto load_one = [&](const std::string& set_name, const std::string& docs,
                            const std::string& queries, const std::string& qrels,
                            const std::string& dict) {
    QeDialectData d;
    d.name = set_name;
    d.docs = read_documents_jsonl(read_file(docs));
    d.queries = read_queries_tsv(read_file(queries));
    d.qrels = read_qrels_trec(read_file(qrels));
    d.dict = import_tsv(read_file(dict), set_name).dict;
    data.push_back(std::move(d));
  };
  if (!manifest_path.empty()) {
    for_each_line(read_file(manifest_path), [&](std::size_t line_no, std::string_view line) {
      const auto fields = split_tabs(line);
      if (fields.size() != 5) {
        throw DataError(line_no,
                        "manifest expects 'name<TAB>docs<TAB>queries<TAB>qrels<TAB>dict'");
      }
      load_one(std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
               std::string(fields[3]), std::string(fields[4]));
    });
  } else {
    if (docs_path.empty() || queries_path.empty() || qrels_path.empty() || dict_path.empty()) {
      throw UsageError("qe-experiment needs --manifest or all of --docs/--queries/--qrels/--dict");
    }
    load_one(name, docs_path, queries_path, qrels_path, dict_path);
  }

  const QeReport report = qe_experiment(data, ndcg_k, recall_k, Bm25Params{k1, b});
  Header header("qe-experiment");
  header.kv("manifest", manifest_path.empty() ? "-" : manifest_path)
      .kv("ndcg_k", static_cast<std::uint64_t>(ndcg_k))
      .kv("recall_k", static_cast<std::uint64_t>(recall_k))
      .kv("k1", k1)
      .kv("b", b);
  atomic_write_file(out_path, qe_report_tsv(report, header));
  for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << '\n';
  return report.warnings.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dialect variation dictionaries: induction, BLI evaluation, BM25 retrieval"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file");
  unsigned jobs_flag = 0;
  app.add_option("--jobs", jobs_flag,
                 "worker threads (0 = DIALEX_JOBS env or 1); never affects output bytes")
      ->envname("DIALEX_JOBS");

  auto* features_cmd =
      app.add_subcommand("features", "compute the 12-feature table for labeled pairs");
  PairOpts features_pairs;
  features_pairs.attach(features_cmd);
  std::string features_out;
  features_cmd->add_option("-o,--out", features_out, "output TSV")->required();

  auto* train_cmd = app.add_subcommand("train", "train a random forest on labeled pairs");
  PairOpts train_pairs;
  ForestOpts train_opts;
  train_pairs.attach(train_cmd);
  train_opts.attach(train_cmd);
  std::string train_out;
  train_cmd->add_option("-o,--out", train_out, "output model file")->required();

  auto* eval_cmd = app.add_subcommand("eval-bli", "evaluate a trained model on labeled pairs");
  PairOpts eval_pairs;
  eval_pairs.attach(eval_cmd);
  std::string eval_model, eval_out;
  double eval_threshold = 0.5;
  bool eval_baseline = false;
  std::uint64_t eval_baseline_seed = 0;
  eval_cmd->add_option("--model", eval_model, "model file")->required();
  eval_cmd->add_option("--threshold", eval_threshold, "decision threshold (default 0.5)");
  eval_cmd->add_flag("--random-baseline", eval_baseline, "add a rate-matched coin-flip row");
  eval_cmd->add_option("--baseline-seed", eval_baseline_seed, "seed for the baseline row");
  eval_cmd->add_option("-o,--out", eval_out, "output TSV")->required();

  auto* cross_cmd = app.add_subcommand("cross", "cross-dialect transfer matrices");
  std::vector<std::string> cross_sets;
  std::string cross_seeds = "1,2,3", cross_out;
  double cross_fraction = 0.8;
  bool cross_keep_case = false, cross_inflected_positive = false;
  ForestOpts cross_opts;
  cross_cmd->add_option("--set", cross_sets, "dialect dataset as name=pairs.tsv (repeatable)")
      ->required();
  cross_cmd->add_option("--seeds", cross_seeds, "comma-separated seeds (default 1,2,3)");
  cross_cmd->add_option("--train-fraction", cross_fraction, "train fraction (default 0.8)");
  cross_cmd->add_flag("--keep-case", cross_keep_case, "skip lowercasing");
  cross_cmd->add_flag("--inflected-positive", cross_inflected_positive,
                      "map 'inflected' to positive");
  cross_opts.attach(cross_cmd);
  cross_cmd->add_option("-o,--out", cross_out, "output prefix (.f1/.precision/.recall .tsv)")
      ->required();

  auto* ablate_cmd = app.add_subcommand("ablate", "training-size ablation curve");
  PairOpts ablate_pairs;
  ablate_pairs.attach(ablate_cmd);
  ForestOpts ablate_opts;
  ablate_opts.attach(ablate_cmd);
  std::string ablate_fractions = "0.1,0.2,0.4,0.6,0.8,1.0";
  std::string ablate_seeds =
      "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30,31,32,"
      "33,34,35,36,37,38,39,40";
  std::uint64_t ablate_split_seed = 1;
  std::string ablate_out;
  ablate_cmd->add_option("--fractions", ablate_fractions, "training-pool fractions");
  ablate_cmd->add_option("--seeds", ablate_seeds, "per-run seeds (default 1..40)");
  ablate_cmd->add_option("--split-seed", ablate_split_seed, "seed of the fixed 80/20 split");
  ablate_cmd->add_option("-o,--out", ablate_out, "output TSV")->required();

  auto* induce_cmd = app.add_subcommand("induce", "induce a dialect variation dictionary");
  std::string induce_lemmas, induce_vocab, induce_model, induce_out, induce_stats;
  std::string induce_candidates;
  std::string induce_dialect = "other";
  int induce_k = 10;
  double induce_threshold = 0.5;
  std::size_t induce_top_lemmas = 0, induce_top_vocab = 0;
  bool induce_keep_case = false;
  induce_cmd->add_option("--lemmas", induce_lemmas, "German lemma vocabulary TSV")->required();
  induce_cmd->add_option("--vocab", induce_vocab, "dialect vocabulary TSV")->required();
  induce_cmd->add_option("--model", induce_model, "trained model file")->required();
  induce_cmd->add_option("-k,--neighbors", induce_k, "nearest neighbors per lemma (default 10)");
  induce_cmd->add_option("--threshold", induce_threshold, "decision threshold (default 0.5)");
  induce_cmd->add_option("--dialect", induce_dialect, "dialect tag (als|bar|ksh|pfl|nds|other)");
  induce_cmd->add_option("--top-lemmas", induce_top_lemmas, "cap lemma vocabulary at top-N");
  induce_cmd->add_option("--top-vocab", induce_top_vocab, "cap dialect vocabulary at top-N");
  induce_cmd->add_flag("--keep-case", induce_keep_case, "skip lowercasing");
  induce_cmd->add_option("-o,--out", induce_out, "output dictionary TSV")->required();
  induce_cmd->add_option("--stats", induce_stats, "also write a stats TSV");
  induce_cmd->add_option("--dump-candidates", induce_candidates,
                         "also dump lemma<TAB>candidate<TAB>distance TSV");

  auto* stats_cmd = app.add_subcommand("stats", "statistics of a dictionary TSV");
  std::string stats_dict, stats_out, stats_dialect = "other";
  stats_cmd->add_option("--dict", stats_dict, "dictionary TSV")->required();
  stats_cmd->add_option("--dialect", stats_dialect, "dialect tag");
  stats_cmd->add_option("-o,--out", stats_out, "output TSV")->required();

  auto* index_cmd = app.add_subcommand("index", "build a BM25 index from JSON-lines documents");
  std::string index_docs, index_out;
  index_cmd->add_option("--docs", index_docs, "JSON-lines corpus (fields: id, contents)")
      ->required();
  index_cmd->add_option("-o,--out", index_out, "output index directory")->required();

  auto* search_cmd = app.add_subcommand("search", "run BM25 queries, optionally with expansion");
  std::string search_index, search_queries, search_dict, search_out, search_tag = "dialex-bm25";
  std::size_t search_k = 100;
  double search_k1 = 0.9, search_b = 0.4;
  search_cmd->add_option("--index", search_index, "index directory")->required();
  search_cmd->add_option("--queries", search_queries, "queries TSV (qid<TAB>text)")->required();
  search_cmd->add_option("--dict", search_dict, "dictionary TSV for query expansion");
  search_cmd->add_option("-k,--top-k", search_k, "results per query (default 100)");
  search_cmd->add_option("--k1", search_k1, "BM25 k1 (default 0.9)");
  search_cmd->add_option("--b", search_b, "BM25 b (default 0.4)");
  search_cmd->add_option("--tag", search_tag, "run tag");
  search_cmd->add_option("-o,--out", search_out, "output run file (trec format)")->required();

  auto* evalir_cmd = app.add_subcommand("eval-ir", "score a run file against qrels");
  std::string evalir_run, evalir_qrels, evalir_out;
  std::size_t evalir_ndcg_k = 10, evalir_recall_k = 100;
  evalir_cmd->add_option("--run", evalir_run, "run file (trec format)")->required();
  evalir_cmd->add_option("--qrels", evalir_qrels, "qrels file (trec format)")->required();
  evalir_cmd->add_option("--ndcg-k", evalir_ndcg_k, "nDCG cutoff (default 10)");
  evalir_cmd->add_option("--recall-k", evalir_recall_k, "recall cutoff (default 100)");
  evalir_cmd->add_option("-o,--out", evalir_out, "output TSV")->required();

  auto* qe_cmd =
      app.add_subcommand("qe-experiment", "BM25 vs query-expanded BM25 comparison report");
  std::string qe_manifest, qe_name = "all", qe_docs, qe_queries, qe_qrels, qe_dict, qe_out;
  std::size_t qe_ndcg_k = 10, qe_recall_k = 100;
  double qe_k1 = 0.9, qe_b = 0.4;
  qe_cmd->add_option("--manifest", qe_manifest,
                     "TSV manifest: name<TAB>docs<TAB>queries<TAB>qrels<TAB>dict");
  qe_cmd->add_option("--name", qe_name, "dialect name for single-set mode");
  qe_cmd->add_option("--docs", qe_docs, "JSON-lines corpus");
  qe_cmd->add_option("--queries", qe_queries, "queries TSV");
  qe_cmd->add_option("--qrels", qe_qrels, "qrels file");
  qe_cmd->add_option("--dict", qe_dict, "dictionary TSV");
  qe_cmd->add_option("--ndcg-k", qe_ndcg_k, "nDCG cutoff (default 10)");
  qe_cmd->add_option("--recall-k", qe_recall_k, "recall cutoff (default 100)");
  qe_cmd->add_option("--k1", qe_k1, "BM25 k1 (default 0.9)");
  qe_cmd->add_option("--b", qe_b, "BM25 b (default 0.4)");
  qe_cmd->add_option("-o,--out", qe_out, "output report TSV")->required();

  // parent options (--jobs, --config) may follow the subcommand
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const unsigned jobs = resolve_jobs_option(jobs_flag);
  try {
    if (features_cmd->parsed()) return cmd_features(features_pairs, features_out);
    if (train_cmd->parsed()) return cmd_train(train_pairs, train_opts, train_out, jobs);
    if (eval_cmd->parsed()) {
      return cmd_eval_bli(eval_model, eval_pairs, eval_threshold, eval_baseline,
                          eval_baseline_seed, eval_out);
    }
    if (cross_cmd->parsed()) {
      return cmd_cross(cross_sets, cross_seeds, cross_opts, cross_keep_case,
                       cross_inflected_positive, cross_fraction, cross_out, jobs);
    }
    if (ablate_cmd->parsed()) {
      return cmd_ablate(ablate_pairs, ablate_fractions, ablate_seeds, ablate_split_seed,
                        ablate_opts, ablate_out, jobs);
    }
    if (induce_cmd->parsed()) {
      return cmd_induce(induce_lemmas, induce_vocab, induce_model, induce_k, induce_threshold,
                        induce_dialect, induce_top_lemmas, induce_top_vocab, induce_keep_case,
                        induce_out, induce_stats, induce_candidates, jobs);
    }
    if (stats_cmd->parsed()) return cmd_stats(stats_dict, stats_dialect, stats_out);
    if (index_cmd->parsed()) return cmd_index(index_docs, index_out);
    if (search_cmd->parsed()) {
      return cmd_search(search_index, search_queries, search_dict, search_k, search_k1, search_b,
                        search_tag, search_out);
    }
    if (evalir_cmd->parsed()) {
      return cmd_eval_ir(evalir_run, evalir_qrels, evalir_ndcg_k, evalir_recall_k, evalir_out);
    }
    if (qe_cmd->parsed()) {
      return cmd_qe_experiment(qe_manifest, qe_name, qe_docs, qe_queries, qe_qrels, qe_dict,
                               qe_ndcg_k, qe_recall_k, qe_k1, qe_b, qe_out);
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
