#include "threadsec/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "threadsec/accounts.hpp"
#include "threadsec/corpus.hpp"
#include "threadsec/ecdf.hpp"
#include "threadsec/error.hpp"
#include "threadsec/features.hpp"
#include "threadsec/io.hpp"
#include "threadsec/labeler.hpp"
#include "threadsec/learn/evaluate.hpp"
#include "threadsec/learn/model.hpp"
#include "threadsec/synthgen.hpp"
#include "threadsec/temporal.hpp"

namespace threadsec::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Summary {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
};

struct SynthOptions {
  std::string out_dir;
  std::uint64_t seed = 42;
  int threads = 2000;
  int pages = 10;
  double target_fraction = 0.1;
  std::string profile = "default";
};

struct LabelInputs {
  std::string corpus;
  std::string blacklist;
  std::string shorteners;
  std::string shortener_hosts;
};

struct LearnOptions {
  std::string algorithm = "decision_tree";
  std::string feature_set = "mixed";
  std::uint64_t seed = 42;
  double train_frac = 0.75;
  std::string smote = "on";
  int smote_k = 5;
};

struct Options {
  SynthOptions synth;
  std::vector<std::string> ingest_inputs;
  LabelInputs label;
  std::string labels_path;
  std::string planted;
  std::string features_path;
  std::string model_path;
  std::string out;
  int window = 5;
  int t_final = 60;
  std::string macro_mode = "full";
  LearnOptions learn;
  std::size_t per_page = 1000;
  std::int64_t threshold = 10;
};

void write_json(const fs::path& path, const ordered_json& doc) {
  auto out = io::open_output(path);
  out << doc.dump(2) << '\n';
}

Corpus load_corpus(const std::string& path) { return ingest(fs::path(path)).corpus; }

ShortenerTable load_table(const LabelInputs& in) {
  if (in.shorteners.empty()) return {};
  return load_shortener_table(in.shorteners, in.shortener_hosts);
}

learn::EvalParams eval_params(const LearnOptions& o) {
  learn::EvalParams p;
  if (o.algorithm != "all") p.algorithm = learn::parse_algorithm(o.algorithm);
  p.train_frac = o.train_frac;
  p.balance = o.smote == "on";
  p.smote_k = o.smote_k;
  p.seed = o.seed;
  if (!(p.train_frac > 0.0 && p.train_frac < 1.0)) throw ValidationError("train_frac must lie in (0,1)");
  return p;
}

ordered_json metrics_json(const learn::Metrics& m) {
  ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["confusion"] = {{m.confusion(0, 0), m.confusion(0, 1)}, {m.confusion(1, 0), m.confusion(1, 1)}};
  j["warnings"] = m.warnings;
  return j;
}

std::vector<MaliciousLabel> run_labeler(const Corpus& corpus, const LabelInputs& in, std::size_t* n_obs) {
  const auto table = load_table(in);
  const auto blacklist = read_blacklist(fs::path(in.blacklist));
  const auto observations = collect_observations(corpus, table);
  if (n_obs) *n_obs = observations.size();
  return join_blacklist(observations, blacklist);
}

double fraction_above(std::span<const AttackEvent> events, double position) {
  if (events.empty()) return 0.0;
  const auto n = std::count_if(events.begin(), events.end(),
                               [&](const AttackEvent& e) { return e.relative_position > position; });
  return static_cast<double>(n) / static_cast<double>(events.size());
}

// Writes the temporal tables into `dir` and returns the summary document.
ordered_json write_temporal(const Corpus& corpus, std::span<const MaliciousLabel> labels, const fs::path& dir,
                            std::size_t* n_events) {
  const auto events = build_attack_events(corpus, labels);
  const auto unique = unique_attacks(events);
  if (n_events) *n_events = events.size();

  const auto positions = relative_positions(events);
  const auto since = time_since_post(events);
  const auto intervals = inter_attack_intervals(events);
  const auto heatmap = monthly_heatmap(corpus, events);
  {
    auto out = io::open_output(dir / "relative_position_ecdf.csv");
    write_ecdf_csv(out, positions);
  }
  {
    auto out = io::open_output(dir / "time_since_post_ecdf.csv");
    write_ecdf_csv(out, since.ecdf);
  }
  {
    auto out = io::open_output(dir / "interval_ecdf.csv");
    write_ecdf_csv(out, intervals);
  }
  {
    auto out = io::open_output(dir / "heatmap.csv");
    write_heatmap_csv(out, heatmap);
  }

  ordered_json summary;
  summary["events"] = events.size();
  summary["attacks"] = unique.size();
  summary["late_fraction"] = fraction_above(unique, 0.5);
  summary["within_day"] = since.within_day;
  ordered_json f10 = ordered_json::object();
  for (const auto& [group, table] : intervals) {
    if (group.rfind("page:", 0) != 0) f10[group] = table.at(10.0);
  }
  summary["interval_f10"] = f10;
  return summary;
}

ordered_json write_accounts(const Corpus& corpus, std::vector<MaliciousLabel> labels, const ShortenerTable& table,
                            const fs::path& dir, const Options& o, std::size_t* n_clusters) {
  recover_label_urls(corpus, table, labels);
  const auto threads = label_threads(corpus, labels);
  const AccountIndex index(corpus);

  const std::vector<std::string> attacker_ids(threads.attackers.begin(), threads.attackers.end());
  const auto normal_ids = sample_normal_accounts(corpus, threads.attackers, o.per_page, o.learn.seed);
  std::vector<AccountFootprint> attackers, normals;
  for (const auto& id : attacker_ids) attackers.push_back(index.footprint(id));
  for (const auto& id : normal_ids) normals.push_back(index.footprint(id));
  {
    auto out = io::open_output(dir / "footprints.csv");
    write_footprint_csv(out, attackers, normals);
  }
  {
    auto out = io::open_output(dir / "footprint_ecdf.csv");
    write_ecdf_csv(out, footprint_ecdfs(attackers, normals));
  }

  std::map<std::string, std::vector<double>> response_values;
  {
    auto out = io::open_output(dir / "response_stats.csv");
    out << "account_id,group,n_comments,mean,std\n";
    auto rows = [&](const char* group, const std::vector<std::string>& ids) {
      for (const auto& id : ids) {
        const auto s = response_stats(corpus, index, id);
        out << io::csv_field(id) << ',' << group << ',' << s.times.size() << ',' << io::format_double(s.mean) << ','
            << io::format_double(s.std) << '\n';
        response_values[std::string(group) + ":mean"].push_back(s.mean);
        response_values[std::string(group) + ":std"].push_back(s.std);
      }
    };
    rows("attacker", attacker_ids);
    rows("normal", normal_ids);
  }
  {
    auto out = io::open_output(dir / "response_ecdf.csv");
    write_ecdf_csv(out, ecdf_by_group(response_values));
  }

  const auto clusters = cluster_campaigns(labels, corpus);
  const auto points = campaign_scatter(clusters, o.threshold);
  {
    auto out = io::open_output(dir / "campaign_scatter.csv");
    write_scatter_csv(out, points);
  }
  if (n_clusters) *n_clusters = clusters.size();

  ordered_json summary;
  summary["attackers"] = attackers.size();
  summary["normals"] = normals.size();
  summary["attacker_zero_like_fraction"] = zero_like_fraction(attackers);
  summary["normal_zero_like_fraction"] = zero_like_fraction(normals);
  summary["campaigns"] = clusters.size();
  std::map<std::string, std::size_t> flags;
  for (const auto& p : points) {
    if (!p.flag.empty()) ++flags[p.flag];
  }
  summary["flagged"] = flags;
  return summary;
}

Summary cmd_synth(const Options& o) {
  auto config = GeneratorConfig::profile(o.synth.profile);
  config.seed = o.synth.seed;
  config.n_threads = o.synth.threads;
  config.n_pages = o.synth.pages;
  config.target_fraction = o.synth.target_fraction;
  const auto data = generate(config);
  write_generated(data, o.synth.out_dir);
  return {0, data.corpus.comment_count()};
}

Summary cmd_ingest(const Options& o) {
  std::vector<fs::path> paths(o.ingest_inputs.begin(), o.ingest_inputs.end());
  const auto result = ingest(std::span<const fs::path>(paths));
  {
    auto out = io::open_output(o.out);
    write_jsonl(out, result.corpus);
  }
  ordered_json report;
  report["pages"] = result.stats.pages;
  report["posts"] = result.stats.posts;
  report["comments"] = result.stats.comments;
  report["dropped"] = result.stats.dropped;
  report["clamped"] = result.stats.clamped;
  ordered_json errors = ordered_json::array();
  for (const auto& e : result.stats.errors) errors.push_back({{"line", e.line}, {"message", e.message}});
  report["errors"] = errors;
  write_json(fs::path(o.out).parent_path() / "ingest_report.json", report);
  const auto kept = result.stats.pages + result.stats.posts + result.stats.comments;
  return {kept + result.stats.dropped + result.stats.errors.size(), kept};
}

Summary cmd_label(const Options& o) {
  const auto corpus = load_corpus(o.label.corpus);
  std::size_t n_obs = 0;
  const auto labels = run_labeler(corpus, o.label, &n_obs);
  {
    auto out = io::open_output(o.out);
    write_labels(out, labels);
  }
  if (!o.planted.empty()) {
    const auto planted = read_planted(fs::path(o.planted));
    const auto report = verify_planted(corpus, labels, planted);
    ordered_json j;
    j["planted"] = report.planted;
    j["labels"] = report.labels;
    j["true_positives"] = report.true_positives;
    j["unknown_comments"] = report.unknown_comments;
    j["precision"] = report.precision;
    j["recall"] = report.recall;
    write_json(fs::path(o.out).parent_path() / "verify.json", j);
  }
  return {n_obs, labels.size()};
}

Summary cmd_featurize(const Options& o) {
  const auto corpus = load_corpus(o.label.corpus);
  const auto labels = read_labels(fs::path(o.labels_path));
  FeatureConfig config{o.window, o.t_final, parse_macro_mode(o.macro_mode)};
  validate(config);
  const auto vectors = extract_features(corpus, label_threads(corpus, labels), config);
  auto out = io::open_output(o.out);
  write_feature_csv(out, vectors);
  return {corpus.threads().size(), vectors.size()};
}

Summary cmd_train(const Options& o) {
  const auto vectors = read_feature_csv(fs::path(o.features_path));
  const auto set = parse_feature_set(o.learn.feature_set);
  const auto data = to_dataset(vectors, set);
  const auto params = eval_params(o.learn);
  MinMaxScaler scaler;
  Eigen::Index n_synthetic = 0;
  const auto prepared = learn::prepare_training(data, params, scaler, &n_synthetic);
  const auto model = learn::train(params.algorithm, prepared, params.hyper, params.seed);

  ordered_json doc;
  doc["feature_set"] = std::string(to_string(set));
  doc["algorithm"] = std::string(learn::to_string(params.algorithm));
  doc["scaler"] = {{"min", std::vector<double>(scaler.min.data(), scaler.min.data() + scaler.min.size())},
                   {"max", std::vector<double>(scaler.max.data(), scaler.max.data() + scaler.max.size())}};
  doc["n_train"] = data.size();
  doc["n_synthetic"] = n_synthetic;
  doc["model"] = learn::to_json(model);
  write_json(o.out, doc);
  return {static_cast<std::size_t>(data.size()), 1};
}

ordered_json eval_all(const learn::Dataset& data, FeatureSet set, const LearnOptions& learn_opts,
                      std::span<const learn::Algorithm> algorithms, std::size_t* n_test) {
  ordered_json results = ordered_json::array();
  for (auto algorithm : algorithms) {
    auto params = eval_params(learn_opts);
    params.algorithm = algorithm;
    const auto r = learn::evaluate_split(data, params);
    ordered_json j;
    j["feature_set"] = std::string(to_string(set));
    j["algorithm"] = std::string(learn::to_string(algorithm));
    j["n_train"] = r.n_train;
    j["n_test"] = r.n_test;
    j["n_synthetic"] = r.n_synthetic;
    const auto metrics = metrics_json(r.metrics);
    for (const auto& [key, value] : metrics.items()) j[key] = value;
    results.push_back(j);
    if (n_test) *n_test = static_cast<std::size_t>(r.n_test);
  }
  return results;
}

std::vector<learn::Algorithm> algorithms_for(const std::string& name) {
  if (name == "all") return {learn::Algorithm::NaiveBayes, learn::Algorithm::DecisionTree, learn::Algorithm::AdaBoost};
  return {learn::parse_algorithm(name)};
}

Summary cmd_eval(const Options& o) {
  const auto vectors = read_feature_csv(fs::path(o.features_path));
  const auto set = parse_feature_set(o.learn.feature_set);
  const auto data = to_dataset(vectors, set);
  const auto algorithms = algorithms_for(o.learn.algorithm);
  std::size_t n_test = 0;
  ordered_json doc;
  doc["results"] = eval_all(data, set, o.learn, algorithms, &n_test);
  write_json(o.out, doc);
  return {static_cast<std::size_t>(data.size()), n_test};
}

std::vector<learn::SweepPoint> run_sweep(const Corpus& corpus, const ThreadLabels& labels, const Options& o) {
  learn::SweepParams params;
  params.window_minutes = o.window;
  params.features = parse_feature_set(o.learn.feature_set);
  params.eval = eval_params(o.learn);
  return learn::sweep_horizon(corpus, labels, params);
}

Summary cmd_sweep(const Options& o) {
  const auto corpus = load_corpus(o.label.corpus);
  const auto labels = read_labels(fs::path(o.labels_path));
  const auto points = run_sweep(corpus, label_threads(corpus, labels), o);
  auto out = io::open_output(o.out);
  learn::write_sweep_csv(out, points);
  return {corpus.threads().size(), points.size()};
}

Summary cmd_temporal(const Options& o) {
  const auto corpus = load_corpus(o.label.corpus);
  const auto labels = read_labels(fs::path(o.labels_path));
  std::size_t n_events = 0;
  const auto summary = write_temporal(corpus, labels, o.out, &n_events);
  write_json(fs::path(o.out) / "temporal_summary.json", summary);
  return {labels.size(), n_events};
}

Summary cmd_accounts(const Options& o) {
  const auto corpus = load_corpus(o.label.corpus);
  auto labels = read_labels(fs::path(o.labels_path));
  const auto n_labels = labels.size();
  std::size_t n_clusters = 0;
  const auto summary = write_accounts(corpus, std::move(labels), load_table(o.label), o.out, o, &n_clusters);
  write_json(fs::path(o.out) / "accounts_summary.json", summary);
  return {n_labels, n_clusters};
}

// Whole pipeline from a corpus, blacklist and shortener map into one directory.
Summary cmd_report(const Options& o) {
  const fs::path dir = o.out;
  const auto corpus = load_corpus(o.label.corpus);
  std::size_t n_obs = 0;
  const auto labels = run_labeler(corpus, o.label, &n_obs);
  {
    auto out = io::open_output(dir / "labels.tsv");
    write_labels(out, labels);
  }
  const auto threads = label_threads(corpus, labels);

  FeatureConfig config{o.window, o.t_final, parse_macro_mode(o.macro_mode)};
  validate(config);
  const auto vectors = extract_features(corpus, threads, config);
  {
    auto out = io::open_output(dir / "features.csv");
    write_feature_csv(out, vectors);
  }

  ordered_json table = ordered_json::array();
  const auto algorithms = algorithms_for("all");
  for (auto set : {FeatureSet::Macro, FeatureSet::Micro, FeatureSet::Mixed}) {
    for (auto& row : eval_all(to_dataset(vectors, set), set, o.learn, algorithms, nullptr)) table.push_back(row);
  }
  {
    auto out = io::open_output(dir / "classification.csv");
    out << "feature_set,algorithm,precision,recall,f1\n";
    for (const auto& row : table) {
      out << row["feature_set"].get<std::string>() << ',' << row["algorithm"].get<std::string>() << ','
          << io::format_double(row["precision"].get<double>()) << ',' << io::format_double(row["recall"].get<double>())
          << ',' << io::format_double(row["f1"].get<double>()) << '\n';
    }
  }

  Options sweep_opts = o;
  sweep_opts.learn.feature_set = "micro";
  const auto points = run_sweep(corpus, threads, sweep_opts);
  {
    auto out = io::open_output(dir / "sweep.csv");
    learn::write_sweep_csv(out, points);
  }

  ordered_json doc;
  doc["threads"] = corpus.threads().size();
  doc["comments"] = corpus.comment_count();
  doc["observations"] = n_obs;
  doc["labels"] = labels.size();
  doc["targets"] = threads.target_count();
  doc["classification"] = table;
  doc["temporal"] = write_temporal(corpus, labels, dir, nullptr);
  doc["accounts"] = write_accounts(corpus, labels, load_table(o.label), dir, o, nullptr);
  write_json(dir / "report.json", doc);
  return {corpus.comment_count(), 9};
}

void add_corpus(CLI::App* sub, Options& o) {
  sub->add_option("--corpus", o.label.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
}

void add_labels(CLI::App* sub, Options& o) {
  sub->add_option("--labels", o.labels_path, "labels TSV from `label`")->required()->check(CLI::ExistingFile);
}

void add_shorteners(CLI::App* sub, Options& o) {
  sub->add_option("--shorteners", o.label.shorteners, "shortener map TSV (short<TAB>target)")->check(CLI::ExistingFile);
  sub->add_option("--shortener-hosts", o.label.shortener_hosts, "shortener host list")->check(CLI::ExistingFile);
}

void add_features(CLI::App* sub, Options& o) {
  sub->add_option("--window", o.window, "DAV window in minutes")->capture_default_str();
  sub->add_option("--t-final", o.t_final, "DAV horizon in minutes")->capture_default_str();
  sub->add_option("--macro-mode", o.macro_mode, "full|censored")
      ->check(CLI::IsMember({"full", "censored"}))
      ->capture_default_str();
}

void add_learn(CLI::App* sub, Options& o, bool allow_all) {
  auto* algo = sub->add_option("--algorithm", o.learn.algorithm,
                               allow_all ? "naive_bayes|decision_tree|adaboost|all" : "naive_bayes|decision_tree|adaboost");
  algo->capture_default_str();
  sub->add_option("--feature-set", o.learn.feature_set, "macro|micro|mixed")
      ->check(CLI::IsMember({"macro", "micro", "mixed"}))
      ->capture_default_str();
  sub->add_option("--seed", o.learn.seed, "random seed")->capture_default_str();
  sub->add_option("--train-frac", o.learn.train_frac, "training fraction")->capture_default_str();
  sub->add_option("--smote", o.learn.smote, "on|off")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  sub->add_option("--k", o.learn.smote_k, "SMOTE neighbours")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"threadsec: malicious URL campaigns in discussion threads"};
  app.set_config("--config", "", "key=value config file; flags override it");
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus, blacklist and planted truth");
  synth->add_option("--out", o.synth.out_dir, "output directory")->required();
  synth->add_option("--seed", o.synth.seed, "random seed")->capture_default_str();
  synth->add_option("--threads", o.synth.threads, "number of threads")->capture_default_str();
  synth->add_option("--pages", o.synth.pages, "number of pages")->capture_default_str();
  synth->add_option("--target-fraction", o.synth.target_fraction, "fraction of target threads")->capture_default_str();
  synth->add_option("--profile", o.synth.profile, "default|early|late|sync|repeat")
      ->check(CLI::IsMember({"default", "early", "late", "sync", "repeat"}))
      ->capture_default_str();

  auto* ingest_cmd = app.add_subcommand("ingest", "validate and merge corpus JSONL files");
  ingest_cmd->add_option("inputs", o.ingest_inputs, "corpus JSONL files")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", o.out, "clean corpus JSONL")->required();

  auto* label = app.add_subcommand("label", "join URLs against the blacklist");
  add_corpus(label, o);
  label->add_option("--blacklist", o.label.blacklist, "blacklist TSV (key<TAB>category)")
      ->required()
      ->check(CLI::ExistingFile);
  add_shorteners(label, o);
  label->add_option("--planted", o.planted, "planted truth JSONL; writes verify.json")->check(CLI::ExistingFile);
  label->add_option("--out", o.out, "labels TSV")->required();

  auto* featurize = app.add_subcommand("featurize", "macro and DAV features per thread");
  add_corpus(featurize, o);
  add_labels(featurize, o);
  add_features(featurize, o);
  featurize->add_option("--out", o.out, "feature CSV")->required();

  auto* train_cmd = app.add_subcommand("train", "fit a classifier on all feature rows");
  train_cmd->add_option("--features", o.features_path, "feature CSV")->required()->check(CLI::ExistingFile);
  add_learn(train_cmd, o, false);
  train_cmd->add_option("--out", o.out, "model JSON")->required();

  auto* eval = app.add_subcommand("eval", "train/test split evaluation");
  eval->add_option("--features", o.features_path, "feature CSV")->required()->check(CLI::ExistingFile);
  add_learn(eval, o, true);
  eval->add_option("--out", o.out, "metrics JSON")->required();

  auto* sweep = app.add_subcommand("sweep", "F1 against observation horizon");
  add_corpus(sweep, o);
  add_labels(sweep, o);
  sweep->add_option("--window", o.window, "DAV window in minutes")->capture_default_str();
  add_learn(sweep, o, false);
  sweep->add_option("--out", o.out, "sweep CSV")->required();

  auto* temporal = app.add_subcommand("temporal", "attack position, timing and interval tables");
  add_corpus(temporal, o);
  add_labels(temporal, o);
  temporal->add_option("--out", o.out, "output directory")->required();

  auto* accounts = app.add_subcommand("accounts", "attacker footprints, response times and campaigns");
  add_corpus(accounts, o);
  add_labels(accounts, o);
  add_shorteners(accounts, o);
  accounts->add_option("--per-page", o.per_page, "normal accounts sampled per page")->capture_default_str();
  accounts->add_option("--seed", o.learn.seed, "sampling seed")->capture_default_str();
  accounts->add_option("--threshold", o.threshold, "campaign flag threshold")->capture_default_str();
  accounts->add_option("--out", o.out, "output directory")->required();

  auto* report = app.add_subcommand("report", "run the whole pipeline into one directory");
  add_corpus(report, o);
  report->add_option("--blacklist", o.label.blacklist, "blacklist TSV")->required()->check(CLI::ExistingFile);
  add_shorteners(report, o);
  add_features(report, o);
  report->add_option("--seed", o.learn.seed, "random seed")->capture_default_str();
  report->add_option("--train-frac", o.learn.train_frac, "training fraction")->capture_default_str();
  report->add_option("--smote", o.learn.smote, "on|off")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  report->add_option("--k", o.learn.smote_k, "SMOTE neighbours")->capture_default_str();
  report->add_option("--per-page", o.per_page, "normal accounts sampled per page")->capture_default_str();
  report->add_option("--threshold", o.threshold, "campaign flag threshold")->capture_default_str();
  report->add_option("--out", o.out, "output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 1;
  }

  const std::vector<std::pair<CLI::App*, Summary (*)(const Options&)>> commands{
      {synth, cmd_synth},       {ingest_cmd, cmd_ingest}, {label, cmd_label},       {featurize, cmd_featurize},
      {train_cmd, cmd_train},   {eval, cmd_eval},         {sweep, cmd_sweep},       {temporal, cmd_temporal},
      {accounts, cmd_accounts}, {report, cmd_report}};
  for (const auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto summary = fn(o);
      const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", secs.count());
      out << sub->get_name() << " ok: " << summary.n_in << " in, " << summary.n_out << " out, " << buf << "s\n";
      return 0;
    } catch (const IoError& e) {
      err << sub->get_name() << ": " << e.what() << '\n';
      return 2;
    } catch (const fs::filesystem_error& e) {
      err << sub->get_name() << ": " << e.what() << '\n';
      return 2;
    } catch (const ValidationError& e) {
      err << sub->get_name() << ": " << e.what() << '\n';
      return 1;
    } catch (const nlohmann::json::exception& e) {
      err << sub->get_name() << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}

}  // namespace threadsec::cli
