#include "pmc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "pmc/corpus.hpp"
#include "pmc/coword.hpp"
#include "pmc/csv.hpp"
#include "pmc/error.hpp"
#include "pmc/format.hpp"
#include "pmc/pmc.hpp"
#include "pmc/report.hpp"
#include "pmc/schema.hpp"
#include "pmc/scoring.hpp"

namespace pmc::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  std::vector<std::string> problems;
  auto check = [&](const std::optional<fs::path>& path, const char* flag) {
    if (path && !fs::is_regular_file(*path)) problems.push_back(std::string(flag) + ": no such file " + path->string());
  };
  check(manifest, "--manifest");
  check(schema, "--schema");
  check(dictionary, "--dict");
  check(stopwords, "--stopwords");
  check(scorecards, "--scorecards");
  check(overrides, "--overrides");

  auto require = [&](bool present, const char* what) {
    if (!present) problems.push_back(command + ": " + what + " is required");
  };
  if (command == "ingest" || command == "keywords" || command == "coword" || command == "cluster" ||
      command == "suggest")
    require(manifest.has_value(), "--manifest");
  if (command == "suggest" || command == "score" || command == "report") require(schema.has_value(), "--schema");
  if (command == "score" || command == "report")
    require(manifest || scorecards, "--scorecards or --manifest");
  if (top == 0) problems.push_back("--top must be positive");
  if (k_clusters == 0) problems.push_back("--k-clusters must be positive");
  try {
    textrank.validate();
  } catch (const InputError& e) {
    problems.push_back(e.what());
  }
  if (!problems.empty()) throw InputError("invalid configuration", problems);
}

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
}

std::string csv_text(const std::vector<csv::Row>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) csv::write_row(out, row);
  return out.str();
}

Corpus load(const RunConfig& config) {
  return load_corpus(*config.manifest, CorpusOptions{config.dictionary, config.stopwords});
}

struct KeywordRun {
  std::vector<TokenStream> streams;
  std::vector<std::vector<KeywordScore>> tfidf;
  std::vector<TextRankResult> textrank;
};

KeywordRun run_keywords(const Corpus& corpus, const RunConfig& config, std::ostream& err, bool need_textrank) {
  KeywordRun run;
  run.streams = segment_corpus(corpus);
  run.tfidf = tfidf(run.streams);
  if (need_textrank) {
    for (const auto& stream : run.streams) {
      if (stream.tokens.empty()) {
        run.textrank.push_back({});
        err << "warning: document " << stream.doc_id << " has no tokens\n";
        continue;
      }
      run.textrank.push_back(textrank(stream, config.textrank));
      if (!run.textrank.back().converged)
        err << "warning: TextRank did not converge for document " << stream.doc_id << " (residual "
            << run.textrank.back().residual << ")\n";
    }
  }
  return run;
}

std::vector<std::vector<KeywordScore>> textrank_lists(const KeywordRun& run) {
  std::vector<std::vector<KeywordScore>> lists;
  for (const auto& r : run.textrank) lists.push_back(r.scores);
  return lists;
}

std::vector<KeywordScore> corpus_keywords(const KeywordRun& run, std::size_t k) {
  return fuse_keywords(aggregate(run.tfidf, &KeywordScore::tfidf), aggregate(textrank_lists(run), &KeywordScore::textrank), k);
}

std::map<std::string, double> as_map(const std::vector<KeywordScore>& scores, double KeywordScore::*field) {
  std::map<std::string, double> m;
  for (const auto& s : scores) m[s.term] = s.*field;
  return m;
}

int cmd_ingest(const RunConfig& config, std::ostream& out) {
  const Corpus corpus = load(config);
  out << corpus.documents.size() << " documents loaded\n";
  return kOk;
}

int cmd_keywords(const RunConfig& config, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> methods{"all", "freq", "tfidf", "textrank", "fused"};
  if (!methods.count(config.method)) throw InputError("--method must be one of all, freq, tfidf, textrank, fused");
  const Corpus corpus = load(config);
  ensure_dir(config.out);
  const bool all = config.method == "all";
  const bool need_textrank = all || config.method == "textrank" || config.method == "fused";
  const KeywordRun run = run_keywords(corpus, config, err, need_textrank);

  if (all || config.method == "freq") {
    std::vector<csv::Row> rows{{"term", "count"}};
    for (const auto& e : term_frequencies(run.streams)) rows.push_back({e.term, std::to_string(e.count)});
    write_text_file(config.out / "frequencies.csv", csv_text(rows));
  }
  if (all || config.method == "tfidf") {
    std::vector<csv::Row> rows{{"doc_id", "term", "tfidf"}};
    for (std::size_t d = 0; d < run.streams.size(); ++d)
      for (const auto& s : run.tfidf[d]) rows.push_back({run.streams[d].doc_id, s.term, format_exact(s.tfidf)});
    write_text_file(config.out / "tfidf.csv", csv_text(rows));
  }
  if (all || config.method == "textrank") {
    std::vector<csv::Row> rows{{"doc_id", "term", "textrank"}};
    for (std::size_t d = 0; d < run.streams.size(); ++d)
      for (const auto& s : run.textrank[d].scores)
        rows.push_back({run.streams[d].doc_id, s.term, format_exact(s.textrank)});
    write_text_file(config.out / "textrank.csv", csv_text(rows));
  }
  if (all || config.method == "fused") {
    std::vector<csv::Row> rows;
    if (config.per_document) {
      rows.push_back({"doc_id", "term", "tfidf", "textrank", "fused"});
      for (std::size_t d = 0; d < run.streams.size(); ++d) {
        const auto fused = fuse_keywords(as_map(run.tfidf[d], &KeywordScore::tfidf),
                                         as_map(run.textrank[d].scores, &KeywordScore::textrank), config.top);
        for (const auto& s : fused)
          rows.push_back({run.streams[d].doc_id, s.term, format_exact(s.tfidf), format_exact(s.textrank),
                          format_exact(s.fused)});
      }
    } else {
      rows.push_back({"term", "tfidf", "textrank", "fused"});
      for (const auto& s : corpus_keywords(run, config.top))
        rows.push_back({s.term, format_exact(s.tfidf), format_exact(s.textrank), format_exact(s.fused)});
    }
    write_text_file(config.out / "keywords.csv", csv_text(rows));
  }
  out << "keywords written to " << config.out.string() << "\n";
  return kOk;
}

CowordMatrix build_coword(const RunConfig& config, std::ostream& err) {
  const Corpus corpus = load(config);
  const KeywordRun run = run_keywords(corpus, config, err, true);
  std::vector<std::string> terms;
  for (const auto& s : corpus_keywords(run, config.top)) terms.push_back(s.term);
  return coword_matrix(run.streams, terms);
}

void write_coword(const CowordMatrix& matrix, const fs::path& dir) {
  std::vector<csv::Row> rows;
  csv::Row header{""};
  header.insert(header.end(), matrix.terms.begin(), matrix.terms.end());
  rows.push_back(header);
  std::vector<csv::Row> edges{{"source", "target", "weight"}};
  for (std::size_t i = 0; i < matrix.terms.size(); ++i) {
    csv::Row row{matrix.terms[i]};
    for (std::size_t j = 0; j < matrix.terms.size(); ++j) {
      const auto c = matrix.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      row.push_back(std::to_string(c));
      if (j > i && c > 0) edges.push_back({matrix.terms[i], matrix.terms[j], std::to_string(c)});
    }
    rows.push_back(std::move(row));
  }
  write_text_file(dir / "coword_matrix.csv", csv_text(rows));
  write_text_file(dir / "coword_edges.csv", csv_text(edges));
}

int cmd_coword(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ensure_dir(config.out);
  const CowordMatrix matrix = build_coword(config, err);
  write_coword(matrix, config.out);
  out << matrix.terms.size() << " terms in co-word matrix\n";
  return kOk;
}

int cmd_cluster(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ensure_dir(config.out);
  const CowordMatrix matrix = build_coword(config, err);
  write_coword(matrix, config.out);
  const Clustering clustering = hierarchical_cluster(matrix, config.k_clusters);
  write_text_file(config.out / "dendrogram.txt", dendrogram_to_text(clustering.dendrogram));
  std::vector<csv::Row> merges{{"step", "cluster_a", "cluster_b", "height", "size"}};
  for (std::size_t s = 0; s < clustering.dendrogram.merges.size(); ++s) {
    const Merge& m = clustering.dendrogram.merges[s];
    merges.push_back({std::to_string(s + 1), std::to_string(m.cluster_a), std::to_string(m.cluster_b),
                      format_exact(m.height), std::to_string(m.size)});
  }
  write_text_file(config.out / "merges.csv", csv_text(merges));
  std::vector<csv::Row> clusters{{"term", "cluster"}};
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c)
    for (const auto& term : clustering.clusters[c]) clusters.push_back({term, std::to_string(c + 1)});
  write_text_file(config.out / "clusters.csv", csv_text(clusters));
  out << clustering.clusters.size() << " clusters over " << matrix.terms.size() << " terms\n";
  return kOk;
}

std::vector<Scorecard> suggest_all(const Corpus& corpus, const IndicatorSchema& schema) {
  const auto streams = segment_corpus(corpus);
  std::vector<Scorecard> cards;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    cards.push_back(suggest_scores(corpus.documents[d], streams[d], schema));
  return cards;
}

int cmd_suggest(const RunConfig& config, std::ostream& out) {
  const IndicatorSchema schema = load_schema(*config.schema);
  const Corpus corpus = load(config);
  ensure_dir(config.out);
  std::vector<Scorecard> cards = suggest_all(corpus, schema);
  std::ostringstream suggested;
  write_scorecards(suggested, cards, schema);
  write_text_file(config.out / "suggested_scorecards.csv", suggested.str());
  if (config.overrides) {
    const auto overrides = read_overrides(*config.overrides, schema);
    for (auto& card : cards) card = resolve_scorecard(card, overrides, schema);
    std::ostringstream resolved;
    write_scorecards(resolved, cards, schema);
    write_text_file(config.out / "scorecards.csv", resolved.str());
  }
  out << cards.size() << " scorecards suggested\n";
  return kOk;
}

int cmd_score(const RunConfig& config, std::ostream& out, const std::set<std::string>& formats) {
  const IndicatorSchema schema = load_schema(*config.schema);
  std::optional<Corpus> corpus;
  if (config.manifest) corpus = load(config);

  std::vector<Scorecard> cards;
  std::vector<std::string> problems;
  if (config.scorecards) {
    std::vector<Scorecard> given = read_scorecards(*config.scorecards, schema);
    if (corpus) {
      for (const auto& doc : corpus->documents) {
        auto it = std::find_if(given.begin(), given.end(), [&](const Scorecard& c) { return c.doc_id == doc.id; });
        if (it == given.end())
          problems.push_back("document " + doc.id + ": no scorecard");
        else
          cards.push_back(*it);
      }
      for (const auto& card : given)
        if (!corpus->find(card.doc_id)) problems.push_back("scorecard " + card.doc_id + ": not in manifest");
    } else {
      cards = std::move(given);
    }
  } else {
    cards = suggest_all(*corpus, schema);
  }
  if (config.overrides) {
    const auto overrides = read_overrides(*config.overrides, schema);
    for (auto& card : cards) card = resolve_scorecard(card, overrides, schema);
  }
  for (const auto& card : cards) {
    const auto missing = card.missing(schema);
    if (missing.empty()) continue;
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : " ") + id;
    problems.push_back("document " + card.doc_id + ": incomplete scorecard, missing " + list);
  }
  if (cards.empty()) problems.push_back("no scorecards");
  if (!problems.empty()) throw InputError("cannot score", problems);

  std::vector<PmcResult> results;
  for (const auto& card : cards) results.push_back(evaluate(card, schema));
  const auto stats = descriptive_stats(results, schema);

  ensure_dir(config.out);
  write_text_file(config.out / "results.csv", format_results(results, schema, TableFormat::Csv));
  write_text_file(config.out / "stats.csv", format_stats_csv(stats));
  std::ostringstream miot;
  write_miot_csv(miot, build_miot(schema));
  write_text_file(config.out / "miot.csv", miot.str());

  if (formats.count("markdown")) {
    std::vector<std::string> labels;
    if (corpus) {
      std::set<int> years;
      for (const auto& card : cards) {
        const int year = corpus->find(card.doc_id)->release_date.year;
        labels.push_back(std::to_string(year));
        years.insert(year);
      }
      if (years.size() != cards.size()) labels.clear();
    }
    write_text_file(config.out / "results.md", format_results(results, schema, TableFormat::Markdown, labels));
    write_text_file(config.out / "stats.md", format_stats_markdown(stats));
  }
  if (formats.count("svg")) {
    const fs::path charts = config.out / "charts";
    ensure_dir(charts);
    for (const auto& r : results) {
      if (r.surface)
        write_chart(ChartSpec::surface("PMC surface: document " + r.doc_id, *r.surface,
                                       charts / ("surface_" + r.doc_id + ".svg")));
      std::vector<SpiderAxis> axes;
      for (std::size_t i = 0; i < schema.main_variables.size(); ++i)
        axes.push_back({schema.main_variables[i].id, r.main_values(static_cast<Eigen::Index>(i))});
      if (axes.size() >= 3)
        write_chart(ChartSpec::spider("Main variables: document " + r.doc_id, axes,
                                      charts / ("spider_" + r.doc_id + ".svg")));
    }
    if (corpus && results.size() >= 2) {
      std::vector<TrendPoint> points;
      for (const auto& r : results) points.push_back({corpus->find(r.doc_id)->release_date, r.g});
      write_chart(ChartSpec::trend("Implicit guarantee intensity G", points, charts / "trend.svg"));
    }
  }
  out << results.size() << " documents scored; mean PMC " << format_fixed2(stats[stats.size() - 2].mean) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PMC index and implicit guarantee intensity pipeline", "pmcidx"};
  app.set_config("--config", "", "INI/TOML file with option values; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string manifest, schema, dict, stop, scorecards, overrides;
  app.add_option("--manifest", manifest, "Corpus manifest file");
  app.add_option("--schema", schema, "Indicator schema (JSON)");
  app.add_option("--dict", dict, "Dictionary file, one term per line");
  app.add_option("--stopwords", stop, "Stopword file, one term per line");
  app.add_option("--scorecards", scorecards, "Scorecard CSV (doc_id,subvar_id,value,source)");
  app.add_option("--overrides", overrides, "Manual override CSV, same layout as scorecards");
  app.add_option("--window", config.textrank.window, "TextRank window size")->capture_default_str();
  app.add_option("--damping", config.textrank.damping, "TextRank damping factor")->capture_default_str();
  app.add_option("--tol", config.textrank.tol, "TextRank L1 convergence tolerance")->capture_default_str();
  app.add_option("--max-iter", config.textrank.max_iter, "TextRank iteration cap")->capture_default_str();
  app.add_option("--top", config.top, "Number of fused keywords kept")->capture_default_str();
  app.add_option("--k-clusters", config.k_clusters, "Number of keyword clusters")->capture_default_str();
  app.add_option("--out", config.out, "Output directory")->capture_default_str();
  app.add_option("--format", config.formats, "Output formats: csv, markdown, svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "markdown", "svg"}));
  app.add_option("--method", config.method, "keywords: all, freq, tfidf, textrank or fused")->capture_default_str();
  app.add_flag("--per-document", config.per_document, "keywords: fused ranking per document");

  for (const char* name : {"ingest", "keywords", "coword", "cluster", "suggest", "score", "report"}) {
    static const std::map<std::string, std::string> help{
        {"ingest", "Validate and load the corpus"},
        {"keywords", "Term frequencies, TF-IDF, TextRank and fused keywords"},
        {"coword", "Document-level co-word matrix over the top keywords"},
        {"cluster", "Average-linkage clustering of the top keywords"},
        {"suggest", "Rule-based scorecard suggestions"},
        {"score", "PMC index, intensity G, classification and statistics"},
        {"report", "score with every table and chart emitted"}};
    app.add_subcommand(name, help.at(name));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  auto set = [](std::optional<fs::path>& target, const std::string& value) {
    if (!value.empty()) target = value;
  };
  set(config.manifest, manifest);
  set(config.schema, schema);
  set(config.dictionary, dict);
  set(config.stopwords, stop);
  set(config.scorecards, scorecards);
  set(config.overrides, overrides);

  try {
    config.validate();
    std::set<std::string> formats(config.formats.begin(), config.formats.end());
    if (config.command == "ingest") return cmd_ingest(config, out);
    if (config.command == "keywords") return cmd_keywords(config, out, err);
    if (config.command == "coword") return cmd_coword(config, out, err);
    if (config.command == "cluster") return cmd_cluster(config, out, err);
    if (config.command == "suggest") return cmd_suggest(config, out);
    if (config.command == "score") return cmd_score(config, out, formats);
    return cmd_score(config, out, {"csv", "markdown", "svg"});
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    if (e.diagnostics().size() > 1 || (e.diagnostics().size() == 1 && e.diagnostics().front() != e.what()))
      for (const auto& d : e.diagnostics()) err << "  " << d << "\n";
    return kInputError;
  } catch (const ComputeError& e) {
    err << "error: " << e.what() << "\n";
    return kComputeError;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kOutputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputeError;
  }
}

}  // namespace pmc::cli
