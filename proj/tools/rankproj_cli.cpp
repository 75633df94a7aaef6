// Batch front end: runs the ranking/projection pipeline headlessly and
// writes every artifact to an output directory.
//
// Exit codes: 0 ok, 1 runtime error, 2 usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rankproj/error.hpp"
#include "rankproj/pipeline.hpp"
#include "rankproj/serialize.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rankproj::Error(rankproj::ErrorKind::io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_marked(const std::string& path) {
  std::vector<std::string> ids;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

struct RunArgs {
  std::string input;
  std::string constraints;
  std::string marked;
  std::string out;
  std::string method = "tsne";
  int ratings = rankproj::kDefaultRatings;
  std::uint64_t seed = 0;
  double perplexity = 15.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double regularization = 1.0;
  std::size_t budget = 100;
  std::string delimiter = ",";
  bool force = false;
};

int run(const RunArgs& a) {
  using namespace rankproj;
  CsvOptions csv_options;
  csv_options.delimiter = a.delimiter[0];
  auto loaded = load_csv_text(read_file(a.input), csv_options);
  const Dataset& dataset = loaded.dataset;
  for (const auto& r : loaded.renamed)
    std::cerr << "note: duplicate label '" << r.label << "' renamed to '" << r.id << "'\n";
  for (std::size_t j = 0; j < dataset.attribute_count(); ++j)
    if (dataset.constant_columns()[j])
      std::cerr << "warning: attribute '" << dataset.schema()[j].name << "' is constant\n";

  RankingState ranking;
  if (!a.constraints.empty())
    ranking = rerank_from_pairs(dataset, read_preference_pairs(read_file(a.constraints), csv_options.delimiter),
                                a.regularization);
  else if (!a.marked.empty())
    ranking = rerank(dataset, MarkedRanking{read_marked(a.marked)}, a.regularization);
  else
    ranking = rank_with(dataset, equal_weights(dataset.attribute_count()));

  PipelineOptions options;
  options.n_ratings = a.ratings;
  options.projection.method = parse_method(a.method);
  options.projection.seed = a.seed;
  options.projection.tsne = {a.perplexity, a.iterations, a.learning_rate};
  options.inconsistencies.budget = a.budget;
  options.inconsistencies.seed = a.seed;

  const auto result = run_pipeline(dataset, std::move(ranking), options);
  write_outputs(a.out, dataset, result, a.force);
  std::cout << "wrote " << kOutputFiles.size() << " files to " << a.out << '\n';
  return 0;
}

int normalize_cmd(const std::string& input, const std::string& out_path, const std::string& delimiter) {
  using namespace rankproj;
  CsvOptions options;
  options.delimiter = delimiter[0];
  auto loaded = load_csv_text(read_file(input), options);
  if (out_path.empty() || out_path == "-") {
    write_normalized_csv(std::cout, loaded.dataset, options.delimiter);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write " + out_path);
    write_normalized_csv(out, loaded.dataset, options.delimiter);
  }
  return 0;
}

int compare_cmd(const std::string& a_path, const std::string& b_path) {
  using namespace rankproj;
  const auto a = scheme_from_json(Json::parse(read_file(a_path)));
  const auto b = scheme_from_json(Json::parse(read_file(b_path)));
  write_comparison_csv(std::cout, compare_schemes(a, b));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight inference, rating discretization and projection-axis analysis"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline and write all artifacts");
  run_cmd->add_option("--input", args.input, "CSV with label column + numeric attributes")->required();
  run_cmd->add_option("--constraints", args.constraints, "CSV of preferred_id,other_id pairs");
  run_cmd->add_option("--marked", args.marked, "Ordered item ids, one per line, best first");
  run_cmd->add_option("--ratings", args.ratings, "Number of ratings (n >= 2)")->capture_default_str();
  run_cmd->add_option("--method", args.method, "Projection method: pca or tsne")->capture_default_str();
  run_cmd->add_option("--seed", args.seed, "Seed for t-SNE and triple sampling")->capture_default_str();
  run_cmd->add_option("--perplexity", args.perplexity, "t-SNE perplexity")->capture_default_str();
  run_cmd->add_option("--iterations", args.iterations, "t-SNE iterations")->capture_default_str();
  run_cmd->add_option("--learning-rate", args.learning_rate, "t-SNE learning rate")->capture_default_str();
  run_cmd->add_option("--regularization,-C", args.regularization, "Ranking SVM C")->capture_default_str();
  run_cmd->add_option("--budget", args.budget, "Max inconsistencies reported")->capture_default_str();
  run_cmd->add_option("--delimiter", args.delimiter, "CSV delimiter")->capture_default_str();
  run_cmd->add_option("--out", args.out, "Output directory")->required();
  run_cmd->add_flag("--force", args.force, "Overwrite existing outputs");
  run_cmd->get_option("--constraints")->excludes("--marked");

  std::string norm_input, norm_out, norm_delim = ",";
  auto* norm = app.add_subcommand("normalize", "Export the min-max normalized matrix as CSV");
  norm->add_option("--input", norm_input)->required();
  norm->add_option("--out", norm_out, "Output file (default stdout)");
  norm->add_option("--delimiter", norm_delim)->capture_default_str();

  std::string cmp_a, cmp_b;
  auto* cmp = app.add_subcommand("compare", "Per-item rank deltas between two saved scheme files");
  cmp->add_option("a", cmp_a, "Scheme JSON")->required();
  cmp->add_option("b", cmp_b, "Scheme JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (run_cmd->parsed()) {
    if (args.ratings < 2) {
      std::cerr << "error: n must be >= 2\n\n" << run_cmd->help();
      return kExitUsage;
    }
    if (args.delimiter.size() != 1) {
      std::cerr << "error: delimiter must be a single character\n";
      return kExitUsage;
    }
  }

  try {
    if (run_cmd->parsed()) return run(args);
    if (norm->parsed()) return normalize_cmd(norm_input, norm_out, norm_delim);
    if (cmp->parsed()) return compare_cmd(cmp_a, cmp_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
