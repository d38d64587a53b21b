// Command-line driver: `scimetrics analyze --corpus ... --out ...`.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "scimetrics/error.hpp"
#include "scimetrics/report.hpp"
#include "scimetrics/text.hpp"

#ifndef SCIMETRICS_DATA_DIR
#define SCIMETRICS_DATA_DIR "data"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

scimetrics::StudyWindow parse_window(const std::string& text) {
  auto parts = scimetrics::split(text, ':');
  if (parts.size() != 2) throw CLI::ValidationError("--window", "expected START:END, got " + text);
  try {
    return {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--window", "expected START:END, got " + text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Country-level scientometric indicators and co-authorship networks"};
  app.require_subcommand(1);

  scimetrics::RunConfig config;
  config.countries_path = std::filesystem::path(SCIMETRICS_DATA_DIR) / "countries.csv";
  std::string rules;
  std::vector<std::string> schemes;
  std::string window = "1998:2012";
  std::string subjects_filter;
  std::string format = "csv";
  std::vector<std::string> doc_types{"article", "conference_paper", "review"};
  bool quiet = false;

  CLI::App* analyze = app.add_subcommand("analyze", "Run the full pipeline and write the report bundle");
  analyze->add_option("--corpus", config.corpus_path, "Bibliographic records CSV")->required();
  analyze->add_option("--rules", rules, "Affiliation cleaning rules file");
  analyze->add_option("--countries", config.countries_path, "Country code table")->capture_default_str();
  analyze->add_option("--scheme", schemes, "Grouping scheme as NAME=PATH (repeatable)");
  analyze->add_option("--window", window, "Study window START:END")->capture_default_str();
  analyze->add_option("--census", config.census_year, "Census year for paper ages")->capture_default_str();
  analyze->add_option("--doc-types", doc_types, "Document types kept")->delimiter(',')->capture_default_str();
  analyze->add_option("--min-degree", config.min_degree, "Network degree threshold")->capture_default_str();
  analyze->add_option("--seed", config.seed, "Seed for community detection and layout")->capture_default_str();
  analyze->add_option("--layout-iterations", config.layout_iterations, "Spring layout iteration cap")
      ->capture_default_str();
  analyze->add_option("--top-threshold", config.top_threshold, "Papers needed to list a top country")
      ->capture_default_str();
  analyze->add_option("--subjects-filter", subjects_filter, "Subject-area allow-list, one per line");
  analyze->add_option("--out", config.output_dir, "Output directory")->required();
  analyze->add_option("--format", format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}))
      ->capture_default_str();
  analyze->add_flag("-q,--quiet", quiet, "Suppress row diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    config.window = parse_window(window);
    if (!rules.empty()) config.rules_path = rules;
    if (!subjects_filter.empty()) config.subjects_filter = subjects_filter;
    config.format = format == "markdown" ? scimetrics::OutputFormat::markdown : scimetrics::OutputFormat::csv;
    config.doc_types.clear();
    for (const auto& t : doc_types) config.doc_types.insert(scimetrics::parse_doc_type(t));
    for (const auto& s : schemes) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw scimetrics::Error(scimetrics::ErrorCode::InvalidArgument, "--scheme expects NAME=PATH, got " + s);
      }
      config.schemes.push_back({s.substr(0, eq), s.substr(eq + 1)});
    }

    scimetrics::ReportBundle bundle = scimetrics::build_report(config);
    if (!quiet) {
      for (const auto& d : bundle.diagnostics) {
        std::cerr << d.source << ":" << d.row << ": skipped: " << d.message << "\n";
      }
    }
    auto written = scimetrics::write_bundle(bundle, config.output_dir);
    std::cout << "wrote " << written.size() << " files to " << config.output_dir.string() << "\n";
    return kExitOk;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const scimetrics::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
