#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scimetrics/cleaning.hpp"
#include "scimetrics/corpus.hpp"

namespace scimetrics {

enum class OutputFormat { csv, markdown };

struct SchemeSpec {
  std::string name;
  std::filesystem::path path;
};

struct RunConfig {
  std::filesystem::path corpus_path;
  std::optional<std::filesystem::path> rules_path;
  std::filesystem::path countries_path;
  std::vector<SchemeSpec> schemes;
  StudyWindow window{1998, 2012};
  int census_year = 2013;
  std::set<DocType> doc_types = research_doc_types();
  int min_degree = 12;
  std::uint64_t seed = 0;
  int layout_iterations = 5000;
  double top_threshold = 1000.0;
  std::optional<std::filesystem::path> subjects_filter;
  std::filesystem::path output_dir;
  OutputFormat format = OutputFormat::csv;

  /// Throws InvalidArgument when the window or census year is inconsistent.
  void validate() const;
};

/// A report table rendered to CSV, and to aligned Markdown on request.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  std::string to_markdown() const;
};

struct YearRow {
  int year = 0;
  std::int64_t tp = 0;
  std::int64_t tc = 0;
  std::optional<double> cpp;
  std::optional<double> pct_cited;
};

/// Whole-count output per year of the window, one row per year.
std::vector<YearRow> yearly_output(std::span<const BiblioRecord> records, const StudyWindow& window);

struct BlockRow {
  int start_year = 0;
  int end_year = 0;
  std::int64_t icp = 0;
  std::int64_t tp = 0;  // papers with at least one resolved country
  std::optional<double> pct;
};

/// Five-year blocks from the window start; a remainder forms a shorter last block.
std::vector<BlockRow> five_year_blocks(std::span<const BiblioRecord> records, const StudyWindow& window);

struct CollabRow {
  std::string type;
  std::int64_t tp = 0;
  std::int64_t tc = 0;
  std::optional<double> cpp;
  std::optional<double> pct_cited;
};

/// "International Collaboration" and "Single Country" rows. Papers without a
/// resolved country are in neither.
std::vector<CollabRow> collab_split(std::span<const BiblioRecord> records);

/// File name -> content for every output of a run (manifest included).
struct ReportBundle {
  std::map<std::string, std::string> files;
  std::vector<ParseDiagnostic> diagnostics;
  CleaningReport cleaning;
};

/// Runs the whole analysis in memory. Input problems raise Error with the
/// offending file named; violated accounting identities raise
/// Error{InvariantViolation}.
ReportBundle build_report(const RunConfig& config);

/// Writes every file of the bundle into dir. On a write failure every file
/// written so far is removed.
std::vector<std::filesystem::path> write_bundle(const ReportBundle& bundle,
                                                const std::filesystem::path& dir);

/// build_report, then writes the bundle into config.output_dir. On a write
/// failure every file written so far is removed. Returns the written paths.
std::vector<std::filesystem::path> run_pipeline(const RunConfig& config);

std::string sha256_hex(std::string_view data);

}  // namespace scimetrics
