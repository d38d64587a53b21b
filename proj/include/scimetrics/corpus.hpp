#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics {

enum class DocType { article, conference_paper, review, other };

std::string_view to_string(DocType type) noexcept;
/// Case-insensitive; spaces and hyphens are treated as underscores.
/// Anything outside the three research types maps to DocType::other.
DocType parse_doc_type(std::string_view text);

/// One affiliation as printed on the paper. `country` is empty until the
/// cleaning stage resolves it; `unresolved` is set when cleaning gave up.
struct AffiliationEntry {
  std::string raw_text;
  std::string institution;
  std::optional<std::string> country;
  bool unresolved = false;

  bool operator==(const AffiliationEntry&) const = default;
};

/// Last comma-separated segment of the affiliation, or empty when the text
/// has a single segment (an institution name with no address).
std::string_view country_text(const AffiliationEntry& entry);
AffiliationEntry make_affiliation(std::string_view raw_text);

/// Affiliations keep publication order; the first one is the primary.
struct Author {
  std::string name;
  std::vector<AffiliationEntry> affiliations;

  /// Country of the primary affiliation once cleaned, if any.
  std::optional<std::string> country() const;

  bool operator==(const Author&) const = default;
};

struct BiblioRecord {
  std::string id;
  int year = 0;
  DocType doc_type = DocType::article;
  std::int64_t citations = 0;
  std::vector<Author> authors;
  std::vector<std::string> subject_areas;  // unique, in first-seen order

  bool operator==(const BiblioRecord&) const = default;
};

/// Column names and list delimiters of the input CSV.
struct CorpusSchema {
  std::string id_column = "id";
  std::string year_column = "year";
  std::string doc_type_column = "doc_type";
  std::string citations_column = "citations";
  std::string affiliations_column = "author_affiliations";
  std::string subjects_column = "subject_areas";
  char author_delimiter = ';';
  char affiliation_delimiter = '|';
  char subject_delimiter = ';';
};

struct ParseDiagnostic {
  std::string source;
  std::size_t row = 0;  // 1-based physical line in the source file
  std::string message;
};

struct ParseResult {
  std::vector<BiblioRecord> records;
  std::vector<ParseDiagnostic> diagnostics;
  std::size_t malformed_rows = 0;
};

/// Throws Error{EmptyFile} when there is no data row and Error{MissingColumn}
/// when the header lacks a schema column. Rows with an unparseable year or
/// citation count are skipped and reported in `diagnostics`.
ParseResult parse_corpus_text(std::string_view text, const CorpusSchema& schema = {},
                              std::string_view source = "<memory>");
ParseResult parse_corpus(const std::filesystem::path& path, const CorpusSchema& schema = {});

/// Parses several files concurrently and concatenates results in file order.
ParseResult parse_corpora(const std::vector<std::filesystem::path>& paths,
                          const CorpusSchema& schema = {});

/// Canonical CSV form of a corpus; parse_corpus_text inverts it.
std::string serialize_corpus(std::span<const BiblioRecord> records);

struct DedupResult {
  std::vector<BiblioRecord> records;
  std::size_t duplicate_count = 0;
};

/// Keeps the first record for each id, in input order.
DedupResult deduplicate(std::span<const BiblioRecord> records);

struct StudyWindow {
  int start_year = 1998;
  int end_year = 2012;

  bool contains(int year) const { return year >= start_year && year <= end_year; }
  int length() const { return end_year - start_year + 1; }
};

std::set<DocType> research_doc_types();

/// Keeps records inside the window whose type is in `doc_types`.
std::vector<BiblioRecord> filter_records(std::span<const BiblioRecord> records,
                                         const StudyWindow& window,
                                         const std::set<DocType>& doc_types);

struct CorpusStats {
  std::size_t total_records = 0;
  std::size_t records_with_country = 0;
  std::size_t duplicate_count = 0;
  std::map<int, std::size_t> year_histogram;

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats corpus_stats(std::span<const BiblioRecord> records, std::size_t duplicate_count = 0);

}  // namespace scimetrics
