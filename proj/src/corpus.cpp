#include "scimetrics/corpus.hpp"

#include <charconv>
#include <future>
#include <unordered_set>

#include "scimetrics/error.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

std::string_view to_string(DocType type) noexcept {
  switch (type) {
    case DocType::article: return "article";
    case DocType::conference_paper: return "conference_paper";
    case DocType::review: return "review";
    case DocType::other: return "other";
  }
  return "other";
}

DocType parse_doc_type(std::string_view text) {
  std::string key = to_lower(trim(text));
  for (char& c : key) {
    if (c == ' ' || c == '-') c = '_';
  }
  if (key == "article") return DocType::article;
  if (key == "conference_paper") return DocType::conference_paper;
  if (key == "review") return DocType::review;
  return DocType::other;
}

std::string_view country_text(const AffiliationEntry& entry) {
  std::string_view raw = entry.raw_text;
  auto pos = raw.rfind(',');
  if (pos == std::string_view::npos) return {};
  return trim(raw.substr(pos + 1));
}

AffiliationEntry make_affiliation(std::string_view raw_text) {
  AffiliationEntry entry;
  entry.raw_text = std::string(trim(raw_text));
  std::string_view raw = entry.raw_text;
  entry.institution = std::string(trim(raw.substr(0, raw.find(','))));
  return entry;
}

std::optional<std::string> Author::country() const {
  if (affiliations.empty()) return std::nullopt;
  const auto& primary = affiliations.front();
  if (primary.unresolved) return std::nullopt;
  return primary.country;
}

namespace {

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
  text = trim(text);
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<Author> parse_authors(std::string_view field, const CorpusSchema& schema) {
  std::vector<Author> authors;
  if (trim(field).empty()) return authors;
  for (const auto& chunk : split(field, schema.author_delimiter)) {
    if (trim(chunk).empty()) continue;
    auto parts = split(chunk, schema.affiliation_delimiter);
    Author author;
    author.name = std::string(trim(parts.front()));
    for (std::size_t i = 1; i < parts.size(); ++i) {
      if (trim(parts[i]).empty()) continue;
      author.affiliations.push_back(make_affiliation(parts[i]));
    }
    authors.push_back(std::move(author));
  }
  return authors;
}

std::vector<std::string> parse_subjects(std::string_view field, char delim) {
  std::vector<std::string> out;
  if (trim(field).empty()) return out;
  for (const auto& s : split(field, delim)) {
    std::string label(trim(s));
    if (label.empty()) continue;
    bool seen = false;
    for (const auto& existing : out) seen = seen || existing == label;
    if (!seen) out.push_back(std::move(label));
  }
  return out;
}

}  // namespace

ParseResult parse_corpus_text(std::string_view text, const CorpusSchema& schema,
                              std::string_view source) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyFile, std::string(source) + " has no header");

  const auto& header = rows.front().fields;
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw Error(ErrorCode::MissingColumn,
                std::string(source) + ": header lacks column '" + name + "'");
  };
  const std::size_t c_id = column(schema.id_column);
  const std::size_t c_year = column(schema.year_column);
  const std::size_t c_type = column(schema.doc_type_column);
  const std::size_t c_cites = column(schema.citations_column);
  const std::size_t c_affs = column(schema.affiliations_column);
  const std::size_t c_subj = column(schema.subjects_column);

  if (rows.size() == 1) throw Error(ErrorCode::EmptyFile, std::string(source) + " has no data rows");

  ParseResult result;
  auto reject = [&](const CsvRow& row, std::string message) {
    result.diagnostics.push_back({std::string(source), row.line, std::move(message)});
    ++result.malformed_rows;
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      reject(row, "expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(row.fields.size()));
      continue;
    }
    BiblioRecord rec;
    rec.id = std::string(trim(row.fields[c_id]));
    if (rec.id.empty()) {
      reject(row, "empty id");
      continue;
    }
    if (!parse_int(row.fields[c_year], rec.year)) {
      reject(row, "unparseable year '" + row.fields[c_year] + "'");
      continue;
    }
    if (!parse_int(row.fields[c_cites], rec.citations) || rec.citations < 0) {
      reject(row, "unparseable citation count '" + row.fields[c_cites] + "'");
      continue;
    }
    rec.doc_type = parse_doc_type(row.fields[c_type]);
    rec.authors = parse_authors(row.fields[c_affs], schema);
    rec.subject_areas = parse_subjects(row.fields[c_subj], schema.subject_delimiter);
    result.records.push_back(std::move(rec));
  }
  return result;
}

ParseResult parse_corpus(const std::filesystem::path& path, const CorpusSchema& schema) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::IoFailure, "corpus file not found: " + path.string());
  }
  return parse_corpus_text(read_file(path), schema, path.string());
}

ParseResult parse_corpora(const std::vector<std::filesystem::path>& paths,
                          const CorpusSchema& schema) {
  std::vector<std::future<ParseResult>> jobs;
  jobs.reserve(paths.size());
  for (const auto& p : paths) {
    jobs.push_back(std::async(std::launch::async, [&schema, p] { return parse_corpus(p, schema); }));
  }
  ParseResult merged;
  for (auto& job : jobs) {
    ParseResult part = job.get();
    std::move(part.records.begin(), part.records.end(), std::back_inserter(merged.records));
    std::move(part.diagnostics.begin(), part.diagnostics.end(),
              std::back_inserter(merged.diagnostics));
    merged.malformed_rows += part.malformed_rows;
  }
  return merged;
}

std::string serialize_corpus(std::span<const BiblioRecord> records) {
  std::string out = "id,year,doc_type,citations,author_affiliations,subject_areas\n";
  for (const auto& rec : records) {
    std::string authors;
    for (std::size_t a = 0; a < rec.authors.size(); ++a) {
      if (a) authors.push_back(';');
      authors += rec.authors[a].name;
      for (const auto& aff : rec.authors[a].affiliations) {
        authors.push_back('|');
        authors += aff.raw_text;
      }
    }
    std::string subjects;
    for (std::size_t s = 0; s < rec.subject_areas.size(); ++s) {
      if (s) subjects.push_back(';');
      subjects += rec.subject_areas[s];
    }
    out += csv_line({rec.id, std::to_string(rec.year), std::string(to_string(rec.doc_type)),
                     std::to_string(rec.citations), authors, subjects});
  }
  return out;
}

DedupResult deduplicate(std::span<const BiblioRecord> records) {
  DedupResult result;
  std::unordered_set<std::string> seen;
  seen.reserve(records.size());
  for (const auto& rec : records) {
    if (seen.insert(rec.id).second) {
      result.records.push_back(rec);
    } else {
      ++result.duplicate_count;
    }
  }
  return result;
}

std::set<DocType> research_doc_types() {
  return {DocType::article, DocType::conference_paper, DocType::review};
}

std::vector<BiblioRecord> filter_records(std::span<const BiblioRecord> records,
                                         const StudyWindow& window,
                                         const std::set<DocType>& doc_types) {
  std::vector<BiblioRecord> out;
  for (const auto& rec : records) {
    if (window.contains(rec.year) && doc_types.count(rec.doc_type)) out.push_back(rec);
  }
  return out;
}

CorpusStats corpus_stats(std::span<const BiblioRecord> records, std::size_t duplicate_count) {
  CorpusStats stats;
  stats.total_records = records.size();
  stats.duplicate_count = duplicate_count;
  for (const auto& rec : records) {
    ++stats.year_histogram[rec.year];
    for (const auto& author : rec.authors) {
      if (author.country()) {
        ++stats.records_with_country;
        break;
      }
    }
  }
  return stats;
}

}  // namespace scimetrics
