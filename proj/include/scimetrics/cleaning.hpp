#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scimetrics/corpus.hpp"
#include "scimetrics/countries.hpp"

namespace scimetrics {

struct CorrectionRule {
  std::string pattern;  // institution text to look for
  std::string claimed;  // country printed on the paper, or "*" for any
  std::string code;     // corrected country
};

/// Affiliation cleaning rules. Patterns match as case-insensitive substrings
/// of the raw affiliation text; aliases match the whole country segment.
struct CleaningRules {
  std::vector<std::pair<std::string, std::string>> country_aliases;  // text -> code
  std::vector<CorrectionRule> country_corrections;
  std::vector<std::string> society_patterns;
  std::vector<std::pair<std::string, std::string>> institution_lookup;  // pattern -> code
};

/// Parses the sectioned rules format (see docs/rules_format.md) and validates
/// it against `countries`. Throws Error{RulesFileInvalid}.
CleaningRules parse_rules(std::string_view text, const CountryTable& countries);
CleaningRules load_rules(const std::filesystem::path& path, const CountryTable& countries);
void validate_rules(const CleaningRules& rules, const CountryTable& countries);

enum class CleaningAction { resolved, corrected, lookup_resolved, unresolved };
std::string_view to_string(CleaningAction action) noexcept;

struct AuthorResolution {
  std::optional<std::string> country;
  CleaningAction action = CleaningAction::unresolved;
  std::size_t societies_discarded = 0;
  /// The primary affiliation after society removal, if one survived.
  std::optional<AffiliationEntry> primary;
};

/// Resolves one author to at most one country. Order of application:
/// drop society entries, take the first survivor as primary, normalize its
/// country text through aliases and the country table, apply corrections,
/// then fall back to the institution lookup when no country is known.
AuthorResolution clean_author(std::span<const AffiliationEntry> entries, const CleaningRules& rules,
                              const CountryTable& countries);

struct CleaningReport {
  std::size_t resolved = 0;  // includes corrected and lookup_resolved
  std::size_t corrected = 0;
  std::size_t discarded_society = 0;  // affiliation entries dropped
  std::size_t lookup_resolved = 0;
  std::size_t unresolved = 0;

  std::size_t total() const { return resolved + unresolved; }
  bool operator==(const CleaningReport&) const = default;
};

struct CleanResult {
  std::vector<BiblioRecord> records;
  CleaningReport report;
};

/// Every author in the output keeps only its primary affiliation, with the
/// country filled in or the entry flagged unresolved. Authors whose only
/// affiliations were societies end up with an empty affiliation list.
CleanResult clean_corpus(std::span<const BiblioRecord> records, const CleaningRules& rules,
                         const CountryTable& countries);

}  // namespace scimetrics
