#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/countries.hpp"
#include "scimetrics/crediting.hpp"
#include "scimetrics/indicators.hpp"

namespace scimetrics {

inline constexpr std::string_view kUnclassified = "Unclassified";

/// Country -> group label. A country belongs to at most one group per scheme.
struct GroupScheme {
  std::string name;
  std::map<std::string, std::string> assignment;
  bool exhaustive = false;

  std::vector<std::string> labels() const;
  std::set<std::string> members_of(std::string_view label) const;
};

/// Two-column CSV `country,group`; '#' comments and an optional header are
/// skipped. Throws DuplicateAssignment or UnknownCountryCode.
GroupScheme parse_scheme(std::string_view text, const CountryTable& countries, std::string name);
GroupScheme load_scheme(const std::filesystem::path& path, const CountryTable& countries,
                        std::string name = {});

struct GroupRow {
  std::string group;
  std::size_t member_count = 0;  // members present in the ledger
  double tp = 0.0;
  double tc = 0.0;
  std::optional<double> cpp;
  double world_share = 0.0;
  double gini_within = 0.0;
  std::string leading_country;
};

/// One row per group that has output, sorted by TP descending then label.
/// Countries the scheme leaves out go to an "Unclassified" row, or raise
/// UnassignedCountry when the scheme is exhaustive.
std::vector<GroupRow> aggregate_by_group(const CreditLedger& ledger, const GroupScheme& scheme);

/// Per-member rows (TP, share, CPP, %ICP, RICR, NCRR) for members present in
/// the ledger, ordered by TP descending, followed by a "Total" row.
std::vector<IndicatorRow> group_country_table(const CreditLedger& ledger,
                                              const std::set<std::string>& members,
                                              const CorpusAggregates& world,
                                              const CountryTable& countries);

}  // namespace scimetrics
