#include "scimetrics/grouping.hpp"

#include <algorithm>

#include "scimetrics/error.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

std::vector<std::string> GroupScheme::labels() const {
  std::set<std::string> s;
  for (const auto& [_, g] : assignment) s.insert(g);
  return {s.begin(), s.end()};
}

std::set<std::string> GroupScheme::members_of(std::string_view label) const {
  std::set<std::string> out;
  for (const auto& [c, g] : assignment) {
    if (g == label) out.insert(c);
  }
  return out;
}

GroupScheme parse_scheme(std::string_view text, const CountryTable& countries, std::string name) {
  GroupScheme scheme;
  scheme.name = std::move(name);
  bool first = true;
  for (const auto& row : parse_csv(text)) {
    if (row.fields.empty() || trim(row.fields[0]).starts_with('#')) continue;
    std::string code(trim(row.fields[0]));
    std::string group = row.fields.size() > 1 ? std::string(trim(row.fields[1])) : std::string{};
    if (first && code == "country") {
      first = false;
      continue;
    }
    first = false;
    const std::string where = scheme.name + " line " + std::to_string(row.line);
    if (row.fields.size() != 2 || group.empty()) {
      throw Error(ErrorCode::MalformedRow, where + ": expected country,group");
    }
    if (!countries.contains(code)) {
      throw Error(ErrorCode::UnknownCountryCode, where + ": unknown country code '" + code + "'");
    }
    if (!scheme.assignment.emplace(code, group).second) {
      throw Error(ErrorCode::DuplicateAssignment, where + ": " + code + " assigned twice");
    }
  }
  return scheme;
}

GroupScheme load_scheme(const std::filesystem::path& path, const CountryTable& countries,
                        std::string name) {
  if (name.empty()) name = path.stem().string();
  return parse_scheme(read_file(path), countries, std::move(name));
}

std::vector<GroupRow> aggregate_by_group(const CreditLedger& ledger, const GroupScheme& scheme) {
  std::map<std::string, std::vector<std::string>> members;
  for (const auto& [country, credit] : ledger.pub_credit) {
    auto it = scheme.assignment.find(country);
    if (it != scheme.assignment.end()) {
      members[it->second].push_back(country);
    } else if (scheme.exhaustive) {
      throw Error(ErrorCode::UnassignedCountry,
                  "scheme " + scheme.name + " does not assign country " + country);
    } else {
      members[std::string(kUnclassified)].push_back(country);
    }
  }

  const double world_tp = ledger.total_pub_credit();
  std::vector<GroupRow> rows;
  for (const auto& [group, codes] : members) {
    GroupRow row;
    row.group = group;
    row.member_count = codes.size();
    std::vector<double> credits;
    double best = -1.0;
    for (const auto& code : codes) {  // codes are in lexicographic order
      const double pub = ledger.pub_credit.at(code);
      row.tp += pub;
      row.tc += ledger.cite_credit.at(code);
      credits.push_back(pub);
      if (pub > best) {
        best = pub;
        row.leading_country = code;
      }
    }
    if (row.tp > 0) row.cpp = cpp(row.tc, row.tp);
    row.world_share = world_tp > 0 ? 100.0 * row.tp / world_tp : 0.0;
    row.gini_within = gini(credits);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const GroupRow& a, const GroupRow& b) {
    const bool ua = a.group == kUnclassified;
    const bool ub = b.group == kUnclassified;
    if (ua != ub) return ub;
    if (a.tp != b.tp) return a.tp > b.tp;
    return a.group < b.group;
  });
  return rows;
}

std::vector<IndicatorRow> group_country_table(const CreditLedger& ledger,
                                              const std::set<std::string>& members,
                                              const CorpusAggregates& world,
                                              const CountryTable& countries) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "group has no members");
  std::vector<IndicatorRow> rows;
  IndicatorRow total;
  total.entity = "Total";
  total.tp = 0.0;
  total.tc = 0.0;
  for (const auto& code : members) {
    if (!ledger.pub_credit.count(code)) continue;
    IndicatorRow full = country_row(countries.name_of(code), code, ledger, world);
    IndicatorRow row;
    row.entity = full.entity;
    row.tp = full.tp;
    row.tc = full.tc;
    row.world_share = full.world_share;
    row.cpp = full.cpp;
    row.sicp = full.sicp;
    row.ricr = full.ricr;
    row.ncrr = full.ncrr;
    *total.tp += *full.tp;
    *total.tc += *full.tc;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const IndicatorRow& a, const IndicatorRow& b) { return *a.tp > *b.tp; });
  const double world_tp = ledger.total_pub_credit();
  if (world_tp > 0) total.world_share = 100.0 * *total.tp / world_tp;
  if (*total.tp > 0) total.cpp = cpp(*total.tc, *total.tp);
  rows.push_back(std::move(total));
  return rows;
}

}  // namespace scimetrics
