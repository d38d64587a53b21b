#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/corpus.hpp"

namespace scimetrics {

enum class Collaboration { single_country, international, unattributed };
std::string_view to_string(Collaboration c) noexcept;

/// Resolved country of every author that has one, in author order.
std::vector<std::string> author_countries(const BiblioRecord& record);

/// Fractional counting: each resolved author entry carries an equal share of
/// the paper. Shares sum to one, or the map is empty when nobody resolved.
std::map<std::string, double> country_fractions(const BiblioRecord& record);

Collaboration classify_collaboration(const BiblioRecord& record);

/// Per-country credits. Fractional fields (pub/cite credit) follow
/// country_fractions; the integer counters use whole counting.
struct CreditLedger {
  std::map<std::string, double> pub_credit;
  std::map<std::string, double> cite_credit;
  std::map<std::string, std::int64_t> icp_count;
  std::map<std::string, std::int64_t> paper_count;
  std::map<std::string, std::int64_t> uncited_count;
  std::map<std::string, Collaboration> collab_class;  // record id -> class
  std::map<std::string, std::map<int, double>> yearly_pub_credit;

  std::vector<std::string> countries() const;
  double total_pub_credit() const;
  double total_cite_credit() const;

  bool operator==(const CreditLedger&) const = default;
};

/// Records are accumulated in id order so the result does not depend on the
/// order of the input.
CreditLedger build_ledger(std::span<const BiblioRecord> records);

/// `country,pub_credit,cite_credit,paper_count,icp_count,uncited_count`,
/// credits to four decimals, one row per country in code order.
std::string ledger_csv(const CreditLedger& ledger);

}  // namespace scimetrics
