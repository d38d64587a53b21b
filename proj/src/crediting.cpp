#include "scimetrics/crediting.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "scimetrics/text.hpp"

namespace scimetrics {

std::string_view to_string(Collaboration c) noexcept {
  switch (c) {
    case Collaboration::single_country: return "single_country";
    case Collaboration::international: return "international";
    case Collaboration::unattributed: return "unattributed";
  }
  return "unattributed";
}

std::vector<std::string> author_countries(const BiblioRecord& record) {
  std::vector<std::string> out;
  for (const auto& author : record.authors) {
    if (auto c = author.country()) out.push_back(std::move(*c));
  }
  return out;
}

std::map<std::string, double> country_fractions(const BiblioRecord& record) {
  std::map<std::string, int> counts;
  int total = 0;
  for (const auto& c : author_countries(record)) {
    ++counts[c];
    ++total;
  }
  std::map<std::string, double> fractions;
  for (const auto& [country, n] : counts) {
    fractions[country] = static_cast<double>(n) / static_cast<double>(total);
  }
  return fractions;
}

Collaboration classify_collaboration(const BiblioRecord& record) {
  auto countries = author_countries(record);
  std::set<std::string> distinct(countries.begin(), countries.end());
  if (distinct.empty()) return Collaboration::unattributed;
  return distinct.size() == 1 ? Collaboration::single_country : Collaboration::international;
}

std::vector<std::string> CreditLedger::countries() const {
  std::vector<std::string> out;
  out.reserve(pub_credit.size());
  for (const auto& [c, _] : pub_credit) out.push_back(c);
  return out;
}

double CreditLedger::total_pub_credit() const {
  double sum = 0.0;
  for (const auto& [_, v] : pub_credit) sum += v;
  return sum;
}

double CreditLedger::total_cite_credit() const {
  double sum = 0.0;
  for (const auto& [_, v] : cite_credit) sum += v;
  return sum;
}

CreditLedger build_ledger(std::span<const BiblioRecord> records) {
  std::vector<const BiblioRecord*> order;
  order.reserve(records.size());
  for (const auto& r : records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const BiblioRecord* a, const BiblioRecord* b) {
    if (a->id != b->id) return a->id < b->id;
    if (a->year != b->year) return a->year < b->year;
    return a->citations < b->citations;
  });

  CreditLedger ledger;
  for (const BiblioRecord* rec : order) {
    Collaboration cls = classify_collaboration(*rec);
    ledger.collab_class[rec->id] = cls;
    const auto fractions = country_fractions(*rec);
    for (const auto& [country, share] : fractions) {
      ledger.pub_credit[country] += share;
      ledger.cite_credit[country] += static_cast<double>(rec->citations) * share;
      ledger.yearly_pub_credit[country][rec->year] += share;
      ++ledger.paper_count[country];
      if (cls == Collaboration::international) ++ledger.icp_count[country];
      else ledger.icp_count.try_emplace(country, 0);
      if (rec->citations == 0) ++ledger.uncited_count[country];
      else ledger.uncited_count.try_emplace(country, 0);
    }
  }
  return ledger;
}

std::string ledger_csv(const CreditLedger& ledger) {
  std::string out = "country,pub_credit,cite_credit,paper_count,icp_count,uncited_count\n";
  for (const auto& [country, pub] : ledger.pub_credit) {
    out += csv_line({country, fixed(pub, 4), fixed(ledger.cite_credit.at(country), 4),
                     std::to_string(ledger.paper_count.at(country)),
                     std::to_string(ledger.icp_count.at(country)),
                     std::to_string(ledger.uncited_count.at(country))});
  }
  return out;
}

}  // namespace scimetrics
