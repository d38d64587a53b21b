#include "scimetrics/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scimetrics/error.hpp"

namespace scimetrics {

double cagr(double begin, double end, int n_years) {
  if (n_years < 2) {
    throw Error(ErrorCode::InvalidArgument, "growth needs a window of at least two years");
  }
  if (begin == 0.0) throw Error(ErrorCode::ZeroBaseline, "growth undefined from a zero baseline");
  if (begin < 0.0 || end < 0.0) throw Error(ErrorCode::InvalidArgument, "negative output count");
  return std::pow(end / begin, 1.0 / static_cast<double>(n_years - 1)) - 1.0;
}

double rgi(double country_rate, double world_rate) {
  if (world_rate == 0.0) throw Error(ErrorCode::ZeroWorldRate, "world growth rate is zero");
  return country_rate / world_rate;
}

double sicp(double icp, double tp) {
  if (tp <= 0.0) throw Error(ErrorCode::EmptyDenominator, "no papers");
  if (icp < 0.0 || icp > tp) throw Error(ErrorCode::InvalidArgument, "ICP must lie in [0, TP]");
  return 100.0 * icp / tp;
}

double ricr(double country_sicp, double world_sicp) {
  if (world_sicp <= 0.0) throw Error(ErrorCode::ZeroWorldRate, "world collaboration share is zero");
  return country_sicp / world_sicp;
}

double cpp(double tc, double tp) {
  if (tp <= 0.0) throw Error(ErrorCode::EmptyDenominator, "no papers");
  return tc / tp;
}

double cppy(double tc, std::span<const int> paper_ages) {
  if (paper_ages.empty()) throw Error(ErrorCode::EmptyDenominator, "no papers");
  double years = 0.0;
  for (int age : paper_ages) {
    if (age < 1) throw Error(ErrorCode::InvalidArgument, "paper age below one year");
    years += age;
  }
  return tc / years;
}

double ncrr(double country_uncited_pct, double world_uncited_pct) {
  if (world_uncited_pct <= 0.0) throw Error(ErrorCode::ZeroWorldRate, "world uncited share is zero");
  return country_uncited_pct / world_uncited_pct;
}

double gini(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyList, "gini of an empty list");
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "gini needs non-negative values");
  }
  // Sorted form of the pairwise sum, with mirrored ranks paired:
  // sum_ij |x_i - x_j| = 2 sum_{i < n/2} (n - 1 - 2i) (x_(n-1-i) - x_(i)).
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double total = 0.0;
  for (double v : sorted) total += v;
  if (total == 0.0) throw Error(ErrorCode::AllZero, "gini of an all-zero list");
  double weighted = 0.0;
  const std::size_t m = sorted.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    weighted += (n - 1.0 - 2.0 * static_cast<double>(i)) * ((sorted[m - 1 - i] - sorted[i]) / total);
  }
  return weighted / n;
}

double simpson_diversity(std::span<const std::int64_t> category_counts) {
  std::int64_t total = 0;
  double same = 0.0;
  for (auto n : category_counts) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative category count");
    total += n;
    same += static_cast<double>(n) * static_cast<double>(n - 1);
  }
  if (total < 2) throw Error(ErrorCode::InsufficientSample, "diversity needs at least two assignments");
  const double t = static_cast<double>(total);
  return 1.0 - same / (t * (t - 1.0));
}

int paper_age(int publication_year, int census_year) {
  return std::max(1, census_year - publication_year);
}

double CorpusAggregates::world_sicp() const {
  return sicp(static_cast<double>(icp_papers), static_cast<double>(attributed_papers));
}

double CorpusAggregates::world_uncited_pct() const {
  if (total_papers == 0) throw Error(ErrorCode::EmptyDenominator, "no papers");
  return 100.0 * static_cast<double>(total_papers - cited_papers) / static_cast<double>(total_papers);
}

double CorpusAggregates::world_cagr() const {
  auto papers_in = [&](int year) -> double {
    auto it = yearly.find(year);
    return it == yearly.end() ? 0.0 : static_cast<double>(it->second.papers);
  };
  return cagr(papers_in(window.start_year), papers_in(window.end_year), window.length());
}

CorpusAggregates aggregate_corpus(std::span<const BiblioRecord> records, const StudyWindow& window,
                                  int census_year) {
  CorpusAggregates agg;
  agg.window = window;
  agg.census_year = census_year;
  for (int y = window.start_year; y <= window.end_year; ++y) agg.yearly[y];
  for (const auto& rec : records) {
    const bool cited = rec.citations > 0;
    ++agg.total_papers;
    agg.total_citations += rec.citations;
    agg.cited_papers += cited;
    agg.paper_ages.push_back(paper_age(rec.year, census_year));
    auto& year = agg.yearly[rec.year];
    ++year.papers;
    year.citations += rec.citations;
    year.cited_papers += cited;
    switch (classify_collaboration(rec)) {
      case Collaboration::international:
        ++agg.icp_papers;
        agg.icp_citations += rec.citations;
        agg.icp_cited += cited;
        ++year.icp_papers;
        [[fallthrough]];
      case Collaboration::single_country:
        ++agg.attributed_papers;
        agg.attributed_citations += rec.citations;
        ++year.attributed_papers;
        break;
      case Collaboration::unattributed:
        break;
    }
  }
  agg.single_papers = agg.attributed_papers - agg.icp_papers;
  agg.single_citations = agg.attributed_citations - agg.icp_citations;
  for (const auto& rec : records) {
    if (classify_collaboration(rec) == Collaboration::single_country) agg.single_cited += rec.citations > 0;
  }
  return agg;
}

namespace {

template <typename F>
auto try_compute(F&& f) -> std::optional<decltype(f())> {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<double> positive_values(const std::map<std::string, double>& m) {
  std::vector<double> out;
  for (const auto& [_, v] : m) {
    if (v > 0.0) out.push_back(v);
  }
  return out;
}

}  // namespace

WorldSummary world_row(const CreditLedger& ledger, const CorpusAggregates& corpus) {
  WorldSummary s;
  s.total_papers = corpus.total_papers;
  s.cagr = try_compute([&] { return corpus.world_cagr(); });
  s.countries = ledger.pub_credit.size();
  s.attributed_papers = corpus.attributed_papers;
  s.attributed_pct = corpus.total_papers
                         ? 100.0 * static_cast<double>(corpus.attributed_papers) /
                               static_cast<double>(corpus.total_papers)
                         : 0.0;
  s.icp_papers = corpus.icp_papers;
  s.sicp = try_compute([&] { return corpus.world_sicp(); });
  s.total_citations = corpus.total_citations;
  s.cited_papers = corpus.cited_papers;
  if (corpus.total_papers > 0) {
    s.pct_cited = 100.0 * static_cast<double>(corpus.cited_papers) / static_cast<double>(corpus.total_papers);
  }
  s.cpp = try_compute([&] {
    return cpp(static_cast<double>(corpus.total_citations), static_cast<double>(corpus.total_papers));
  });
  s.cppy = try_compute([&] { return cppy(static_cast<double>(corpus.total_citations), corpus.paper_ages); });
  auto pubs = positive_values(ledger.pub_credit);
  auto cites = ledger.cite_credit;
  std::vector<double> cite_values;
  for (const auto& [_, v] : cites) cite_values.push_back(v);
  s.gini_publications = try_compute([&] { return gini(pubs); });
  s.gini_citations = try_compute([&] { return gini(cite_values); });
  return s;
}

double country_cagr(const std::map<int, double>& yearly_credit, const StudyWindow& window) {
  std::optional<int> first;
  std::optional<int> last;
  for (const auto& [year, credit] : yearly_credit) {
    if (!window.contains(year) || credit <= 0.0) continue;
    if (!first) first = year;
    last = year;
  }
  if (!first || *first == *last) {
    throw Error(ErrorCode::InsufficientSample, "growth needs output in two distinct years");
  }
  return cagr(yearly_credit.at(*first), yearly_credit.at(*last), *last - *first + 1);
}

IndicatorRow country_row(const std::string& label, const std::string& country,
                         const CreditLedger& ledger, const CorpusAggregates& corpus) {
  IndicatorRow row;
  row.entity = label;
  auto lookup = [](const auto& m, const std::string& k) {
    auto it = m.find(k);
    using V = typename std::decay_t<decltype(m)>::mapped_type;
    return it == m.end() ? V{} : it->second;
  };
  const double tp = lookup(ledger.pub_credit, country);
  const double tc = lookup(ledger.cite_credit, country);
  const auto papers = static_cast<double>(lookup(ledger.paper_count, country));
  const auto icp = static_cast<double>(lookup(ledger.icp_count, country));
  const auto uncited = static_cast<double>(lookup(ledger.uncited_count, country));

  row.tp = tp;
  row.tc = tc;
  row.icp = icp;
  row.cpp = try_compute([&] { return cpp(tc, tp); });
  if (papers > 0) {
    row.pct_cited = 100.0 * (papers - uncited) / papers;
    row.sicp = sicp(icp, papers);
    row.ricr = try_compute([&] { return ricr(*row.sicp, corpus.world_sicp()); });
    row.ncrr = try_compute([&] { return ncrr(100.0 * uncited / papers, corpus.world_uncited_pct()); });
  }
  const double world_tp = ledger.total_pub_credit();
  const double world_tc = ledger.total_cite_credit();
  if (world_tp > 0) row.world_share = 100.0 * tp / world_tp;
  if (world_tc > 0) row.tc_share = 100.0 * tc / world_tc;
  auto yearly = ledger.yearly_pub_credit.find(country);
  if (yearly != ledger.yearly_pub_credit.end()) {
    row.cagr = try_compute([&] { return country_cagr(yearly->second, corpus.window); });
    if (row.cagr) row.rgi = try_compute([&] { return rgi(*row.cagr, corpus.world_cagr()); });
  }
  return row;
}

}  // namespace scimetrics
