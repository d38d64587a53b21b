#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scimetrics/corpus.hpp"
#include "scimetrics/crediting.hpp"

namespace scimetrics {

// Scalar indicators. Percentages are passed as values in [0, 100]; ratios and
// rates are plain fractions (a 7.94% growth rate is 0.0794).

/// Compound annual growth over an inclusive window of `n_years` years:
/// (end / begin)^(1 / (n_years - 1)) - 1. Throws ZeroBaseline when begin is 0.
double cagr(double begin, double end, int n_years);

/// Relative growth index, country rate over world rate. Throws ZeroWorldRate.
double rgi(double country_rate, double world_rate);

/// Share of internationally co-authored papers, in percent.
double sicp(double icp, double tp);

/// Relative international collaboration rate. Throws ZeroWorldRate.
double ricr(double country_sicp, double world_sicp);

/// Citations per paper. Throws EmptyDenominator when tp is not positive.
double cpp(double tc, double tp);

/// Citations per paper-year: tc over the summed ages of the papers.
double cppy(double tc, std::span<const int> paper_ages);

/// Non-citation relative rate: uncited share of a country over the world's.
double ncrr(double country_uncited_pct, double world_uncited_pct);

/// Gini coefficient from the pairwise mean absolute difference,
/// sum_ij |x_i - x_j| / (2 n^2 mean). Throws EmptyList or AllZero.
double gini(std::span<const double> values);

/// Simpson index of diversity, 1 - sum n(n-1) / (N(N-1)).
/// Throws InsufficientSample when N < 2.
double simpson_diversity(std::span<const std::int64_t> category_counts);

/// Paper age in years at the census date, floored at one.
int paper_age(int publication_year, int census_year);

/// One row of a report table. Fields that do not apply stay empty.
struct IndicatorRow {
  std::string entity;
  std::optional<double> tp;
  std::optional<double> tc;
  std::optional<double> cpp;
  std::optional<double> pct_cited;
  std::optional<double> icp;
  std::optional<double> sicp;
  std::optional<double> ricr;
  std::optional<double> cagr;
  std::optional<double> rgi;
  std::optional<double> ncrr;
  std::optional<double> world_share;
  std::optional<double> tc_share;
};

struct YearAggregate {
  std::int64_t papers = 0;
  std::int64_t citations = 0;
  std::int64_t cited_papers = 0;
  std::int64_t attributed_papers = 0;
  std::int64_t icp_papers = 0;
};

/// Whole-paper tallies of a cleaned, filtered corpus.
struct CorpusAggregates {
  StudyWindow window;
  int census_year = 2013;
  std::int64_t total_papers = 0;
  std::int64_t total_citations = 0;
  std::int64_t cited_papers = 0;
  std::int64_t attributed_papers = 0;
  std::int64_t attributed_citations = 0;
  std::int64_t icp_papers = 0;
  std::int64_t icp_citations = 0;
  std::int64_t icp_cited = 0;
  std::int64_t single_papers = 0;
  std::int64_t single_citations = 0;
  std::int64_t single_cited = 0;
  std::vector<int> paper_ages;
  std::map<int, YearAggregate> yearly;

  /// Percent of attributed papers that are international.
  double world_sicp() const;
  /// Percent of all papers with zero citations.
  double world_uncited_pct() const;
  /// World output growth between the first and last year of the window.
  double world_cagr() const;
};

CorpusAggregates aggregate_corpus(std::span<const BiblioRecord> records, const StudyWindow& window,
                                  int census_year);

/// Corpus-level summary table.
struct WorldSummary {
  std::int64_t total_papers = 0;
  std::optional<double> cagr;
  std::size_t countries = 0;
  std::int64_t attributed_papers = 0;
  double attributed_pct = 0.0;
  std::int64_t icp_papers = 0;
  std::optional<double> sicp;
  std::int64_t total_citations = 0;
  std::int64_t cited_papers = 0;
  std::optional<double> pct_cited;
  std::optional<double> cpp;
  std::optional<double> cppy;
  std::optional<double> gini_publications;
  std::optional<double> gini_citations;
};

WorldSummary world_row(const CreditLedger& ledger, const CorpusAggregates& corpus);

/// Growth of a country's fractional output between its first and last
/// non-zero years inside the window. Throws InsufficientSample when fewer
/// than two such years exist.
double country_cagr(const std::map<int, double>& yearly_credit, const StudyWindow& window);

/// Full per-country row (TP, TC, CPP, %cited, ICP, SICP, RICR, NCRR, shares,
/// growth and RGI when computable) against world aggregates.
IndicatorRow country_row(const std::string& label, const std::string& country,
                         const CreditLedger& ledger, const CorpusAggregates& corpus);

}  // namespace scimetrics
