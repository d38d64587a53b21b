#include "scimetrics/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "scimetrics/crediting.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/grouping.hpp"
#include "scimetrics/indicators.hpp"
#include "scimetrics/interdisciplinarity.hpp"
#include "scimetrics/network.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

void RunConfig::validate() const {
  if (window.start_year > window.end_year) {
    throw Error(ErrorCode::InvalidArgument, "window start is after window end");
  }
  if (census_year < window.end_year) {
    throw Error(ErrorCode::InvalidArgument, "census year precedes the end of the window");
  }
  if (min_degree < 0) throw Error(ErrorCode::InvalidArgument, "min_degree must be non-negative");
  if (layout_iterations <= 0) throw Error(ErrorCode::NonPositiveIterations, "layout iterations must be positive");
}

std::string Table::to_csv() const {
  std::string out = csv_line(header);
  for (const auto& row : rows) out += csv_line(row);
  return out;
}

std::string Table::to_markdown() const {
  std::vector<std::size_t> width(header.size(), 3);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = std::max(width[c], header[c].size());
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string& cell = c < cells.size() ? cells[c] : std::string{};
      out += " " + cell + std::string(width[c] - cell.size(), ' ') + " |";
    }
    return out + "\n";
  };
  std::string out = line(header) + "|";
  for (std::size_t w : width) out += std::string(w + 2, '-') + "|";
  out += "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

namespace {

constexpr const char* kNotAvailable = "n/a";

std::string num(const std::optional<double>& v, int decimals = 2) {
  return v ? fixed(*v, decimals) : kNotAvailable;
}

std::optional<double> ratio_pct(std::int64_t part, std::int64_t whole) {
  if (whole <= 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::optional<double> safe_cpp(double tc, double tp) {
  if (tp <= 0) return std::nullopt;
  return cpp(tc, tp);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvariantViolation, what);
}

}  // namespace

std::vector<YearRow> yearly_output(std::span<const BiblioRecord> records, const StudyWindow& window) {
  std::map<int, YearRow> by_year;
  std::map<int, std::int64_t> cited;
  for (int y = window.start_year; y <= window.end_year; ++y) by_year[y].year = y;
  for (const auto& rec : records) {
    if (!window.contains(rec.year)) continue;
    auto& row = by_year[rec.year];
    ++row.tp;
    row.tc += rec.citations;
    cited[rec.year] += rec.citations > 0;
  }
  std::vector<YearRow> out;
  for (auto& [year, row] : by_year) {
    row.cpp = safe_cpp(static_cast<double>(row.tc), static_cast<double>(row.tp));
    row.pct_cited = ratio_pct(cited[year], row.tp);
    out.push_back(row);
  }
  return out;
}

std::vector<BlockRow> five_year_blocks(std::span<const BiblioRecord> records, const StudyWindow& window) {
  std::vector<BlockRow> blocks;
  for (int start = window.start_year; start <= window.end_year; start += 5) {
    blocks.push_back({start, std::min(start + 4, window.end_year), 0, 0, std::nullopt});
  }
  for (const auto& rec : records) {
    if (!window.contains(rec.year)) continue;
    auto& block = blocks[static_cast<std::size_t>((rec.year - window.start_year) / 5)];
    switch (classify_collaboration(rec)) {
      case Collaboration::international: ++block.icp; [[fallthrough]];
      case Collaboration::single_country: ++block.tp; break;
      case Collaboration::unattributed: break;
    }
  }
  for (auto& b : blocks) {
    if (b.tp > 0) b.pct = sicp(static_cast<double>(b.icp), static_cast<double>(b.tp));
  }
  return blocks;
}

std::vector<CollabRow> collab_split(std::span<const BiblioRecord> records) {
  CollabRow intl;
  intl.type = "International Collaboration";
  CollabRow single;
  single.type = "Single Country";
  std::int64_t intl_cited = 0;
  std::int64_t single_cited = 0;
  for (const auto& rec : records) {
    switch (classify_collaboration(rec)) {
      case Collaboration::international:
        ++intl.tp;
        intl.tc += rec.citations;
        intl_cited += rec.citations > 0;
        break;
      case Collaboration::single_country:
        ++single.tp;
        single.tc += rec.citations;
        single_cited += rec.citations > 0;
        break;
      case Collaboration::unattributed:
        break;
    }
  }
  intl.cpp = safe_cpp(static_cast<double>(intl.tc), static_cast<double>(intl.tp));
  single.cpp = safe_cpp(static_cast<double>(single.tc), static_cast<double>(single.tp));
  intl.pct_cited = ratio_pct(intl_cited, intl.tp);
  single.pct_cited = ratio_pct(single_cited, single.tp);
  return {intl, single};
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvariantViolation, "SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

namespace {

Table summary_table(const WorldSummary& w, const CorpusStats& stats, std::size_t rows_parsed,
                    std::size_t malformed, const SubjectDistribution& subjects) {
  Table t{{"indicator", "value"}, {}};
  auto add = [&](std::string k, std::string v) { t.rows.push_back({std::move(k), std::move(v)}); };
  add("Records parsed", std::to_string(rows_parsed));
  add("Malformed rows skipped", std::to_string(malformed));
  add("Duplicate records removed", std::to_string(stats.duplicate_count));
  add("Number of papers", std::to_string(w.total_papers));
  add("CAGR (%)", w.cagr ? fixed(100.0 * *w.cagr, 2) : kNotAvailable);
  add("Countries involved", std::to_string(w.countries));
  add("Papers with country information", std::to_string(w.attributed_papers));
  add("Papers with country information (%)", fixed(w.attributed_pct, 2));
  add("International collaborative papers", std::to_string(w.icp_papers));
  add("International collaborative papers (%)", num(w.sicp));
  add("Citations", std::to_string(w.total_citations));
  add("Cited papers", std::to_string(w.cited_papers));
  add("Cited papers (%)", num(w.pct_cited));
  add("CPP", num(w.cpp));
  add("CPPY", num(w.cppy));
  add("Gini index for countries against publications", num(w.gini_publications, 3));
  add("Gini index for countries against citations", num(w.gini_citations, 3));
  add("Subject areas", std::to_string(subjects.counts.size()));
  std::optional<double> sid;
  try {
    sid = corpus_sid(subjects);
  } catch (const Error&) {
  }
  add("Simpson index of diversity", num(sid, 3));
  return t;
}

}  // namespace

ReportBundle build_report(const RunConfig& config) {
  config.validate();
  ReportBundle bundle;

  // Ingest.
  ParseResult parsed = parse_corpus(config.corpus_path);
  bundle.diagnostics = parsed.diagnostics;
  DedupResult dedup = deduplicate(parsed.records);
  CountryTable countries = CountryTable::load(config.countries_path);
  CleaningRules rules;
  if (config.rules_path) rules = load_rules(*config.rules_path, countries);

  // Clean, then restrict to the study window and document types.
  CleanResult cleaned = clean_corpus(dedup.records, rules, countries);
  bundle.cleaning = cleaned.report;
  require(cleaned.report.total() ==
              [&] {
                std::size_t n = 0;
                for (const auto& r : dedup.records) n += r.authors.size();
                return n;
              }(),
          "cleaning report does not account for every author");
  std::vector<BiblioRecord> records = filter_records(cleaned.records, config.window, config.doc_types);
  CorpusStats stats = corpus_stats(records, dedup.duplicate_count);
  std::size_t hist_sum = 0;
  for (const auto& [_, n] : stats.year_histogram) hist_sum += n;
  require(hist_sum == stats.total_records, "year histogram does not sum to the record count");

  // Credits and indicators.
  CreditLedger ledger = build_ledger(records);
  CorpusAggregates agg = aggregate_corpus(records, config.window, config.census_year);
  require(std::fabs(ledger.total_pub_credit() - static_cast<double>(agg.attributed_papers)) < 1e-6,
          "publication credit is not conserved");
  require(std::fabs(ledger.total_cite_credit() - static_cast<double>(agg.attributed_citations)) <
              1e-6 * std::max(1.0, static_cast<double>(agg.attributed_citations)),
          "citation credit is not conserved");
  WorldSummary world = world_row(ledger, agg);

  std::optional<std::set<std::string>> allow;
  if (config.subjects_filter) allow = load_subject_filter(*config.subjects_filter);
  SubjectDistribution subjects = subject_distribution(records, allow);

  std::map<std::string, Table> tables;
  tables["summary"] = summary_table(world, stats, parsed.records.size(), parsed.malformed_rows, subjects);

  Table yearly{{"year", "tp", "tc", "cpp", "pct_cited"}, {}};
  for (const auto& y : yearly_output(records, config.window)) {
    yearly.rows.push_back({std::to_string(y.year), std::to_string(y.tp), std::to_string(y.tc),
                           num(y.cpp), num(y.pct_cited)});
  }
  tables["yearly"] = yearly;

  Table blocks{{"block", "icp", "tp", "pct"}, {}};
  for (const auto& b : five_year_blocks(records, config.window)) {
    blocks.rows.push_back({std::to_string(b.start_year) + "-" + std::to_string(b.end_year),
                           std::to_string(b.icp), std::to_string(b.tp), num(b.pct)});
  }
  tables["blocks"] = blocks;

  Table collab{{"type", "tp", "tc", "cpp", "pct_cited"}, {}};
  std::int64_t split_tp = 0;
  for (const auto& c : collab_split(records)) {
    split_tp += c.tp;
    collab.rows.push_back({c.type, std::to_string(c.tp), std::to_string(c.tc), num(c.cpp), num(c.pct_cited)});
  }
  require(split_tp == agg.attributed_papers, "collaboration split does not cover attributed papers");
  tables["collab_vs_national"] = collab;

  // Grouping schemes.
  std::optional<GroupScheme> income;
  for (const auto& spec : config.schemes) {
    GroupScheme scheme = load_scheme(spec.path, countries, spec.name);
    Table t{{"group", "countries", "tp", "world_share", "cpp", "gini_publications", "leading_country"}, {}};
    double share_sum = 0.0;
    for (const auto& g : aggregate_by_group(ledger, scheme)) {
      share_sum += g.world_share;
      t.rows.push_back({g.group, std::to_string(g.member_count), fixed(g.tp, 2), fixed(g.world_share, 2),
                        num(g.cpp), fixed(g.gini_within, 3), countries.name_of(g.leading_country)});
    }
    require(ledger.pub_credit.empty() || std::fabs(share_sum - 100.0) < 0.1,
            "group shares of scheme " + spec.name + " do not sum to 100");
    tables["scheme_" + spec.name] = t;

    const auto labels = scheme.labels();
    if (labels.size() == 1) {
      Table m{{"country", "tp", "world_share", "cpp", "pct_icp", "ricr", "ncrr"}, {}};
      for (const auto& row : group_country_table(ledger, scheme.members_of(labels.front()), agg, countries)) {
        m.rows.push_back({row.entity, num(row.tp), num(row.world_share), num(row.cpp),
                          row.sicp ? fixed(*row.sicp, 2) : "", row.ricr ? fixed(*row.ricr, 2) : "",
                          row.ncrr ? fixed(*row.ncrr, 2) : ""});
      }
      tables["countries_" + spec.name] = m;
    }
    if (spec.name == "income") income = scheme;
  }

  // Most productive countries.
  std::vector<std::pair<std::string, double>> top;
  for (const auto& [code, credit] : ledger.pub_credit) {
    if (credit > config.top_threshold) top.emplace_back(code, credit);
  }
  std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  Table top_pubs{{"country", "tp", "world_share", "icp", "ricr", "growth_rate_pct", "rgi", "income_group"}, {}};
  Table top_cites{{"country", "tc", "pct_tc", "cpp", "ncrr"}, {}};
  for (const auto& [code, _] : top) {
    IndicatorRow r = country_row(countries.name_of(code), code, ledger, agg);
    std::string income_label;
    if (income) {
      auto it = income->assignment.find(code);
      if (it != income->assignment.end()) income_label = it->second;
    }
    top_pubs.rows.push_back({r.entity, num(r.tp), num(r.world_share), num(r.icp, 0), num(r.ricr),
                             r.cagr ? fixed(100.0 * *r.cagr, 2) : kNotAvailable, num(r.rgi), income_label});
    top_cites.rows.push_back({r.entity, num(r.tc), num(r.tc_share), num(r.cpp), num(r.ncrr)});
  }
  tables["top_countries"] = top_pubs;
  tables["top_countries_citations"] = top_cites;

  // Co-authorship network.
  CountryGraph full = build_graph(records);
  CountryGraph graph = filter_by_degree(full, config.min_degree);
  graph.betweenness = betweenness(graph);
  if (graph.vertex_count() > 0) {
    graph.community = louvain(graph, config.seed).community;
    LayoutResult layout = kamada_kawai_layout(graph, config.seed, config.layout_iterations);
    require(layout.final_energy <= layout.initial_energy + 1e-12, "layout increased the spring energy");
    graph.position = fit_unit_square(layout.positions);
  }

  for (const auto& [name, table] : tables) {
    bundle.files[name + ".csv"] = table.to_csv();
    if (config.format == OutputFormat::markdown) bundle.files[name + ".md"] = table.to_markdown();
  }
  bundle.files["ledger.csv"] = ledger_csv(ledger);
  bundle.files["subjects.csv"] = distribution_csv(subjects);
  bundle.files["network.net"] = to_pajek(graph);
  bundle.files["network.graphml"] = to_graphml(graph);

  nlohmann::ordered_json manifest;
  nlohmann::ordered_json cfg;
  cfg["corpus"] = config.corpus_path.string();
  cfg["rules"] = config.rules_path ? config.rules_path->string() : "";
  cfg["countries"] = config.countries_path.string();
  auto schemes = nlohmann::ordered_json::array();
  for (const auto& s : config.schemes) schemes.push_back({{"name", s.name}, {"path", s.path.string()}});
  cfg["schemes"] = schemes;
  cfg["window"] = {config.window.start_year, config.window.end_year};
  cfg["census_year"] = config.census_year;
  auto types = nlohmann::ordered_json::array();
  for (DocType d : config.doc_types) types.push_back(std::string(to_string(d)));
  cfg["doc_types"] = types;
  cfg["min_degree"] = config.min_degree;
  cfg["seed"] = config.seed;
  cfg["layout_iterations"] = config.layout_iterations;
  cfg["top_threshold"] = config.top_threshold;
  cfg["subjects_filter"] = config.subjects_filter ? config.subjects_filter->string() : "";
  cfg["format"] = config.format == OutputFormat::csv ? "csv" : "markdown";
  manifest["config"] = cfg;
  manifest["corpus"] = {{"rows_parsed", parsed.records.size()},
                        {"malformed_rows", parsed.malformed_rows},
                        {"duplicates_removed", dedup.duplicate_count},
                        {"records_analyzed", records.size()},
                        {"records_with_country", stats.records_with_country}};
  manifest["cleaning"] = {{"resolved", cleaned.report.resolved},
                          {"corrected", cleaned.report.corrected},
                          {"discarded_society", cleaned.report.discarded_society},
                          {"lookup_resolved", cleaned.report.lookup_resolved},
                          {"unresolved", cleaned.report.unresolved}};
  manifest["network"] = {{"vertices", graph.vertex_count()}, {"edges", graph.edge_count()}};
  nlohmann::ordered_json digests;
  for (const auto& [name, content] : bundle.files) digests[name] = sha256_hex(content);
  manifest["outputs"] = digests;
  bundle.files["manifest.json"] = manifest.dump(2) + "\n";
  return bundle;
}

std::vector<std::filesystem::path> write_bundle(const ReportBundle& bundle,
                                                const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const bool created_dir = !fs::exists(dir);
  std::vector<fs::path> written;
  try {
    fs::create_directories(dir);
    for (const auto& [name, content] : bundle.files) {
      fs::path p = dir / name;
      write_file(p, content);
      written.push_back(p);
    }
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (created_dir) fs::remove_all(dir, ec);
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::IoFailure, e.what());
  }
  return written;
}

std::vector<std::filesystem::path> run_pipeline(const RunConfig& config) {
  return write_bundle(build_report(config), config.output_dir);
}

}  // namespace scimetrics
