#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <set>
#include <tuple>

#include "scimetrics/cleaning.hpp"
#include "scimetrics/corpus.hpp"
#include "scimetrics/countries.hpp"
#include "scimetrics/crediting.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/grouping.hpp"
#include "scimetrics/indicators.hpp"
#include "scimetrics/interdisciplinarity.hpp"
#include "scimetrics/network.hpp"
#include "scimetrics/report.hpp"

namespace py = pybind11;
using namespace scimetrics;

namespace {

std::filesystem::path data_dir;  // set by the package on import

std::filesystem::path countries_or_default(const std::optional<std::filesystem::path>& path) {
  return path ? *path : data_dir / "countries.csv";
}

CountryTable table_or_default(const std::optional<std::filesystem::path>& path) {
  return CountryTable::load(countries_or_default(path));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Country-level scientometric indicators and collaboration networks";

  // Messages start with the error code name, e.g. "ZeroBaseline: ...".
  py::register_exception<Error>(m, "ScimetricsError", PyExc_ValueError);

  m.def("_set_data_dir", [](const std::filesystem::path& dir) { data_dir = dir; });

  py::enum_<DocType>(m, "DocType")
      .value("article", DocType::article)
      .value("conference_paper", DocType::conference_paper)
      .value("review", DocType::review)
      .value("other", DocType::other);

  py::class_<AffiliationEntry>(m, "AffiliationEntry")
      .def_readonly("raw_text", &AffiliationEntry::raw_text)
      .def_readonly("institution", &AffiliationEntry::institution)
      .def_readonly("country", &AffiliationEntry::country)
      .def_readonly("unresolved", &AffiliationEntry::unresolved);

  py::class_<Author>(m, "Author")
      .def_readonly("name", &Author::name)
      .def_readonly("affiliations", &Author::affiliations)
      .def_property_readonly("country", &Author::country);

  py::class_<BiblioRecord>(m, "BiblioRecord")
      .def_readonly("id", &BiblioRecord::id)
      .def_readonly("year", &BiblioRecord::year)
      .def_readonly("doc_type", &BiblioRecord::doc_type)
      .def_readonly("citations", &BiblioRecord::citations)
      .def_readonly("authors", &BiblioRecord::authors)
      .def_readonly("subject_areas", &BiblioRecord::subject_areas)
      .def("__repr__", [](const BiblioRecord& r) {
        return "<BiblioRecord " + r.id + " " + std::to_string(r.year) + ">";
      });

  py::class_<ParseDiagnostic>(m, "ParseDiagnostic")
      .def_readonly("source", &ParseDiagnostic::source)
      .def_readonly("row", &ParseDiagnostic::row)
      .def_readonly("message", &ParseDiagnostic::message);

  py::class_<ParseResult>(m, "ParseResult")
      .def_readonly("records", &ParseResult::records)
      .def_readonly("diagnostics", &ParseResult::diagnostics)
      .def_readonly("malformed_rows", &ParseResult::malformed_rows);

  py::class_<CorpusStats>(m, "CorpusStats")
      .def_readonly("total_records", &CorpusStats::total_records)
      .def_readonly("records_with_country", &CorpusStats::records_with_country)
      .def_readonly("duplicate_count", &CorpusStats::duplicate_count)
      .def_readonly("year_histogram", &CorpusStats::year_histogram);

  m.def("parse_corpus", [](const std::filesystem::path& path) { return parse_corpus(path); }, py::arg("path"));
  m.def("parse_corpus_text", [](std::string_view text) { return parse_corpus_text(text); }, py::arg("text"));
  m.def(
      "deduplicate",
      [](const std::vector<BiblioRecord>& records) {
        auto r = deduplicate(records);
        return py::make_tuple(std::move(r.records), r.duplicate_count);
      },
      py::arg("records"), "Returns (records, duplicate_count).");
  m.def(
      "filter_records",
      [](const std::vector<BiblioRecord>& records, int start, int end, std::optional<std::set<DocType>> doc_types) {
        return filter_records(records, StudyWindow{start, end}, doc_types ? *doc_types : research_doc_types());
      },
      py::arg("records"), py::arg("start") = 1998, py::arg("end") = 2012, py::arg("doc_types") = py::none());
  m.def(
      "corpus_stats",
      [](const std::vector<BiblioRecord>& records, std::size_t duplicates) { return corpus_stats(records, duplicates); },
      py::arg("records"), py::arg("duplicate_count") = 0);

  py::class_<CleaningReport>(m, "CleaningReport")
      .def_readonly("resolved", &CleaningReport::resolved)
      .def_readonly("corrected", &CleaningReport::corrected)
      .def_readonly("discarded_society", &CleaningReport::discarded_society)
      .def_readonly("lookup_resolved", &CleaningReport::lookup_resolved)
      .def_readonly("unresolved", &CleaningReport::unresolved)
      .def_property_readonly("total", &CleaningReport::total);

  m.def(
      "clean",
      [](const std::vector<BiblioRecord>& records, std::optional<std::filesystem::path> rules,
         std::optional<std::filesystem::path> countries) {
        const auto table = table_or_default(countries);
        const auto parsed = rules ? load_rules(*rules, table) : CleaningRules{};
        auto r = clean_corpus(records, parsed, table);
        return py::make_tuple(std::move(r.records), r.report);
      },
      py::arg("records"), py::arg("rules") = py::none(), py::arg("countries") = py::none(),
      "Returns (records, CleaningReport).");

  py::enum_<Collaboration>(m, "Collaboration")
      .value("single_country", Collaboration::single_country)
      .value("international", Collaboration::international)
      .value("unattributed", Collaboration::unattributed);

  m.def("country_fractions", &country_fractions, py::arg("record"));
  m.def("classify_collaboration", &classify_collaboration, py::arg("record"));

  py::class_<CreditLedger>(m, "CreditLedger")
      .def_readonly("pub_credit", &CreditLedger::pub_credit)
      .def_readonly("cite_credit", &CreditLedger::cite_credit)
      .def_readonly("icp_count", &CreditLedger::icp_count)
      .def_readonly("paper_count", &CreditLedger::paper_count)
      .def_readonly("uncited_count", &CreditLedger::uncited_count)
      .def_readonly("yearly_pub_credit", &CreditLedger::yearly_pub_credit)
      .def("countries", &CreditLedger::countries)
      .def("total_pub_credit", &CreditLedger::total_pub_credit)
      .def("total_cite_credit", &CreditLedger::total_cite_credit)
      .def("to_csv", [](const CreditLedger& l) { return ledger_csv(l); });

  m.def("build_ledger", [](const std::vector<BiblioRecord>& records) { return build_ledger(records); },
        py::arg("records"));

  m.def("cagr", &cagr, py::arg("begin"), py::arg("end"), py::arg("n_years"));
  m.def("rgi", &rgi, py::arg("country_rate"), py::arg("world_rate"));
  m.def("sicp", &sicp, py::arg("icp"), py::arg("tp"));
  m.def("ricr", &ricr, py::arg("country_sicp"), py::arg("world_sicp"));
  m.def("cpp", &cpp, py::arg("tc"), py::arg("tp"));
  m.def("cppy", [](double tc, const std::vector<int>& ages) { return cppy(tc, ages); }, py::arg("tc"),
        py::arg("paper_ages"));
  m.def("ncrr", &ncrr, py::arg("country_uncited_pct"), py::arg("world_uncited_pct"));
  m.def("gini", [](const std::vector<double>& v) { return gini(v); }, py::arg("values"));
  m.def("simpson_diversity", [](const std::vector<std::int64_t>& c) { return simpson_diversity(c); },
        py::arg("counts"));
  m.def("paper_age", &paper_age, py::arg("publication_year"), py::arg("census_year"));

  py::class_<GroupRow>(m, "GroupRow")
      .def_readonly("group", &GroupRow::group)
      .def_readonly("member_count", &GroupRow::member_count)
      .def_readonly("tp", &GroupRow::tp)
      .def_readonly("tc", &GroupRow::tc)
      .def_readonly("cpp", &GroupRow::cpp)
      .def_readonly("world_share", &GroupRow::world_share)
      .def_readonly("gini_within", &GroupRow::gini_within)
      .def_readonly("leading_country", &GroupRow::leading_country);

  py::class_<GroupScheme>(m, "GroupScheme")
      .def_readonly("name", &GroupScheme::name)
      .def_readonly("assignment", &GroupScheme::assignment)
      .def_readonly("exhaustive", &GroupScheme::exhaustive)
      .def("labels", &GroupScheme::labels);

  m.def(
      "load_scheme",
      [](const std::filesystem::path& path, std::optional<std::filesystem::path> countries, std::string name) {
        return load_scheme(path, table_or_default(countries), std::move(name));
      },
      py::arg("path"), py::arg("countries") = py::none(), py::arg("name") = "");
  m.def("aggregate_by_group", &aggregate_by_group, py::arg("ledger"), py::arg("scheme"));

  py::class_<SubjectDistribution>(m, "SubjectDistribution")
      .def_readonly("counts", &SubjectDistribution::counts)
      .def_readonly("total_assignments", &SubjectDistribution::total_assignments)
      .def("sid", [](const SubjectDistribution& d) { return corpus_sid(d); });
  m.def(
      "subject_distribution",
      [](const std::vector<BiblioRecord>& records, std::optional<std::set<std::string>> allow) {
        return subject_distribution(records, allow);
      },
      py::arg("records"), py::arg("allow") = py::none());

  py::class_<CountryGraph>(m, "CountryGraph")
      .def_property_readonly("labels", &CountryGraph::labels)
      .def_property_readonly("edges",
                             [](const CountryGraph& g) {
                               std::vector<std::tuple<std::string, std::string, int>> out;
                               for (const auto& [e, w] : g.edges()) out.emplace_back(g.label(e.first), g.label(e.second), w);
                               return out;
                             })
      .def("vertex_count", &CountryGraph::vertex_count)
      .def("edge_count", &CountryGraph::edge_count)
      .def("degree", &CountryGraph::degree)
      .def_readwrite("betweenness", &CountryGraph::betweenness)
      .def_readwrite("community", &CountryGraph::community)
      .def_property(
          "position",
          [](const CountryGraph& g) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : g.position) out.emplace_back(p.x, p.y);
            return out;
          },
          [](CountryGraph& g, const std::vector<std::pair<double, double>>& pts) {
            g.position.clear();
            for (const auto& [x, y] : pts) g.position.push_back({x, y});
          })
      .def("to_pajek", [](const CountryGraph& g) { return to_pajek(g); })
      .def("to_graphml", [](const CountryGraph& g) { return to_graphml(g); })
      .def("to_dot", [](const CountryGraph& g) { return to_dot(g); });

  py::class_<LouvainResult>(m, "LouvainResult")
      .def_readonly("community", &LouvainResult::community)
      .def_readonly("modularity", &LouvainResult::modularity)
      .def_readonly("level_modularity", &LouvainResult::level_modularity);

  py::class_<LayoutResult>(m, "LayoutResult")
      .def_property_readonly("positions",
                             [](const LayoutResult& r) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : r.positions) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def_readonly("initial_energy", &LayoutResult::initial_energy)
      .def_readonly("final_energy", &LayoutResult::final_energy)
      .def_readonly("iterations", &LayoutResult::iterations)
      .def_readonly("converged", &LayoutResult::converged);

  m.def("build_graph", [](const std::vector<BiblioRecord>& records) { return build_graph(records); },
        py::arg("records"));
  m.def("filter_by_degree", &filter_by_degree, py::arg("graph"), py::arg("min_degree"));
  m.def("betweenness", py::overload_cast<const CountryGraph&>(&betweenness), py::arg("graph"));
  m.def("modularity", [](const CountryGraph& g, const std::vector<int>& c) { return modularity(g, c); },
        py::arg("graph"), py::arg("community"));
  m.def("louvain", &louvain, py::arg("graph"), py::arg("seed") = 0);
  m.def("kamada_kawai_layout", &kamada_kawai_layout, py::arg("graph"), py::arg("seed") = 0,
        py::arg("max_iter") = 5000);
  m.def("parse_pajek", &parse_pajek, py::arg("text"));

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& corpus, const std::filesystem::path& out,
         std::optional<std::filesystem::path> rules, std::optional<std::filesystem::path> countries,
         const std::map<std::string, std::filesystem::path>& schemes, int start, int end, int min_degree,
         std::uint64_t seed, const std::string& format) {
        RunConfig config;
        config.corpus_path = corpus;
        config.output_dir = out;
        config.rules_path = rules;
        config.countries_path = countries_or_default(countries);
        for (const auto& [name, path] : schemes) config.schemes.push_back({name, path});
        config.window = StudyWindow{start, end};
        config.min_degree = min_degree;
        config.seed = seed;
        if (format != "csv" && format != "markdown") throw Error(ErrorCode::InvalidArgument, "format must be csv or markdown");
        config.format = format == "markdown" ? OutputFormat::markdown : OutputFormat::csv;
        std::vector<std::string> written;
        for (const auto& p : run_pipeline(config)) written.push_back(p.string());
        return written;
      },
      py::arg("corpus"), py::arg("out"), py::arg("rules") = py::none(), py::arg("countries") = py::none(),
      py::arg("schemes") = std::map<std::string, std::filesystem::path>{}, py::arg("start") = 1998,
      py::arg("end") = 2012, py::arg("min_degree") = 12, py::arg("seed") = 0, py::arg("format") = "csv",
      "Runs the full analysis and writes the report bundle; returns the written paths.");
}
