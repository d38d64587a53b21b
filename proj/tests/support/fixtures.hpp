#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scimetrics/cleaning.hpp"
#include "scimetrics/corpus.hpp"
#include "scimetrics/countries.hpp"
#include "scimetrics/crediting.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return SCIMETRICS_DATA_DIR; }
inline std::filesystem::path golden_dir() { return SCIMETRICS_GOLDEN_DIR; }

inline const nlohmann::json& golden() {
  static const nlohmann::json doc = [] {
    std::ifstream in(golden_dir() / "golden.json");
    return nlohmann::json::parse(in);
  }();
  return doc;
}

inline const scimetrics::CountryTable& countries() {
  static const auto table = scimetrics::CountryTable::load(data_dir() / "countries.csv");
  return table;
}

inline const scimetrics::CleaningRules& rules() {
  static const auto r = scimetrics::load_rules(data_dir() / "rules.txt", countries());
  return r;
}

// The bundled corpus after every stage up to crediting.
struct Bundled {
  scimetrics::ParseResult parsed;
  scimetrics::DedupResult dedup;
  scimetrics::CleanResult cleaned;
  std::vector<scimetrics::BiblioRecord> analyzed;
};

inline const Bundled& bundled() {
  static const Bundled b = [] {
    Bundled out;
    out.parsed = scimetrics::parse_corpus(data_dir() / "synthetic_corpus.csv");
    out.dedup = scimetrics::deduplicate(out.parsed.records);
    out.cleaned = scimetrics::clean_corpus(out.dedup.records, rules(), countries());
    out.analyzed = scimetrics::filter_records(out.cleaned.records, scimetrics::StudyWindow{},
                                              scimetrics::research_doc_types());
    return out;
  }();
  return b;
}

inline scimetrics::BiblioRecord paper(std::string id, int year, std::int64_t cites,
                                      const std::vector<std::string>& author_countries) {
  scimetrics::BiblioRecord r;
  r.id = std::move(id);
  r.year = year;
  r.citations = cites;
  int n = 0;
  for (const auto& c : author_countries) {
    scimetrics::Author a;
    a.name = "Author " + std::to_string(++n);
    scimetrics::AffiliationEntry e;
    e.raw_text = "Some University, " + c;
    e.institution = "Some University";
    if (c.empty()) {
      e.unresolved = true;
    } else {
      e.country = c;
    }
    a.affiliations.push_back(e);
    r.authors.push_back(a);
  }
  return r;
}

}  // namespace fixtures
