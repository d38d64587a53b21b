#include <doctest.h>

#include "fixtures.hpp"
#include "scimetrics/cleaning.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/text.hpp"

using namespace scimetrics;

namespace {

std::vector<AffiliationEntry> entries(std::initializer_list<const char*> texts) {
  std::vector<AffiliationEntry> out;
  for (const char* t : texts) out.push_back(make_affiliation(t));
  return out;
}

ErrorCode rules_error(const std::string& text) {
  try {
    parse_rules(text, fixtures::countries());
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("secondary affiliations are discarded") {
  auto r = clean_author(entries({"Graz University of Technology, Graz, Austria",
                                 "University of British Columbia, Vancouver, Canada"}),
                        fixtures::rules(), fixtures::countries());
  CHECK(r.country == "AT");
  CHECK(r.action == CleaningAction::resolved);
}

TEST_CASE("a wrongly printed country is corrected") {
  auto r = clean_author(entries({"University of Wisconsin-Milwaukee, Milwaukee, WI 53201, India"}),
                        fixtures::rules(), fixtures::countries());
  CHECK(r.country == "US");
  CHECK(r.action == CleaningAction::corrected);
}

TEST_CASE("professional societies are discarded wherever they appear") {
  auto after = clean_author(entries({"AIST, Tsukuba, Japan", "American Ceramic Society, United States"}),
                            fixtures::rules(), fixtures::countries());
  CHECK(after.country == "JP");
  CHECK(after.societies_discarded == 1);
  auto first = clean_author(entries({"American Ceramic Society, United States", "AIST, Tsukuba, Japan"}),
                            fixtures::rules(), fixtures::countries());
  CHECK(first.country == "JP");
  REQUIRE(first.primary.has_value());
  CHECK(first.primary->raw_text == "AIST, Tsukuba, Japan");
}

TEST_CASE("institution lookup fills a missing country") {
  auto r = clean_author(entries({"Toyota Motor Corporation"}), fixtures::rules(), fixtures::countries());
  CHECK(r.country == "JP");
  CHECK(r.action == CleaningAction::lookup_resolved);
}

TEST_CASE("society-only authors and unknown text stay unresolved") {
  auto society = clean_author(entries({"Society of Tribologists and Lubrication Engineers, Park Ridge, USA"}),
                              fixtures::rules(), fixtures::countries());
  CHECK_FALSE(society.country.has_value());
  CHECK(society.action == CleaningAction::unresolved);
  CHECK_FALSE(society.primary.has_value());
  auto unknown = clean_author(entries({"Independent researcher"}), fixtures::rules(), fixtures::countries());
  CHECK_FALSE(unknown.country.has_value());
  CHECK(clean_author({}, fixtures::rules(), fixtures::countries()).action == CleaningAction::unresolved);
}

TEST_CASE("aliases and canonical names resolve case-insensitively") {
  auto alias = clean_author(entries({"Dalian University of Technology, Dalian, p.r. china"}), fixtures::rules(),
                            fixtures::countries());
  CHECK(alias.country == "CN");
  auto name = clean_author(entries({"Lulea University of Technology, Lulea, SWEDEN"}), fixtures::rules(),
                           fixtures::countries());
  CHECK(name.country == "SE");
}

TEST_CASE("rules validation") {
  CHECK(rules_error("[aliases]\ntext,code\nUSA,XX\n") == ErrorCode::RulesFileInvalid);
  CHECK(rules_error("[aliases]\ntext,code\n,US\n") == ErrorCode::RulesFileInvalid);
  CHECK(rules_error("[bogus]\na,b\n") == ErrorCode::RulesFileInvalid);
  CHECK(rules_error("USA,US\n") == ErrorCode::RulesFileInvalid);
  CHECK(rules_error("[corrections]\npattern,claimed,code\nFoo,US\n") == ErrorCode::RulesFileInvalid);
  try {
    load_rules("/nonexistent/rules.txt", fixtures::countries());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RulesFileInvalid);
  }
  auto ok = parse_rules("# comment\n[societies]\npattern\nSome Society\n", fixtures::countries());
  CHECK(ok.society_patterns == std::vector<std::string>{"Some Society"});
}

TEST_CASE("a clean corpus resolves every author without corrections") {
  std::string text = "id,year,doc_type,citations,author_affiliations,subject_areas\n"
                     "A,2001,article,1,\"X|Kyoto University, Kyoto, Japan;Y|ETH Zurich, Zurich, Switzerland\",\n"
                     "B,2002,article,0,\"Z|University of Leeds, Leeds, United Kingdom\",\n";
  auto parsed = parse_corpus_text(text);
  auto res = clean_corpus(parsed.records, fixtures::rules(), fixtures::countries());
  CHECK(res.report.resolved == 3);
  CHECK(res.report.unresolved == 0);
  CHECK(res.report.corrected == 0);
  CHECK(res.report.total() == 3);
}

TEST_CASE("bundled corpus cleaning report matches the oracle") {
  const auto& b = fixtures::bundled();
  const auto& g = fixtures::golden()["cleaning_report"];
  const auto& rep = b.cleaned.report;
  CHECK(rep.resolved == g["resolved"].get<std::size_t>());
  CHECK(rep.corrected == g["corrected"].get<std::size_t>());
  CHECK(rep.discarded_society == g["discarded_society"].get<std::size_t>());
  CHECK(rep.lookup_resolved == g["lookup_resolved"].get<std::size_t>());
  CHECK(rep.unresolved == g["unresolved"].get<std::size_t>());
  std::size_t authors = 0;
  for (const auto& r : b.dedup.records) authors += r.authors.size();
  CHECK(rep.total() == authors);
}

TEST_CASE("empty rules leave unrecognizable entries unresolved") {
  const auto& b = fixtures::bundled();
  auto res = clean_corpus(b.dedup.records, CleaningRules{}, fixtures::countries());
  CHECK(res.report.unresolved == fixtures::golden()["cleaning_report"]["unresolved_with_empty_rules"].get<std::size_t>());
  CHECK(res.report.corrected == 0);
  CHECK(res.report.lookup_resolved == 0);
}

TEST_CASE("cleaning is idempotent") {
  const auto& b = fixtures::bundled();
  auto again = clean_corpus(b.cleaned.records, fixtures::rules(), fixtures::countries());
  CHECK(again.records == b.cleaned.records);
  CHECK(again.report.corrected == 0);
  CHECK(again.report.discarded_society == 0);
}

TEST_CASE("every resolved code is in the country table") {
  for (const auto& r : fixtures::bundled().cleaned.records) {
    for (const auto& a : r.authors) {
      CHECK(a.affiliations.size() <= 1);
      if (auto c = a.country()) CHECK(fixtures::countries().contains(*c));
    }
  }
}

TEST_CASE("dropping society patterns never hurts authors with a non-society primary") {
  CleaningRules no_societies = fixtures::rules();
  no_societies.society_patterns.clear();
  std::size_t checked = 0;
  for (const auto& r : fixtures::bundled().dedup.records) {
    for (const auto& a : r.authors) {
      if (a.affiliations.empty()) continue;
      bool primary_is_society = false;
      for (const auto& p : fixtures::rules().society_patterns) {
        primary_is_society = primary_is_society || icontains(a.affiliations[0].raw_text, p);
      }
      if (primary_is_society) continue;
      auto with = clean_author(a.affiliations, fixtures::rules(), fixtures::countries());
      auto without = clean_author(a.affiliations, no_societies, fixtures::countries());
      CHECK(without.country.has_value() >= with.country.has_value());
      ++checked;
    }
  }
  CHECK(checked > 100);
}
