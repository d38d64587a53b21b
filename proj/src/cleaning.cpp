#include "scimetrics/cleaning.hpp"

#include <algorithm>

#include "scimetrics/error.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

std::string_view to_string(CleaningAction action) noexcept {
  switch (action) {
    case CleaningAction::resolved: return "resolved";
    case CleaningAction::corrected: return "corrected";
    case CleaningAction::lookup_resolved: return "lookup_resolved";
    case CleaningAction::unresolved: return "unresolved";
  }
  return "unresolved";
}

namespace {

enum class Section { none, aliases, corrections, societies, lookup };

[[noreturn]] void invalid(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::RulesFileInvalid, "line " + std::to_string(line) + ": " + msg);
}

void require_code(const std::string& code, const CountryTable& countries, const std::string& where) {
  if (!countries.contains(code)) {
    throw Error(ErrorCode::RulesFileInvalid, where + ": unknown country code '" + code + "'");
  }
}

}  // namespace

CleaningRules parse_rules(std::string_view text, const CountryTable& countries) {
  CleaningRules rules;
  Section section = Section::none;
  bool expect_header = false;
  std::size_t line_no = 0;

  for (const auto& raw_line : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') invalid(line_no, "unterminated section header");
      std::string name = to_lower(line.substr(1, line.size() - 2));
      if (name == "aliases") section = Section::aliases;
      else if (name == "corrections") section = Section::corrections;
      else if (name == "societies") section = Section::societies;
      else if (name == "lookup") section = Section::lookup;
      else invalid(line_no, "unknown section [" + name + "]");
      expect_header = true;
      continue;
    }
    if (section == Section::none) invalid(line_no, "data before the first section");

    auto parsed = parse_csv(line);
    if (parsed.empty()) continue;
    std::vector<std::string> fields;
    for (auto& f : parsed.front().fields) fields.emplace_back(trim(f));

    if (expect_header) {
      expect_header = false;
      continue;
    }
    auto need = [&](std::size_t n) {
      if (fields.size() != n) {
        invalid(line_no, "expected " + std::to_string(n) + " fields, found " +
                             std::to_string(fields.size()));
      }
    };
    switch (section) {
      case Section::aliases:
        need(2);
        rules.country_aliases.emplace_back(fields[0], fields[1]);
        break;
      case Section::corrections:
        need(3);
        rules.country_corrections.push_back({fields[0], fields[1], fields[2]});
        break;
      case Section::societies:
        need(1);
        rules.society_patterns.push_back(fields[0]);
        break;
      case Section::lookup:
        need(2);
        rules.institution_lookup.emplace_back(fields[0], fields[1]);
        break;
      case Section::none:
        break;
    }
  }
  validate_rules(rules, countries);
  return rules;
}

CleaningRules load_rules(const std::filesystem::path& path, const CountryTable& countries) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::RulesFileInvalid, "rules file not found: " + path.string());
  }
  return parse_rules(read_file(path), countries);
}

void validate_rules(const CleaningRules& rules, const CountryTable& countries) {
  auto nonempty = [](const std::string& p, const std::string& where) {
    if (trim(p).empty()) throw Error(ErrorCode::RulesFileInvalid, where + ": empty pattern");
  };
  for (const auto& [text, code] : rules.country_aliases) {
    nonempty(text, "alias");
    require_code(code, countries, "alias '" + text + "'");
  }
  for (const auto& rule : rules.country_corrections) {
    nonempty(rule.pattern, "correction");
    if (rule.claimed != "*") require_code(rule.claimed, countries, "correction '" + rule.pattern + "'");
    require_code(rule.code, countries, "correction '" + rule.pattern + "'");
  }
  for (const auto& p : rules.society_patterns) nonempty(p, "society");
  for (const auto& [pattern, code] : rules.institution_lookup) {
    nonempty(pattern, "lookup");
    require_code(code, countries, "lookup '" + pattern + "'");
  }
}

AuthorResolution clean_author(std::span<const AffiliationEntry> entries, const CleaningRules& rules,
                              const CountryTable& countries) {
  AuthorResolution out;

  auto is_society = [&](const AffiliationEntry& e) {
    return std::any_of(rules.society_patterns.begin(), rules.society_patterns.end(),
                       [&](const std::string& p) { return icontains(e.raw_text, p); });
  };

  const AffiliationEntry* primary = nullptr;
  for (const auto& e : entries) {
    if (is_society(e)) {
      ++out.societies_discarded;
    } else if (!primary) {
      primary = &e;
    }
  }
  if (!primary) return out;

  AffiliationEntry entry = *primary;
  entry.unresolved = false;
  std::optional<std::string> code = entry.country;

  if (!code) {
    std::string_view text = country_text(entry);
    if (!text.empty()) {
      for (const auto& [alias, target] : rules.country_aliases) {
        if (iequals(trim(alias), text)) {
          code = target;
          break;
        }
      }
      if (!code) code = countries.code_for_name(text);
    }
  }

  CleaningAction action = CleaningAction::resolved;
  for (const auto& rule : rules.country_corrections) {
    bool claim_matches = rule.claimed == "*" || (code && *code == rule.claimed);
    if (claim_matches && icontains(entry.raw_text, rule.pattern) && code != rule.code) {
      code = rule.code;
      action = CleaningAction::corrected;
      break;
    }
  }

  if (!code) {
    for (const auto& [pattern, target] : rules.institution_lookup) {
      if (icontains(entry.raw_text, pattern)) {
        code = target;
        action = CleaningAction::lookup_resolved;
        break;
      }
    }
  }

  if (code) {
    entry.country = code;
    out.country = code;
    out.action = action;
  } else {
    entry.country.reset();
    entry.unresolved = true;
    out.action = CleaningAction::unresolved;
  }
  out.primary = std::move(entry);
  return out;
}

CleanResult clean_corpus(std::span<const BiblioRecord> records, const CleaningRules& rules,
                         const CountryTable& countries) {
  CleanResult result;
  result.records.reserve(records.size());
  auto& report = result.report;
  for (const auto& rec : records) {
    BiblioRecord cleaned = rec;
    for (auto& author : cleaned.authors) {
      AuthorResolution res = clean_author(author.affiliations, rules, countries);
      report.discarded_society += res.societies_discarded;
      switch (res.action) {
        case CleaningAction::corrected: ++report.corrected; break;
        case CleaningAction::lookup_resolved: ++report.lookup_resolved; break;
        default: break;
      }
      if (res.country) ++report.resolved;
      else ++report.unresolved;
      author.affiliations.clear();
      if (res.primary) author.affiliations.push_back(std::move(*res.primary));
    }
    result.records.push_back(std::move(cleaned));
  }
  return result;
}

}  // namespace scimetrics
