#include "scimetrics/countries.hpp"

#include <cctype>

#include "scimetrics/error.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

namespace {

bool valid_code(std::string_view code) {
  return code.size() == 2 && std::isupper(static_cast<unsigned char>(code[0])) &&
         std::isupper(static_cast<unsigned char>(code[1]));
}

}  // namespace

CountryTable CountryTable::parse(std::string_view text) {
  CountryTable table;
  for (const auto& row : parse_csv(text)) {
    if (row.fields.empty() || trim(row.fields[0]).starts_with('#')) continue;
    std::string code(trim(row.fields[0]));
    if (code == "code") continue;
    if (row.fields.size() != 2) {
      throw Error(ErrorCode::MalformedRow,
                  "country table line " + std::to_string(row.line) + ": expected code,name");
    }
    table.add(code, std::string(trim(row.fields[1])));
  }
  return table;
}

CountryTable CountryTable::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

void CountryTable::add(std::string code, std::string name) {
  if (!valid_code(code)) throw Error(ErrorCode::UnknownCountryCode, "malformed country code '" + code + "'");
  if (names_.count(code)) throw Error(ErrorCode::DuplicateAssignment, "country " + code + " listed twice");
  by_lower_name_[to_lower(name)] = code;
  names_.emplace(std::move(code), std::move(name));
}

bool CountryTable::contains(std::string_view code) const {
  return names_.find(code) != names_.end();
}

std::string CountryTable::name_of(std::string_view code) const {
  auto it = names_.find(code);
  return it == names_.end() ? std::string(code) : it->second;
}

std::optional<std::string> CountryTable::code_for_name(std::string_view name) const {
  auto it = by_lower_name_.find(to_lower(trim(name)));
  if (it == by_lower_name_.end()) return std::nullopt;
  return it->second;
}

}  // namespace scimetrics
