#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace scimetrics {

/// ISO 3166-1 alpha-2 codes with canonical names. Every resolved country and
/// every scheme assignment must refer to a code in this table.
class CountryTable {
 public:
  CountryTable() = default;

  /// CSV with header `code,name`; '#' comment lines are ignored.
  static CountryTable parse(std::string_view text);
  static CountryTable load(const std::filesystem::path& path);

  void add(std::string code, std::string name);

  bool contains(std::string_view code) const;
  std::string name_of(std::string_view code) const;  // falls back to the code
  /// Exact, case-insensitive match against canonical names.
  std::optional<std::string> code_for_name(std::string_view name) const;

  std::size_t size() const { return names_.size(); }
  const std::map<std::string, std::string, std::less<>>& entries() const { return names_; }

 private:
  std::map<std::string, std::string, std::less<>> names_;        // code -> name
  std::map<std::string, std::string, std::less<>> by_lower_name_;  // lower(name) -> code
};

}  // namespace scimetrics
