#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>

#include "scimetrics/corpus.hpp"

namespace scimetrics {

/// Paper-to-subject-area assignment counts. A paper listed under several
/// areas counts once in each.
struct SubjectDistribution {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total_assignments = 0;

  bool operator==(const SubjectDistribution&) const = default;
};

/// With an allow-list, only assignments to listed areas are counted.
SubjectDistribution subject_distribution(std::span<const BiblioRecord> records,
                                         const std::optional<std::set<std::string>>& allow = std::nullopt);

/// Simpson index of diversity over the area counts. Throws InsufficientSample.
double corpus_sid(const SubjectDistribution& dist);

/// One label per line; blank and '#' lines ignored.
std::set<std::string> load_subject_filter(const std::filesystem::path& path);

/// `subject_area,count`, descending by count then ascending by label.
std::string distribution_csv(const SubjectDistribution& dist);

}  // namespace scimetrics
