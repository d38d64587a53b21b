#include "scimetrics/interdisciplinarity.hpp"

#include <algorithm>
#include <vector>

#include "scimetrics/indicators.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

SubjectDistribution subject_distribution(std::span<const BiblioRecord> records,
                                         const std::optional<std::set<std::string>>& allow) {
  SubjectDistribution dist;
  for (const auto& rec : records) {
    for (const auto& area : rec.subject_areas) {
      if (allow && !allow->count(area)) continue;
      ++dist.counts[area];
      ++dist.total_assignments;
    }
  }
  return dist;
}

double corpus_sid(const SubjectDistribution& dist) {
  std::vector<std::int64_t> counts;
  counts.reserve(dist.counts.size());
  for (const auto& [_, n] : dist.counts) counts.push_back(n);
  return simpson_diversity(counts);
}

std::set<std::string> load_subject_filter(const std::filesystem::path& path) {
  std::set<std::string> labels;
  for (const auto& line : split(read_file(path), '\n')) {
    auto label = trim(line);
    if (label.empty() || label.front() == '#') continue;
    labels.emplace(label);
  }
  return labels;
}

std::string distribution_csv(const SubjectDistribution& dist) {
  std::vector<std::pair<std::string, std::int64_t>> rows(dist.counts.begin(), dist.counts.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out = "subject_area,count\n";
  for (const auto& [label, n] : rows) out += csv_line({label, std::to_string(n)});
  return out;
}

}  // namespace scimetrics
