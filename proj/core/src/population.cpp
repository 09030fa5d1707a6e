#include "homonet/population.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace homonet {

Population Population::from_types(std::vector<int> types) {
  if (types.empty()) throw std::invalid_argument("population must have at least one agent");
  const int max_type = *std::max_element(types.begin(), types.end());
  const int min_type = *std::min_element(types.begin(), types.end());
  if (min_type < 0) throw std::invalid_argument("negative type id");

  std::vector<int> counts(max_type + 1, 0);
  for (int t : types) counts[t]++;
  for (int t = 0; t <= max_type; ++t) {
    if (counts[t] == 0) {
      throw std::invalid_argument("type ids must be contiguous; type " + std::to_string(t) +
                                  " is unused");
    }
  }
  if (!std::is_sorted(counts.begin(), counts.end())) {
    throw std::invalid_argument(
        "type counts must be non-decreasing in type id (type 0 is a minimum-size type)");
  }

  Population pop;
  pop.types_ = std::move(types);
  pop.counts_ = std::move(counts);
  return pop;
}

Population Population::from_counts(const std::vector<int>& counts) {
  if (counts.empty()) throw std::invalid_argument("population must have at least one type");
  std::vector<int> types;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] <= 0) throw std::invalid_argument("every type count must be positive");
    types.insert(types.end(), counts[t], static_cast<int>(t));
  }
  return from_types(std::move(types));
}

int Population::block_offset(int type) const {
  int offset = 0;
  for (int t = 0; t < type; ++t) offset += counts_[t];
  return offset;
}

}  // namespace homonet
