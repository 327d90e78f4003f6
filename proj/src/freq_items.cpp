#include "fdsketch/freq_items.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdsketch {

MgCounter::MgCounter(std::size_t capacity) : capacity_(capacity) {}

void MgCounter::update(std::uint64_t item, double weight) {
  if (!std::isfinite(weight) || weight <= 0.0) {
    throw std::invalid_argument("MgCounter::update requires a positive weight");
  }
  counters_[item] += weight;
  weight_processed_ += weight;

  if (counters_.size() <= capacity_) return;

  double min_count = std::numeric_limits<double>::infinity();
  for (const auto& [_, count] : counters_) {
    min_count = std::min(min_count, count);
  }
  for (auto it = counters_.begin(); it != counters_.end();) {
    it->second -= min_count;
    if (it->second <= 0.0) {
      it = counters_.erase(it);
    } else {
      ++it;
    }
  }
  deleted_total_ += min_count;
}

double MgCounter::estimate(std::uint64_t item) const {
  auto it = counters_.find(item);
  return it == counters_.end() ? 0.0 : it->second;
}

}  // namespace fdsketch
