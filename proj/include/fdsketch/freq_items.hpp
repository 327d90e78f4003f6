#pragma once

#include <cstdint>
#include <unordered_map>

namespace fdsketch {

/// Misra-Gries-style frequent-items counter, subtract-minimum variant.
/// Holds at most `capacity` positively-counted items. When an update would
/// leave more than `capacity` positive entries, the minimum counter value is
/// subtracted from every entry, zeroed entries are dropped, and the subtracted
/// amount is accumulated into deleted_total. Counts are real-valued so
/// weighted streams work; for unit weights the estimate error is bounded by
/// deleted_total <= n/(capacity+1).
class MgCounter {
 public:
  explicit MgCounter(std::size_t capacity);

  void update(std::uint64_t item, double weight = 1.0);

  // Counter value, or 0 for absent items; never exceeds the true frequency.
  double estimate(std::uint64_t item) const;

  std::size_t capacity() const { return capacity_; }
  double deleted_total() const { return deleted_total_; }
  double weight_processed() const { return weight_processed_; }
  const std::unordered_map<std::uint64_t, double>& counters() const {
    return counters_;
  }

 private:
  std::size_t capacity_;
  std::unordered_map<std::uint64_t, double> counters_;
  double deleted_total_ = 0.0;
  double weight_processed_ = 0.0;
};

}  // namespace fdsketch
