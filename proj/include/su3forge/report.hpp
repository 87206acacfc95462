#pragma once

// Audit bookkeeping: a report row per checked statement, carrying the stored
// reference value, the value this library computes, and whether they agree.
// Mismatches are findings to surface, not errors to throw.

#include <cstddef>
#include <string>
#include <vector>

namespace su3forge {

struct DiscrepancyEntry {
  std::string item;        // which statement is being audited
  std::string printed;     // the reference value as recorded
  std::string recomputed;  // the value computed here
  double delta = 0.0;      // numeric size of the disagreement
  bool match = false;
};

struct DiscrepancyReport {
  std::vector<DiscrepancyEntry> entries;

  bool all_match() const {
    for (const auto& e : entries)
      if (!e.match) return false;
    return true;
  }

  std::size_t mismatch_count() const {
    std::size_t n = 0;
    for (const auto& e : entries)
      if (!e.match) ++n;
    return n;
  }

  std::vector<DiscrepancyEntry> mismatches() const {
    std::vector<DiscrepancyEntry> out;
    for (const auto& e : entries)
      if (!e.match) out.push_back(e);
    return out;
  }
};

}  // namespace su3forge
