#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibac/labels.hpp"
#include "ibac/schema.hpp"
#include "ibac/store.hpp"

namespace ibac::demo {

/// Reconstructed staff-records policy. Karen's row {Protected, MI6, borders}
/// tags as 3 * 13 * 17 = 663.
std::string_view policy_json();
std::string_view records_csv();

PolicySchema policy();
RecordStore records(const PolicySchema& schema);

/// The MI6 Secretary's subject label before expansion.
LabelSet mi6_secretary();
/// Row ids visible to the MI6 Secretary.
std::vector<std::string> mi6_secretary_rows();

struct Options {
  bool full_universe = false;
  bool verbose = false;
  std::optional<LabelSet> subject;  // overrides the MI6 Secretary
};

/// Load policy, ingest, filter and describe the result.
std::string transcript(const Options& options);

}  // namespace ibac::demo
