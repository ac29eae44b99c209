#pragma once

#include <string>
#include <vector>

#include "qem/neumann.hpp"

#include "json.hpp"

namespace qem {

// Exact and sampled estimate for one series order k.
struct OrderEstimate {
  int k = 0;
  double exact = 0.0;
  double sampled = 0.0;
  double std_error = 0.0;
};

// Full output of one mitigation run. The sampled pipeline always runs
// alongside the exact oracle so every run self-verifies.
struct MitigationReport {
  TruncationPlan plan;
  std::vector<OrderEstimate> per_order;  // k = 1 .. K+1
  double combined_exact = 0.0;
  double combined_sampled = 0.0;
  double ideal = 0.0;
  double remainder_bound = 0.0;
  // "hoeffding" when the planned budget was used; "none" when K or the
  // shot count was overridden.
  std::string guarantee = "hoeffding";

  // Standard error of the combined estimator.
  double combined_std_error() const;

  nlohmann::json to_json() const;
};

}  // namespace qem
