#include "qem/report.hpp"

#include <cmath>

namespace qem {

double MitigationReport::combined_std_error() const {
  double var = 0.0;
  for (std::size_t i = 0; i < per_order.size(); ++i) {
    const double c = static_cast<double>(plan.coeffs[i]);
    var += c * c * per_order[i].std_error * per_order[i].std_error;
  }
  return std::sqrt(var);
}

nlohmann::json MitigationReport::to_json() const {
  nlohmann::json orders = nlohmann::json::array();
  for (const auto& o : per_order)
    orders.push_back({{"k", o.k},
                      {"exact", o.exact},
                      {"sampled", o.sampled},
                      {"std_error", o.std_error}});
  return nlohmann::json{{"plan", plan.to_json()},
                        {"per_order", std::move(orders)},
                        {"combined_exact", combined_exact},
                        {"combined_sampled", combined_sampled},
                        {"ideal", ideal},
                        {"remainder_bound", remainder_bound},
                        {"guarantee", guarantee}};
}

}  // namespace qem
