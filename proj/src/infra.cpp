#include "evscurve/infra.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "evscurve/error.hpp"

namespace evscurve {

InfraMetric chargers_per_10_bev(const ChargerRecord& record, double adequacy) {
  if (!std::isfinite(adequacy) || adequacy < 0.0) {
    throw DomainError("adequacy threshold must be finite and non-negative");
  }
  if (record.bev_stock == 0) {
    throw Error(ErrorCode::no_data, "no BEV stock recorded for region '" + record.region + "'");
  }
  const double ratio =
      10.0 * static_cast<double>(record.public_chargers) / static_cast<double>(record.bev_stock);
  return {record.region, ratio, ratio >= adequacy, record.as_of};
}

std::vector<InfraMetric> rank_infra(std::vector<InfraMetric> metrics) {
  std::sort(metrics.begin(), metrics.end(), [](const InfraMetric& a, const InfraMetric& b) {
    return std::tuple(a.ratio, canonical_region(a.region), a.region) <
           std::tuple(b.ratio, canonical_region(b.region), b.region);
  });
  return metrics;
}

}  // namespace evscurve
