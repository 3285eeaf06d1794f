#pragma once

#include <span>
#include <string>
#include <vector>

#include "evscurve/ingest.hpp"

namespace evscurve {

/// One publicly accessible charger per 10 vehicles. Applied to BEV stock, the
/// way regional charger statistics are usually compared, not to all cars.
inline constexpr double kDefaultAdequacy = 1.0;

struct InfraMetric {
  std::string region;
  double ratio = 0.0;  // public chargers per 10 BEVs
  bool adequate = false;
  TimePoint as_of;
};

/// 10 * public_chargers / bev_stock, adequate iff ratio >= adequacy.
/// Throws Error(no_data) when bev_stock is 0.
InfraMetric chargers_per_10_bev(const ChargerRecord& record, double adequacy = kDefaultAdequacy);

/// Ascending ratio, ties by canonical region identifier.
std::vector<InfraMetric> rank_infra(std::vector<InfraMetric> metrics);

}  // namespace evscurve
