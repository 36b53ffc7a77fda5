#pragma once

#include <cstdint>

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"

namespace icluster {

/// KC: plain greedy k-center over all features.
Clustering kc_baseline(const Dataset& d, const Distances& dist, std::size_t k,
                       std::uint64_t seed,
                       FirstCenter rule = FirstCenter::seeded);

/// P_F: one cluster per FoI value, so the result is always fully
/// interpretable. Extra clusters beyond |F| are created by handing each
/// spare to the value group with the highest nodes-per-cluster load (ties:
/// lower value id) and splitting groups internally with greedy k-center.
/// Throws when k < |F| or k > n.
Clustering pf_baseline(const Dataset& d, const Distances& dist, std::size_t k,
                       std::uint64_t seed,
                       FirstCenter rule = FirstCenter::seeded);

/// KC_F: greedy k-center under the FoI-only pseudometric. The returned
/// objective is measured with the caller's metric so results stay
/// comparable across algorithms.
Clustering kcf_baseline(const Dataset& d, const Distances& dist, std::size_t k,
                        std::uint64_t seed,
                        FirstCenter rule = FirstCenter::seeded);

}  // namespace icluster
