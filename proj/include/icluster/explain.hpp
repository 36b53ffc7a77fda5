#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"

namespace icluster {

/// One mined item: a concrete code of one FoI feature. `slot` indexes
/// schema().foi_indices, so single-feature FoI always has slot 0.
struct FoiItem {
  std::size_t slot = 0;
  std::uint32_t code = 0;
  bool operator==(const FoiItem&) const = default;
};

struct Itemset {
  std::vector<FoiItem> items;  // sorted by slot; at most one item per slot
  std::size_t count = 0;       // nodes of the cluster matching every item
  double support = 0;          // count / cluster size
};

struct ExplanationTerm {
  std::vector<FoiItem> items;
  double support = 0;
};

/// Per-cluster explanation: the maximal frequent itemsets joined by OR.
/// An empty term list means no value combination reached min_support.
struct Explanation {
  std::size_t cluster = 0;
  std::vector<ExplanationTerm> terms;  // support desc, then item order
  double min_support = 0.2;
};

/// Every itemset over the cluster's FoI value assignments whose support
/// reaches min_support (count >= ceil(min_support * |C|)). Exact level-wise
/// enumeration; sorted by support desc, then smaller, then item order.
/// Throws on an empty cluster or min_support outside (0,1].
std::vector<Itemset> frequent_itemsets(const Dataset& d,
                                       const std::vector<NodeId>& cluster,
                                       double min_support);

/// One Explanation per cluster, in cluster order.
std::vector<Explanation> cluster_explanation(const Dataset& d,
                                             const Clustering& c,
                                             double min_support = 0.2);

/// "age=[20,30)" when the FoI spans several features, else just the label.
std::string item_text(const Dataset& d, const FoiItem& item);

/// `cluster <i>: <value> (<pct>%) OR ...`, or `cluster <i>: no dominant
/// pattern`; items within a term joined by " & ".
std::string render_explanation(const Dataset& d, const Explanation& e);

/// {"cluster": i, "terms": [{"values": [...], "support": s}, ...]}
nlohmann::json explanation_json(const Dataset& d, const Explanation& e);

}  // namespace icluster
