#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace icluster {

using NodeId = std::uint32_t;
using FoiValueId = std::uint32_t;

enum class FeatureKind { numeric, categorical };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
};

/// Schema of a tabular dataset plus the designation of the feature(s) of
/// interest. For a numeric FoI feature, `foi_bins[name]` holds the bin edges
/// {e0,...,em} defining intervals [e0,e1), ..., [e_{m-1},e_m]; the last
/// interval is closed so the observed maximum stays in range.
struct FeatureSchema {
  std::vector<FeatureSpec> features;
  std::vector<std::size_t> foi_indices;
  std::map<std::string, std::vector<double>> foi_bins;

  void validate() const;  // throws std::invalid_argument on a broken invariant
};

/// One distinct observed value of the feature(s) of interest. With several
/// FoI features this is a tuple, one code per FoI feature. Values are kept
/// in ascending code-tuple order, which is the canonical value ordering used
/// by every tie-break in the library.
struct FoiValue {
  std::string label;
  std::vector<std::uint32_t> codes;
  std::size_t count = 0;
};

struct Column {
  FeatureKind kind = FeatureKind::numeric;
  std::vector<double> raw;                // numeric: as parsed
  std::vector<double> scaled;             // numeric: min-max normalized to [0,1]
  std::vector<std::uint32_t> codes;       // categorical: index into categories
  std::vector<std::string> categories;    // categorical: sorted unique values
};

/// Immutable table of nodes. Construction validates the schema, normalizes
/// numeric columns, bins/encodes the FoI feature(s) and collects the set F of
/// observed FoI values. Safe to share read-only across threads.
class Dataset {
 public:
  std::size_t size() const { return n_; }
  const FeatureSchema& schema() const { return schema_; }
  const Column& column(std::size_t feature) const { return columns_[feature]; }

  FoiValueId foi_value(NodeId v) const { return node_foi_[v]; }
  const std::vector<FoiValue>& foi_values() const { return foi_values_; }
  const FoiValue& foi(FoiValueId f) const { return foi_values_[f]; }
  const std::string& foi_label(NodeId v) const { return foi_values_[node_foi_[v]].label; }

  /// Label of a single FoI feature's code: the category, the bin interval,
  /// or the numeric literal. `slot` indexes schema().foi_indices.
  const std::string& foi_part_label(std::size_t slot, std::uint32_t code) const {
    return part_labels_[slot][code];
  }

  std::vector<NodeId> all_ids() const;

  /// Raw cell rendered back to text (numeric via shortest round-trip form).
  std::string cell_text(NodeId v, std::size_t feature) const;

  void to_csv(const std::string& path) const;

  /// Data-model equality: schema, every cell, and FoI assignment.
  bool same_data(const Dataset& other) const;

  /// Builds a dataset from parsed text cells, one row per node. Shared by
  /// load_csv and synthesize so both go through the same validation,
  /// normalization and FoI encoding.
  static Dataset from_rows(FeatureSchema schema,
                           const std::vector<std::vector<std::string>>& rows);

 private:
  Dataset() = default;

  FeatureSchema schema_;
  std::size_t n_ = 0;
  std::vector<Column> columns_;
  std::vector<FoiValueId> node_foi_;
  std::vector<FoiValue> foi_values_;
  std::vector<std::vector<std::string>> part_labels_;  // [foi slot][code]
};

/// RFC-4180 CSV reader: comma delimiter, double-quote quoting with ""
/// escapes, embedded newlines inside quotes, LF or CRLF line ends.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Loads an RFC-4180 CSV whose header row must match the schema's feature
/// names exactly. Throws std::runtime_error with row/column context on any
/// parse failure, and when a numeric FoI value falls outside all bins.
Dataset load_csv(const std::string& path, FeatureSchema schema);

/// Deterministic synthetic dataset: `num_features` numeric columns drawn from
/// `blobs` Gaussian blobs in [0,1]^d plus one categorical FoI column with
/// `foi_cardinality` values mixed per `foi_mix` (empty = uniform). FoI labels
/// are assigned independently of blob geometry. Throws std::invalid_argument
/// when some FoI value would receive zero nodes.
Dataset synthesize(std::size_t n, std::size_t num_features,
                   std::size_t foi_cardinality, std::vector<double> foi_mix,
                   std::size_t blobs, std::uint64_t seed);

/// Node ids grouped by FoI value, indexed by FoiValueId; each group sorted
/// ascending. The groups partition 0..n-1.
std::vector<std::vector<NodeId>> foi_partition(const Dataset& d);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

/// Strict double parser (leading blanks tolerated, nothing trailing).
bool parse_double(const std::string& text, double& out);

}  // namespace icluster
