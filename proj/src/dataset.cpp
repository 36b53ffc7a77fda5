#include "icluster/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace icluster {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

bool parse_double(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

// RFC-4180 reader: comma delimiter, double-quote quoting with "" escapes,
// fields may contain embedded newlines when quoted. Accepts LF and CRLF.
std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };
  while (i < text.size()) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          quoted = false;
          ++i;
        }
      } else {
        field += c;
        ++i;
      }
    } else if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      end_row();
      i += 2;
    } else if (c == '\n') {
      end_row();
      ++i;
    } else {
      field += c;
      field_started = true;
      ++i;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in " + path);
  if (field_started || !row.empty()) end_row();
  return rows;
}

namespace {

std::string bin_label(const std::vector<double>& edges, std::size_t bin) {
  const bool last = bin + 1 == edges.size() - 1;
  return "[" + format_double(edges[bin]) + "," + format_double(edges[bin + 1]) +
         (last ? "]" : ")");
}

// Bin index for a raw value, or -1 when it falls outside every interval.
int bin_of(const std::vector<double>& edges, double x) {
  if (x < edges.front()) return -1;
  if (x > edges.back()) return -1;
  if (x == edges.back()) return static_cast<int>(edges.size()) - 2;
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return static_cast<int>(it - edges.begin()) - 1;
}

}  // namespace

void FeatureSchema::validate() const {
  if (features.empty()) throw std::invalid_argument("schema has no features");
  std::set<std::string> names;
  for (const auto& f : features) {
    if (f.name.empty()) throw std::invalid_argument("empty feature name");
    if (!names.insert(f.name).second)
      throw std::invalid_argument("duplicate feature name: " + f.name);
  }
  if (foi_indices.empty())
    throw std::invalid_argument("no feature of interest designated");
  std::set<std::size_t> seen;
  for (std::size_t idx : foi_indices) {
    if (idx >= features.size())
      throw std::invalid_argument("foi index out of range");
    if (!seen.insert(idx).second)
      throw std::invalid_argument("duplicate foi index");
  }
  for (const auto& [name, edges] : foi_bins) {
    if (!names.count(name))
      throw std::invalid_argument("bins declared for unknown feature: " + name);
    if (edges.size() < 2)
      throw std::invalid_argument("bins for " + name + " need at least 2 edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (!(edges[i - 1] < edges[i]))
        throw std::invalid_argument("bin edges for " + name +
                                    " must be strictly increasing");
  }
}

Dataset Dataset::from_rows(FeatureSchema schema,
                           const std::vector<std::vector<std::string>>& rows) {
  schema.validate();
  const std::size_t m = schema.features.size();
  const std::size_t n = rows.size();
  if (n == 0) throw std::runtime_error("dataset has no rows");

  Dataset d;
  d.schema_ = std::move(schema);
  d.n_ = n;
  d.columns_.resize(m);

  for (std::size_t r = 0; r < n; ++r)
    if (rows[r].size() != m)
      throw std::runtime_error("row " + std::to_string(r + 1) + " has " +
                               std::to_string(rows[r].size()) + " cells, expected " +
                               std::to_string(m));

  for (std::size_t f = 0; f < m; ++f) {
    Column& col = d.columns_[f];
    col.kind = d.schema_.features[f].kind;
    if (col.kind == FeatureKind::numeric) {
      col.raw.resize(n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!parse_double(rows[r][f], col.raw[r]))
          throw std::runtime_error("unparseable numeric cell at row " +
                                   std::to_string(r + 1) + ", column " +
                                   d.schema_.features[f].name + ": '" +
                                   rows[r][f] + "'");
      }
      const auto [mn, mx] = std::minmax_element(col.raw.begin(), col.raw.end());
      const double lo = *mn, span = *mx - *mn;
      col.scaled.resize(n);
      for (std::size_t r = 0; r < n; ++r)
        col.scaled[r] = span > 0 ? (col.raw[r] - lo) / span : 0.0;
    } else {
      std::vector<std::string> cats;
      for (std::size_t r = 0; r < n; ++r) cats.push_back(rows[r][f]);
      std::sort(cats.begin(), cats.end());
      cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
      col.categories = cats;
      col.codes.resize(n);
      for (std::size_t r = 0; r < n; ++r) {
        auto it = std::lower_bound(cats.begin(), cats.end(), rows[r][f]);
        col.codes[r] = static_cast<std::uint32_t>(it - cats.begin());
      }
    }
  }

  // Discrete per-feature FoI code for every node: categorical code, bin
  // index, or (numeric without bins) rank among distinct observed values.
  const std::size_t na = d.schema_.foi_indices.size();
  std::vector<std::vector<std::uint32_t>> part_codes(na);
  std::vector<std::vector<std::string>> part_labels(na);  // label per node
  d.part_labels_.resize(na);                              // label per code
  for (std::size_t a = 0; a < na; ++a) {
    const std::size_t f = d.schema_.foi_indices[a];
    const Column& col = d.columns_[f];
    const std::string& name = d.schema_.features[f].name;
    part_codes[a].resize(n);
    part_labels[a].resize(n);
    if (col.kind == FeatureKind::categorical) {
      d.part_labels_[a] = col.categories;
      for (std::size_t r = 0; r < n; ++r) {
        part_codes[a][r] = col.codes[r];
        part_labels[a][r] = col.categories[col.codes[r]];
      }
    } else if (auto it = d.schema_.foi_bins.find(name);
               it != d.schema_.foi_bins.end()) {
      const auto& edges = it->second;
      for (std::size_t b = 0; b + 1 < edges.size(); ++b)
        d.part_labels_[a].push_back(bin_label(edges, b));
      for (std::size_t r = 0; r < n; ++r) {
        int b = bin_of(edges, col.raw[r]);
        if (b < 0)
          throw std::runtime_error("FoI value outside bins at row " +
                                   std::to_string(r + 1) + ", column " + name +
                                   ": " + format_double(col.raw[r]));
        part_codes[a][r] = static_cast<std::uint32_t>(b);
        part_labels[a][r] = bin_label(edges, static_cast<std::size_t>(b));
      }
    } else {
      std::vector<double> distinct(col.raw);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()),
                     distinct.end());
      for (double x : distinct) d.part_labels_[a].push_back(format_double(x));
      for (std::size_t r = 0; r < n; ++r) {
        auto it2 = std::lower_bound(distinct.begin(), distinct.end(), col.raw[r]);
        part_codes[a][r] = static_cast<std::uint32_t>(it2 - distinct.begin());
        part_labels[a][r] = format_double(col.raw[r]);
      }
    }
  }

  // F = observed code tuples, in ascending tuple order.
  std::map<std::vector<std::uint32_t>, std::size_t> counts;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::uint32_t> tuple(na);
    for (std::size_t a = 0; a < na; ++a) tuple[a] = part_codes[a][r];
    ++counts[tuple];
  }
  std::map<std::vector<std::uint32_t>, FoiValueId> value_of;
  for (const auto& [tuple, count] : counts) {
    FoiValue v;
    v.codes = tuple;
    v.count = count;
    value_of[tuple] = static_cast<FoiValueId>(d.foi_values_.size());
    d.foi_values_.push_back(std::move(v));
  }
  d.node_foi_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::uint32_t> tuple(na);
    for (std::size_t a = 0; a < na; ++a) tuple[a] = part_codes[a][r];
    const FoiValueId id = value_of[tuple];
    d.node_foi_[r] = id;
    if (d.foi_values_[id].label.empty()) {
      std::string label;
      for (std::size_t a = 0; a < na; ++a) {
        if (a) label += "|";
        label += part_labels[a][r];
      }
      d.foi_values_[id].label = label;
    }
  }
  return d;
}

Dataset load_csv(const std::string& path, FeatureSchema schema) {
  schema.validate();
  auto rows = read_csv(path);
  if (rows.empty()) throw std::runtime_error("empty CSV: " + path);
  const auto& header = rows.front();
  if (header.size() != schema.features.size())
    throw std::runtime_error("header has " + std::to_string(header.size()) +
                             " columns, schema declares " +
                             std::to_string(schema.features.size()));
  for (std::size_t f = 0; f < header.size(); ++f)
    if (header[f] != schema.features[f].name)
      throw std::runtime_error("header mismatch at column " +
                               std::to_string(f + 1) + ": got '" + header[f] +
                               "', expected '" + schema.features[f].name + "'");
  rows.erase(rows.begin());
  return Dataset::from_rows(std::move(schema), rows);
}

std::vector<NodeId> Dataset::all_ids() const {
  std::vector<NodeId> ids(n_);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  return ids;
}

std::string Dataset::cell_text(NodeId v, std::size_t feature) const {
  const Column& col = columns_[feature];
  if (col.kind == FeatureKind::numeric) return format_double(col.raw[v]);
  return col.categories[col.codes[v]];
}

void Dataset::to_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (std::size_t f = 0; f < schema_.features.size(); ++f)
    out << (f ? "," : "") << quote(schema_.features[f].name);
  out << "\n";
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t f = 0; f < schema_.features.size(); ++f)
      out << (f ? "," : "") << quote(cell_text(static_cast<NodeId>(r), f));
    out << "\n";
  }
}

bool Dataset::same_data(const Dataset& other) const {
  if (n_ != other.n_ || schema_.features.size() != other.schema_.features.size())
    return false;
  for (std::size_t f = 0; f < schema_.features.size(); ++f) {
    if (schema_.features[f].name != other.schema_.features[f].name) return false;
    if (schema_.features[f].kind != other.schema_.features[f].kind) return false;
  }
  if (schema_.foi_indices != other.schema_.foi_indices) return false;
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t f = 0; f < schema_.features.size(); ++f)
      if (cell_text(static_cast<NodeId>(r), f) !=
          other.cell_text(static_cast<NodeId>(r), f))
        return false;
    if (foi_label(static_cast<NodeId>(r)) !=
        other.foi_label(static_cast<NodeId>(r)))
      return false;
  }
  return true;
}

Dataset synthesize(std::size_t n, std::size_t num_features,
                   std::size_t foi_cardinality, std::vector<double> foi_mix,
                   std::size_t blobs, std::uint64_t seed) {
  if (foi_cardinality < 1) throw std::invalid_argument("foi_cardinality < 1");
  if (n < foi_cardinality)
    throw std::invalid_argument("n smaller than foi_cardinality");
  if (num_features < 1) throw std::invalid_argument("num_features < 1");
  if (blobs < 1) throw std::invalid_argument("blobs < 1");
  if (foi_mix.empty())
    foi_mix.assign(foi_cardinality, 1.0 / static_cast<double>(foi_cardinality));
  if (foi_mix.size() != foi_cardinality)
    throw std::invalid_argument("foi_mix size mismatch");
  double total = std::accumulate(foi_mix.begin(), foi_mix.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("foi_mix proportions must sum to 1");

  // Per-value counts by largest remainder; every value must get >= 1 node.
  std::vector<std::size_t> count(foi_cardinality);
  std::vector<std::pair<double, std::size_t>> rem(foi_cardinality);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < foi_cardinality; ++i) {
    double exact = foi_mix[i] * static_cast<double>(n);
    count[i] = static_cast<std::size_t>(std::floor(exact + 1e-12));
    rem[i] = {exact - static_cast<double>(count[i]), i};
    assigned += count[i];
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned)
    ++count[rem[i % foi_cardinality].second];
  for (std::size_t i = 0; i < foi_cardinality; ++i)
    if (count[i] == 0)
      throw std::invalid_argument("infeasible proportions: FoI value " +
                                  std::to_string(i) + " would get 0 nodes");

  const int label_width =
      static_cast<int>(std::to_string(foi_cardinality - 1).size());
  std::vector<std::string> labels(foi_cardinality);
  for (std::size_t i = 0; i < foi_cardinality; ++i) {
    std::string idx = std::to_string(i);
    labels[i] = "f" + std::string(label_width - static_cast<int>(idx.size()), '0') + idx;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.06);

  // Greedy maximin center placement over a seeded candidate pool, so the
  // planted blobs stay separated and give the k-center objective structure.
  std::vector<std::vector<double>> pool(std::max<std::size_t>(blobs * 32, 64),
                                        std::vector<double>(num_features));
  for (auto& c : pool)
    for (auto& x : c) x = unit(rng);
  auto sqdist = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t f = 0; f < num_features; ++f)
      s += (a[f] - b[f]) * (a[f] - b[f]);
    return s;
  };
  std::vector<std::vector<double>> centers{pool.front()};
  while (centers.size() < blobs) {
    std::size_t far = 0;
    double best = -1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) nearest = std::min(nearest, sqdist(pool[i], c));
      if (nearest > best) {
        best = nearest;
        far = i;
      }
    }
    centers.push_back(pool[far]);
  }

  std::vector<std::size_t> foi_of(n);
  {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < foi_cardinality; ++i)
      for (std::size_t j = 0; j < count[i]; ++j) foi_of[pos++] = i;
    std::shuffle(foi_of.begin(), foi_of.end(), rng);
  }

  std::uniform_int_distribution<std::size_t> pick_blob(0, blobs - 1);
  std::vector<std::vector<std::string>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& c = centers[pick_blob(rng)];
    rows[r].resize(num_features + 1);
    for (std::size_t f = 0; f < num_features; ++f)
      rows[r][f] = format_double(c[f] + noise(rng));
    rows[r][num_features] = labels[foi_of[r]];
  }

  FeatureSchema schema;
  for (std::size_t f = 0; f < num_features; ++f)
    schema.features.push_back({"x" + std::to_string(f), FeatureKind::numeric});
  schema.features.push_back({"foi", FeatureKind::categorical});
  schema.foi_indices = {num_features};
  return Dataset::from_rows(std::move(schema), rows);
}

std::vector<std::vector<NodeId>> foi_partition(const Dataset& d) {
  std::vector<std::vector<NodeId>> part(d.foi_values().size());
  for (NodeId v = 0; v < d.size(); ++v) part[d.foi_value(v)].push_back(v);
  return part;
}

}  // namespace icluster
