#include "icluster/explain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace icluster {

namespace {

using Key = std::vector<std::pair<std::size_t, std::uint32_t>>;  // (slot, code)

bool subset_of(const Key& small, const Key& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string pct_text(double support) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", support * 100.0);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::vector<Itemset> frequent_itemsets(const Dataset& d,
                                       const std::vector<NodeId>& cluster,
                                       double min_support) {
  if (cluster.empty()) throw std::invalid_argument("empty cluster");
  if (!(min_support > 0) || min_support > 1)
    throw std::invalid_argument("min_support must be in (0,1]");
  const std::size_t n = cluster.size();
  // Small backoff so 0.2*10 and friends do not tip over the ceiling.
  std::size_t min_count = static_cast<std::size_t>(
      std::ceil(min_support * static_cast<double>(n) - 1e-9));
  if (min_count == 0) min_count = 1;

  const std::size_t slots = d.schema().foi_indices.size();
  std::vector<const std::vector<std::uint32_t>*> rows;
  rows.reserve(n);
  for (NodeId v : cluster) rows.push_back(&d.foi(d.foi_value(v)).codes);

  auto matches = [&](const Key& key, const std::vector<std::uint32_t>& tuple) {
    for (const auto& [slot, code] : key)
      if (tuple[slot] != code) return false;
    return true;
  };

  std::map<Key, std::size_t> frequent;
  std::vector<Key> level;
  {
    std::map<Key, std::size_t> count;
    for (const auto* tuple : rows)
      for (std::size_t a = 0; a < slots; ++a) ++count[{{a, (*tuple)[a]}}];
    for (const auto& [key, c] : count)
      if (c >= min_count) {
        frequent[key] = c;
        level.push_back(key);
      }
  }

  while (!level.empty() && level.front().size() < slots) {
    // Join pairs sharing all but the last item; last items must come from
    // different slots since a node carries one code per slot.
    std::vector<Key> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const Key& a = level[i];
        const Key& b = level[j];
        if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) continue;
        if (a.back().first == b.back().first) continue;
        Key cand = a;
        cand.push_back(b.back());
        std::sort(cand.begin(), cand.end());
        bool closed = true;  // downward closure: all size-1-smaller subsets frequent
        for (std::size_t drop = 0; drop < cand.size() && closed; ++drop) {
          Key sub = cand;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          closed = frequent.count(sub) > 0;
        }
        if (closed) next.push_back(cand);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level.clear();
    for (const Key& cand : next) {
      std::size_t c = 0;
      for (const auto* tuple : rows)
        if (matches(cand, *tuple)) ++c;
      if (c >= min_count) {
        frequent[cand] = c;
        level.push_back(cand);
      }
    }
  }

  std::vector<Itemset> out;
  for (const auto& [key, c] : frequent) {
    Itemset s;
    for (const auto& [slot, code] : key) s.items.push_back({slot, code});
    s.count = c;
    s.support = static_cast<double>(c) / static_cast<double>(n);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Itemset& a, const Itemset& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return std::lexicographical_compare(
        a.items.begin(), a.items.end(), b.items.begin(), b.items.end(),
        [](const FoiItem& x, const FoiItem& y) {
          return x.slot != y.slot ? x.slot < y.slot : x.code < y.code;
        });
  });
  return out;
}

std::vector<Explanation> cluster_explanation(const Dataset& d,
                                             const Clustering& c,
                                             double min_support) {
  std::vector<Explanation> out;
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    std::vector<Itemset> all =
        frequent_itemsets(d, c.clusters[i].members, min_support);
    Explanation e;
    e.cluster = i;
    e.min_support = min_support;
    for (const Itemset& s : all) {
      Key key, other;
      for (const FoiItem& it : s.items) key.emplace_back(it.slot, it.code);
      bool maximal = true;
      for (const Itemset& t : all) {
        if (t.items.size() <= s.items.size()) continue;
        other.clear();
        for (const FoiItem& it : t.items) other.emplace_back(it.slot, it.code);
        if (subset_of(key, other)) {
          maximal = false;
          break;
        }
      }
      if (maximal) e.terms.push_back({s.items, s.support});
    }
    out.push_back(std::move(e));  // `all` is already in term order
  }
  return out;
}

std::string item_text(const Dataset& d, const FoiItem& item) {
  const auto& foi_indices = d.schema().foi_indices;
  const std::string& label = d.foi_part_label(item.slot, item.code);
  if (foi_indices.size() == 1) return label;
  return d.schema().features[foi_indices[item.slot]].name + "=" + label;
}

std::string render_explanation(const Dataset& d, const Explanation& e) {
  std::string out = "cluster " + std::to_string(e.cluster) + ": ";
  if (e.terms.empty()) return out + "no dominant pattern";
  for (std::size_t t = 0; t < e.terms.size(); ++t) {
    if (t) out += " OR ";
    for (std::size_t i = 0; i < e.terms[t].items.size(); ++i) {
      if (i) out += " & ";
      out += item_text(d, e.terms[t].items[i]);
    }
    out += " (" + pct_text(e.terms[t].support) + "%)";
  }
  return out;
}

nlohmann::json explanation_json(const Dataset& d, const Explanation& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const ExplanationTerm& t : e.terms) {
    nlohmann::json values = nlohmann::json::array();
    for (const FoiItem& it : t.items) values.push_back(item_text(d, it));
    terms.push_back({{"values", values}, {"support", t.support}});
  }
  return {{"cluster", e.cluster}, {"terms", terms}};
}

}  // namespace icluster
