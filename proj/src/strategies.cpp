#include "robavg/strategies.hpp"

#include <algorithm>
#include <cmath>

namespace robavg {

namespace {

bool ranks_before(const RankedLink& a, const RankedLink& b) {
  return a.value < b.value || (a.value == b.value && a.edge < b.edge);
}

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

BreakMask mask_of(std::size_t m, const RankedLinks& links) {
  BreakMask mask = BreakMask::Constant(idx(m), false);
  for (const auto& r : links) mask[idx(r.edge)] = true;
  return mask;
}

StrategyOutcome blank(Rule rule, std::size_t m) {
  StrategyOutcome out;
  out.rule = rule;
  out.control = ControlPair::none(m);
  return out;
}

// Binomial coefficient in floating point; only used for guard arithmetic.
double choose(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t r = 1; r <= k; ++r) c = c * static_cast<double>(n - k + r) / static_cast<double>(r);
  return c;
}

// Advances `pos` to the next size-k combination of 0..n-1 in lexicographic order.
bool next_combination(std::vector<std::size_t>& pos, std::size_t n) {
  const std::size_t k = pos.size();
  for (std::size_t r = k; r-- > 0;) {
    if (pos[r] < n - k + r) {
      ++pos[r];
      for (std::size_t s = r + 1; s < k; ++s) pos[s] = pos[s - 1] + 1;
      return true;
    }
  }
  return false;
}

// Minimax-designer bookkeeping shared by the search and its size estimate.
struct DesignerSetup {
  EdgeValues nominal;      // a s
  RankedLinks protected_;  // L(0), ascending
  BreakMask in_protected;
  std::vector<std::size_t> pool;  // P(0): a s < 0 and not in L(0), ascending edge index
};

DesignerSetup designer_setup(const Graph& g, const EdgeValues& s, std::size_t budget) {
  DesignerSetup d;
  d.nominal = g.weights().cwiseProduct(s);
  d.protected_ = select_phi(d.nominal, budget);
  d.in_protected = mask_of(g.edge_count(), d.protected_);
  for (std::size_t k = 0; k < g.edge_count(); ++k)
    if (d.nominal[idx(k)] < 0.0 && !d.in_protected[idx(k)]) d.pool.push_back(k);
  return d;
}

// Phi over links with s < 0 that are outside `excluded`, ranked by s itself.
RankedLinks best_unlisted(const EdgeValues& s, const BreakMask& excluded, std::size_t count) {
  RankedLinks candidates;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (!excluded[k]) candidates.push_back({static_cast<std::size_t>(k), s[k]});
  return select_phi(std::move(candidates), count);
}

double search_size(const DesignerSetup& d) {
  double total = 0.0;
  for (std::size_t i = 1; i <= d.protected_.size(); ++i) total += choose(d.pool.size(), i);
  return total;
}

}  // namespace

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::designer_response_maxmin: return "designer_response_maxmin";
    case Rule::adversary_first_move_maxmin: return "adversary_first_move_maxmin";
    case Rule::adversary_response_minmax: return "adversary_response_minmax";
    case Rule::designer_first_move_minmax: return "designer_first_move_minmax";
  }
  return "unknown";
}

RankedLinks select_phi(std::vector<RankedLink> candidates, std::size_t budget) {
  std::erase_if(candidates, [](const RankedLink& r) { return !(r.value < 0.0); });
  const std::size_t keep = std::min(budget, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                    ranks_before);
  candidates.resize(keep);
  return candidates;
}

RankedLinks select_phi(const EdgeValues& values, std::size_t budget) {
  RankedLinks candidates;
  candidates.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (values[k] < 0.0) candidates.push_back({static_cast<std::size_t>(k), values[k]});
  return select_phi(std::move(candidates), budget);
}

StrategyOutcome designer_response_maxmin(const Graph& g, const BreakMask& broken, const EdgeValues& sensitivity,
                                         std::size_t budget, double cap) {
  const std::size_t m = g.edge_count();
  StrategyOutcome out = blank(Rule::designer_response_maxmin, m);
  if (broken.size() > 0) out.control.broken = broken;

  RankedLinks candidates;
  for (std::size_t k = 0; k < m; ++k)
    if (!out.control.broken[idx(k)]) candidates.push_back({k, sensitivity[idx(k)]});
  out.ranked = select_phi(std::move(candidates), budget);
  for (const auto& r : out.ranked) out.control.boost[idx(r.edge)] = cap;
  return out;
}

StrategyOutcome adversary_first_move_maxmin(const Graph& g, const EdgeValues& sensitivity, std::size_t budget,
                                            double cap) {
  const std::size_t m = g.edge_count();
  StrategyOutcome out = blank(Rule::adversary_first_move_maxmin, m);

  RankedLinks values;
  values.reserve(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    const double s = sensitivity[idx(k)];
    if (!(s < 0.0)) continue;
    values.push_back({k, g.weight(k) * s});
    values.push_back({k, (g.weight(k) + cap) * s});
  }
  std::sort(values.begin(), values.end(), ranks_before);
  for (const auto& r : values) {
    if (out.ranked.size() == budget) break;
    if (out.control.broken[idx(r.edge)]) continue;
    out.control.broken[idx(r.edge)] = true;
    out.ranked.push_back(r);
  }
  return out;
}

StrategyOutcome adversary_response_minmax(const Graph& g, const EdgeValues& boost, const EdgeValues& sensitivity,
                                          std::size_t budget) {
  const std::size_t m = g.edge_count();
  StrategyOutcome out = blank(Rule::adversary_response_minmax, m);
  if (boost.size() > 0) out.control.boost = boost;
  out.ranked = select_phi((g.weights() + out.control.boost).cwiseProduct(sensitivity), budget);
  out.control.broken = mask_of(m, out.ranked);
  return out;
}

double designer_search_size(const Graph& g, const EdgeValues& sensitivity, std::size_t budget) {
  return search_size(designer_setup(g, sensitivity, budget));
}

StrategyOutcome designer_first_move_minmax(const Graph& g, const EdgeValues& sensitivity, std::size_t budget,
                                           double cap, const SearchLimits& limits) {
  const std::size_t m = g.edge_count();
  StrategyOutcome out = blank(Rule::designer_first_move_minmax, m);
  const DesignerSetup d = designer_setup(g, sensitivity, budget);

  const double worst_case = search_size(d);
  if (worst_case > limits.subset_guard)
    throw GuardExceeded("designer subset search needs up to " + std::to_string(static_cast<long long>(worst_case)) +
                            " subsets, above the limit of " +
                            std::to_string(static_cast<long long>(limits.subset_guard)),
                        worst_case, limits.subset_guard);

  // Protected list in descending value order: protected_ is ascending, so the
  // i-th largest (1-based) sits at position size - i.
  const std::size_t listed = d.protected_.size();
  const EdgeValues boosted_values = (g.weights().array() + cap).matrix().cwiseProduct(sensitivity);

  for (std::size_t level = listed; level >= 1 && !d.pool.empty(); --level) {
    const RankedLink target = d.protected_[listed - level];
    auto beats = [&](std::size_t edge, double value) {
      if (edge == target.edge) return false;
      if (limits.slack > 0.0) return value < target.value - limits.slack;
      return ranks_before({edge, value}, target);
    };
    // Links already ahead of the target with no boosts anywhere.
    std::size_t base = 0;
    for (std::size_t k = 0; k < m; ++k)
      if (beats(k, d.nominal[idx(k)])) ++base;

    if (level > d.pool.size()) continue;
    std::vector<std::size_t> pos(level);
    for (std::size_t r = 0; r < level; ++r) pos[r] = r;
    do {
      ++out.subsets_examined;
      std::size_t ahead = base;
      for (std::size_t r : pos) {
        const std::size_t e = d.pool[r];
        ahead -= beats(e, d.nominal[idx(e)]) ? 1 : 0;
        ahead += beats(e, boosted_values[idx(e)]) ? 1 : 0;
      }
      if (ahead < budget) continue;

      // Target displaced: boost S plus the best links the adversary now spares.
      out.protect_level = level;
      out.protected_edge = target.edge;
      EdgeValues trial = EdgeValues::Zero(idx(m));
      for (std::size_t r : pos) {
        out.subset.push_back(d.pool[r]);
        trial[idx(d.pool[r])] = cap;
      }
      const RankedLinks listed_after = select_phi((g.weights() + trial).cwiseProduct(sensitivity), budget);
      const RankedLinks extra = best_unlisted(sensitivity, mask_of(m, listed_after), budget - level);
      out.ranked = listed_after;
      for (std::size_t e : out.subset) out.control.boost[idx(e)] = cap;
      for (const auto& r : extra) out.control.boost[idx(r.edge)] = cap;
      return out;
    } while (next_combination(pos, d.pool.size()));
  }

  out.fallback = true;
  out.ranked = best_unlisted(sensitivity, d.in_protected, budget);
  for (const auto& r : out.ranked) out.control.boost[idx(r.edge)] = cap;
  return out;
}

}  // namespace robavg
