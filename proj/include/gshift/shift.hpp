#pragma once

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "gshift/group.hpp"

namespace gshift {

using bigint = boost::multiprecision::cpp_int;

/// Letters start..start+len-1 of an encoded word of length total.
inline word_t subword(word_t w, std::uint64_t alphabet, int total, int start, int len) {
  return word_suffix(word_prefix(w, alphabet, total - start - len), alphabet, len);
}

/// Follower-kernel sizes of a shift presentation. The sequence is
/// non-increasing and stabilizes; the stable value is the limit degree and
/// the first index attaining it is the minimal presentation step.
struct KernelChainReport {
  std::vector<std::uint64_t> sizes;  // |ker(G[i] -> G[i-1])| for i = 1..width+1
  std::uint64_t limit_degree = 1;
  int minimal_step = 0;
  double entropy_log = 0.0;
};

/// A one-sided group shift held in trimmed canonical form: width equals the
/// minimal presentation step and the window equals the block group at that
/// width. Width 0 means the full shift on a subgroup of the alphabet.
///
/// Derived data (block groups up to width+1 and the state graph) is computed
/// at construction; instances are immutable and cheap to copy.
class GroupShift {
 public:
  GroupShift() = default;

  /// Canonicalizes an arbitrary window presentation: forward-trims the state
  /// graph, recomputes block groups, and re-presents at the minimal step.
  /// The all-identity point keeps every presentation non-empty.
  static GroupShift from_window(GroupPtr alphabet, int width, std::vector<word_t> window,
                                const Budget& budget = {}) {
    if (width < 0) throw std::invalid_argument("window width must be >= 0");
    sort_unique(window);
    std::uint64_t m = alphabet->order();
    auto universe = checked_pow(m, static_cast<unsigned>(width + 1));
    if (!universe) throw BudgetError("window universe", ~std::uint64_t{0}, budget.max_elements);
    for (word_t w : window)
      if (w >= *universe) throw std::invalid_argument("window entry out of range");
    {
      PowerGroup pw(alphabet, width + 1);
      if (!is_subgroup_set(pw, std::span<const word_t>(window)))
        throw std::invalid_argument("window is not a subgroup of the alphabet power");
    }

    std::vector<word_t> trimmed = (width == 0) ? window : forward_trim(m, width, window);

    // block groups of the presented shift, lengths 1..width+2
    std::vector<std::vector<word_t>> b(width + 2);
    b[width] = trimmed;
    for (int i = width - 1; i >= 0; --i) {
      b[i].reserve(b[i + 1].size());
      for (word_t w : b[i + 1]) b[i].push_back(word_prefix(w, m, 1));
      sort_unique(b[i]);
    }
    b[width + 1] = extend_blocks(m, width, b, budget);

    auto follower = [&](int i) -> std::uint64_t {
      if (i == 0) return b[0].size();
      std::uint64_t c = 0;
      for (word_t w : b[i]) {
        if (w >= m) break;  // sorted; leading-identity words come first
        ++c;
      }
      return c;
    };
    std::uint64_t ld = follower(width);
    if (follower(width + 1) != ld)
      throw std::logic_error("follower chain failed to stabilize at the window width");
    int step = 0;
    while (follower(step) != ld) ++step;

    GroupShift out;
    auto d = std::make_shared<Data>();
    d->alphabet = std::move(alphabet);
    d->budget = budget;
    d->width = step;
    d->blocks.assign(b.begin(), b.begin() + step + 2);
    d->ld = ld;
    d->kernel_sizes.clear();
    for (int i = 1; i <= step + 1; ++i) d->kernel_sizes.push_back(follower(i));
    build_graph(*d);
    out.d_ = std::move(d);
    return out;
  }

  static GroupShift full_shift(GroupPtr alphabet, const Budget& budget = {}) {
    std::vector<word_t> window(alphabet->order());
    std::iota(window.begin(), window.end(), 0);
    return from_window(std::move(alphabet), 0, std::move(window), budget);
  }

  static GroupShift one_point(GroupPtr alphabet, const Budget& budget = {}) {
    return from_window(std::move(alphabet), 0, {FiniteGroup::identity}, budget);
  }

  bool valid() const { return d_ != nullptr; }
  const GroupPtr& alphabet() const { return d_->alphabet; }
  const Budget& budget() const { return d_->budget; }
  int width() const { return d_->width; }
  int minimal_step() const { return d_->width; }
  const std::vector<word_t>& window() const { return d_->blocks[d_->width]; }
  std::uint64_t ld() const { return d_->ld; }
  double entropy() const { return std::log(static_cast<double>(d_->ld)); }
  bool is_finite() const { return d_->ld == 1; }

  KernelChainReport kernel_chain() const {
    KernelChainReport r;
    r.sizes = d_->kernel_sizes;
    r.limit_degree = d_->ld;
    r.minimal_step = d_->width;
    r.entropy_log = entropy();
    return r;
  }

  // state graph of the width-max(width,1) presentation
  int graph_width() const { return std::max(d_->width, 1); }
  const std::vector<word_t>& states() const { return d_->blocks[graph_width() - 1]; }
  const std::vector<word_t>& edges() const { return d_->blocks[graph_width()]; }
  const std::vector<std::uint32_t>& edge_from() const { return d_->edge_from; }
  const std::vector<std::uint32_t>& edge_to() const { return d_->edge_to; }
  const std::vector<std::vector<std::uint32_t>>& out_edges() const { return d_->out_edges; }
  const std::vector<std::vector<std::uint32_t>>& in_edges() const { return d_->in_edges; }
  std::uint32_t identity_state() const { return d_->identity_state; }

  elem_t state_first_letter(std::uint32_t s) const {
    return static_cast<elem_t>(
        word_prefix(states()[s], d_->alphabet->order(), graph_width() - 1));
  }

  std::uint32_t state_index(word_t s) const {
    return static_cast<std::uint32_t>(sorted_index(states(), s));
  }

  /// Block group at length i+1: every word of that length occurring in
  /// points of the shift.
  std::vector<word_t> blocks(int i) const {
    if (i < 0) throw std::invalid_argument("block length must be >= 0");
    if (i <= d_->width + 1) return d_->blocks[i];
    std::uint64_t m = d_->alphabet->order();
    int gw = graph_width();
    std::vector<word_t> cur = d_->blocks[d_->width + 1];
    for (int len = d_->width + 2; len <= i; ++len) {
      std::vector<word_t> next;
      d_->budget.check(cur.size() * d_->ld, "block group");
      next.reserve(cur.size() * d_->ld);
      for (word_t b : cur) {
        std::uint32_t s = state_index(word_suffix(b, m, gw));
        for (std::uint32_t e : d_->out_edges[s])
          next.push_back(b * m + word_suffix(d_->blocks[gw][e], m, 1));
      }
      sort_unique(next);
      d_->budget.check(next.size(), "block group");
      cur = std::move(next);
    }
    return cur;
  }

  /// Number of points fixed by the p-th shift power: closed walks of length
  /// p in the state graph, counted exactly.
  bigint periodic_count(int p) const {
    if (p < 1) throw std::invalid_argument("period must be >= 1");
    std::size_t n = states().size();
    std::vector<bigint> a(n * n, 0);
    for (std::size_t e = 0; e < d_->edge_from.size(); ++e)
      a[d_->edge_from[e] * n + d_->edge_to[e]] += 1;
    std::vector<bigint> acc = a;
    for (int k = 1; k < p; ++k) {
      std::vector<bigint> nxt(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
          if (acc[i * n + l] == 0) continue;
          for (std::size_t j = 0; j < n; ++j)
            if (a[l * n + j] != 0) nxt[i * n + j] += acc[i * n + l] * a[l * n + j];
        }
      acc = std::move(nxt);
    }
    bigint tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += acc[i * n + i];
    return tr;
  }

  /// All points of a finite shift as (preperiod word, period word) pairs.
  std::vector<std::pair<std::vector<elem_t>, std::vector<elem_t>>> enumerate_points() const {
    if (!is_finite()) throw std::invalid_argument("enumerate on an infinite shift");
    std::vector<std::pair<std::vector<elem_t>, std::vector<elem_t>>> out;
    std::size_t n = states().size();
    for (std::uint32_t s0 = 0; s0 < n; ++s0) {
      std::vector<std::uint32_t> path;
      std::vector<std::uint32_t> seen_at(n, UINT32_MAX);
      std::uint32_t s = s0;
      while (seen_at[s] == UINT32_MAX) {
        seen_at[s] = static_cast<std::uint32_t>(path.size());
        path.push_back(s);
        s = d_->edge_to[d_->out_edges[s][0]];  // out-degree 1 when ld == 1
      }
      std::uint32_t cut = seen_at[s];
      std::vector<elem_t> pre, per;
      for (std::uint32_t j = 0; j < cut; ++j) pre.push_back(state_first_letter(path[j]));
      for (std::uint32_t j = cut; j < path.size(); ++j)
        per.push_back(state_first_letter(path[j]));
      out.emplace_back(std::move(pre), std::move(per));
    }
    return out;
  }

  std::uint64_t point_count_if_finite() const {
    if (!is_finite()) throw std::invalid_argument("point count on an infinite shift");
    return states().size();
  }

 private:
  struct Data {
    GroupPtr alphabet;
    Budget budget;
    int width = 0;
    std::vector<std::vector<word_t>> blocks;  // lengths 1..width+2
    std::vector<std::uint64_t> kernel_sizes;
    std::uint64_t ld = 1;
    std::vector<std::uint32_t> edge_from, edge_to;
    std::vector<std::vector<std::uint32_t>> out_edges, in_edges;
    std::uint32_t identity_state = 0;
  };

  static std::vector<word_t> forward_trim(std::uint64_t m, int width,
                                          std::vector<word_t> window) {
    for (;;) {
      std::set<word_t> with_out;
      for (word_t e : window) with_out.insert(word_prefix(e, m, 1));
      std::vector<word_t> kept;
      kept.reserve(window.size());
      for (word_t e : window)
        if (with_out.count(word_suffix(e, m, width))) kept.push_back(e);
      if (kept.size() == window.size()) return window;
      window = std::move(kept);
    }
  }

  static std::vector<word_t> extend_blocks(std::uint64_t m, int width,
                                           const std::vector<std::vector<word_t>>& b,
                                           const Budget& budget) {
    std::vector<word_t> out;
    if (width == 0) {
      budget.check(b[0].size() * b[0].size(), "block group");
      out.reserve(b[0].size() * b[0].size());
      for (word_t x : b[0])
        for (word_t y : b[0]) out.push_back(x * m + y);
      return out;  // already sorted: nested ascending loops
    }
    // paths of two consecutive window blocks
    const std::vector<word_t>& win = b[width];
    std::map<word_t, std::vector<word_t>> by_prefix;
    for (word_t e : win) by_prefix[word_prefix(e, m, 1)].push_back(e);
    for (word_t e : win) {
      word_t tail = word_suffix(e, m, width);
      auto it = by_prefix.find(tail);
      if (it == by_prefix.end()) continue;
      for (word_t f : it->second) out.push_back(e * m + word_suffix(f, m, 1));
    }
    sort_unique(out);
    budget.check(out.size(), "block group");
    return out;
  }

  static void build_graph(Data& d) {
    int gw = std::max(d.width, 1);
    std::uint64_t m = d.alphabet->order();
    const std::vector<word_t>& states = d.blocks[gw - 1];
    const std::vector<word_t>& edges = d.blocks[gw];
    d.edge_from.resize(edges.size());
    d.edge_to.resize(edges.size());
    d.out_edges.assign(states.size(), {});
    d.in_edges.assign(states.size(), {});
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
      std::uint32_t from = static_cast<std::uint32_t>(
          sorted_index(states, word_prefix(edges[e], m, 1)));
      std::uint32_t to = static_cast<std::uint32_t>(
          sorted_index(states, word_suffix(edges[e], m, gw)));
      d.edge_from[e] = from;
      d.edge_to[e] = to;
      d.out_edges[from].push_back(e);
      d.in_edges[to].push_back(e);
    }
    d.identity_state = static_cast<std::uint32_t>(sorted_index(states, 0));
  }

  std::shared_ptr<const Data> d_;
};

inline std::uint64_t limit_degree(const GroupShift& g) { return g.ld(); }
inline double entropy(const GroupShift& g) { return g.entropy(); }
inline int minimal_step(const GroupShift& g) { return g.minimal_step(); }
inline KernelChainReport kernel_chain(const GroupShift& g) { return g.kernel_chain(); }
inline bool is_finite(const GroupShift& g) { return g.is_finite(); }

inline std::vector<std::pair<std::vector<elem_t>, std::vector<elem_t>>> enumerate_finite(
    const GroupShift& g) {
  return g.enumerate_points();
}

/// Shifts are equal iff their block groups agree at the larger of the two
/// canonical widths; both sides are that-many-step, so this decides equality
/// of the point sets.
inline bool equals(const GroupShift& a, const GroupShift& b) {
  if (!same_group(a.alphabet(), b.alphabet()))
    throw std::invalid_argument("equals: alphabet mismatch");
  if (a.width() != b.width() || a.ld() != b.ld()) return false;
  int w = std::max(a.width(), b.width());
  return a.blocks(w) == b.blocks(w);
}

inline bool contains(const GroupShift& big, const GroupShift& small) {
  if (!same_group(big.alphabet(), small.alphabet()))
    throw std::invalid_argument("contains: alphabet mismatch");
  int w = big.width();
  auto sb = small.blocks(w);
  auto bb = big.blocks(w);
  return sorted_subset(sb, bb);
}

/// The image shift under the i-th power of the shift map. Block groups of
/// the image are suffix projections of the source block groups; the window
/// is cut off at the first length whose follower-kernel ratio reaches the
/// limit degree, which is preserved because the kernel of a shift power is
/// finite.
inline GroupShift sigma_image(const GroupShift& g, int i) {
  if (i < 0) throw std::invalid_argument("sigma power must be >= 0");
  if (i == 0) return g;
  std::uint64_t m = g.alphabet()->order();
  std::uint64_t ld = g.ld();
  std::uint64_t prev = 1;
  std::vector<word_t> cur;
  for (int len = 0; len <= g.width() + 1; ++len) {
    cur.clear();
    for (word_t b : g.blocks(len + i)) cur.push_back(word_suffix(b, m, len + 1));
    sort_unique(cur);
    if (cur.size() == prev * ld) return GroupShift::from_window(g.alphabet(), len, cur, g.budget());
    prev = cur.size();
  }
  throw std::logic_error("sigma image failed to stabilize within the source width");
}

/// Points whose tail from position l onward is the identity: the kernel of
/// the l-th shift power, as a window presentation. Always a finite shift.
inline GroupShift ker_sigma_power(const GroupShift& g, int l) {
  if (l < 0) throw std::invalid_argument("sigma power must be >= 0");
  std::uint64_t m = g.alphabet()->order();
  if (l == 0) return GroupShift::one_point(g.alphabet(), g.budget());
  int gw = g.graph_width();
  // walk backwards from the identity state, collecting emitted prefixes
  std::set<std::pair<std::uint32_t, std::vector<elem_t>>> layer{
      {g.identity_state(), {}}};
  for (int step = 0; step < l; ++step) {
    std::set<std::pair<std::uint32_t, std::vector<elem_t>>> next;
    for (const auto& [t, u] : layer) {
      for (std::uint32_t e : g.in_edges()[t]) {
        std::uint32_t s = g.edge_from()[e];
        std::vector<elem_t> v;
        v.reserve(u.size() + 1);
        v.push_back(g.state_first_letter(s));
        v.insert(v.end(), u.begin(), u.end());
        next.insert({s, std::move(v)});
      }
    }
    layer = std::move(next);
    g.budget().check(layer.size(), "sigma kernel enumeration");
  }
  int wk = std::max(g.width(), l);
  std::vector<word_t> window;
  for (const auto& [s, u] : layer) {
    // all blocks of the point (u, 1, 1, ...)
    std::vector<elem_t> point(u);
    point.resize(u.size() + wk + 1, FiniteGroup::identity);
    for (int pos = 0; pos <= l; ++pos) {
      word_t b = 0;
      for (int j = 0; j <= wk; ++j) b = b * m + point[pos + j];
      window.push_back(b);
    }
  }
  window.push_back(0);
  sort_unique(window);
  return GroupShift::from_window(g.alphabet(), wk, window, g.budget());
}

/// {x in ambient : sigma^r(x) in sub}. sub must be a subshift of ambient.
inline GroupShift sigma_preimage(const GroupShift& sub, const GroupShift& ambient, int r) {
  if (r < 0) throw std::invalid_argument("sigma power must be >= 0");
  if (!contains(ambient, sub))
    throw std::invalid_argument("sigma_preimage: sub is not contained in ambient");
  std::uint64_t m = ambient.alphabet()->order();
  int w = std::max(ambient.width(), r + sub.width());
  const auto subwin = sub.window();
  std::vector<word_t> window;
  for (word_t b : ambient.blocks(w)) {
    bool ok = true;
    for (int j = 0; ok && j + r + sub.width() <= w; ++j)
      if (!sorted_contains(subwin, subword(b, m, w + 1, j + r, sub.width() + 1))) ok = false;
    if (ok) window.push_back(b);
  }
  return GroupShift::from_window(ambient.alphabet(), w, std::move(window), ambient.budget());
}

}  // namespace gshift
