#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_set>

#include "gshift/common.hpp"

namespace gshift {

/// A finite group given by index tables. Elements are dense indices
/// 0..order-1 and the identity is pinned to index 0, which keeps coset and
/// block bookkeeping downstream deterministic.
class FiniteGroup {
 public:
  static constexpr elem_t identity = 0;

  /// Builds a group from a full Cayley table. Row g, column h holds g*h.
  /// Checks identity placement, inverses and associativity.
  static FiniteGroup from_table(std::vector<std::vector<elem_t>> table,
                                std::vector<std::string> labels = {}) {
    FiniteGroup g;
    g.order_ = static_cast<std::uint32_t>(table.size());
    if (g.order_ == 0) throw std::invalid_argument("group must be non-empty");
    g.mul_.resize(std::size_t{g.order_} * g.order_);
    for (elem_t a = 0; a < g.order_; ++a) {
      if (table[a].size() != g.order_) throw std::invalid_argument("ragged Cayley table");
      for (elem_t b = 0; b < g.order_; ++b) {
        if (table[a][b] >= g.order_) throw std::invalid_argument("Cayley entry out of range");
        g.mul_[std::size_t{a} * g.order_ + b] = table[a][b];
      }
    }
    g.finish(std::move(labels), /*validate=*/g.order_ <= 256);
    return g;
  }

  /// Builds the group generated by permutations, each given as an image
  /// vector on 0..degree-1. The element list is the closure, sorted so that
  /// the identity lands at index 0; labels default to cycle notation.
  static FiniteGroup from_permutations(const std::vector<std::vector<elem_t>>& gens,
                                       std::vector<std::string> labels = {},
                                       const Budget& budget = {}) {
    std::size_t degree = gens.empty() ? 1 : gens[0].size();
    for (const auto& p : gens) {
      if (p.size() != degree) throw std::invalid_argument("permutation degree mismatch");
      std::vector<bool> seen(degree, false);
      for (elem_t v : p) {
        if (v >= degree || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = true;
      }
    }
    std::vector<elem_t> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<elem_t>> elems{id};
    std::vector<std::vector<elem_t>> queue{id};
    while (!queue.empty()) {
      auto p = std::move(queue.back());
      queue.pop_back();
      for (const auto& q : gens) {
        std::vector<elem_t> pq(degree);
        for (std::size_t i = 0; i < degree; ++i) pq[i] = q[p[i]];  // apply p, then q
        if (elems.insert(pq).second) {
          budget.check(elems.size(), "permutation closure");
          queue.push_back(std::move(pq));
        }
      }
    }
    std::vector<std::vector<elem_t>> sorted(elems.begin(), elems.end());
    // the identity is lexicographically least, so it sorts to index 0
    std::map<std::vector<elem_t>, elem_t> index;
    for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<elem_t>(i);

    FiniteGroup g;
    g.order_ = static_cast<std::uint32_t>(sorted.size());
    g.mul_.resize(std::size_t{g.order_} * g.order_);
    for (elem_t a = 0; a < g.order_; ++a)
      for (elem_t b = 0; b < g.order_; ++b) {
        std::vector<elem_t> ab(degree);
        for (std::size_t i = 0; i < degree; ++i) ab[i] = sorted[b][sorted[a][i]];
        g.mul_[std::size_t{a} * g.order_ + b] = index.at(ab);
      }
    if (labels.empty()) {
      labels.reserve(g.order_);
      for (elem_t i = 0; i < g.order_; ++i) labels.push_back(cycle_notation(sorted[i]));
    }
    g.finish(std::move(labels), /*validate=*/false);
    return g;
  }

  /// Cyclic group of order n with additive labels "0".."n-1".
  static FiniteGroup cyclic(std::uint32_t n) {
    std::vector<std::vector<elem_t>> table(n, std::vector<elem_t>(n));
    std::vector<std::string> labels(n);
    for (elem_t a = 0; a < n; ++a) {
      labels[a] = std::to_string(a);
      for (elem_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    }
    return from_table(std::move(table), std::move(labels));
  }

  std::uint32_t order() const { return order_; }
  elem_t mul(elem_t a, elem_t b) const { return mul_[std::size_t{a} * order_ + b]; }
  elem_t inv(elem_t a) const { return inv_[a]; }
  const std::string& label(elem_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  elem_t conjugate(elem_t g, elem_t x) const { return mul(mul(g, x), inv(g)); }

  std::uint32_t element_order(elem_t a) const {
    std::uint32_t n = 1;
    elem_t x = a;
    while (x != identity) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  bool is_abelian() const {
    for (elem_t a = 0; a < order_; ++a)
      for (elem_t b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool same_table(const FiniteGroup& other) const {
    return order_ == other.order_ && mul_ == other.mul_;
  }

  static std::string cycle_notation(const std::vector<elem_t>& perm) {
    std::string out;
    std::vector<bool> done(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (done[i] || perm[i] == i) continue;
      out += '(';
      std::size_t j = i;
      bool first = true;
      while (!done[j]) {
        if (!first) out += ' ';
        out += std::to_string(j);
        done[j] = true;
        first = false;
        j = perm[j];
      }
      out += ')';
    }
    return out.empty() ? "e" : out;
  }

 private:
  void finish(std::vector<std::string> labels, bool validate) {
    inv_.assign(order_, 0);
    for (elem_t a = 0; a < order_; ++a) {
      if (mul(identity, a) != a || mul(a, identity) != a)
        throw std::invalid_argument("index 0 is not an identity");
      bool found = false;
      for (elem_t b = 0; b < order_; ++b)
        if (mul(a, b) == identity && mul(b, a) == identity) {
          inv_[a] = b;
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("element without inverse");
    }
    if (validate) {
      for (elem_t a = 0; a < order_; ++a)
        for (elem_t b = 0; b < order_; ++b)
          for (elem_t c = 0; c < order_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw std::invalid_argument("Cayley table is not associative");
    }
    if (labels.empty()) {
      labels.resize(order_);
      for (elem_t a = 0; a < order_; ++a) labels[a] = std::to_string(a);
    }
    if (labels.size() != order_) throw std::invalid_argument("label count mismatch");
    labels_ = std::move(labels);
  }

  std::uint32_t order_ = 0;
  std::vector<elem_t> mul_;
  std::vector<elem_t> inv_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_group(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || a->same_table(*b);
}

/// The direct power Γ^len as a view: elements are mixed-radix encoded words
/// (big-endian, so lexicographic tuple order is numeric order) and
/// multiplication is componentwise. No table is materialized.
class PowerGroup {
 public:
  using element = word_t;

  PowerGroup(GroupPtr base, int len) : base_(std::move(base)), len_(len) {
    if (len_ < 1) throw std::invalid_argument("power length must be >= 1");
    auto n = checked_pow(base_->order(), static_cast<unsigned>(len_));
    if (!n)
      throw BudgetError("direct power encoding", ~std::uint64_t{0}, std::uint64_t{1} << 62);
    order_ = *n;
  }

  const GroupPtr& base() const { return base_; }
  int length() const { return len_; }
  std::uint64_t order() const { return order_; }

  word_t mul(word_t a, word_t b) const {
    std::uint64_t m = base_->order();
    word_t out = 0;
    word_t place = order_ / m;
    for (int i = 0; i < len_; ++i) {
      elem_t xa = static_cast<elem_t>(a / place);
      elem_t xb = static_cast<elem_t>(b / place);
      a %= place;
      b %= place;
      out = out * m + base_->mul(xa, xb);
      place = (place == 1) ? 1 : place / m;
    }
    return out;
  }

  word_t inv(word_t a) const {
    std::uint64_t m = base_->order();
    word_t out = 0;
    word_t place = order_ / m;
    for (int i = 0; i < len_; ++i) {
      out = out * m + base_->inv(static_cast<elem_t>(a / place));
      a %= place;
      place = (place == 1) ? 1 : place / m;
    }
    return out;
  }

  elem_t letter(word_t w, int i) const {
    std::uint64_t m = base_->order();
    word_t place = 1;
    for (int j = 0; j < len_ - 1 - i; ++j) place *= m;
    return static_cast<elem_t>((w / place) % m);
  }

  word_t encode(std::span<const elem_t> letters) const {
    word_t out = 0;
    for (elem_t x : letters) out = out * base_->order() + x;
    return out;
  }

  std::vector<elem_t> decode(word_t w) const {
    std::vector<elem_t> out(len_);
    std::uint64_t m = base_->order();
    for (int i = len_ - 1; i >= 0; --i) {
      out[i] = static_cast<elem_t>(w % m);
      w /= m;
    }
    return out;
  }

  std::string label(word_t w) const {
    std::string out = "(";
    for (int i = 0; i < len_; ++i) {
      if (i) out += ",";
      out += base_->label(letter(w, i));
    }
    return out + ")";
  }

 private:
  GroupPtr base_;
  int len_;
  std::uint64_t order_;
};

/// Drops the last `drop` letters of an encoded word.
inline word_t word_prefix(word_t w, std::uint64_t alphabet, int drop) {
  for (int i = 0; i < drop; ++i) w /= alphabet;
  return w;
}

/// Keeps the last `keep` letters of an encoded word.
inline word_t word_suffix(word_t w, std::uint64_t alphabet, int keep) {
  word_t p = 1;
  for (int i = 0; i < keep; ++i) p *= alphabet;
  return w % p;
}

// ---------------------------------------------------------------------------
// generic subgroup machinery, shared by table groups and power views
// ---------------------------------------------------------------------------

struct TableView {
  using element = elem_t;
  const FiniteGroup* g;
  elem_t mul(elem_t a, elem_t b) const { return g->mul(a, b); }
  elem_t inv(elem_t a) const { return g->inv(a); }
};

/// Closure of a generating set; identity (element 0) is always included.
template <class G>
std::vector<typename G::element> closure_set(const G& g,
                                             std::span<const typename G::element> gens,
                                             const Budget& budget = {}) {
  using E = typename G::element;
  std::unordered_set<std::uint64_t> seen{0};
  std::vector<E> elems{E{0}};
  std::vector<E> frontier{E{0}};
  std::vector<E> step(gens.begin(), gens.end());
  for (const E& x : gens) step.push_back(g.inv(x));
  while (!frontier.empty()) {
    E x = frontier.back();
    frontier.pop_back();
    for (const E& s : step) {
      E y = g.mul(x, s);
      if (seen.insert(static_cast<std::uint64_t>(y)).second) {
        budget.check(seen.size(), "subgroup closure");
        elems.push_back(y);
        frontier.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

/// Whether a sorted element list contains 0 and is closed under mul and inv.
/// Checked by growing a greedy generating subset and comparing closures, so
/// the cost stays near-linear in the set size.
template <class G>
bool is_subgroup_set(const G& g, std::span<const typename G::element> elems) {
  if (elems.empty() || elems[0] != 0) return false;
  using E = typename G::element;
  Budget bounded{elems.size()};
  std::vector<E> gens;
  std::vector<E> cur{E{0}};
  try {
    while (cur.size() < elems.size()) {
      bool grew = false;
      for (auto x : elems)
        if (!std::binary_search(cur.begin(), cur.end(), x)) {
          gens.push_back(x);
          grew = true;
          break;
        }
      if (!grew) break;
      cur = closure_set(g, std::span<const E>(gens), bounded);
      if (!std::includes(elems.begin(), elems.end(), cur.begin(), cur.end())) return false;
    }
  } catch (const BudgetError&) {
    return false;  // closure left the candidate set
  }
  return cur.size() == elems.size();
}

/// g·n·g^-1 ⊆ n for every g in the ambient list.
template <class G>
bool normalizes(const G& g, std::span<const typename G::element> ambient,
                std::span<const typename G::element> n) {
  for (auto a : ambient)
    for (auto x : n)
      if (!std::binary_search(n.begin(), n.end(), g.mul(g.mul(a, x), g.inv(a)))) return false;
  return true;
}

/// Smallest subgroup containing gens that is normalized by the ambient set.
template <class G>
std::vector<typename G::element> normal_closure_in(const G& g,
                                                   std::span<const typename G::element> ambient,
                                                   std::span<const typename G::element> gens,
                                                   const Budget& budget = {}) {
  using E = typename G::element;
  std::vector<E> conj;
  conj.reserve(gens.size() * ambient.size());
  for (auto x : gens)
    for (auto a : ambient) conj.push_back(g.mul(g.mul(a, x), g.inv(a)));
  std::vector<E> sub = closure_set(g, std::span<const E>(conj), budget);
  while (!normalizes(g, ambient, std::span<const E>(sub))) {
    std::vector<E> more = sub;
    for (auto x : sub)
      for (auto a : ambient) more.push_back(g.mul(g.mul(a, x), g.inv(a)));
    sub = closure_set(g, std::span<const E>(more), budget);
  }
  return sub;
}

/// Product set A·B; a subgroup whenever one side normalizes the other.
template <class G>
std::vector<typename G::element> product_set(const G& g,
                                             std::span<const typename G::element> a,
                                             std::span<const typename G::element> b,
                                             const Budget& budget = {}) {
  using E = typename G::element;
  budget.check(static_cast<std::uint64_t>(a.size()) * b.size(), "subgroup product");
  std::vector<E> out;
  out.reserve(a.size() * b.size());
  for (auto x : a)
    for (auto y : b) out.push_back(g.mul(x, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Coset decomposition of an element list modulo a normal subgroup, as a
/// table group. Cosets carry their minimal element as representative and are
/// ordered by it, so the identity coset sits at index 0.
template <class G>
struct QuotientResult {
  FiniteGroup group;
  std::vector<typename G::element> reps;           // per coset, minimal element
  std::map<typename G::element, elem_t> coset_of;  // input element -> coset index
};

template <class G>
QuotientResult<G> quotient_by(const G& g, std::span<const typename G::element> elems,
                              std::span<const typename G::element> normal) {
  using E = typename G::element;
  QuotientResult<G> out;
  std::map<E, elem_t> assigned;
  std::vector<E> reps;
  for (auto x : elems) {
    if (assigned.count(x)) continue;
    E rep = x;
    std::vector<E> coset;
    coset.reserve(normal.size());
    for (auto n : normal) {
      E y = g.mul(x, n);
      coset.push_back(y);
      rep = std::min(rep, y);
    }
    elem_t idx = static_cast<elem_t>(reps.size());
    reps.push_back(rep);
    for (auto y : coset) assigned[y] = idx;
  }
  std::vector<std::size_t> perm(reps.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t i, std::size_t j) { return reps[i] < reps[j]; });
  std::vector<elem_t> rank(reps.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = static_cast<elem_t>(i);
  std::vector<E> ordered(reps.size());
  for (std::size_t i = 0; i < perm.size(); ++i) ordered[i] = reps[perm[i]];
  for (auto& [x, idx] : assigned) idx = rank[idx];

  std::size_t q = ordered.size();
  std::vector<std::vector<elem_t>> table(q, std::vector<elem_t>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i][j] = assigned.at(g.mul(ordered[i], ordered[j]));
  std::vector<std::string> labels(q);
  for (std::size_t i = 0; i < q; ++i) {
    if constexpr (std::is_same_v<G, PowerGroup>)
      labels[i] = g.label(ordered[i]);
    else
      labels[i] = g.g->label(static_cast<elem_t>(ordered[i]));
  }
  out.group = FiniteGroup::from_table(std::move(table), std::move(labels));
  out.reps = std::move(ordered);
  out.coset_of = std::move(assigned);
  return out;
}

// ---------------------------------------------------------------------------
// table-group level operations
// ---------------------------------------------------------------------------

/// A subgroup of a FiniteGroup: generators plus the full sorted element list.
struct Subgroup {
  GroupPtr parent;
  std::vector<elem_t> generators;
  std::vector<elem_t> elements;  // sorted, contains 0

  std::size_t order() const { return elements.size(); }
  bool contains(elem_t x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

inline bool subset_of(const std::vector<elem_t>& small, const std::vector<elem_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Subgroup closure(GroupPtr parent, std::vector<elem_t> generators,
                        const Budget& budget = {}) {
  for (elem_t x : generators)
    if (x >= parent->order()) throw std::invalid_argument("generator index out of range");
  TableView v{parent.get()};
  auto elems = closure_set(v, std::span<const elem_t>(generators), budget);
  return Subgroup{std::move(parent), std::move(generators), std::move(elems)};
}

inline Subgroup whole(GroupPtr parent) {
  std::vector<elem_t> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{std::move(parent), all, all};
}

inline Subgroup trivial_subgroup(GroupPtr parent) {
  return Subgroup{std::move(parent), {}, {FiniteGroup::identity}};
}

/// Componentwise direct power as a materialized table group, tuple labels.
inline FiniteGroup direct_power(const GroupPtr& g, int k, const Budget& budget = {}) {
  if (k < 1) throw std::invalid_argument("direct power exponent must be >= 1");
  auto n = checked_pow(g->order(), static_cast<unsigned>(k));
  if (!n) throw BudgetError("direct power", ~std::uint64_t{0}, budget.max_elements);
  budget.check(*n, "direct power");
  if (*n > 3000) throw BudgetError("direct power Cayley table", *n * *n, budget.max_elements);
  PowerGroup pw(g, k);
  std::uint32_t order = static_cast<std::uint32_t>(*n);
  std::vector<std::vector<elem_t>> table(order, std::vector<elem_t>(order));
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b)
      table[a][b] = static_cast<elem_t>(pw.mul(a, b));
  std::vector<std::string> labels(order);
  for (std::uint32_t a = 0; a < order; ++a) labels[a] = pw.label(a);
  return FiniteGroup::from_table(std::move(table), std::move(labels));
}

inline bool is_normal(const Subgroup& n, const Subgroup& in) {
  if (!subset_of(n.elements, in.elements))
    throw std::invalid_argument("is_normal: containment violated");
  TableView v{in.parent.get()};
  return normalizes(v, std::span<const elem_t>(in.elements),
                    std::span<const elem_t>(n.elements));
}

/// A homomorphism between table groups, stored as a per-element image table.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<elem_t> image;

  elem_t operator()(elem_t x) const { return image[x]; }

  bool valid() const {
    if (image.size() != source->order()) return false;
    if (image[FiniteGroup::identity] != FiniteGroup::identity) return false;
    for (elem_t a = 0; a < source->order(); ++a)
      for (elem_t b = 0; b < source->order(); ++b)
        if (image[source->mul(a, b)] != target->mul(image[a], image[b])) return false;
    return true;
  }

  bool is_bijective() const {
    if (source->order() != target->order()) return false;
    std::vector<bool> hit(target->order(), false);
    for (elem_t x : image) {
      if (hit[x]) return false;
      hit[x] = true;
    }
    return true;
  }

  /// Multiset of cycle lengths; only meaningful for bijective endomorphisms.
  std::vector<std::uint32_t> cycle_type() const {
    std::vector<std::uint32_t> out;
    std::vector<bool> done(image.size(), false);
    for (elem_t i = 0; i < image.size(); ++i) {
      if (done[i]) continue;
      std::uint32_t len = 0;
      elem_t j = i;
      while (!done[j]) {
        done[j] = true;
        j = image[j];
        ++len;
      }
      out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline GroupHom identity_hom(const GroupPtr& g) {
  std::vector<elem_t> img(g->order());
  std::iota(img.begin(), img.end(), 0);
  return GroupHom{g, g, std::move(img)};
}

/// Coset group with canonical minimal-element representatives plus the
/// projection homomorphism.
inline std::pair<GroupPtr, GroupHom> quotient_group(const GroupPtr& g, const Subgroup& n) {
  Subgroup all = whole(g);
  if (!is_normal(n, all)) throw std::invalid_argument("quotient by non-normal subgroup");
  TableView v{g.get()};
  std::vector<elem_t> elems(g->order());
  std::iota(elems.begin(), elems.end(), 0);
  auto q = quotient_by(v, std::span<const elem_t>(elems), std::span<const elem_t>(n.elements));
  GroupPtr qp = make_group(std::move(q.group));
  std::vector<elem_t> img(g->order());
  for (elem_t x = 0; x < g->order(); ++x) img[x] = q.coset_of.at(x);
  return {qp, GroupHom{g, qp, std::move(img)}};
}

/// Normal closure of a single element within the whole group.
inline std::vector<elem_t> normal_closure(const GroupPtr& g, elem_t x,
                                          const Budget& budget = {}) {
  TableView v{g.get()};
  std::vector<elem_t> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  std::vector<elem_t> gen{x};
  return normal_closure_in(v, std::span<const elem_t>(all), std::span<const elem_t>(gen),
                           budget);
}

/// True iff the normal closure of every non-identity element is everything.
inline bool is_simple(const FiniteGroup& g, const Budget& budget = {}) {
  if (g.order() < 2) throw std::invalid_argument("is_simple: trivial group rejected");
  GroupPtr p = make_group(g);
  for (elem_t x = 1; x < g.order(); ++x)
    if (normal_closure(p, x, budget).size() != g.order()) return false;
  return true;
}

namespace detail {
/// All joins of the given normal closures, by fixpoint iteration.
inline std::set<std::vector<elem_t>> join_lattice(const FiniteGroup& g,
                                                  const std::vector<std::vector<elem_t>>& closures,
                                                  std::size_t order_cap,
                                                  const Budget& budget) {
  TableView v{&g};
  std::set<std::vector<elem_t>> found{{FiniteGroup::identity}};
  std::vector<std::vector<elem_t>> frontier{{FiniteGroup::identity}};
  while (!frontier.empty()) {
    auto cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& c : closures) {
      std::vector<elem_t> gens = cur;
      gens.insert(gens.end(), c.begin(), c.end());
      auto join = closure_set(v, std::span<const elem_t>(gens), budget);
      if (join.size() <= order_cap && found.insert(join).second)
        frontier.push_back(std::move(join));
    }
  }
  return found;
}
}  // namespace detail

/// All normal subgroups, computed as joins of normal closures of elements.
/// Sorted by order, then by element list.
inline std::vector<Subgroup> normal_subgroups(const GroupPtr& g, const Budget& budget = {}) {
  std::vector<std::vector<elem_t>> closures;
  for (elem_t x = 1; x < g->order(); ++x) closures.push_back(normal_closure(g, x, budget));
  std::sort(closures.begin(), closures.end());
  closures.erase(std::unique(closures.begin(), closures.end()), closures.end());
  auto found = detail::join_lattice(*g, closures, g->order(), budget);
  std::vector<Subgroup> out;
  for (const auto& e : found) out.push_back(Subgroup{g, e, e});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

/// Maximal-normal descent G = G1 > G2 > ... > {1} with simple factors.
/// Each step picks the smallest-order maximal normal subgroup of the current
/// term, ties broken by lexicographic element list, so runs are reproducible.
/// largest_first reverses the selection order; Jordan-Hoelder keeps the
/// factor multiset the same either way.
inline std::vector<Subgroup> composition_series(const GroupPtr& g, const Budget& budget = {},
                                                bool largest_first = false) {
  std::vector<Subgroup> series{whole(g)};
  TableView v{g.get()};
  while (series.back().order() > 1) {
    const Subgroup& cur = series.back();
    std::vector<std::vector<elem_t>> closures;
    for (elem_t x : cur.elements) {
      if (x == FiniteGroup::identity) continue;
      std::vector<elem_t> gen{x};
      closures.push_back(normal_closure_in(v, std::span<const elem_t>(cur.elements),
                                           std::span<const elem_t>(gen), budget));
    }
    std::sort(closures.begin(), closures.end());
    closures.erase(std::unique(closures.begin(), closures.end()), closures.end());
    auto all = detail::join_lattice(*g, closures, cur.order() - 1, budget);
    std::vector<const std::vector<elem_t>*> maximal;
    for (const auto& a : all) {
      bool is_max = true;
      for (const auto& b : all)
        if (&a != &b && a.size() < b.size() &&
            std::includes(b.begin(), b.end(), a.begin(), a.end())) {
          is_max = false;
          break;
        }
      if (is_max) maximal.push_back(&a);
    }
    const std::vector<elem_t>* pick = maximal.front();
    for (const auto* m : maximal) {
      bool better = largest_first
                        ? (m->size() > pick->size() ||
                           (m->size() == pick->size() && *m > *pick))
                        : (m->size() < pick->size() ||
                           (m->size() == pick->size() && *m < *pick));
      if (better) pick = m;
    }
    series.push_back(Subgroup{g, *pick, *pick});
  }
  return series;
}

/// Every subgroup, by closure extension; desk-scale only.
inline std::vector<std::vector<elem_t>> all_subgroups(const GroupPtr& g,
                                                      const Budget& budget = {}) {
  TableView v{g.get()};
  std::set<std::vector<elem_t>> found{{FiniteGroup::identity}};
  std::vector<std::vector<elem_t>> frontier{{FiniteGroup::identity}};
  while (!frontier.empty()) {
    auto cur = std::move(frontier.back());
    frontier.pop_back();
    for (elem_t x = 1; x < g->order(); ++x) {
      if (std::binary_search(cur.begin(), cur.end(), x)) continue;
      std::vector<elem_t> gens = cur;
      gens.push_back(x);
      auto ext = closure_set(v, std::span<const elem_t>(gens), budget);
      if (found.insert(ext).second) frontier.push_back(std::move(ext));
    }
  }
  return {found.begin(), found.end()};
}

/// Materializes a sorted element set as a standalone group; element i of the
/// result is elements[i] of the parent, so the identity stays at index 0.
inline FiniteGroup subgroup_as_group(const FiniteGroup& parent,
                                     const std::vector<elem_t>& elements) {
  std::size_t n = elements.size();
  std::vector<std::vector<elem_t>> table(n, std::vector<elem_t>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = parent.label(elements[i]);
    for (std::size_t j = 0; j < n; ++j) {
      elem_t prod = parent.mul(elements[i], elements[j]);
      auto it = std::lower_bound(elements.begin(), elements.end(), prod);
      if (it == elements.end() || *it != prod)
        throw std::invalid_argument("subgroup_as_group: set not closed");
      table[i][j] = static_cast<elem_t>(it - elements.begin());
    }
  }
  return FiniteGroup::from_table(std::move(table), std::move(labels));
}

// ---------------------------------------------------------------------------
// desk-scale isomorphism testing
// ---------------------------------------------------------------------------

/// Multiset of element orders; an isomorphism invariant, and a complete one
/// for finite abelian groups.
inline std::vector<std::uint32_t> order_profile(const FiniteGroup& g) {
  std::vector<std::uint32_t> out;
  out.reserve(g.order());
  for (elem_t x = 0; x < g.order(); ++x) out.push_back(g.element_order(x));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {
inline bool extend_iso(const FiniteGroup& a, const FiniteGroup& b,
                       std::vector<elem_t>& gen_map, std::vector<bool>& used,
                       const std::vector<elem_t>& gens, std::size_t gi) {
  if (gi == gens.size()) {
    std::vector<elem_t> full(a.order(), a.order());
    full[0] = 0;
    std::vector<elem_t> frontier{0};
    std::size_t reached = 1;
    while (!frontier.empty()) {
      elem_t x = frontier.back();
      frontier.pop_back();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        elem_t xs = a.mul(x, gens[k]);
        elem_t img = b.mul(full[x], gen_map[k]);
        if (full[xs] == a.order()) {
          full[xs] = img;
          ++reached;
          frontier.push_back(xs);
        } else if (full[xs] != img) {
          return false;
        }
      }
    }
    if (reached != a.order()) return false;
    std::vector<bool> hit(b.order(), false);
    for (elem_t x = 0; x < a.order(); ++x) {
      if (hit[full[x]]) return false;
      hit[full[x]] = true;
    }
    for (elem_t x = 0; x < a.order(); ++x)
      for (elem_t y = 0; y < a.order(); ++y)
        if (full[a.mul(x, y)] != b.mul(full[x], full[y])) return false;
    return true;
  }
  std::uint32_t od = a.element_order(gens[gi]);
  for (elem_t cand = 0; cand < b.order(); ++cand) {
    if (used[cand] || b.element_order(cand) != od) continue;
    gen_map[gi] = cand;
    used[cand] = true;
    bool ok = extend_iso(a, b, gen_map, used, gens, gi + 1);
    used[cand] = false;
    if (ok) return true;
  }
  return false;
}
}  // namespace detail

/// Isomorphism test: order, then abelian order-profile, then exhaustive
/// search over generator images. Intended for desk-scale groups.
inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (a.is_abelian() != b.is_abelian()) return false;
  if (order_profile(a) != order_profile(b)) return false;
  if (a.is_abelian()) return true;  // the order profile decides abelian groups
  GroupPtr ap = make_group(a);
  TableView v{ap.get()};
  std::vector<elem_t> gens;
  std::vector<elem_t> cur{0};
  while (cur.size() < a.order()) {
    for (elem_t x = 1; x < a.order(); ++x)
      if (!std::binary_search(cur.begin(), cur.end(), x)) {
        gens.push_back(x);
        break;
      }
    cur = closure_set(v, std::span<const elem_t>(gens));
  }
  std::vector<elem_t> gen_map(gens.size(), 0);
  std::vector<bool> used(b.order(), false);
  used[0] = true;
  return detail::extend_iso(a, b, gen_map, used, gens, 0);
}

/// Short display tag for the simple groups this library meets in practice.
inline std::string simple_group_tag(const FiniteGroup& g) {
  if (g.is_abelian()) return "C" + std::to_string(g.order());
  if (g.order() == 60) return "A5";
  if (g.order() == 168) return "PSL(2,7)";
  return "simple" + std::to_string(g.order());
}

}  // namespace gshift
