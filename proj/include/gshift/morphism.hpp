#pragma once

#include "gshift/shift.hpp"

namespace gshift {

/// Greedy small generating set of a sorted subgroup element list.
template <class G>
std::vector<typename G::element> small_generating_set(
    const G& g, std::span<const typename G::element> elems) {
  using E = typename G::element;
  std::vector<E> gens;
  std::vector<E> cur{E{0}};
  while (cur.size() < elems.size()) {
    for (auto x : elems)
      if (!std::binary_search(cur.begin(), cur.end(), x)) {
        gens.push_back(x);
        break;
      }
    cur = closure_set(g, std::span<const E>(gens));
  }
  return gens;
}

/// A morphism of group shifts in sliding form: anticipation k plus a group
/// homomorphism from the source k-block group into the target alphabet. The
/// induced map sends x to (rule(x_i..x_{i+k}))_i; shift equivariance is
/// built into the shape.
class SlidingBlockCode {
 public:
  SlidingBlockCode() = default;

  /// rule_images[i] is the image of source.blocks(k)[i] in target's alphabet.
  /// Validates the homomorphism property, that the induced map lands in
  /// target, and normalizes the anticipation by dropping unused trailing
  /// coordinates.
  static SlidingBlockCode make(GroupShift source, GroupShift target, int k,
                               std::vector<elem_t> rule_images) {
    if (k < 0) throw std::invalid_argument("anticipation must be >= 0");
    SlidingBlockCode c;
    c.source_ = std::move(source);
    c.target_ = std::move(target);
    c.k_ = k;
    c.domain_ = c.source_.blocks(k);
    if (rule_images.size() != c.domain_.size())
      throw std::invalid_argument("rule image count does not match the block group");
    c.images_ = std::move(rule_images);
    for (elem_t x : c.images_)
      if (x >= c.target_.alphabet()->order())
        throw std::invalid_argument("rule image out of the target alphabet");
    c.minimize_anticipation();
    c.validate();
    return c;
  }

  const GroupShift& source() const { return source_; }
  const GroupShift& target() const { return target_; }
  int anticipation() const { return k_; }
  const std::vector<word_t>& domain() const { return domain_; }
  const std::vector<elem_t>& images() const { return images_; }

  elem_t rule(word_t block) const {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), block);
    if (it == domain_.end() || *it != block)
      throw std::invalid_argument("block outside the rule domain");
    return images_[static_cast<std::size_t>(it - domain_.begin())];
  }

  /// Image of a word of length >= k+1; the result is k letters shorter.
  std::vector<elem_t> apply(std::span<const elem_t> word) const {
    if (word.size() < static_cast<std::size_t>(k_) + 1)
      throw std::invalid_argument("word shorter than the anticipation window");
    std::uint64_t m = source_.alphabet()->order();
    std::vector<elem_t> out;
    out.reserve(word.size() - k_);
    for (std::size_t i = 0; i + k_ < word.size(); ++i) {
      word_t b = 0;
      for (int j = 0; j <= k_; ++j) b = b * m + word[i + j];
      out.push_back(rule(b));
    }
    return out;
  }

  /// Image of an encoded source block of length len >= k+1, re-encoded over
  /// the target alphabet (length len-k).
  word_t apply_encoded(word_t block, int len) const {
    std::uint64_t ms = source_.alphabet()->order();
    std::uint64_t mt = target_.alphabet()->order();
    word_t out = 0;
    for (int i = 0; i + k_ < len; ++i)
      out = out * mt + rule(subword(block, ms, len, i, k_ + 1));
    return out;
  }

  /// Same code on a subshift of the source.
  SlidingBlockCode restricted_to(const GroupShift& sub) const {
    if (!contains(source_, sub))
      throw std::invalid_argument("restriction target is not a subshift of the source");
    std::vector<word_t> dom = sub.blocks(k_);
    std::vector<elem_t> img;
    img.reserve(dom.size());
    for (word_t b : dom) img.push_back(rule(b));
    return make(sub, target_, k_, std::move(img));
  }

  /// A copy with the stated target; the image blocks must fit inside it.
  SlidingBlockCode with_target(const GroupShift& target) const {
    return make(source_, target, k_, images_);
  }

 private:
  void minimize_anticipation() {
    std::uint64_t m = source_.alphabet()->order();
    while (k_ > 0) {
      std::map<word_t, elem_t> by_prefix;
      bool drop = true;
      for (std::size_t i = 0; i < domain_.size() && drop; ++i) {
        word_t p = word_prefix(domain_[i], m, 1);
        auto [it, fresh] = by_prefix.insert({p, images_[i]});
        if (!fresh && it->second != images_[i]) drop = false;
      }
      if (!drop) break;
      --k_;
      domain_ = source_.blocks(k_);
      std::vector<elem_t> img(domain_.size());
      for (const auto& [p, v] : by_prefix) img[sorted_index(domain_, p)] = v;
      images_ = std::move(img);
    }
  }

  void validate() const {
    PowerGroup pw(source_.alphabet(), k_ + 1);
    if (images_[sorted_index(domain_, 0)] != FiniteGroup::identity)
      throw std::invalid_argument("rule does not fix the identity");
    auto gens = small_generating_set(pw, std::span<const word_t>(domain_));
    const FiniteGroup& t = *target_.alphabet();
    for (word_t a : domain_) {
      elem_t fa = images_[sorted_index(domain_, a)];
      for (word_t b : gens) {
        elem_t fb = images_[sorted_index(domain_, b)];
        word_t ab = pw.mul(a, b);
        if (images_[sorted_index(domain_, ab)] != t.mul(fa, fb))
          throw std::invalid_argument("rule is not a group homomorphism");
      }
    }
    // the induced map must send source points into the target shift
    int need = target_.width() + k_;
    const auto& twin = target_.window();
    for (word_t b : source_.blocks(need))
      if (!sorted_contains(twin, apply_encoded(b, need + 1)))
        throw std::invalid_argument("code image leaves the target shift");
  }

  GroupShift source_, target_;
  int k_ = 0;
  std::vector<word_t> domain_;
  std::vector<elem_t> images_;
};

inline SlidingBlockCode identity_code(const GroupShift& g) {
  std::vector<elem_t> img(g.blocks(0).size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[i] = static_cast<elem_t>(g.blocks(0)[i]);
  return SlidingBlockCode::make(g, g, 0, std::move(img));
}

/// outer . inner, anticipations add.
inline SlidingBlockCode compose(const SlidingBlockCode& outer, const SlidingBlockCode& inner) {
  if (!same_group(inner.target().alphabet(), outer.source().alphabet()))
    throw std::invalid_argument("compose: alphabet mismatch between stages");
  int k = inner.anticipation() + outer.anticipation();
  std::uint64_t ms = inner.source().alphabet()->order();
  std::uint64_t mm = outer.source().alphabet()->order();
  std::vector<word_t> dom = inner.source().blocks(k);
  std::vector<elem_t> img;
  img.reserve(dom.size());
  for (word_t b : dom) {
    word_t mid = 0;
    for (int i = 0; i <= outer.anticipation(); ++i)
      mid = mid * mm + inner.rule(subword(b, ms, k + 1, i, inner.anticipation() + 1));
    img.push_back(outer.rule(mid));
  }
  return SlidingBlockCode::make(inner.source(), outer.target(), k, std::move(img));
}

/// The r-th shift power as a code onto its image.
inline SlidingBlockCode sigma_power_code(const GroupShift& g, int r) {
  GroupShift img = sigma_image(g, r);
  std::vector<word_t> dom = g.blocks(r);
  std::vector<elem_t> images;
  images.reserve(dom.size());
  std::uint64_t m = g.alphabet()->order();
  for (word_t b : dom) images.push_back(static_cast<elem_t>(word_suffix(b, m, 1)));
  return SlidingBlockCode::make(g, img, r, std::move(images));
}

/// Kernel as a window presentation: the source window intersected with the
/// identity constraint at every position.
inline GroupShift kernel(const SlidingBlockCode& c) {
  const GroupShift& src = c.source();
  int w = std::max(src.width(), c.anticipation());
  std::uint64_t m = src.alphabet()->order();
  std::vector<word_t> window;
  for (word_t b : src.blocks(w)) {
    bool ok = true;
    for (int j = 0; ok && j + c.anticipation() <= w; ++j)
      if (c.rule(subword(b, m, w + 1, j, c.anticipation() + 1)) != FiniteGroup::identity)
        ok = false;
    if (ok) window.push_back(b);
  }
  return GroupShift::from_window(src.alphabet(), w, std::move(window), src.budget());
}

/// Image as a canonical presentation, given the kernel's limit degree. The
/// image limit degree follows by multiplicativity, and the image block
/// groups are computed until the follower ratio reaches it.
inline GroupShift image_with_kernel_ld(const SlidingBlockCode& c, std::uint64_t ldk) {
  const GroupShift& src = c.source();
  if (src.ld() % ldk != 0) throw std::logic_error("kernel limit degree must divide the source one");
  std::uint64_t ld_img = src.ld() / ldk;
  std::uint64_t prev = 1;
  for (int len = 0;; ++len) {
    std::vector<word_t> b;
    for (word_t s : src.blocks(len + c.anticipation()))
      b.push_back(c.apply_encoded(s, len + c.anticipation() + 1));
    sort_unique(b);
    src.budget().check(b.size(), "image block group");
    if (b.size() == prev * ld_img)
      return GroupShift::from_window(c.target().alphabet(), len, std::move(b), src.budget());
    prev = b.size();
    if (len > 4 * (src.width() + c.anticipation()) + 64)
      throw std::logic_error("image block groups failed to stabilize");
  }
}

inline GroupShift image(const SlidingBlockCode& c) {
  return image_with_kernel_ld(c, kernel(c).ld());
}

/// {x in source : c(x) in sub}; sub must be a subshift of the target.
inline GroupShift preimage(const SlidingBlockCode& c, const GroupShift& sub) {
  if (!contains(c.target(), sub))
    throw std::invalid_argument("preimage: sub is not contained in the code target");
  const GroupShift& src = c.source();
  std::uint64_t ms = src.alphabet()->order();
  std::uint64_t mt = c.target().alphabet()->order();
  int w = std::max(src.width(), c.anticipation() + sub.width());
  const auto subwin = sub.window();
  std::vector<word_t> window;
  for (word_t b : src.blocks(w)) {
    bool ok = true;
    for (int j = 0; ok && j + c.anticipation() + sub.width() <= w; ++j) {
      word_t t = 0;
      for (int i = 0; i <= sub.width(); ++i)
        t = t * mt + c.rule(subword(b, ms, w + 1, j + i, c.anticipation() + 1));
      if (!sorted_contains(subwin, t)) ok = false;
    }
    if (ok) window.push_back(b);
  }
  return GroupShift::from_window(src.alphabet(), w, std::move(window), src.budget());
}

/// Block-level normality: n is normal in g iff n's window is normalized by
/// g's block group at n's width. Sufficiency is block-wise conjugation of
/// points; necessity is projection of point-level conjugation. Conjugating
/// by generators of the block group is enough since the normalizer is a
/// subgroup.
inline bool is_normal_in(const GroupShift& n, const GroupShift& g) {
  if (!contains(g, n)) throw std::invalid_argument("is_normal_in: containment violated");
  int w = n.width();
  PowerGroup pw(g.alphabet(), w + 1);
  auto gw = g.blocks(w);
  auto gens = small_generating_set(pw, std::span<const word_t>(gw));
  auto nw = n.window();
  for (word_t x : gens) {
    for (word_t t : nw) {
      if (!sorted_contains(nw, pw.mul(pw.mul(x, t), pw.inv(x)))) return false;
      if (!sorted_contains(nw, pw.mul(pw.mul(pw.inv(x), t), x))) return false;
    }
  }
  return true;
}

inline GroupShift intersection(const GroupShift& h, const GroupShift& n) {
  if (!same_group(h.alphabet(), n.alphabet()))
    throw std::invalid_argument("intersection: alphabet mismatch");
  int w = std::max(h.width(), n.width());
  auto hb = h.blocks(w);
  auto nb = n.blocks(w);
  return GroupShift::from_window(h.alphabet(), w, sorted_intersection(hb, nb), h.budget());
}

/// A quotient shift together with its projection code.
struct QuotientPresentation {
  GroupShift quotient;
  SlidingBlockCode projection;
};

/// G/N via the sliding window of width n = minimal step of N, post-composed
/// with the coset projection of block groups. The projection's kernel is
/// exactly N and its image is the quotient.
///
/// The coset alphabet can carry redundant directions: a normal subgroup K of
/// it that meets the quotient shift trivially gives an injective 1-block
/// recoding onto the smaller alphabet. Those are peeled off greedily
/// (largest K first, ties by lexicographic element list) until irreducible,
/// which in particular turns quotients that are full shifts into literal
/// width-0 presentations.
inline QuotientPresentation quotient(const GroupShift& g, const GroupShift& n) {
  if (!is_normal_in(n, g)) throw std::invalid_argument("quotient by a non-normal subshift");
  int m = n.width();
  PowerGroup pw(g.alphabet(), m + 1);
  auto gm = g.blocks(m);
  auto q = quotient_by(pw, std::span<const word_t>(gm), std::span<const word_t>(n.window()));
  GroupPtr hgrp = make_group(std::move(q.group));
  std::vector<elem_t> images;
  images.reserve(gm.size());
  for (word_t b : gm) images.push_back(q.coset_of.at(b));
  GroupShift full = GroupShift::full_shift(hgrp, g.budget());
  SlidingBlockCode proj = SlidingBlockCode::make(g, full, m, std::move(images));
  GroupShift img = image_with_kernel_ld(proj, n.ld());

  for (;;) {
    const GroupPtr& h = img.alphabet();
    auto normals = normal_subgroups(h, g.budget());
    // the shift meets a letter subgroup trivially iff, in the subgraph of
    // edges whose letters all lie in it, only the identity loop survives
    // the forward trim
    auto meets_trivially = [&](const std::vector<elem_t>& k) {
      std::uint64_t mh = h->order();
      int gw = img.graph_width();
      std::vector<word_t> kept;
      for (word_t e : img.edges()) {
        bool inside = true;
        for (int i = 0; inside && i <= gw; ++i)
          if (!std::binary_search(k.begin(), k.end(),
                                  static_cast<elem_t>(subword(e, mh, gw + 1, i, 1))))
            inside = false;
        if (inside) kept.push_back(e);
      }
      for (;;) {
        std::set<word_t> with_out;
        for (word_t e : kept) with_out.insert(word_prefix(e, mh, 1));
        std::vector<word_t> next;
        for (word_t e : kept)
          if (with_out.count(word_suffix(e, mh, gw))) next.push_back(e);
        if (next.size() == kept.size()) break;
        kept = std::move(next);
      }
      return kept.size() == 1 && kept[0] == 0;
    };
    const Subgroup* pick = nullptr;
    for (const Subgroup& k : normals) {
      if (k.order() <= 1 || k.order() == h->order()) continue;
      if (!meets_trivially(k.elements)) continue;
      if (!pick || k.order() > pick->order() ||
          (k.order() == pick->order() && k.elements < pick->elements))
        pick = &k;
    }
    if (!pick) break;
    auto [hq, hom] = quotient_group(h, *pick);
    std::vector<elem_t> step_images;
    for (word_t letter : img.blocks(0)) step_images.push_back(hom(static_cast<elem_t>(letter)));
    GroupShift hq_full = GroupShift::full_shift(hq, g.budget());
    SlidingBlockCode step = SlidingBlockCode::make(img, hq_full, 0, std::move(step_images));
    img = image_with_kernel_ld(step, 1);
    proj = compose(step, proj);
  }
  return QuotientPresentation{img, proj.with_target(img)};
}

/// HN inside a common ambient shift. h must normalize n. The block groups
/// of HN are exactly the blockwise products H[i]·N[i]; the window is cut off
/// by the same follower-ratio criterion as for images, with the limit degree
/// known from the second isomorphism theorem.
inline GroupShift product_subgroup(const GroupShift& h, const GroupShift& n,
                                   const GroupShift& ambient) {
  if (!contains(ambient, h) || !contains(ambient, n))
    throw std::invalid_argument("product_subgroup: operands must sit inside the ambient shift");
  {
    int w = std::max(h.width(), n.width());
    PowerGroup pw(ambient.alphabet(), w + 1);
    auto hb = h.blocks(w);
    auto gens = small_generating_set(pw, std::span<const word_t>(hb));
    auto nb = n.blocks(w);
    for (word_t x : gens)
      for (word_t t : nb)
        if (!sorted_contains(nb, pw.mul(pw.mul(x, t), pw.inv(x))) ||
            !sorted_contains(nb, pw.mul(pw.mul(pw.inv(x), t), x)))
          throw std::invalid_argument("product_subgroup: h does not normalize n");
  }
  // ld(HN) = ld(N) * ld(HN/N) = ld(N) * ld(H) / ld(H ∩ N)
  std::uint64_t ldcap = intersection(h, n).ld();
  if ((h.ld() * n.ld()) % ldcap != 0)
    throw std::logic_error("limit degrees inconsistent in product_subgroup");
  std::uint64_t ld_hn = h.ld() * n.ld() / ldcap;
  std::uint64_t prev = 1;
  for (int len = 0;; ++len) {
    PowerGroup pw(ambient.alphabet(), len + 1);
    auto hb = h.blocks(len);
    auto nb = n.blocks(len);
    auto b = product_set(pw, std::span<const word_t>(hb), std::span<const word_t>(nb),
                         ambient.budget());
    if (b.size() == prev * ld_hn)
      return GroupShift::from_window(ambient.alphabet(), len, std::move(b), ambient.budget());
    prev = b.size();
    if (len > 4 * (h.width() + n.width()) + 64)
      throw std::logic_error("product block groups failed to stabilize");
  }
}

/// The alphabet group when the canonical presentation is literally a full
/// shift (width 0) on its letter group; a presentation-level test.
inline std::optional<FiniteGroup> is_full_shift(const GroupShift& g) {
  if (g.width() != 0) return std::nullopt;
  std::vector<elem_t> elems(g.window().size());
  for (std::size_t i = 0; i < elems.size(); ++i) elems[i] = static_cast<elem_t>(g.window()[i]);
  return subgroup_as_group(*g.alphabet(), elems);
}

/// Higher-block recoding onto a 1-step presentation whose alphabet is the
/// block group at the minimal step, with the isomorphism code.
inline std::pair<GroupShift, SlidingBlockCode> recode_1step(const GroupShift& g) {
  int n = g.minimal_step();
  PowerGroup pw(g.alphabet(), n == 0 ? 1 : n + 1);
  auto blocks_n = g.blocks(n);
  std::vector<elem_t> elems;  // block group as a subgroup of the power view
  GroupPtr h;
  if (n == 0) {
    std::vector<elem_t> letters(blocks_n.size());
    for (std::size_t i = 0; i < letters.size(); ++i) letters[i] = static_cast<elem_t>(blocks_n[i]);
    h = make_group(subgroup_as_group(*g.alphabet(), letters));
  } else {
    // materialize the block group with tuple labels
    std::size_t sz = blocks_n.size();
    g.budget().check(sz * sz, "recoded alphabet table");
    std::vector<std::vector<elem_t>> table(sz, std::vector<elem_t>(sz));
    std::vector<std::string> labels(sz);
    for (std::size_t i = 0; i < sz; ++i) {
      labels[i] = pw.label(blocks_n[i]);
      for (std::size_t j = 0; j < sz; ++j)
        table[i][j] =
            static_cast<elem_t>(sorted_index(blocks_n, pw.mul(blocks_n[i], blocks_n[j])));
    }
    h = make_group(FiniteGroup::from_table(std::move(table), std::move(labels)));
  }
  std::vector<word_t> window;
  if (n == 0) {
    window.resize(h->order() * h->order());
    for (std::size_t i = 0; i < window.size(); ++i) window[i] = i;
  } else {
    for (word_t b : g.blocks(n + 1)) {
      std::uint64_t m = g.alphabet()->order();
      word_t first = word_prefix(b, m, 1);
      word_t second = word_suffix(b, m, n + 1);
      window.push_back(sorted_index(blocks_n, first) * h->order() +
                       sorted_index(blocks_n, second));
    }
  }
  GroupShift recoded = GroupShift::from_window(h, 1, std::move(window), g.budget());
  std::vector<elem_t> images(blocks_n.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<elem_t>(i);
  SlidingBlockCode code = SlidingBlockCode::make(g, recoded, n, std::move(images));
  return {std::move(recoded), std::move(code)};
}

/// Decode side of recode_1step: each recoded letter carries its first
/// source letter.
inline SlidingBlockCode recode_decode(const GroupShift& recoded, const GroupShift& original) {
  int n = original.minimal_step();
  std::uint64_t m = original.alphabet()->order();
  auto blocks_n = original.blocks(n);
  std::vector<elem_t> images(blocks_n.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = static_cast<elem_t>(word_prefix(blocks_n[i], m, n));
  return SlidingBlockCode::make(recoded, original, 0, std::move(images));
}

/// Inverse of an injective surjective code, found by growing the
/// anticipation until the inverse rule becomes single-valued.
inline std::optional<SlidingBlockCode> inverse_code(const SlidingBlockCode& c,
                                                    int max_anticipation = 32) {
  const GroupShift& src = c.source();
  const GroupShift& tgt = c.target();
  std::uint64_t ms = src.alphabet()->order();
  for (int a = 0; a <= max_anticipation; ++a) {
    int len = c.anticipation() + a;
    std::map<word_t, elem_t> rule;
    bool ok = true;
    for (word_t b : src.blocks(len)) {
      word_t key = c.apply_encoded(b, len + 1);
      elem_t first = static_cast<elem_t>(word_prefix(b, ms, len));
      auto [it, fresh] = rule.insert({key, first});
      if (!fresh && it->second != first) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto dom = tgt.blocks(a);
    if (rule.size() != dom.size()) continue;
    std::vector<elem_t> images;
    images.reserve(dom.size());
    bool complete = true;
    for (word_t t : dom) {
      auto it = rule.find(t);
      if (it == rule.end()) {
        complete = false;
        break;
      }
      images.push_back(it->second);
    }
    if (!complete) continue;
    return SlidingBlockCode::make(tgt, src, a, std::move(images));
  }
  return std::nullopt;
}

/// Equality of two shifts up to an alphabet-group isomorphism carrying the
/// block data across. Exhaustive over alphabet isomorphisms; desk-scale.
inline bool recode_equal(const GroupShift& a, const GroupShift& b) {
  const FiniteGroup& ga = *a.alphabet();
  const FiniteGroup& gb = *b.alphabet();
  if (ga.order() != gb.order() || a.ld() != b.ld() || a.width() != b.width()) return false;
  int w = std::max(std::max(a.width(), b.width()), 1);
  auto ab = a.blocks(w);
  auto bb = b.blocks(w);
  if (ab.size() != bb.size()) return false;
  // depth-first search over label maps, pruned by the hom constraint
  std::vector<elem_t> map(ga.order(), gb.order());
  map[0] = 0;
  std::vector<bool> used(gb.order(), false);
  used[0] = true;
  std::uint64_t mb = gb.order();
  auto apply_word = [&](word_t word) -> std::optional<word_t> {
    std::vector<elem_t> letters;
    word_t cur = word;
    for (int i = 0; i <= w; ++i) {
      letters.push_back(static_cast<elem_t>(cur % ga.order()));
      cur /= ga.order();
    }
    word_t out = 0;
    for (int i = w; i >= 0; --i) {
      if (map[letters[i]] == gb.order()) return std::nullopt;
      out = out * mb + map[letters[i]];
    }
    return out;
  };
  std::function<bool(elem_t)> dfs = [&](elem_t next) -> bool {
    while (next < ga.order() && map[next] != gb.order()) ++next;
    if (next == ga.order()) {
      for (elem_t x = 0; x < ga.order(); ++x)
        for (elem_t y = 0; y < ga.order(); ++y)
          if (map[ga.mul(x, y)] != gb.mul(map[x], map[y])) return false;
      for (word_t word : ab) {
        auto img = apply_word(word);
        if (!img || !sorted_contains(bb, *img)) return false;
      }
      return true;
    }
    for (elem_t cand = 0; cand < gb.order(); ++cand) {
      if (used[cand] || gb.element_order(cand) != ga.element_order(next)) continue;
      map[next] = cand;
      used[cand] = true;
      bool partial_ok = true;
      for (elem_t x = 0; partial_ok && x <= next; ++x)
        for (elem_t y = 0; partial_ok && y <= next; ++y) {
          if (map[x] == gb.order() || map[y] == gb.order()) continue;
          elem_t xy = ga.mul(x, y);
          if (map[xy] != gb.order() && map[xy] != gb.mul(map[x], map[y])) partial_ok = false;
        }
      if (partial_ok && dfs(next + 1)) return true;
      used[cand] = false;
      map[next] = gb.order();
    }
    return false;
  };
  return dfs(0);
}

}  // namespace gshift
