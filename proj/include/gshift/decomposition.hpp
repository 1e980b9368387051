#pragma once

#include <variant>

#include "gshift/sigma_topology.hpp"

namespace gshift {

/// Normal-subgroup selection order; reversing it must not change the length,
/// the first term, or the simple factor multiset of a decomposition.
enum class TieBreak { SmallestFirst, LargestFirst };

/// A code from a shift into a full shift whose image satisfies the embedding
/// conditions: image letters exhaust the ambient alphabet, the follower
/// kernel of the image at width one equals the limit degree, and the code
/// kernel is the kernel of the ell-th shift power.
struct EmbeddingState {
  SlidingBlockCode code;  // source -> full shift on the ambient alphabet
  GroupShift image;       // canonical presentation of code's image
  int ell = 0;
  std::vector<elem_t> follower_part;  // letters a with (1, a) an image edge
  std::vector<elem_t> predecessor_part;  // letters a with (a, 1) an image edge
  std::vector<elem_t> meet;              // their intersection
  bool terminal = false;

  const GroupPtr& ambient() const { return code.target().alphabet(); }
};

namespace detail {

inline void compute_witnesses(EmbeddingState& st) {
  std::uint64_t m = st.ambient()->order();
  st.follower_part.clear();
  st.predecessor_part.clear();
  for (word_t e : st.image.blocks(1)) {
    if (e < m) st.follower_part.push_back(static_cast<elem_t>(e));
    if (e % m == 0) st.predecessor_part.push_back(static_cast<elem_t>(e / m));
  }
  st.meet.clear();
  std::set_intersection(st.follower_part.begin(), st.follower_part.end(),
                        st.predecessor_part.begin(), st.predecessor_part.end(),
                        std::back_inserter(st.meet));
}

inline void check_embedding(const EmbeddingState& st) {
  if (st.image.blocks(0).size() != st.ambient()->order())
    throw std::logic_error("embedding image does not exhaust its alphabet");
  std::uint64_t ker = 0;
  for (word_t e : st.image.blocks(1))
    if (e < st.ambient()->order()) ++ker;
  if (ker != st.code.source().ld())
    throw std::logic_error("embedding image has the wrong follower kernel");
}

}  // namespace detail

/// Seeds the descent with the higher-block recoding: ell = 0 and the image
/// is the 1-step presentation on the block-group alphabet.
inline EmbeddingState standard_embedding(const GroupShift& g) {
  auto [img, code] = recode_1step(g);
  EmbeddingState st;
  st.code = code.with_target(GroupShift::full_shift(img.alphabet(), g.budget()));
  st.image = std::move(img);
  st.ell = 0;
  detail::compute_witnesses(st);
  detail::check_embedding(st);
  return st;
}

/// One descent step. Either strictly shrinks the ambient alphabet (by
/// passing to a coordinate image when some coordinate is not surjective, or
/// by the two-block quotient when the two witness subgroups meet trivially)
/// or flags the state terminal.
inline EmbeddingState descend(EmbeddingState st) {
  const GroupShift& g = st.code.source();
  std::uint64_t m = st.ambient()->order();

  // letters reachable in i steps stabilize under the successor map
  std::vector<elem_t> cur(st.ambient()->order());
  std::iota(cur.begin(), cur.end(), 0);
  int shift_by = 0;
  for (;;) {
    std::set<elem_t> nxt;
    for (word_t e : st.image.blocks(1))
      if (std::binary_search(cur.begin(), cur.end(), static_cast<elem_t>(e / m)))
        nxt.insert(static_cast<elem_t>(e % m));
    std::vector<elem_t> nv(nxt.begin(), nxt.end());
    if (nv == cur) break;
    cur = std::move(nv);
    ++shift_by;
  }

  if (cur.size() < st.ambient()->order()) {
    // replace the code by its shift: ker grows to the (ell + shift_by)-th power
    auto sub_index = [&cur](elem_t x) {
      return static_cast<elem_t>(std::lower_bound(cur.begin(), cur.end(), x) - cur.begin());
    };
    GroupPtr hsub = make_group(subgroup_as_group(*st.ambient(), cur));
    GroupShift moved = sigma_image(st.image, shift_by);
    std::vector<word_t> window;
    for (word_t b : moved.window()) {
      word_t out = 0;
      for (int i = 0; i <= moved.width(); ++i) {
        elem_t letter = static_cast<elem_t>(subword(b, m, moved.width() + 1, i, 1));
        out = out * hsub->order() + sub_index(letter);
      }
      window.push_back(out);
    }
    int k = st.code.anticipation() + shift_by;
    std::vector<word_t> dom = g.blocks(k);
    std::vector<elem_t> images;
    images.reserve(dom.size());
    std::uint64_t ms = g.alphabet()->order();
    for (word_t b : dom) {
      elem_t old = st.code.rule(subword(b, ms, k + 1, shift_by, st.code.anticipation() + 1));
      images.push_back(sub_index(old));
    }
    EmbeddingState out;
    out.code = SlidingBlockCode::make(g, GroupShift::full_shift(hsub, g.budget()), k,
                                      std::move(images));
    out.image = GroupShift::from_window(hsub, moved.width(), std::move(window), g.budget());
    out.ell = st.ell + shift_by;
    detail::compute_witnesses(out);
    detail::check_embedding(out);
    return out;
  }

  detail::compute_witnesses(st);
  if (st.meet.size() > 1) {
    st.terminal = true;
    return st;
  }

  // two-block quotient by predecessor_part x follower_part
  if (st.predecessor_part.size() <= 1)
    throw std::logic_error("descent hit a finite shift; callers must keep inputs infinite");
  PowerGroup pairs(st.ambient(), 2);
  std::vector<word_t> gn;
  gn.reserve(st.predecessor_part.size() * st.follower_part.size());
  for (elem_t a : st.predecessor_part)
    for (elem_t b : st.follower_part) gn.push_back(word_t{a} * m + b);
  std::sort(gn.begin(), gn.end());
  auto edges = st.image.blocks(1);
  auto q = quotient_by(pairs, std::span<const word_t>(edges), std::span<const word_t>(gn));
  GroupPtr hgrp = make_group(std::move(q.group));

  int k = st.code.anticipation() + 1;
  std::vector<word_t> dom = g.blocks(k);
  std::vector<elem_t> images;
  images.reserve(dom.size());
  std::uint64_t ms = g.alphabet()->order();
  for (word_t b : dom) {
    elem_t first = st.code.rule(subword(b, ms, k + 1, 0, st.code.anticipation() + 1));
    elem_t second = st.code.rule(subword(b, ms, k + 1, 1, st.code.anticipation() + 1));
    images.push_back(q.coset_of.at(word_t{first} * m + second));
  }
  EmbeddingState out;
  out.code =
      SlidingBlockCode::make(g, GroupShift::full_shift(hgrp, g.budget()), k, std::move(images));
  out.image = image(out.code);
  out.ell = st.ell + 1;
  detail::compute_witnesses(out);
  detail::check_embedding(out);
  return out;
}

/// Either a certificate that the shift maps onto a full shift over a simple
/// group with shift-power kernel, or a normal subshift of intermediate limit
/// degree to recurse on.
struct ExtractSimple {
  GroupPtr simple_group;
  SlidingBlockCode onto_full;
  int ell = 0;
};
struct ExtractMiddle {
  GroupShift normal;
};
using ExtractResult = std::variant<ExtractSimple, ExtractMiddle>;

inline ExtractResult extract_factor(const GroupShift& g,
                                    TieBreak tie = TieBreak::SmallestFirst,
                                    const Budget& budget = {}) {
  if (g.is_finite()) throw std::invalid_argument("extract_factor requires an infinite shift");
  EmbeddingState st = standard_embedding(g);
  std::uint64_t guard = st.ambient()->order() + 2;
  while (!st.terminal) {
    if (guard-- == 0) throw std::logic_error("embedding descent failed to terminate");
    st = descend(std::move(st));
  }

  std::uint64_t m = st.ambient()->order();
  std::vector<word_t> gn;
  for (elem_t a : st.predecessor_part)
    for (elem_t b : st.follower_part) gn.push_back(word_t{a} * m + b);
  GroupShift constraint =
      GroupShift::from_window(st.ambient(), 1, std::move(gn), g.budget());
  GroupShift mid = preimage(st.code, constraint);
  if (mid.ld() <= 1) throw std::logic_error("two-block kernel collapsed unexpectedly");
  if (mid.ld() < g.ld()) return ExtractMiddle{std::move(mid)};

  // no intermediate degree: the image must be the full shift on the alphabet
  if (!(st.image.width() == 0 && st.image.window().size() == m))
    throw std::logic_error("terminal embedding image is not a full shift");
  if (m >= 2 && is_simple(*st.ambient(), budget))
    return ExtractSimple{st.ambient(), st.code, st.ell};

  auto normals = normal_subgroups(st.ambient(), budget);
  const Subgroup* pick = nullptr;
  for (const Subgroup& k : normals) {
    if (k.order() <= 1 || k.order() >= st.ambient()->order()) continue;
    if (!pick) {
      pick = &k;
    } else if (tie == TieBreak::SmallestFirst
                   ? (k.order() < pick->order() ||
                      (k.order() == pick->order() && k.elements < pick->elements))
                   : (k.order() > pick->order() ||
                      (k.order() == pick->order() && k.elements > pick->elements))) {
      pick = &k;
    }
  }
  if (!pick) throw std::logic_error("non-simple alphabet without proper normal subgroups");
  std::vector<word_t> track(pick->elements.begin(), pick->elements.end());
  GroupShift sub = GroupShift::from_window(st.ambient(), 0, std::move(track), g.budget());
  return ExtractMiddle{preimage(st.code, sub)};
}

/// One step of a subnormal series: the subgroup, and for every step but the
/// last a certificate code onto a full shift over a finite simple group
/// whose kernel is the next subgroup.
struct FactorCertificate {
  GroupPtr simple_group;
  SlidingBlockCode onto_full;
};

struct DecompositionSeries {
  GroupPtr head_group;
  GroupHom head_sigma;
  std::vector<GroupShift> chain;               // chain[0] = identity component
  std::vector<FactorCertificate> certificates;  // size chain.size() - 1
  int tail_nilpotency = 0;
};

/// Rewrites a series for N into one for gn when gn/N is sigma-infinitesimal:
/// each term is pulled back through the r-th shift power, where r is the
/// nilpotency index of gn/N. Factor groups are preserved.
inline std::vector<GroupShift> splice(const GroupShift& gn,
                                      const std::vector<GroupShift>& n_series) {
  if (n_series.empty()) throw std::invalid_argument("splice needs a non-empty series");
  const GroupShift& n = n_series.front();
  if (!contains(gn, n)) throw std::invalid_argument("splice: series head not inside gn");
  auto qp = quotient(gn, n);
  if (!is_sigma_infinitesimal(qp.quotient))
    throw std::invalid_argument("splice: gn over the series head is not sigma-infinitesimal");
  int r = nilpotency_index(qp.quotient);
  if (r == 0) return n_series;
  std::vector<GroupShift> out;
  out.reserve(n_series.size());
  for (const GroupShift& term : n_series) out.push_back(sigma_preimage(term, gn, r));
  return out;
}

namespace detail {

struct ConnectedSeries {
  std::vector<GroupShift> chain;
  std::vector<FactorCertificate> certs;
};

/// Membership in the block group of a canonical shift, checked letterwise
/// against the window; no block set is materialized.
inline bool word_occurs(const GroupShift& s, word_t w, int len) {
  std::uint64_t m = s.alphabet()->order();
  if (len <= s.width()) return sorted_contains(s.blocks(len - 1), w);
  for (int j = 0; j + s.width() < len; ++j)
    if (!sorted_contains(s.window(), subword(w, m, len, j, s.width() + 1))) return false;
  return true;
}

/// Small generating set of the block group at word length len, built by
/// lifting generators through the block projections; linear in len.
inline std::vector<word_t> block_group_generators(const GroupShift& s, int len) {
  std::uint64_t m = s.alphabet()->order();
  PowerGroup letters(s.alphabet(), 1);
  auto b0 = s.blocks(0);
  std::vector<word_t> gens = small_generating_set(letters, std::span<const word_t>(b0));
  for (int cur = 1; cur < len; ++cur) {
    std::vector<word_t> lifted;
    for (word_t g : gens) {
      for (elem_t c = 0; c < m; ++c)
        if (word_occurs(s, g * m + c, cur + 1)) {
          lifted.push_back(g * m + c);
          break;
        }
    }
    std::vector<word_t> follower;
    for (elem_t c = 0; c < m; ++c) {
      word_t w = c;  // leading identities vanish in the encoding
      if (word_occurs(s, w, cur + 1)) follower.push_back(c);
    }
    auto fg = small_generating_set(letters, std::span<const word_t>(follower));
    for (word_t c : fg) lifted.push_back(c);
    gens = std::move(lifted);
  }
  sort_unique(gens);
  return gens;
}

/// All sigma-stable subgroups of the kernel of the given shift power that
/// are normalized by the ambient shift and smaller than cap, as encoded
/// point sets over words of length L = power + width + 1.
struct TailCandidates {
  int word_len = 1;
  std::vector<std::vector<word_t>> subgroups;  // sorted by size, then lex
};

inline TailCandidates tail_candidates(const GroupShift& s, int power, std::size_t cap,
                                      const Budget& budget) {
  TailCandidates out;
  int L = power + s.width() + 1;
  out.word_len = L;
  std::uint64_t m = s.alphabet()->order();
  PowerGroup pw(s.alphabet(), L);

  GroupShift k = ker_sigma_power(s, power);
  std::vector<word_t> points;
  for (const auto& [pre, per] : k.enumerate_points()) {
    std::vector<elem_t> word = pre;
    word.insert(word.end(), per.begin(), per.end());
    word.resize(L, FiniteGroup::identity);
    points.push_back(pw.encode(word));
  }
  sort_unique(points);

  std::vector<word_t> conj_gens = block_group_generators(s, L);
  auto drop_first = [&](word_t e) { return word_suffix(e, m, L - 1) * m; };

  // closure under group operations, the shift map, and ambient conjugation;
  // aborts (returns empty) once the cap is reached
  auto stable_closure = [&](std::vector<word_t> gens) -> std::vector<word_t> {
    std::vector<word_t> cur = closure_set(pw, std::span<const word_t>(gens), budget);
    for (;;) {
      if (cur.size() >= cap) return {};
      std::vector<word_t> more = cur;
      for (word_t t : cur) {
        more.push_back(drop_first(t));
        for (word_t x : conj_gens) {
          more.push_back(pw.mul(pw.mul(x, t), pw.inv(x)));
          more.push_back(pw.mul(pw.mul(pw.inv(x), t), x));
        }
      }
      sort_unique(more);
      if (more.size() == cur.size()) return cur;
      cur = closure_set(pw, std::span<const word_t>(more), budget);
    }
  };

  std::vector<std::vector<word_t>> seeds;
  for (word_t p : points) {
    if (p == 0) continue;
    auto c = stable_closure({p});
    if (!c.empty()) seeds.push_back(std::move(c));
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::set<std::vector<word_t>> lattice{{0}};
  std::vector<std::vector<word_t>> frontier{{0}};
  while (!frontier.empty()) {
    auto cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& seed : seeds) {
      std::vector<word_t> gens = cur;
      gens.insert(gens.end(), seed.begin(), seed.end());
      auto join = stable_closure(std::move(gens));
      if (!join.empty() && lattice.insert(join).second) frontier.push_back(std::move(join));
    }
  }
  out.subgroups.assign(lattice.begin(), lattice.end());
  std::sort(out.subgroups.begin(), out.subgroups.end(),
            [](const std::vector<word_t>& a, const std::vector<word_t>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

/// Looks for the smallest sigma-infinitesimal normal subshift T of h whose
/// quotient is literally a full shift, and when one exists builds the whole
/// series by pulling the full shift's composition tower back through the
/// projection. Candidate tails live inside kernels of shift powers and are
/// searched in increasing size; a tail of size t has nilpotency index below
/// t, which bounds the powers that must be visited. The search is capped
/// (powers <= 4, kernels <= 4096 points); shifts without a tower inside the
/// cap fall back to the recursive route.
inline std::optional<ConnectedSeries> full_quotient_tower(const GroupShift& h, TieBreak tie,
                                                          const Budget& budget) {
  std::uint64_t m = h.alphabet()->order();
  std::uint64_t best = ~std::uint64_t{0};
  std::optional<GroupShift> best_tail;
  std::optional<QuotientPresentation> best_qp;
  std::vector<std::uint64_t> hblock_size;  // |h.blocks(i)|, filled on demand
  auto block_size = [&](int i) {
    while (static_cast<int>(hblock_size.size()) <= i)
      hblock_size.push_back(h.blocks(static_cast<int>(hblock_size.size())).size());
    return hblock_size[i];
  };

  for (int power = 0; power <= 3; ++power) {
    if (best != ~std::uint64_t{0} && power + 2 > static_cast<int>(best)) break;
    if (!checked_pow(m, static_cast<unsigned>(power + h.width() + 2))) break;
    if (ker_sigma_power(h, power).point_count_if_finite() > 512) break;
    std::uint64_t cap = std::min<std::uint64_t>(best, 513);
    TailCandidates cands = tail_candidates(h, power, cap, budget);
    int L = cands.word_len;
    for (const auto& sub : cands.subgroups) {
      if (sub.size() >= best) break;
      std::vector<word_t> window;
      for (word_t p : sub)
        for (int pos = 0; pos < L; ++pos) {
          word_t padded = word_suffix(p, m, L - pos);
          for (int j = 0; j < pos; ++j) padded *= m;  // append identity letters
          window.push_back(padded);
        }
      sort_unique(window);
      GroupShift cand;
      try {
        cand = GroupShift::from_window(h.alphabet(), L - 1, std::move(window), budget);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (cand.ld() != 1 || cand.point_count_if_finite() != sub.size()) continue;
      // cheap necessary condition: the quotient's block counts must be able
      // to reach powers of the limit degree once redundant alphabet
      // directions are peeled off, so |h[i]| / |T[i]| divides only into
      // ld-smooth counts; at the very least fixed points must match up
      if (block_size(cand.width()) % (cand.window().size() * h.ld()) != 0) continue;
      if (!is_sigma_infinitesimal(cand)) continue;
      if (!contains(h, cand) || !is_normal_in(cand, h)) continue;
      auto qp = quotient(h, cand);
      if (!is_full_shift(qp.quotient).has_value()) continue;
      best = sub.size();
      best_tail = std::move(cand);
      best_qp = std::move(qp);
      break;
    }
  }
  if (!best_tail) return std::nullopt;

  // re-express the projection as a code onto the literal full shift
  GroupPtr full_grp = make_group(*is_full_shift(best_qp->quotient));
  const auto& qwin = best_qp->quotient.window();
  std::vector<elem_t> images;
  images.reserve(best_qp->projection.images().size());
  for (elem_t e : best_qp->projection.images())
    images.push_back(static_cast<elem_t>(sorted_index(qwin, e)));
  GroupShift full = GroupShift::full_shift(full_grp, budget);
  SlidingBlockCode proj = SlidingBlockCode::make(
      h, full, best_qp->projection.anticipation(), std::move(images));

  auto tower = composition_series(full_grp, budget, tie == TieBreak::LargestFirst);
  ConnectedSeries out;
  out.chain.push_back(h);
  for (std::size_t i = 1; i + 1 < tower.size(); ++i) {
    std::vector<word_t> win(tower[i].elements.begin(), tower[i].elements.end());
    GroupShift track = GroupShift::from_window(full_grp, 0, std::move(win), budget);
    out.chain.push_back(preimage(proj, track));
  }
  out.chain.push_back(*best_tail);
  for (std::size_t i = 0; i + 1 < tower.size(); ++i) {
    // coset map of the i-th tower step, as a one-block code
    TableView v{full_grp.get()};
    auto q = quotient_by(v, std::span<const elem_t>(tower[i].elements),
                         std::span<const elem_t>(tower[i + 1].elements));
    GroupPtr factor = make_group(std::move(q.group));
    std::vector<word_t> win(tower[i].elements.begin(), tower[i].elements.end());
    GroupShift track = GroupShift::from_window(full_grp, 0, std::move(win), budget);
    std::vector<elem_t> coset_images;
    for (word_t letter : track.blocks(0))
      coset_images.push_back(q.coset_of.at(static_cast<elem_t>(letter)));
    SlidingBlockCode coset = SlidingBlockCode::make(
        track, GroupShift::full_shift(factor, budget), 0, std::move(coset_images));
    SlidingBlockCode cert = compose(coset, proj.restricted_to(out.chain[i]));
    out.certs.push_back(FactorCertificate{factor, std::move(cert)});
  }
  return out;
}

inline ConnectedSeries decompose_connected(const GroupShift& h, TieBreak tie,
                                           const Budget& budget, int depth) {
  if (depth > 64) throw std::logic_error("decomposition recursion depth exceeded");
  if (h.is_finite()) return {{h}, {}};

  if (auto tower = full_quotient_tower(h, tie, budget)) return std::move(*tower);

  ExtractResult res = extract_factor(h, tie, budget);
  if (auto* simple = std::get_if<ExtractSimple>(&res)) {
    GroupShift tail = kernel(simple->onto_full);
    return {{h, std::move(tail)},
            {FactorCertificate{simple->simple_group, simple->onto_full}}};
  }

  GroupShift nmid = std::get<ExtractMiddle>(res).normal;
  GroupShift nsc = identity_component(nmid);
  auto qp = quotient(h, nsc);
  ConnectedSeries top = decompose_connected(qp.quotient, tie, budget, depth + 1);

  ConnectedSeries out;
  for (std::size_t i = 0; i < top.chain.size(); ++i)
    out.chain.push_back(i == 0 ? h : preimage(qp.projection, top.chain[i]));
  for (std::size_t i = 0; i < top.certs.size(); ++i)
    out.certs.push_back(FactorCertificate{
        top.certs[i].simple_group,
        compose(top.certs[i].onto_full, qp.projection.restricted_to(out.chain[i]))});

  GroupShift gn = out.chain.back();
  out.chain.pop_back();
  ConnectedSeries bottom = decompose_connected(nsc, tie, budget, depth + 1);
  auto qp2 = quotient(gn, nsc);
  int r = nilpotency_index(qp2.quotient);
  for (std::size_t i = 0; i < bottom.chain.size(); ++i) {
    GroupShift term = r == 0 ? bottom.chain[i] : sigma_preimage(bottom.chain[i], gn, r);
    out.chain.push_back(std::move(term));
  }
  for (std::size_t i = 0; i < bottom.certs.size(); ++i) {
    const GroupShift& src = out.chain[out.chain.size() - bottom.chain.size() + i];
    SlidingBlockCode cert =
        r == 0 ? bottom.certs[i].onto_full
               : compose(bottom.certs[i].onto_full, sigma_power_code(src, r).with_target(
                                                        bottom.chain[i]));
    out.certs.push_back(FactorCertificate{bottom.certs[i].simple_group, std::move(cert)});
  }
  return out;
}

}  // namespace detail

/// The subnormal decomposition: finite head with bijective sigma, then a
/// chain descending from the identity component whose consecutive quotients
/// are full shifts on finite simple groups, ending in a sigma-infinitesimal
/// tail. Produced constructively with verifiable certificates.
inline DecompositionSeries decompose(const GroupShift& g,
                                     TieBreak tie = TieBreak::SmallestFirst,
                                     const Budget& budget = {}) {
  DecompositionSeries out;
  GroupShift g1 = identity_component(g);
  auto [hgrp, hsigma] = head(g);
  out.head_group = hgrp;
  out.head_sigma = std::move(hsigma);
  auto series = detail::decompose_connected(g1, tie, budget, 0);
  out.chain = std::move(series.chain);
  out.certificates = std::move(series.certs);
  out.tail_nilpotency = nilpotency_index(out.chain.back());
  return out;
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
};

/// Re-checks every claim a series makes, independently of how it was found.
inline Verdict verify_series(const GroupShift& g, const DecompositionSeries& s) {
  Verdict v;
  if (s.chain.empty()) {
    v.fail("chain is empty");
    return v;
  }
  if (s.certificates.size() + 1 != s.chain.size())
    v.fail("certificate count does not match the chain length");

  GroupShift g1 = identity_component(g);
  if (!equals(s.chain.front(), g1)) v.fail("chain does not start at the identity component");

  auto [hgrp, hsigma] = head(g);
  if (hgrp->order() != s.head_group->order() || !isomorphic(*hgrp, *s.head_group))
    v.fail("head group mismatch");
  else if (hsigma.cycle_type() != s.head_sigma.cycle_type())
    v.fail("head endomorphism cycle type mismatch");
  if (!s.head_sigma.is_bijective()) v.fail("head endomorphism is not bijective");

  for (std::size_t i = 0; i + 1 < s.chain.size(); ++i) {
    std::string at = "step " + std::to_string(i) + ": ";
    if (!contains(s.chain[i], s.chain[i + 1])) {
      v.fail(at + "chain containment fails");
      continue;
    }
    if (!is_normal_in(s.chain[i + 1], s.chain[i])) v.fail(at + "chain term is not normal");
    if (i >= s.certificates.size()) continue;
    const FactorCertificate& c = s.certificates[i];
    if (!equals(c.onto_full.source(), s.chain[i])) v.fail(at + "certificate source mismatch");
    const GroupShift& t = c.onto_full.target();
    if (!(t.width() == 0 && t.window().size() == t.alphabet()->order() &&
          same_group(t.alphabet(), c.simple_group)))
      v.fail(at + "certificate target is not the full shift on the named group");
    if (c.simple_group->order() < 2 || !is_simple(*c.simple_group))
      v.fail(at + "factor group is not simple");
    if (!equals(image(c.onto_full), t)) v.fail(at + "certificate is not surjective");
    if (!equals(kernel(c.onto_full), s.chain[i + 1]))
      v.fail(at + "certificate kernel is not the next chain term");
  }

  const GroupShift& tail = s.chain.back();
  if (!is_sigma_infinitesimal(tail)) {
    v.fail("tail is not sigma-infinitesimal");
  } else if (nilpotency_index(tail) != s.tail_nilpotency) {
    v.fail("tail nilpotency index mismatch");
  }

  std::uint64_t prod = 1;
  for (const FactorCertificate& c : s.certificates) prod *= c.simple_group->order();
  if (prod != g.ld()) v.fail("factor orders do not multiply to the limit degree");
  return v;
}

/// Compares what the uniqueness statement pins down: the length, the first
/// term, and the multiset of simple factors up to isomorphism. Tails are
/// deliberately not compared beyond both series having one.
inline Verdict uniqueness_report(const DecompositionSeries& a, const DecompositionSeries& b) {
  Verdict v;
  if (a.chain.size() != b.chain.size()) v.fail("series lengths differ");
  if (!a.chain.empty() && !b.chain.empty() &&
      same_group(a.chain[0].alphabet(), b.chain[0].alphabet())) {
    if (!equals(a.chain[0], b.chain[0])) v.fail("identity components differ");
  }
  if (a.certificates.size() != b.certificates.size()) {
    v.fail("factor counts differ");
    return v;
  }
  std::vector<bool> used(b.certificates.size(), false);
  for (const FactorCertificate& ca : a.certificates) {
    bool matched = false;
    for (std::size_t j = 0; j < b.certificates.size(); ++j) {
      if (used[j]) continue;
      if (isomorphic(*ca.simple_group, *b.certificates[j].simple_group)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched)
      v.fail("unmatched simple factor of order " + std::to_string(ca.simple_group->order()));
  }
  return v;
}

}  // namespace gshift
