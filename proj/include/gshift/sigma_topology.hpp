#pragma once

#include "gshift/morphism.hpp"

namespace gshift {

/// Connected components of the shift-stable-closed-set topology, computed on
/// the state graph: strongly connected components carrying at least one
/// edge, joined whenever a directed path links them in either direction;
/// every state funnels into exactly one such cluster.
struct SigmaComponentReport {
  std::size_t count = 1;
  std::vector<std::vector<std::uint32_t>> component_states;
  GroupShift identity_component;
  GroupPtr head_group;
  GroupHom head_sigma;
};

namespace detail {

struct SccData {
  std::vector<std::uint32_t> comp_of;  // state -> scc index
  std::size_t count = 0;
};

inline SccData strongly_connected(const GroupShift& g) {
  std::size_t n = g.states().size();
  SccData out;
  out.comp_of.assign(n, UINT32_MAX);
  // iterative Tarjan
  std::vector<std::uint32_t> low(n, 0), num(n, 0), stk;
  std::vector<bool> on(n, false);
  std::uint32_t timer = 1;
  struct Frame {
    std::uint32_t v;
    std::size_t ei;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (num[root]) continue;
    std::vector<Frame> call{{root, 0}};
    num[root] = low[root] = timer++;
    stk.push_back(root);
    on[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.ei < g.out_edges()[f.v].size()) {
        std::uint32_t w = g.edge_to()[g.out_edges()[f.v][f.ei++]];
        if (!num[w]) {
          num[w] = low[w] = timer++;
          stk.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        if (low[f.v] == num[f.v]) {
          std::uint32_t c = static_cast<std::uint32_t>(out.count++);
          for (;;) {
            std::uint32_t w = stk.back();
            stk.pop_back();
            on[w] = false;
            out.comp_of[w] = c;
            if (w == f.v) break;
          }
        }
        std::uint32_t v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return out;
}

}  // namespace detail

/// States admitting a directed path to the all-identity state; a normal
/// subshift subgroup with finite quotient.
inline GroupShift identity_component(const GroupShift& g) {
  if (g.width() == 0) return g;
  std::size_t n = g.states().size();
  std::vector<bool> reach(n, false);
  std::vector<std::uint32_t> queue{g.identity_state()};
  reach[g.identity_state()] = true;
  while (!queue.empty()) {
    std::uint32_t v = queue.back();
    queue.pop_back();
    for (std::uint32_t e : g.in_edges()[v]) {
      std::uint32_t u = g.edge_from()[e];
      if (!reach[u]) {
        reach[u] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<word_t> window;
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (reach[g.edge_from()[e]] && reach[g.edge_to()[e]]) window.push_back(edges[e]);
  return GroupShift::from_window(g.alphabet(), g.graph_width(), std::move(window), g.budget());
}

/// The finite quotient by the identity component, with the induced bijective
/// endomorphism. Computed from block-group cosets at the common width; the
/// induced map is well defined there because the follower kernels of the
/// shift and its identity component coincide.
inline std::pair<GroupPtr, GroupHom> head(const GroupShift& g) {
  GroupShift gsc = identity_component(g);
  int m = std::max(g.width(), gsc.width());
  PowerGroup pw(g.alphabet(), m + 1);
  auto gm = g.blocks(m);
  auto nm = gsc.blocks(m);
  auto q = quotient_by(pw, std::span<const word_t>(gm), std::span<const word_t>(nm));
  GroupPtr hgrp = make_group(std::move(q.group));
  std::uint64_t malph = g.alphabet()->order();
  auto gm1 = g.blocks(m + 1);
  std::vector<elem_t> sigma(hgrp->order());
  for (elem_t c = 0; c < hgrp->order(); ++c) {
    word_t rep = q.reps[c];
    // any one-letter extension of the representative
    auto it = std::lower_bound(gm1.begin(), gm1.end(), rep * malph);
    if (it == gm1.end() || word_prefix(*it, malph, 1) != rep)
      throw std::logic_error("block fails to extend");
    sigma[c] = q.coset_of.at(word_suffix(*it, malph, m + 1));
  }
  return {hgrp, GroupHom{hgrp, hgrp, std::move(sigma)}};
}

inline SigmaComponentReport sigma_components(const GroupShift& g) {
  SigmaComponentReport rep;
  rep.identity_component = identity_component(g);
  auto [hgrp, hsigma] = head(g);
  rep.head_group = hgrp;
  rep.head_sigma = std::move(hsigma);
  std::size_t n = g.states().size();
  auto scc = detail::strongly_connected(g);

  std::vector<bool> live(scc.count, false);
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    if (scc.comp_of[g.edge_from()[e]] == scc.comp_of[g.edge_to()[e]])
      live[scc.comp_of[g.edge_from()[e]]] = true;

  // reachability over the condensation
  std::vector<std::vector<bool>> reach(scc.count, std::vector<bool>(scc.count, false));
  for (std::size_t c = 0; c < scc.count; ++c) reach[c][c] = true;
  // process states in reverse topological order of Tarjan output: scc indices
  // are emitted children-first, so ascending index order is safe
  for (std::size_t c = 0; c < scc.count; ++c) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (scc.comp_of[v] != c) continue;
      for (std::uint32_t e : g.out_edges()[v]) {
        std::uint32_t d = scc.comp_of[g.edge_to()[e]];
        if (d == c) continue;
        for (std::size_t t = 0; t < scc.count; ++t)
          if (reach[d][t]) reach[c][t] = true;
      }
    }
  }

  // union live components linked by a directed path either way
  std::vector<std::uint32_t> parent(scc.count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < scc.count; ++a)
    for (std::size_t b = a + 1; b < scc.count; ++b)
      if (live[a] && live[b] && (reach[a][b] || reach[b][a]))
        parent[find(static_cast<std::uint32_t>(a))] = find(static_cast<std::uint32_t>(b));

  std::map<std::uint32_t, std::uint32_t> cluster_index;
  for (std::size_t c = 0; c < scc.count; ++c)
    if (live[c]) cluster_index.emplace(find(static_cast<std::uint32_t>(c)), 0);
  std::uint32_t next = 0;
  for (auto& [root, idx] : cluster_index) idx = next++;
  rep.count = cluster_index.size();

  rep.component_states.assign(rep.count, {});
  for (std::uint32_t v = 0; v < n; ++v) {
    std::set<std::uint32_t> targets;
    std::uint32_t c = scc.comp_of[v];
    for (std::size_t t = 0; t < scc.count; ++t)
      if (reach[c][t] && live[t]) targets.insert(cluster_index.at(find(static_cast<std::uint32_t>(t))));
    for (std::uint32_t t : targets) rep.component_states[t].push_back(v);
  }
  return rep;
}

inline bool is_sigma_connected(const GroupShift& g) {
  return equals(g, identity_component(g));
}

/// Some power of the shift map kills every point: the shift is finite and
/// the only circuit in its graph is the identity loop.
inline bool is_sigma_infinitesimal(const GroupShift& g) {
  if (g.ld() != 1) return false;
  std::size_t n = g.states().size();
  for (std::uint32_t s = 0; s < n; ++s) {
    std::uint32_t v = s;
    for (std::size_t step = 0; step < n && v != g.identity_state(); ++step)
      v = g.edge_to()[g.out_edges()[v][0]];
    if (v != g.identity_state()) return false;
  }
  return true;
}

/// Smallest r with the r-th shift power trivial: the longest distance to the
/// identity loop in the functional state graph.
inline int nilpotency_index(const GroupShift& g) {
  if (!is_sigma_infinitesimal(g))
    throw std::invalid_argument("nilpotency index of a shift that is not sigma-infinitesimal");
  int worst = 0;
  std::size_t n = g.states().size();
  for (std::uint32_t s = 0; s < n; ++s) {
    int d = 0;
    std::uint32_t v = s;
    while (v != g.identity_state()) {
      v = g.edge_to()[g.out_edges()[v][0]];
      ++d;
    }
    worst = std::max(worst, d);
  }
  return worst;
}

/// Conjugacy invariants after forgetting the group structure: the alphabet
/// size d of the eventual image, the fixed-point counts of the finite factor
/// f_p = Per_p / d^p, their cycle counts by Moebius inversion, and the
/// stabilization index of the image chain when it is found within bound.
struct ConjugacyInvariants {
  std::uint64_t d = 1;
  bool fixed_alphabet_check = true;
  std::vector<bigint> f;             // f_p for p = 1..P
  std::vector<bigint> cycle_counts;  // c_q for q = 1..P
  bool consistent = true;
  std::optional<int> ell;
};

namespace detail {
inline int moebius(int n) {
  int out = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    out = -out;
  }
  if (n > 1) out = -out;
  return out;
}
}  // namespace detail

inline ConjugacyInvariants conjugacy_invariants(const GroupShift& g, int period_bound = 8,
                                                int ell_bound = -1) {
  if (period_bound < 1) throw std::invalid_argument("period bound must be >= 1");
  if (ell_bound < 0) ell_bound = 2 * static_cast<int>(g.states().size());
  ConjugacyInvariants inv;
  inv.d = g.ld();
  inv.f.reserve(period_bound);
  bigint dp = 1;
  for (int p = 1; p <= period_bound; ++p) {
    dp *= inv.d;
    bigint per = g.periodic_count(p);
    if (per % dp != 0) {
      inv.consistent = false;
      inv.f.push_back(0);
    } else {
      inv.f.push_back(per / dp);
    }
  }
  for (int q = 1; q <= period_bound; ++q) {
    bigint acc = 0;
    for (int m = 1; m <= q; ++m)
      if (q % m == 0) acc += detail::moebius(q / m) * inv.f[m - 1];
    if (acc % q != 0 || acc < 0) inv.consistent = false;
    inv.cycle_counts.push_back(acc / q);
  }
  if (inv.f[0] < 1) inv.consistent = false;

  GroupShift img = g;
  for (int l = 0; l <= ell_bound; ++l) {
    if (img.ld() != inv.d) inv.fixed_alphabet_check = false;
    GroupShift nxt = sigma_image(img, 1);
    if (equals(img, nxt)) {
      inv.ell = l;
      break;
    }
    img = std::move(nxt);
  }
  return inv;
}

}  // namespace gshift
