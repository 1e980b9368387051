#include <catch2/catch_amalgamated.hpp>
#include <gshift/sigma_topology.hpp>

#include "fixtures.hpp"

using namespace gshift;
using namespace gshift::testing;

namespace {

GroupShift triple_g1() {
  auto alphabet = triple_alphabet();
  std::vector<word_t> window;
  for (elem_t a1 = 0; a1 < 4; ++a1)
    for (elem_t a2 = 0; a2 < 4; ++a2)
      for (elem_t b2 = 0; b2 < 4; ++b2)
        window.push_back(word_t{triple_index(a1, a2, 0)} * 32 +
                         triple_index((2 * a2) % 4, b2, 0));
  return GroupShift::from_window(alphabet, 1, std::move(window));
}

}  // namespace

TEST_CASE("sigma-connected components") {
  CHECK(sigma_components(GroupShift::full_shift(C(2))).count == 1);
  CHECK(sigma_components(diagonal_two_points()).count == 2);

  SECTION("triple-track example splits in two with an order-two head") {
    auto rep = sigma_components(example_triple());
    CHECK(rep.count == 2);
    CHECK(rep.head_group->order() == 2);
    CHECK(rep.head_sigma.is_bijective());
    CHECK(rep.head_sigma.image == std::vector<elem_t>{0, 1});  // identity map
  }
}

TEST_CASE("identity component") {
  auto full = GroupShift::full_shift(C(2));
  CHECK(equals(identity_component(full), full));
  CHECK(identity_component(diagonal_two_points()).point_count_if_finite() == 1);
  CHECK(equals(identity_component(example_triple()), triple_g1()));

  SECTION("idempotent, normal, and limit-degree preserving") {
    for (const GroupShift& g :
         {example_triple(), example_g2h(), diagonal_two_points(),
          overgroup_shift(C(4), {0, 2}), GroupShift::full_shift(S3())}) {
      auto sc = identity_component(g);
      CHECK(equals(identity_component(sc), sc));
      CHECK(is_normal_in(sc, g));
      CHECK(sc.ld() == g.ld());
    }
  }
}

TEST_CASE("heads") {
  CHECK(head(GroupShift::full_shift(C(2))).first->order() == 1);

  SECTION("diagonal two points") {
    auto [h, s] = head(diagonal_two_points());
    CHECK(h->order() == 2);
    CHECK(s.image == std::vector<elem_t>{0, 1});
  }
  SECTION("triple-track example") {
    auto [h, s] = head(example_triple());
    CHECK(h->order() == 2);
    CHECK(s.image == std::vector<elem_t>{0, 1});
  }
  SECTION("head sigma is bijective and the order matches the block index") {
    for (const GroupShift& g :
         {example_triple(), example_g2h(), diagonal_two_points(), example_triple_tail()}) {
      auto sc = identity_component(g);
      auto [h, s] = head(g);
      CHECK(s.valid());
      CHECK(s.is_bijective());
      for (int extra = 0; extra <= 1; ++extra) {
        int m = std::max(g.width(), sc.width()) + extra;
        CHECK(g.blocks(m).size() == h->order() * sc.blocks(m).size());
      }
    }
  }
}

TEST_CASE("sigma-infinitesimal shifts") {
  CHECK(is_sigma_infinitesimal(GroupShift::one_point(C(4))));
  CHECK(nilpotency_index(GroupShift::one_point(C(4))) == 0);

  CHECK(is_sigma_infinitesimal(example_triple_tail()));
  CHECK(nilpotency_index(example_triple_tail()) == 1);

  CHECK_FALSE(is_sigma_infinitesimal(diagonal_two_points()));
  CHECK_THROWS_AS(nilpotency_index(diagonal_two_points()), std::invalid_argument);
}

TEST_CASE("sigma-connectedness") {
  CHECK(is_sigma_connected(example_g2h()));
  CHECK_FALSE(is_sigma_connected(diagonal_two_points()));
  CHECK(is_sigma_connected(GroupShift::full_shift(A5())));
}

TEST_CASE("conjugacy invariants") {
  SECTION("full shifts: one fixed point at every period, image chain stable") {
    auto inv = conjugacy_invariants(GroupShift::full_shift(C(3)));
    CHECK(inv.d == 3);
    CHECK(inv.consistent);
    CHECK(inv.fixed_alphabet_check);
    for (const bigint& f : inv.f) CHECK(f == 1);
    REQUIRE(inv.ell.has_value());
    CHECK(*inv.ell == 0);
  }
  SECTION("overgroup head needs one image step") {
    auto inv = conjugacy_invariants(overgroup_shift(C(4), {0, 2}));
    CHECK(inv.d == 2);
    CHECK(inv.consistent);
    for (const bigint& f : inv.f) CHECK(f == 1);
    REQUIRE(inv.ell.has_value());
    CHECK(*inv.ell == 1);
  }
  SECTION("g2h example") {
    auto inv = conjugacy_invariants(example_g2h());
    CHECK(inv.d == 4);
    CHECK(inv.consistent);
    CHECK(inv.f[0] == 1);
  }
}

TEST_CASE("component count for the two-point head of a four-point diagonal") {
  // constant points over C4: head C4 with the identity map, four components
  auto g = GroupShift::from_window(C(4), 1, {0, 5, 10, 15});
  auto rep = sigma_components(g);
  CHECK(rep.count == 4);
  CHECK(rep.head_group->order() == 4);

  SECTION("a normal subshift with finite bijective-sigma quotient contains the core") {
    auto n = GroupShift::from_window(C(4), 1, {0, 10});  // constants 0 and 2
    REQUIRE(is_normal_in(n, g));
    auto qp = quotient(g, n);
    CHECK(qp.quotient.is_finite());
    CHECK(contains(n, identity_component(g)));
  }
}

TEST_CASE("connectedness in extensions and images") {
  auto g = example_g2h();
  SECTION("images of connected shifts are connected") {
    auto full2 = GroupShift::full_shift(C(2));
    std::vector<elem_t> img;
    for (word_t b : g.blocks(0)) img.push_back(static_cast<elem_t>(b % 2));
    auto code = SlidingBlockCode::make(g, full2, 0, std::move(img));
    CHECK(is_sigma_connected(image(code)));
    CHECK(is_sigma_connected(sigma_image(g, 1)));
  }
  SECTION("connected kernel and quotient force a connected extension") {
    // h-kernel and the quotient by it are full shifts, hence connected
    std::vector<elem_t> img;
    for (word_t b : g.blocks(0)) img.push_back(static_cast<elem_t>(b % 2));
    auto code = SlidingBlockCode::make(g, GroupShift::full_shift(C(2)), 0, std::move(img));
    auto n = kernel(code);
    CHECK(is_sigma_connected(n));
    CHECK(is_sigma_connected(quotient(g, n).quotient));
    CHECK(is_sigma_connected(g));
  }
}

TEST_CASE("finite sigma-connected shifts are sigma-infinitesimal") {
  // exhaustive over width-1 group shifts on groups of order <= 4
  for (const auto& [name, grp] : groups_up_to_8()) {
    if (grp->order() > 4) continue;
    auto pairs = make_group(direct_power(grp, 2));
    for (const auto& win : all_subgroups(pairs)) {
      std::vector<word_t> window(win.begin(), win.end());
      auto g = GroupShift::from_window(grp, 1, std::move(window));
      if (g.is_finite() && is_sigma_connected(g)) {
        INFO(name);
        CHECK(is_sigma_infinitesimal(g));
      }
    }
  }
}
