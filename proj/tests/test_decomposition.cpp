#include <catch2/catch_amalgamated.hpp>
#include <gshift/decomposition.hpp>

#include "fixtures.hpp"

using namespace gshift;
using namespace gshift::testing;

namespace {

std::vector<std::uint32_t> factor_orders(const DecompositionSeries& s) {
  std::vector<std::uint32_t> out;
  for (const auto& c : s.certificates) out.push_back(c.simple_group->order());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("standard embeddings") {
  SECTION("full shift seeds a terminal state") {
    auto st = standard_embedding(GroupShift::full_shift(C(2)));
    CHECK(st.ell == 0);
    CHECK(st.ambient()->order() == 2);
    CHECK(st.meet.size() == 2);
  }
  SECTION("one-point shift embeds into the trivial full shift") {
    auto st = standard_embedding(GroupShift::one_point(C(3)));
    CHECK(st.ambient()->order() == 1);
  }
  SECTION("g2h example seeds on its 32-element edge group") {
    auto st = standard_embedding(example_g2h());
    CHECK(st.ambient()->order() == 32);
  }
  SECTION("embedding kernels are kernels of shift powers") {
    for (const GroupShift& g : {example_g2h(), overgroup_shift(C(4), {0, 2})}) {
      auto st = standard_embedding(g);
      while (!st.terminal) st = descend(std::move(st));
      CHECK(equals(kernel(st.code), ker_sigma_power(g, st.ell)));
    }
  }
}

TEST_CASE("descent steps") {
  SECTION("overgroup head triggers the shift step") {
    auto s3 = S3();
    std::vector<elem_t> a3;
    for (elem_t x = 0; x < s3->order(); ++x)
      if (s3->element_order(x) != 2) a3.push_back(x);
    REQUIRE(a3.size() == 3);
    auto g = overgroup_shift(s3, a3);
    auto st = standard_embedding(g);
    CHECK(st.ambient()->order() == 18);
    auto st2 = descend(std::move(st));
    CHECK(st2.ell == 1);
    CHECK(st2.ambient()->order() == 9);
    CHECK_FALSE(st2.terminal);
  }
  SECTION("alphabet shrinks strictly until terminal") {
    auto st = standard_embedding(example_g2h());
    std::uint64_t last = st.ambient()->order();
    while (!st.terminal) {
      st = descend(std::move(st));
      if (!st.terminal) {
        CHECK(st.ambient()->order() < last);
        last = st.ambient()->order();
      }
    }
  }
}

TEST_CASE("factor extraction") {
  SECTION("full C4 yields the even track") {
    auto res = extract_factor(GroupShift::full_shift(C(4)));
    auto* mid = std::get_if<ExtractMiddle>(&res);
    REQUIRE(mid != nullptr);
    CHECK(mid->normal.ld() == 2);
    CHECK(equals(mid->normal, c4_even_track()));
  }
  SECTION("full A5 is already simple") {
    auto res = extract_factor(GroupShift::full_shift(A5()));
    auto* simple = std::get_if<ExtractSimple>(&res);
    REQUIRE(simple != nullptr);
    CHECK(simple->simple_group->order() == 60);
    CHECK(simple->ell == 0);
  }
  SECTION("g2h example yields an intermediate subgroup of degree two") {
    auto res = extract_factor(example_g2h());
    auto* mid = std::get_if<ExtractMiddle>(&res);
    REQUIRE(mid != nullptr);
    CHECK(mid->normal.ld() == 2);
    CHECK(is_normal_in(mid->normal, example_g2h()));
  }
  CHECK_THROWS_AS(extract_factor(diagonal_two_points()), std::invalid_argument);
}

TEST_CASE("splice") {
  SECTION("r = 0 leaves the series alone") {
    auto n = c4_even_track();
    auto spliced = splice(n, {n, GroupShift::one_point(C(4))});
    CHECK(spliced.size() == 2);
    CHECK(equals(spliced[0], n));
  }
  SECTION("overgroup head absorbs into the pulled-back chain") {
    auto gn = overgroup_shift(C(4), {0, 2});
    auto n = c4_even_track();
    auto spliced = splice(gn, {n, GroupShift::one_point(C(4))});
    REQUIRE(spliced.size() == 2);
    CHECK(equals(spliced[0], gn));
    CHECK(spliced[1].point_count_if_finite() == 4);  // (a, 1, 1, ...) for a in C4
    CHECK(equals(spliced[1], ker_sigma_power(gn, 1)));
  }
}

TEST_CASE("decompose full shifts") {
  SECTION("C4: two C2 factors, trivial head and tail") {
    auto s = decompose(GroupShift::full_shift(C(4)));
    CHECK(s.head_group->order() == 1);
    CHECK(s.chain.size() == 3);
    CHECK(factor_orders(s) == std::vector<std::uint32_t>{2, 2});
    CHECK(s.chain.back().point_count_if_finite() == 1);
    CHECK(verify_series(GroupShift::full_shift(C(4)), s).pass);
  }
  SECTION("S3: factors C2 and C3") {
    auto g = GroupShift::full_shift(S3());
    auto s = decompose(g);
    CHECK(factor_orders(s) == std::vector<std::uint32_t>{2, 3});
    CHECK(s.head_group->order() == 1);
    CHECK(verify_series(g, s).pass);
  }
}

TEST_CASE("decompose the g2h example") {
  auto g = example_g2h();
  auto s = decompose(g);
  CHECK(s.head_group->order() == 1);
  CHECK(s.chain.size() == 3);
  CHECK(factor_orders(s) == std::vector<std::uint32_t>{2, 2});
  auto v = verify_series(g, s);
  INFO((v.failures.empty() ? std::string() : v.failures.front()));
  CHECK(v.pass);
}

TEST_CASE("decompose the triple-track example") {
  auto g = example_triple();
  auto s = decompose(g);
  CHECK(s.head_group->order() == 2);
  CHECK(s.head_sigma.image == std::vector<elem_t>{0, 1});
  CHECK(factor_orders(s) == std::vector<std::uint32_t>{2, 2});
  CHECK(is_sigma_infinitesimal(s.chain.back()));
  CHECK(s.chain.back().point_count_if_finite() == 4);
  CHECK(s.tail_nilpotency == 1);
  auto v = verify_series(g, s);
  INFO((v.failures.empty() ? std::string() : v.failures.front()));
  CHECK(v.pass);
}

TEST_CASE("hand-built series verify") {
  // the g2h example with its h-kernel as the middle term
  auto g = example_g2h();
  auto full2 = GroupShift::full_shift(C(2));
  std::vector<elem_t> img;
  for (word_t b : g.blocks(0)) img.push_back(static_cast<elem_t>(b % 2));
  auto hcode = SlidingBlockCode::make(g, full2, 0, std::move(img));
  auto g2 = kernel(hcode);

  DecompositionSeries s;
  auto [hgrp, hsigma] = head(g);
  s.head_group = hgrp;
  s.head_sigma = hsigma;
  s.chain = {g, g2, GroupShift::one_point(g.alphabet())};
  // certificates: onto C2 via the h-track; then the even track onto C2
  auto c2 = C(2);
  s.certificates.push_back(FactorCertificate{c2, hcode.with_target(full2)});
  std::vector<elem_t> img2;
  for (word_t b : g2.blocks(0)) img2.push_back(static_cast<elem_t>(b) == 0 ? 0 : 1);
  s.certificates.push_back(
      FactorCertificate{c2, SlidingBlockCode::make(g2, full2, 0, std::move(img2))});
  s.tail_nilpotency = 0;
  CHECK(verify_series(g, s).pass);

  SECTION("corrupting a certificate is caught") {
    std::swap(s.certificates[0], s.certificates[1]);
    auto v = verify_series(g, s);
    CHECK_FALSE(v.pass);
    CHECK_FALSE(v.failures.empty());
  }
}

TEST_CASE("uniqueness across tie-breaking") {
  for (const GroupShift& g :
       {GroupShift::full_shift(C(4)), GroupShift::full_shift(klein4()),
        GroupShift::full_shift(S3()), example_g2h(), example_triple()}) {
    auto a = decompose(g, TieBreak::SmallestFirst);
    auto b = decompose(g, TieBreak::LargestFirst);
    REQUIRE(verify_series(g, a).pass);
    REQUIRE(verify_series(g, b).pass);
    auto u = uniqueness_report(a, b);
    INFO((u.failures.empty() ? std::string() : u.failures.front()));
    CHECK(u.pass);
  }
  SECTION("different shifts do not match") {
    auto a = decompose(GroupShift::full_shift(C(2)));
    auto b = decompose(GroupShift::full_shift(C(3)));
    CHECK_FALSE(uniqueness_report(a, b).pass);
  }
}

TEST_CASE("prime limit degree forces a single cyclic factor") {
  for (const GroupShift& g :
       {GroupShift::full_shift(C(5)), overgroup_shift(C(4), {0, 2}), example_triple_tail()}) {
    if (g.is_finite()) continue;
    if (!is_sigma_connected(g)) continue;
    auto s = decompose(g);
    if (s.certificates.size() == 1) {
      CHECK(s.certificates[0].simple_group->order() == g.ld());
      CHECK(s.certificates[0].simple_group->is_abelian());
    } else {
      FAIL("prime limit degree must give exactly one factor");
    }
  }
}
