#include <catch2/catch_amalgamated.hpp>
#include <gshift/group.hpp>

#include "catalog.hpp"

using namespace gshift;
using namespace gshift::testing;

namespace {
elem_t by_label(const GroupPtr& g, const std::string& label) {
  for (elem_t i = 0; i < g->order(); ++i)
    if (g->label(i) == label) return i;
  FAIL("no element labelled " << label);
  return 0;
}
}  // namespace

TEST_CASE("closure") {
  auto c4 = C(4);
  CHECK(closure(c4, {}).elements == std::vector<elem_t>{0});
  CHECK(closure(c4, {2}).elements == std::vector<elem_t>{0, 2});

  auto v4 = klein4();
  CHECK(closure(v4, {1, 2}).elements.size() == 4);

  CHECK_THROWS_AS(closure(c4, {7}), std::invalid_argument);
}

TEST_CASE("direct powers") {
  CHECK(direct_power(C(2), 3).order() == 8);
  CHECK(direct_power(C(1), 5).order() == 1);
  CHECK(direct_power(C4xC2(), 2).order() == 64);

  Budget tight{10};
  CHECK_THROWS_AS(direct_power(C(4), 3, tight), BudgetError);
}

TEST_CASE("group invariants hold for constructed groups") {
  for (const auto& [name, g] : groups_up_to_8()) {
    INFO(name);
    CHECK(g->mul(0, 0) == 0);
    for (elem_t a = 0; a < g->order(); ++a) {
      CHECK(g->mul(0, a) == a);
      CHECK(g->mul(a, 0) == a);
      CHECK(g->mul(a, g->inv(a)) == 0);
    }
    for (elem_t a = 0; a < g->order(); ++a)
      for (elem_t b = 0; b < g->order(); ++b)
        for (elem_t c = 0; c < g->order(); ++c)
          REQUIRE(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
  }
}

TEST_CASE("is_normal") {
  auto v4 = make_group(direct_power(C(2), 2));
  Subgroup diag = closure(v4, {3});  // (1,1)
  CHECK(diag.elements == std::vector<elem_t>{0, 3});
  CHECK(is_normal(diag, whole(v4)));

  auto s3 = S3();
  Subgroup flip = closure(s3, {by_label(s3, "(0 1)")});
  CHECK(flip.order() == 2);
  CHECK_FALSE(is_normal(flip, whole(s3)));

  auto s5 = S5();
  Subgroup a5 = closure(s5, {by_label(s5, "(0 1 2)"), by_label(s5, "(0 1 2 3 4)")});
  CHECK(a5.order() == 60);
  CHECK(is_normal(a5, whole(s5)));

  CHECK_THROWS_AS(is_normal(whole(s3), flip), std::invalid_argument);
}

TEST_CASE("quotient groups") {
  auto c4 = C(4);
  auto [q1, p1] = quotient_group(c4, closure(c4, {2}));
  CHECK(q1->order() == 2);
  CHECK(p1.valid());

  auto v4 = make_group(direct_power(C(2), 2));
  auto [q2, p2] = quotient_group(v4, closure(v4, {3}));
  CHECK(q2->order() == 2);
  CHECK(p2.valid());

  auto s3 = S3();
  Subgroup a3 = closure(s3, {by_label(s3, "(0 1 2)")});
  auto [q3, p3] = quotient_group(s3, a3);
  CHECK(q3->order() == 2);
  CHECK(p3.valid());

  SECTION("projection is surjective with kernel exactly n") {
    std::vector<bool> hit(q3->order(), false);
    std::vector<elem_t> kernel;
    for (elem_t x = 0; x < s3->order(); ++x) {
      hit[p3(x)] = true;
      if (p3(x) == 0) kernel.push_back(x);
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    CHECK(kernel == a3.elements);
  }

  CHECK_THROWS_AS(quotient_group(s3, closure(s3, {by_label(s3, "(0 1)")})),
                  std::invalid_argument);
}

TEST_CASE("is_simple") {
  CHECK(is_simple(*C(2)));
  CHECK_FALSE(is_simple(*C(4)));
  CHECK(is_simple(*C(3)));
  CHECK_FALSE(is_simple(*S3()));
  CHECK(is_simple(*A5()));
  CHECK_THROWS_AS(is_simple(*C(1)), std::invalid_argument);
}

TEST_CASE("composition series") {
  auto series_orders = [](const std::vector<Subgroup>& s) {
    std::vector<std::size_t> out;
    for (const auto& g : s) out.push_back(g.order());
    return out;
  };

  CHECK(series_orders(composition_series(C(2))) == std::vector<std::size_t>{2, 1});
  CHECK(series_orders(composition_series(C(4))) == std::vector<std::size_t>{4, 2, 1});
  CHECK(composition_series(C(4))[1].elements == std::vector<elem_t>{0, 2});

  auto s3 = S3();
  auto series = composition_series(s3);
  REQUIRE(series.size() == 3);
  CHECK(series[1].order() == 3);  // the 3-cycle subgroup

  SECTION("factor orders multiply to the group order") {
    for (const auto& [name, g] : groups_up_to_8()) {
      INFO(name);
      auto s = composition_series(g);
      std::size_t prod = 1;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) prod *= s[i].order() / s[i + 1].order();
      CHECK(prod == g->order());
    }
  }
}

TEST_CASE("normal subgroups") {
  CHECK(normal_subgroups(C(2)).size() == 2);
  CHECK(normal_subgroups(make_group(direct_power(C(2), 2))).size() == 5);
  auto a5 = A5();
  auto ns = normal_subgroups(a5);
  REQUIRE(ns.size() == 2);
  CHECK(ns[0].order() == 1);
  CHECK(ns[1].order() == 60);

  SECTION("is_simple agrees with the normal subgroup count") {
    for (const auto& [name, g] : groups_up_to_8()) {
      if (g->order() < 2) continue;
      INFO(name);
      CHECK(is_simple(*g) == (normal_subgroups(g).size() == 2));
    }
  }
}

TEST_CASE("power views multiply componentwise") {
  auto s3 = S3();
  PowerGroup pw(s3, 3);
  CHECK(pw.order() == 216);
  std::vector<elem_t> a{1, 2, 3}, b{4, 5, 0};
  word_t ea = pw.encode(a), eb = pw.encode(b);
  word_t prod = pw.mul(ea, eb);
  for (int i = 0; i < 3; ++i) CHECK(pw.letter(prod, i) == s3->mul(a[i], b[i]));
  CHECK(pw.mul(prod, pw.inv(prod)) == 0);
  CHECK(pw.decode(ea) == a);
}

TEST_CASE("subgroup materialization and isomorphism") {
  auto s5 = S5();
  Subgroup a5sub = closure(s5, {by_label(s5, "(0 1 2)"), by_label(s5, "(0 1 2 3 4)")});
  FiniteGroup a5 = subgroup_as_group(*s5, a5sub.elements);
  CHECK(a5.order() == 60);
  CHECK(is_simple(a5));
  CHECK(isomorphic(a5, *A5()));

  CHECK(isomorphic(*C(4), *C(4)));
  CHECK_FALSE(isomorphic(*C(4), *klein4()));
  CHECK_FALSE(isomorphic(*D4(), *quaternion8()));
  CHECK_FALSE(isomorphic(*D4(), *C(8)));
  CHECK(isomorphic(*make_group(direct_power(C(2), 2)), *klein4()));

  CHECK(simple_group_tag(*C(5)) == "C5");
  CHECK(simple_group_tag(*A5()) == "A5");
}

TEST_CASE("quotient by power view subgroup") {
  auto c2 = C(2);
  PowerGroup pw(c2, 2);
  std::vector<word_t> elems{0, 1, 2, 3};
  std::vector<word_t> diag{0, 3};
  auto q = quotient_by(pw, elems, diag);
  CHECK(q.group.order() == 2);
  CHECK(q.coset_of.at(0) == 0);
  CHECK(q.coset_of.at(3) == 0);
  CHECK(q.coset_of.at(1) == q.coset_of.at(2));
}
