#pragma once

// Shift fixtures shared across suites: the worked examples every module is
// exercised against.

#include <gshift/shift.hpp>

#include "catalog.hpp"

namespace gshift::testing {

/// Direct product of two table groups; index of (a, b) is a*|B| + b.
inline GroupPtr product(const GroupPtr& a, const GroupPtr& b) {
  std::uint32_t n = a->order() * b->order();
  std::vector<std::vector<elem_t>> table(n, std::vector<elem_t>(n));
  std::vector<std::string> labels(n);
  auto idx = [&](elem_t x, elem_t y) { return x * b->order() + y; };
  for (elem_t x1 = 0; x1 < a->order(); ++x1)
    for (elem_t y1 = 0; y1 < b->order(); ++y1) {
      labels[idx(x1, y1)] = "(" + a->label(x1) + "," + b->label(y1) + ")";
      for (elem_t x2 = 0; x2 < a->order(); ++x2)
        for (elem_t y2 = 0; y2 < b->order(); ++y2)
          table[idx(x1, y1)][idx(x2, y2)] = idx(a->mul(x1, x2), b->mul(y1, y2));
    }
  return make_group(FiniteGroup::from_table(std::move(table), std::move(labels)));
}

/// The shift on C4 x C2 cut out by h' = g^2 h: 8 letters, 32 edges, limit
/// degree 4.
inline GroupShift example_g2h() {
  auto alphabet = product(C(4), C(2));  // (a, b), index 2a + b
  std::vector<word_t> window;
  for (elem_t a = 0; a < 4; ++a)
    for (elem_t b = 0; b < 2; ++b)
      for (elem_t a2 = 0; a2 < 4; ++a2) {
        elem_t b2 = (a % 2 + b) % 2;
        window.push_back(word_t{a * 2u + b} * 8 + (a2 * 2u + b2));
      }
  return GroupShift::from_window(alphabet, 1, std::move(window));
}

/// Alphabet C4 x C4 x C2 with g1' = g2^2 and g3' = g3; finite head of order
/// two, limit degree 4.
inline GroupPtr triple_alphabet() { return product(product(C(4), C(4)), C(2)); }

inline elem_t triple_index(elem_t a1, elem_t a2, elem_t a3) { return (a1 * 4 + a2) * 2 + a3; }

inline GroupShift example_triple() {
  auto alphabet = triple_alphabet();
  std::vector<word_t> window;
  for (elem_t a1 = 0; a1 < 4; ++a1)
    for (elem_t a2 = 0; a2 < 4; ++a2)
      for (elem_t a3 = 0; a3 < 2; ++a3)
        for (elem_t b2 = 0; b2 < 4; ++b2)
          window.push_back(word_t{triple_index(a1, a2, a3)} * 32 +
                           triple_index((2 * a2) % 4, b2, a3));
  return GroupShift::from_window(alphabet, 1, std::move(window));
}

/// The order-four tail inside the triple-track shift: points (a,1,1,...).
inline GroupShift example_triple_tail() {
  auto alphabet = triple_alphabet();
  std::vector<word_t> window;
  for (elem_t a1 = 0; a1 < 4; ++a1)
    window.push_back(word_t{triple_index(a1, 0, 0)} * 32 + triple_index(0, 0, 0));
  return GroupShift::from_window(alphabet, 1, std::move(window));
}

/// Overgroup head shift: x0 ranges over the whole alphabet, every later
/// letter stays inside a chosen subgroup.
inline GroupShift overgroup_shift(const GroupPtr& alphabet,
                                  const std::vector<elem_t>& subgroup) {
  std::vector<word_t> window;
  for (elem_t a = 0; a < alphabet->order(); ++a)
    for (elem_t b : subgroup) window.push_back(word_t{a} * alphabet->order() + b);
  return GroupShift::from_window(alphabet, 1, std::move(window));
}

/// Two constant points over C2: the diagonal width-1 window.
inline GroupShift diagonal_two_points() {
  return GroupShift::from_window(C(2), 1, {0, 3});  // (0,0) and (1,1)
}

/// Full shift on the subgroup {0, 2} of C4, presented inside C4.
inline GroupShift c4_even_track() {
  return GroupShift::from_window(C(4), 0, {0, 2});
}

}  // namespace gshift::testing
