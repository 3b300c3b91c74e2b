#pragma once

// Alternating-sum formulas for differentials and Lie derivatives evaluated on sections.
// One template serves d_E, D_nabla and Lie algebroid differentials: the caller supplies the
// k-form evaluation, the action of a section on values, and the bracket.

#include <cstddef>
#include <vector>

namespace courant {

/// (d w)(e_0..e_k) = sum_i (-1)^i act(e_i, w(..^i..)) - sum_{i<j} (-1)^i w(..^i.., [e_i,e_j] at j, ..)
template <class Value, class Sect, class Eval, class Act, class Bracket>
Value cartan_differential(const std::vector<Sect>& e, Eval&& omega, Act&& act, Bracket&& br) {
  const std::size_t k1 = e.size();
  Value total{};
  bool have = false;
  auto add = [&](const Value& v, bool negate) {
    if (!have) {
      total = negate ? -v : v;
      have = true;
    } else if (negate) {
      total = total - v;
    } else {
      total = total + v;
    }
  };
  for (std::size_t i = 0; i < k1; ++i) {
    std::vector<Sect> rest;
    for (std::size_t m = 0; m < k1; ++m)
      if (m != i) rest.push_back(e[m]);
    add(act(e[i], omega(rest)), i % 2 == 1);
  }
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = i + 1; j < k1; ++j) {
      std::vector<Sect> args;
      for (std::size_t m = 0; m < k1; ++m) {
        if (m == i) continue;
        args.push_back(m == j ? br(e[i], e[j]) : e[m]);
      }
      add(omega(args), i % 2 == 0);
    }
  return total;
}

/// (L_e w)(e_1..e_k) = act(e, w(e_1..e_k)) - sum_i w(.., [e, e_i], ..)
template <class Value, class Sect, class Eval, class Act, class Bracket>
Value cartan_lie(const Sect& x, const std::vector<Sect>& e, Eval&& omega, Act&& act, Bracket&& br) {
  Value total = act(x, omega(e));
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::vector<Sect> args = e;
    args[i] = br(x, e[i]);
    total = total - omega(args);
  }
  return total;
}

}  // namespace courant
