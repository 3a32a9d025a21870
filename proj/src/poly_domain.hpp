#pragma once

#include "groebner.hpp"

#include <cstdint>

namespace qpf::dom {

using gb::Budget;
using gb::IdealBasis;
using poly::BoolPoly;

// Pol transition-ideal domain element over vocabularies (X'; X): variables
// x_i at index i, x'_i at index n+i, intermediates above 2n. The element is
// the reduced Groebner basis of a multilinear ideal; concretization is its
// variety, ordered by reverse ideal inclusion.
struct TransitionIdeal {
  IdealBasis basis;
  uint32_t n = 0;
  bool widened = false;  // star hit its iteration cap and returned top

  static TransitionIdeal top(uint32_t n) {
    TransitionIdeal t;
    t.n = n;
    t.basis.reduced = true;
    return t;
  }
  static TransitionIdeal bottom(uint32_t n);
  static TransitionIdeal identity(uint32_t n);

  bool is_top() const { return basis.is_top(); }
  bool is_bottom() const { return basis.is_bottom(); }
  bool operator==(const TransitionIdeal& o) const { return basis == o.basis; }

  static uint32_t pre_var(uint32_t, uint32_t i) { return i; }
  uint32_t post_var(uint32_t i) const { return n + i; }
};

TransitionIdeal join(const TransitionIdeal& a, const TransitionIdeal& b,
                     const Budget& budget = {});
TransitionIdeal meet(const TransitionIdeal& a, const TransitionIdeal& b,
                     const Budget& budget = {});
TransitionIdeal compose(const TransitionIdeal& a, const TransitionIdeal& b,
                        const Budget& budget = {});
// Kleene closure seeded with the identity relation; the ascending chain of
// ideals stabilizes, but a configurable cap guards Groebner blowup (cap hit
// returns top, which is sound).
TransitionIdeal star(const TransitionIdeal& a, uint32_t max_iters = 64,
                     const Budget& budget = {});
// Canonical form of a phase condition modulo the transition ideal.
BoolPoly reduce_condition(const TransitionIdeal& a, BoolPoly f);

BoolPoly rename_vars(const BoolPoly& p, const std::vector<std::pair<uint32_t, uint32_t>>& map);

}  // namespace qpf::dom
