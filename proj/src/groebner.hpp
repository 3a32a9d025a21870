#pragma once

#include "polyring.hpp"

namespace qpf::gb {

using poly::BoolPoly;
using poly::Monomial;
using poly::MonomialOrder;

struct Budget {
  size_t max_pairs = 50000;
  size_t max_gens = 1024;
};

// Generating set for a multilinear ideal over F2. Field equations are never
// stored; all arithmetic is multilinear, which works modulo <x_i^2 - x_i>.
// When `reduced` holds, gens form the unique reduced Groebner basis under
// `order`. A completion that hits the budget leaves a sound non-canonical
// set with `degraded` set; division against it still witnesses membership.
struct IdealBasis {
  std::vector<BoolPoly> gens;
  MonomialOrder order;
  bool reduced = false;
  bool degraded = false;

  bool is_top() const { return gens.empty(); }           // <0> : everything vanishes
  bool is_bottom() const {                               // <1> : empty variety
    for (const auto& g : gens)
      if (g.is_one()) return true;
    return false;
  }
  bool operator==(const IdealBasis& o) const { return gens == o.gens; }
};

// Unique remainder of multivariate division by a reduced basis; for a
// degraded basis the remainder is reduction-order deterministic but not
// canonical (equal outputs still imply equal residues mod the ideal).
BoolPoly normal_form(const IdealBasis& g, BoolPoly p);

IdealBasis buchberger(std::vector<BoolPoly> gens, MonomialOrder order,
                      const Budget& budget = {});

// Reduced basis of the elimination ideal I `cap` F2[remaining vars].
IdealBasis eliminate(const IdealBasis& g, const std::vector<uint32_t>& front,
                     const Budget& budget = {});

IdealBasis ideal_sum(const IdealBasis& a, const IdealBasis& b, const Budget& budget = {});
IdealBasis ideal_product(const IdealBasis& a, const IdealBasis& b, const Budget& budget = {});
// Debug route: I `cap` J via the t-trick, for the product-vs-intersection check.
IdealBasis ideal_intersect(const IdealBasis& a, const IdealBasis& b, uint32_t fresh_var,
                           const Budget& budget = {});

}  // namespace qpf::gb
