#include "poly_domain.hpp"

#include <algorithm>

namespace qpf::dom {

using poly::Monomial;
using poly::MonomialOrder;

TransitionIdeal TransitionIdeal::bottom(uint32_t n) {
  TransitionIdeal t;
  t.n = n;
  t.basis.gens = {BoolPoly::one()};
  t.basis.reduced = true;
  return t;
}

TransitionIdeal TransitionIdeal::identity(uint32_t n) {
  TransitionIdeal t;
  t.n = n;
  for (uint32_t i = 0; i < n; ++i)
    t.basis.gens.push_back(BoolPoly::var(i) ^ BoolPoly::var(n + i));
  t.basis.reduced = true;
  return t;
}

BoolPoly rename_vars(const BoolPoly& p, const std::vector<std::pair<uint32_t, uint32_t>>& map) {
  std::vector<Monomial> out;
  out.reserve(p.terms().size());
  for (const auto& m : p.terms()) {
    Monomial nm;
    for (uint32_t v : m.vars) {
      uint32_t t = v;
      for (auto [from, to] : map)
        if (v == from) {
          t = to;
          break;
        }
      nm.vars.push_back(t);
    }
    std::sort(nm.vars.begin(), nm.vars.end());
    nm.vars.erase(std::unique(nm.vars.begin(), nm.vars.end()), nm.vars.end());
    out.push_back(std::move(nm));
  }
  return BoolPoly::of_terms(std::move(out));
}

TransitionIdeal join(const TransitionIdeal& a, const TransitionIdeal& b, const Budget& budget) {
  TransitionIdeal t;
  t.n = a.n;
  t.basis = gb::ideal_product(a.basis, b.basis, budget);
  return t;
}

TransitionIdeal meet(const TransitionIdeal& a, const TransitionIdeal& b, const Budget& budget) {
  TransitionIdeal t;
  t.n = a.n;
  t.basis = gb::ideal_sum(a.basis, b.basis, budget);
  return t;
}

static uint32_t max_var(const IdealBasis& b) {
  uint32_t m = 0;
  for (const auto& g : b.gens)
    for (uint32_t v : g.vars()) m = std::max(m, v + 1);
  return m;
}

TransitionIdeal compose(const TransitionIdeal& a, const TransitionIdeal& b, const Budget& budget) {
  uint32_t n = a.n;
  if (a.is_bottom() || b.is_bottom()) return TransitionIdeal::bottom(n);
  uint32_t mid = std::max({2 * n, max_var(a.basis), max_var(b.basis)});
  std::vector<BoolPoly> gens;
  std::vector<std::pair<uint32_t, uint32_t>> post_to_mid, pre_to_mid;
  for (uint32_t i = 0; i < n; ++i) {
    post_to_mid.push_back({n + i, mid + i});
    pre_to_mid.push_back({i, mid + i});
  }
  for (const auto& g : a.basis.gens) gens.push_back(rename_vars(g, post_to_mid));
  for (const auto& g : b.basis.gens) gens.push_back(rename_vars(g, pre_to_mid));
  std::vector<uint32_t> mids;
  for (uint32_t i = 0; i < n; ++i) mids.push_back(mid + i);
  IdealBasis sum;
  sum.gens = std::move(gens);
  TransitionIdeal t;
  t.n = n;
  t.basis = gb::eliminate(sum, mids, budget);
  return t;
}

TransitionIdeal star(const TransitionIdeal& a, uint32_t max_iters, const Budget& budget) {
  TransitionIdeal s = TransitionIdeal::identity(a.n);
  for (uint32_t i = 0; i < max_iters; ++i) {
    TransitionIdeal next = join(s, compose(s, a, budget), budget);
    if (next == s) return s;
    s = next;
  }
  TransitionIdeal t = TransitionIdeal::top(a.n);
  t.widened = true;
  return t;
}

BoolPoly reduce_condition(const TransitionIdeal& a, BoolPoly f) {
  return gb::normal_form(a.basis, std::move(f));
}

}  // namespace qpf::dom
