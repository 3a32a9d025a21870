#include "groebner.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace qpf::gb {

namespace {

// One full reduction pass: rewrites every reducible monomial, largest first.
BoolPoly divide(const std::vector<BoolPoly>& gens, const MonomialOrder& ord, BoolPoly p) {
  std::vector<const Monomial*> leads(gens.size(), nullptr);
  for (size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_zero()) leads[i] = gens[i].leading(ord);
  bool changed = true;
  while (changed && !p.is_zero()) {
    changed = false;
    // find the largest reducible monomial of p
    const Monomial* target = nullptr;
    const BoolPoly* by = nullptr;
    const Monomial* by_lead = nullptr;
    for (const auto& m : p.terms()) {
      for (size_t i = 0; i < gens.size(); ++i) {
        if (!leads[i] || !leads[i]->divides(m)) continue;
        if (!target || ord.less(*target, m)) {
          target = &m;
          by = &gens[i];
          by_lead = leads[i];
        }
        break;
      }
    }
    if (!target) break;
    Monomial q = target->quotient(*by_lead);
    p ^= q * *by;
    changed = true;
  }
  return p;
}

struct Pair {
  size_t i, j;       // j == SIZE_MAX means field pair: multiply gen i by var
  uint32_t var = 0;  // variable for field pairs
  size_t sugar = 0;
};

}  // namespace

BoolPoly normal_form(const IdealBasis& g, BoolPoly p) {
  if (g.is_bottom()) return BoolPoly::zero();
  return divide(g.gens, g.order, std::move(p));
}

IdealBasis buchberger(std::vector<BoolPoly> gens, MonomialOrder order, const Budget& budget) {
  IdealBasis out;
  out.order = order;

  std::vector<BoolPoly> basis;
  for (auto& g : gens) {
    BoolPoly r = divide(basis, order, std::move(g));
    if (!r.is_zero()) basis.push_back(std::move(r));
  }

  auto lead = [&](size_t i) { return *basis[i].leading(order); };

  std::deque<Pair> queue;
  auto push_pairs = [&](size_t k) {
    Monomial lk = lead(k);
    for (size_t i = 0; i < k; ++i) {
      Monomial li = lead(i);
      Monomial lcm = li.mul(lk);
      // product criterion: coprime leading monomials reduce to zero
      if (lcm.degree() == li.degree() + lk.degree()) continue;
      queue.push_back({i, k, 0, lcm.degree()});
    }
    for (uint32_t v : lk.vars) queue.push_back({k, SIZE_MAX, v, lk.degree() + 1});
  };
  for (size_t k = 0; k < basis.size(); ++k) push_pairs(k);

  size_t processed = 0;
  while (!queue.empty()) {
    if (++processed > budget.max_pairs || basis.size() > budget.max_gens) {
      out.gens = std::move(basis);
      out.degraded = true;
      return out;
    }
    // sugar-degree selection: smallest lcm degree first
    auto it = std::min_element(queue.begin(), queue.end(),
                               [](const Pair& a, const Pair& b) { return a.sugar < b.sugar; });
    Pair pr = *it;
    queue.erase(it);

    BoolPoly s;
    if (pr.j == SIZE_MAX) {
      // S-polynomial with the field equation var^2 + var, multilinearly var*g
      s = Monomial::var(pr.var) * basis[pr.i];
    } else {
      Monomial li = lead(pr.i), lj = lead(pr.j);
      Monomial lcm = li.mul(lj);
      s = (lcm.quotient(li) * basis[pr.i]) ^ (lcm.quotient(lj) * basis[pr.j]);
    }
    s = divide(basis, order, std::move(s));
    if (s.is_zero()) continue;
    basis.push_back(std::move(s));
    push_pairs(basis.size() - 1);
    if (basis.back().is_one()) break;  // ideal is <1>
  }

  // inter-reduce to the unique reduced basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      BoolPoly g = basis[i];
      basis[i] = BoolPoly::zero();
      BoolPoly r = divide(basis, order, g);
      basis[i] = r;
      if (r != g) changed = true;
    }
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const BoolPoly& p) { return p.is_zero(); }),
                basis.end());
  }
  std::sort(basis.begin(), basis.end(), [&](const BoolPoly& a, const BoolPoly& b) {
    return order.less(*a.leading(order), *b.leading(order));
  });
  if (!basis.empty() && basis.front().is_one()) basis = {BoolPoly::one()};
  out.gens = std::move(basis);
  out.reduced = true;
  return out;
}

IdealBasis eliminate(const IdealBasis& g, const std::vector<uint32_t>& front,
                     const Budget& budget) {
  std::vector<uint32_t> fr = front;
  std::sort(fr.begin(), fr.end());
  IdealBasis blocked = buchberger(g.gens, MonomialOrder::block(fr), budget);
  std::vector<BoolPoly> kept;
  for (const auto& p : blocked.gens) {
    bool touches = false;
    for (uint32_t v : p.vars())
      if (std::binary_search(fr.begin(), fr.end(), v)) {
        touches = true;
        break;
      }
    if (!touches) kept.push_back(p);
  }
  IdealBasis out = buchberger(std::move(kept), MonomialOrder::grevlex(), budget);
  out.degraded = out.degraded || blocked.degraded;
  out.reduced = !out.degraded;
  return out;
}

IdealBasis ideal_sum(const IdealBasis& a, const IdealBasis& b, const Budget& budget) {
  std::vector<BoolPoly> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return buchberger(std::move(gens), a.order, budget);
}

IdealBasis ideal_product(const IdealBasis& a, const IdealBasis& b, const Budget& budget) {
  std::vector<BoolPoly> gens;
  if (a.is_bottom()) return b;  // <1>*J = J
  if (b.is_bottom()) return a;
  gens.reserve(a.gens.size() * b.gens.size());
  for (const auto& f : a.gens)
    for (const auto& g : b.gens) gens.push_back(f * g);
  return buchberger(std::move(gens), a.order, budget);
}

IdealBasis ideal_intersect(const IdealBasis& a, const IdealBasis& b, uint32_t t,
                           const Budget& budget) {
  std::vector<BoolPoly> gens;
  BoolPoly tv = BoolPoly::var(t);
  BoolPoly tv1 = tv ^ BoolPoly::one();
  for (const auto& f : a.gens) gens.push_back(tv * f);
  for (const auto& g : b.gens) gens.push_back(tv1 * g);
  IdealBasis big = buchberger(std::move(gens), MonomialOrder::block({t}), budget);
  return eliminate(big, {t}, budget);
}

}  // namespace qpf::gb
