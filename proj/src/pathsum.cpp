#include "pathsum.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace qpf::ps {

using poly::Monomial;

bool PathSum::is_path_var(uint32_t v) const {
  return std::find(path_vars.begin(), path_vars.end(), v) != path_vars.end();
}

bool PathSum::output_mentions(uint32_t v) const {
  for (const auto& f : outputs)
    if (f.contains_var(v)) return true;
  return false;
}

void PathSum::drop_path_var(uint32_t v) {
  path_vars.erase(std::remove(path_vars.begin(), path_vars.end(), v), path_vars.end());
}

void apply_gate(PathSum& s, ir::GateKind kind, const Angle& angle,
                const std::vector<uint32_t>& qubits, uint32_t& fresh) {
  using ir::GateKind;
  auto& out = s.outputs;
  switch (kind) {
    case GateKind::H: {
      uint32_t q = qubits[0];
      uint32_t y = fresh++;
      s.phase.add_rotation(Angle::pi(), out[q] * BoolPoly::var(y));
      out[q] = BoolPoly::var(y);
      s.path_vars.push_back(y);
      s.norm_exp += 1;
      break;
    }
    case GateKind::X:
      out[qubits[0]] ^= BoolPoly::one();
      break;
    case GateKind::CNOT:
      out[qubits[1]] ^= out[qubits[0]];
      break;
    case GateKind::SWAP:
      std::swap(out[qubits[0]], out[qubits[1]]);
      break;
    case GateKind::Toffoli:
      out[qubits[2]] ^= out[qubits[0]] * out[qubits[1]];
      break;
    case GateKind::CCZ:
      s.phase.add_rotation(Angle::pi(), out[qubits[0]] * out[qubits[1]] * out[qubits[2]]);
      break;
    case GateKind::Z:
      s.phase.add_rotation(Angle::pi(), out[qubits[0]]);
      break;
    case GateKind::S:
      s.phase.add_rotation(Angle::half(), out[qubits[0]]);
      break;
    case GateKind::Sdg:
      s.phase.add_rotation(Angle::half(-1), out[qubits[0]]);
      break;
    case GateKind::T:
      s.phase.add_rotation(Angle::quarter(), out[qubits[0]]);
      break;
    case GateKind::Tdg:
      s.phase.add_rotation(Angle::quarter(-1), out[qubits[0]]);
      break;
    case GateKind::RZ:
      s.phase.add_rotation(angle, out[qubits[0]]);
      break;
    case GateKind::Uninterpreted:
      assert(false && "uninterpreted gate has no path sum");
  }
}

PathSum of_gate(ir::GateKind kind, const Angle& angle, uint32_t& fresh) {
  PathSum s;
  int ar = ir::gate_arity(kind);
  assert(ar > 0);
  s.n_in = s.n_out = uint32_t(ar);
  for (uint32_t i = 0; i < s.n_in; ++i) s.outputs.push_back(BoolPoly::var(i));
  std::vector<uint32_t> qs;
  for (uint32_t i = 0; i < s.n_in; ++i) qs.push_back(i);
  apply_gate(s, kind, angle, qs, fresh);
  return s;
}

PathSum compose(const PathSum& a, const PathSum& b, uint32_t& fresh) {
  assert(a.n_out == b.n_in);
  // Rename b's path variables, then move b's inputs out of the way before
  // substituting a's outputs (which may mention the same low indices).
  PhasePoly phase = b.phase;
  std::vector<BoolPoly> outs = b.outputs;
  std::vector<uint32_t> new_path = a.path_vars;

  std::vector<std::pair<uint32_t, uint32_t>> path_map, in_map;
  for (uint32_t y : b.path_vars) {
    uint32_t ny = fresh++;
    path_map.push_back({y, ny});
    new_path.push_back(ny);
  }
  std::vector<uint32_t> tmp_in;
  for (uint32_t i = 0; i < b.n_in; ++i) {
    uint32_t t = fresh++;
    in_map.push_back({i, t});
    tmp_in.push_back(t);
  }
  auto remap = [&](const BoolPoly& p) {
    BoolPoly q = dom::rename_vars(p, path_map);
    return dom::rename_vars(q, in_map);
  };
  for (auto& f : outs) f = remap(f);
  {
    PhasePoly np;
    for (const auto& [m, ang] : phase.terms()) {
      BoolPoly asp = remap(BoolPoly(m));
      assert(asp.nterms() == 1);
      np.add_term(asp.terms()[0], ang);
    }
    phase = np;
  }
  for (uint32_t i = 0; i < b.n_in; ++i) {
    for (auto& f : outs) f = f.substitute(tmp_in[i], a.outputs[i]);
    phase.substitute(tmp_in[i], a.outputs[i]);
  }

  PathSum r;
  r.n_in = a.n_in;
  r.n_out = b.n_out;
  r.norm_exp = a.norm_exp + b.norm_exp;
  r.phase = a.phase + phase;
  r.outputs = std::move(outs);
  r.path_vars = std::move(new_path);
  return r;
}

namespace {

// Contraction pattern of y: its whole phase part is integral pi.
// Returns the boolean witness P, or nullopt.
std::optional<BoolPoly> contraction_witness(const PathSum& s, uint32_t y) {
  if (s.output_mentions(y)) return std::nullopt;
  auto part = s.phase.var_part(y);
  if (part.empty()) return std::nullopt;
  std::vector<Monomial> ms;
  for (const auto& [m, a] : part) {
    if (!a.is_integer_pi()) return std::nullopt;
    if (a.num & 1) ms.push_back(m);
  }
  if (ms.empty()) return std::nullopt;
  return BoolPoly::of_terms(std::move(ms));
}

// Bare substitution candidates inside P: path variables z occurring exactly
// once, as the monomial {z}.
std::vector<uint32_t> solvable_vars(const PathSum& s, const BoolPoly& P, uint32_t y) {
  std::vector<uint32_t> out;
  for (const auto& m : P.terms()) {
    if (m.degree() != 1) continue;
    uint32_t z = m.vars[0];
    if (z == y || !s.is_path_var(z)) continue;
    size_t occurrences = 0;
    for (const auto& t : P.terms())
      if (t.contains(z)) ++occurrences;
    if (occurrences == 1) out.push_back(z);
  }
  return out;
}

}  // namespace

std::vector<BoolPoly> harvest_constraints(const PathSum& s) {
  std::vector<BoolPoly> out;
  for (uint32_t y : s.path_vars) {
    auto w = contraction_witness(s, y);
    if (w && !w->is_zero()) out.push_back(std::move(*w));
  }
  return out;
}

std::optional<StepInfo> rewrite_step(PathSum& s, const Strategy& strat) {
  // (E): unused path variable
  for (uint32_t y : s.path_vars) {
    if (!s.phase.contains_var(y) && !s.output_mentions(y)) {
      s.drop_path_var(y);
      s.norm_exp -= 2;
      return StepInfo{Rule::E, std::nullopt};
    }
  }

  // (H): contraction on y with substitution z := P + z; smallest z wins,
  // ties broken toward the largest contracted variable.
  struct Cand {
    uint32_t y, z;
    BoolPoly P;
  };
  std::optional<Cand> best;
  for (uint32_t y : s.path_vars) {
    auto w = contraction_witness(s, y);
    if (!w) continue;
    for (uint32_t z : solvable_vars(s, *w, y)) {
      BoolPoly r = *w ^ BoolPoly::var(z);
      if (strat.sub_degree_cap >= 0 && r.degree() > size_t(strat.sub_degree_cap)) continue;
      if (!best || z < best->z || (z == best->z && y > best->y))
        best = Cand{y, z, std::move(r)};
    }
  }
  if (best) {
    // remove the contracted variable's part, then substitute z everywhere
    auto part = s.phase.var_part(best->y);
    for (const auto& [m, a] : part)
      s.phase.add_term(m.mul(Monomial::var(best->y)), -a);
    for (auto& f : s.outputs) f = f.substitute(best->z, best->P);
    s.phase.substitute(best->z, best->P);
    s.drop_path_var(best->y);
    s.drop_path_var(best->z);
    s.norm_exp -= 2;
    return StepInfo{Rule::H, BoolPoly::var(best->z) ^ best->P};
  }

  // (omega): i^y (or (-i)^y) times (-1)^(y P)
  for (uint32_t y : s.path_vars) {
    if (s.output_mentions(y)) continue;
    auto part = s.phase.var_part(y);
    if (part.empty()) continue;
    Angle bare;
    bool ok = true;
    std::vector<Monomial> ms;
    for (const auto& [m, a] : part) {
      if (m.is_one()) {
        bare = a;
        continue;
      }
      if (!a.is_integer_pi()) {
        ok = false;
        break;
      }
      if (a.num & 1) ms.push_back(m);
    }
    if (!ok || !bare.dyadic_only() || bare.pow != 1) continue;  // need +-i^y
    bool plus = bare.num == 1;  // 1/2: i^y, 3/2: (-i)^y
    BoolPoly P = BoolPoly::of_terms(std::move(ms));
    if (strat.sub_degree_cap >= 0 && P.degree() > size_t(strat.sub_degree_cap)) continue;
    for (const auto& [m, a] : part)
      s.phase.add_term(m.mul(Monomial::var(y)), -a);
    s.phase.add_rotation(Angle::half(plus ? -1 : 1), P);
    s.phase.add_term(Monomial::one(), Angle::quarter(plus ? 1 : -1));
    s.drop_path_var(y);
    s.norm_exp -= 1;
    return StepInfo{Rule::Omega, std::nullopt};
  }
  return std::nullopt;
}

namespace {

// Outputs mixing several path variables are rewritten through a reverse (H)
// expansion (an inserted HH pair): output f becomes a fresh variable u with
// interference pi*w*(u + f). The operator is unchanged and every output
// carries at most one path variable afterwards.
void normalize_outputs(PathSum& s, uint32_t& scratch) {
  for (auto& f : s.outputs) {
    int pv = 0;
    for (uint32_t v : f.vars())
      if (s.is_path_var(v)) ++pv;
    if (pv < 2) continue;
    uint32_t u = scratch++;
    uint32_t w = scratch++;
    s.phase.add_rotation(poly::Angle::pi(), BoolPoly::var(w) * (BoolPoly::var(u) ^ f));
    f = BoolPoly::var(u);
    s.path_vars.push_back(u);
    s.path_vars.push_back(w);
    s.norm_exp += 2;
  }
}

}  // namespace

ReduceResult reduce(PathSum& s, const Strategy& strat) {
  ReduceResult res;
  std::set<BoolPoly> seen;
  auto collect = [&]() {
    for (auto& c : harvest_constraints(s))
      if (seen.insert(c).second) res.constraints.push_back(c);
  };
  while (res.steps < strat.max_steps) {
    collect();
    auto info = rewrite_step(s, strat);
    if (!info) break;
    ++res.steps;
  }
  if (res.steps >= strat.max_steps) res.budget_hit = true;
  collect();
  if (strat.normalize_outputs) {
    uint32_t scratch = 0;
    for (uint32_t v : s.path_vars) scratch = std::max(scratch, v + 1);
    for (uint32_t i = 0; i < s.n_in; ++i) scratch = std::max(scratch, i + 1);
    for (const auto& f : s.outputs)
      for (uint32_t v : f.vars()) scratch = std::max(scratch, v + 1);
    normalize_outputs(s, scratch);
  }
  return res;
}

dom::TransitionIdeal alpha_pol(const PathSum& s, const gb::Budget& budget) {
  uint32_t n = s.n_out;
  assert(s.n_in == n);
  std::vector<BoolPoly> gens;
  std::vector<uint32_t> aux;
  for (uint32_t i = 0; i < n; ++i) gens.push_back(BoolPoly::var(n + i) ^ s.outputs[i]);
  for (const auto& g : gens)
    for (uint32_t v : g.vars())
      if (v >= 2 * n) aux.push_back(v);
  std::sort(aux.begin(), aux.end());
  aux.erase(std::unique(aux.begin(), aux.end()), aux.end());
  gb::IdealBasis raw;
  raw.gens = std::move(gens);
  dom::TransitionIdeal t;
  t.n = n;
  t.basis = aux.empty() ? gb::buchberger(raw.gens, poly::MonomialOrder::grevlex(), budget)
                        : gb::eliminate(raw, aux, budget);
  return t;
}

dom::KsElement alpha_affine(const PathSum& s) {
  uint32_t n = s.n_out;
  assert(s.n_in == n);
  // rows over [X'(n) | X(n) | Y(k)]; havoc outputs simply contribute no row
  std::vector<uint32_t> aux;
  for (uint32_t i = 0; i < n; ++i) {
    if (s.outputs[i].degree() > 1) continue;
    for (uint32_t v : s.outputs[i].vars())
      if (v >= n) aux.push_back(v);
  }
  std::sort(aux.begin(), aux.end());
  aux.erase(std::unique(aux.begin(), aux.end()), aux.end());
  auto aux_col = [&](uint32_t v) {
    size_t k = std::lower_bound(aux.begin(), aux.end(), v) - aux.begin();
    return uint32_t(2 * n + k);
  };
  dom::Vocabulary voc{n, uint32_t(aux.size())};
  f2::F2Matrix m(voc.total());
  for (uint32_t i = 0; i < n; ++i) {
    const BoolPoly& f = s.outputs[i];
    if (f.degree() > 1) continue;  // soundly top on this output
    f2::BitRow r(voc.total());
    r.set(voc.post(i));
    for (const auto& mo : f.terms()) {
      if (mo.is_one()) {
        r.constant = !r.constant;
        continue;
      }
      uint32_t v = mo.vars[0];
      r.set(v < n ? voc.pre(v) : aux_col(v));
    }
    m.add_row(std::move(r));
  }
  return dom::KsElement(voc, std::move(m)).project_aux();
}

sim::DenseOp evaluate_dense(const PathSum& s) {
  uint32_t n = s.n_out;
  assert(s.n_in == n);
  if (n > 6) throw sim::Unsupported("path sum dense evaluation limited to 6 qubits");
  if (s.path_vars.size() > 20) throw sim::Unsupported("too many path variables");
  uint32_t maxv = 0;
  for (uint32_t v : s.path_vars) maxv = std::max(maxv, v + 1);
  maxv = std::max(maxv, n);
  for (const auto& f : s.outputs)
    for (uint32_t v : f.vars()) maxv = std::max(maxv, v + 1);

  sim::DenseOp op = sim::DenseOp::zero(n);
  std::vector<char> assign(maxv, 0);
  size_t npaths = size_t(1) << s.path_vars.size();
  for (size_t x = 0; x < (size_t(1) << n); ++x) {
    for (uint32_t i = 0; i < n; ++i) assign[i] = (x >> (n - 1 - i)) & 1;
    for (size_t y = 0; y < npaths; ++y) {
      for (size_t j = 0; j < s.path_vars.size(); ++j)
        assign[s.path_vars[j]] = (y >> j) & 1;
      Angle ph = s.phase.eval(assign);
      if (!ph.dyadic_only()) throw sim::Unsupported("symbolic angle in dense evaluation");
      if (ph.pow > 2) throw sim::Unsupported("phase finer than pi/4");
      size_t row = 0;
      for (uint32_t i = 0; i < n; ++i)
        row = (row << 1) | (s.outputs[i].eval(assign) ? 1 : 0);
      op.at(row, x) = op.at(row, x) + sim::Zw::omega_pow(int(ph.num << (2 - ph.pow)));
    }
  }
  op.set_scale_exp(s.norm_exp);
  return op;
}

}  // namespace qpf::ps
