#include "transform.hpp"

#include <algorithm>
#include <cassert>

namespace qpf::xform {

using an::Loc;
using an::MergeReport;
using ir::GateApp;
using ir::GateKind;
using ir::Program;
using ir::Stmt;
using ir::StmtPtr;
using poly::Angle;

namespace {

bool is_odd_quarter(const Angle& a) { return a.odd_quarter(); }

void count_stmt(const Stmt& s, GateStats& st, const Program& p, uint64_t weight,
                GateStats* dyn);

void count_gate(const GateApp& g, GateStats& st) {
  st.total += 1;
  st.per_kind[ir::gate_name(g.kind)] += 1;
  switch (g.kind) {
    case GateKind::T:
    case GateKind::Tdg: st.t += 1; break;
    case GateKind::RZ:
      if (is_odd_quarter(g.angle)) st.t += 1;
      break;
    case GateKind::H: st.h += 1; break;
    case GateKind::CNOT: st.cnot += 1; break;
    case GateKind::CCZ:
    case GateKind::Toffoli:
      st.ccz_tof += 1;
      st.t += 7;
      break;
    default: break;
  }
}

void count_stmt(const Stmt& s, GateStats& st, const Program& p, uint64_t weight,
                GateStats* dyn) {
  switch (s.kind) {
    case Stmt::Gate: {
      count_gate(s.gate, st);
      if (dyn) {
        GateStats one;
        count_gate(s.gate, one);
        dyn->dynamic_t += weight * uint64_t(one.t);
      }
      break;
    }
    case Stmt::Seq:
    case Stmt::IfStar:
      for (const auto& c : s.children)
        if (c) count_stmt(*c, st, p, weight, dyn);
      break;
    case Stmt::WhileStar:
      count_stmt(*s.children[0], st, p, weight * (s.trips ? s.trips : 1), dyn);
      break;
    case Stmt::Call: {
      auto it = p.procedures.find(s.callee);
      if (it != p.procedures.end() && it->second.body)
        count_stmt(*it->second.body, st, p, weight, dyn);
      break;
    }
    default: break;
  }
}

}  // namespace

GateStats count(const Program& p) {
  GateStats st;
  GateStats dyn;
  if (p.body) count_stmt(*p.body, st, p, 1, &dyn);
  st.dynamic_t = dyn.dynamic_t;
  return st;
}

namespace {

// One rotation of the gadget network, dropped when merged away.
StmtPtr rz_of(uint32_t q, const Angle& a) {
  if (a.is_zero()) return nullptr;
  GateApp g;
  g.qubits = {q};
  if (a.dyadic_only()) {
    if (a == Angle::quarter()) g.kind = GateKind::T;
    else if (a == Angle::quarter(-1)) g.kind = GateKind::Tdg;
    else if (a == Angle::half()) g.kind = GateKind::S;
    else if (a == Angle::half(-1)) g.kind = GateKind::Sdg;
    else if (a == Angle::pi()) g.kind = GateKind::Z;
    else {
      g.kind = GateKind::RZ;
      g.angle = a;
    }
  } else {
    g.kind = GateKind::RZ;
    g.angle = a;
  }
  return Stmt::of_gate(std::move(g));
}

StmtPtr cnot_of(uint32_t c, uint32_t t) {
  GateApp g;
  g.kind = GateKind::CNOT;
  g.qubits = {c, t};
  return Stmt::of_gate(std::move(g));
}

StmtPtr h_of(uint32_t q) {
  GateApp g;
  g.kind = GateKind::H;
  g.qubits = {q};
  return Stmt::of_gate(std::move(g));
}

struct Rewriter {
  const MergeReport& rep;

  // angle of gadget slot k after merging; nullopt when removed
  std::optional<Angle> slot_angle(int32_t gate, int k) const {
    static const int64_t signs[7] = {1, 1, 1, -1, -1, -1, 1};
    auto it = rep.actions.find(Loc{gate, int16_t(k)});
    if (it == rep.actions.end()) return Angle::quarter(signs[k]);
    if (it->second.remove) return std::nullopt;
    return it->second.angle;
  }

  bool gadget_touched(int32_t gate) const {
    for (int k = 0; k < 7; ++k)
      if (rep.actions.count(Loc{gate, int16_t(k)})) return true;
    return false;
  }

  // CCZ phase network over (a, b, c): rotations on the wire combinations
  // a, b, c, a+b, a+c, b+c, a+b+c in gadget slot order.
  void emit_ccz_network(std::vector<StmtPtr>& out, int32_t gate, uint32_t a, uint32_t b,
                        uint32_t c) const {
    auto slot = [&](int k, uint32_t q) {
      if (auto ang = slot_angle(gate, k)) {
        if (auto s = rz_of(q, *ang)) out.push_back(std::move(s));
      }
    };
    slot(0, a);
    slot(1, b);
    slot(2, c);
    out.push_back(cnot_of(a, b));  // b <- a+b
    slot(3, b);
    out.push_back(cnot_of(a, c));  // c <- a+c
    slot(4, c);
    out.push_back(cnot_of(b, c));  // c <- b+c
    slot(5, c);
    out.push_back(cnot_of(a, c));  // c <- a+b+c
    slot(6, c);
    out.push_back(cnot_of(b, c));  // c restored
    out.push_back(cnot_of(a, b));  // b restored
  }

  StmtPtr rewrite_gate(const Stmt& s) const {
    const GateApp& g = s.gate;
    // whole-gate actions
    auto it = rep.actions.find(Loc{g.location, -1});
    if (it != rep.actions.end()) {
      if (it->second.remove) return nullptr;
      // representative of a merged diagonal partition
      if (g.kind == GateKind::CCZ) {
        // merged whole-CCZ partitions: total angle pi keeps the gate, zero
        // removes it; other multiples cannot arise from pi-valued members
        if (it->second.angle.is_zero()) return nullptr;
        return s.clone();
      }
      return rz_of(g.qubits[0], it->second.angle);
    }
    if ((g.kind == GateKind::CCZ || g.kind == GateKind::Toffoli) && gadget_touched(g.location)) {
      std::vector<StmtPtr> out;
      uint32_t a = g.qubits[0], b = g.qubits[1], c = g.qubits[2];
      if (g.kind == GateKind::Toffoli) out.push_back(h_of(c));
      emit_ccz_network(out, g.location, a, b, c);
      if (g.kind == GateKind::Toffoli) out.push_back(h_of(c));
      return Stmt::seq(std::move(out));
    }
    return s.clone();
  }

  StmtPtr rewrite(const Stmt& s) const {
    switch (s.kind) {
      case Stmt::Gate: return rewrite_gate(s);
      case Stmt::Seq: {
        std::vector<StmtPtr> items;
        for (const auto& c : s.children) {
          StmtPtr r = rewrite(*c);
          if (!r) continue;
          if (r->kind == Stmt::Seq) {
            for (auto& rc : r->children) items.push_back(std::move(rc));
          } else if (r->kind != Stmt::Skip) {
            items.push_back(std::move(r));
          }
        }
        if (items.empty()) return Stmt::skip();
        return Stmt::seq(std::move(items));
      }
      case Stmt::IfStar: {
        StmtPtr a = rewrite(*s.children[0]);
        StmtPtr b = rewrite(*s.children[1]);
        return Stmt::if_star(a ? std::move(a) : Stmt::skip(), b ? std::move(b) : Stmt::skip());
      }
      case Stmt::WhileStar: {
        StmtPtr b = rewrite(*s.children[0]);
        return Stmt::while_star(b ? std::move(b) : Stmt::skip(), s.trips);
      }
      default: return s.clone();
    }
  }
};

bool inverse_pair(const GateApp& a, const GateApp& b) {
  if (a.qubits != b.qubits) return false;
  if (a.kind == b.kind && ir::is_self_inverse(a.kind)) return true;
  auto inv = [](GateKind x, GateKind y) {
    return (x == GateKind::S && y == GateKind::Sdg) || (x == GateKind::Sdg && y == GateKind::S) ||
           (x == GateKind::T && y == GateKind::Tdg) || (x == GateKind::Tdg && y == GateKind::T);
  };
  if (inv(a.kind, b.kind)) return true;
  if (a.kind == GateKind::RZ && b.kind == GateKind::RZ && (a.angle + b.angle).is_zero())
    return true;
  return false;
}

bool disjoint(const GateApp& a, const GateApp& b) {
  for (uint32_t q : a.qubits)
    for (uint32_t r : b.qubits)
      if (q == r) return false;
  return true;
}

// Cancels adjacent inverse pairs inside gate runs, scanning forward past
// disjoint gates; iterates to a fixpoint.
void cancel_run(std::vector<Stmt*>& run) {
  bool changed = true;
  std::vector<bool> dead(run.size(), false);
  while (changed) {
    changed = false;
    for (size_t i = 0; i < run.size(); ++i) {
      if (dead[i]) continue;
      for (size_t j = i + 1; j < run.size(); ++j) {
        if (dead[j]) continue;
        if (inverse_pair(run[i]->gate, run[j]->gate)) {
          dead[i] = dead[j] = true;
          changed = true;
          break;
        }
        if (!disjoint(run[i]->gate, run[j]->gate)) break;
      }
    }
  }
  for (size_t i = 0; i < run.size(); ++i)
    if (dead[i]) run[i]->kind = Stmt::Skip;
}

void cancel_stmt(Stmt& s) {
  if (s.kind == Stmt::Seq) {
    std::vector<Stmt*> gate_run;
    for (auto& c : s.children) {
      if (c->kind == Stmt::Gate) {
        gate_run.push_back(c.get());
        continue;
      }
      if (!gate_run.empty()) {
        cancel_run(gate_run);
        gate_run.clear();
      }
      cancel_stmt(*c);
    }
    if (!gate_run.empty()) cancel_run(gate_run);
    s.children.erase(std::remove_if(s.children.begin(), s.children.end(),
                                    [](const StmtPtr& c) { return c->kind == Stmt::Skip; }),
                     s.children.end());
    if (s.children.empty()) s.kind = Stmt::Skip;
    return;
  }
  for (auto& c : s.children)
    if (c) cancel_stmt(*c);
}

}  // namespace

void cancel_pass(Program& p) {
  bool changed = true;
  while (changed) {
    GateStats before = count(p);
    if (p.body) cancel_stmt(*p.body);
    for (auto& [name, proc] : p.procedures)
      if (proc.body) cancel_stmt(*proc.body);
    changed = !(count(p) == before);
  }
}

ir::Program apply_merges(const Program& p, const MergeReport& r, bool cleanup) {
  Rewriter rw{r};
  Program out;
  out.qubits = p.qubits;
  out.zero_init = p.zero_init;
  out.format = p.format;
  out.angle_atom_names = p.angle_atom_names;
  out.body = p.body ? rw.rewrite(*p.body) : nullptr;
  for (const auto& [name, proc] : p.procedures) {
    ir::Procedure np;
    np.name = proc.name;
    np.nparams = proc.nparams;
    np.body = proc.body ? rw.rewrite(*proc.body) : nullptr;
    out.procedures.emplace(name, std::move(np));
  }
  if (cleanup) cancel_pass(out);
  ir::assign_locations(out);
  return out;
}

}  // namespace qpf::xform
