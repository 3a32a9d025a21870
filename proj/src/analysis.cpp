#include "analysis.hpp"

#include "pathsum.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <set>

namespace qpf::an {

using dom::KsElement;
using dom::TransitionIdeal;
using f2::BitRow;
using f2::F2Matrix;
using poly::Angle;
using poly::BoolPoly;
using poly::Monomial;

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Aff: return "aff";
    case Mode::Quad: return "quad";
    case Mode::Pol: return "pol";
  }
  return "?";
}

std::string var_display_name(uint32_t var, uint32_t n) {
  static const char* small[3] = {"x", "y", "z"};
  if (var >= 2 * n) return "t" + std::to_string(var - 2 * n);
  uint32_t q = var < n ? var : var - n;
  std::string base = n <= 3 ? small[q] : "x" + std::to_string(q);
  return var >= n ? base + "'" : base;
}

namespace {

int degree_cap(Mode m) {
  switch (m) {
    case Mode::Aff: return 1;
    case Mode::Quad: return 2;
    case Mode::Pol: return -1;
  }
  return -1;
}

BitRow poly_to_row(const BoolPoly& p) {
  BitRow r;
  for (const auto& m : p.terms()) {
    if (m.is_one()) {
      r.constant = !r.constant;
      continue;
    }
    assert(m.degree() == 1);
    r.set(m.vars[0]);
  }
  return r;
}

BoolPoly row_to_poly(const BitRow& r) {
  std::vector<Monomial> ms;
  for (uint32_t c : r.support()) ms.push_back(Monomial::var(c));
  if (r.constant) ms.push_back(Monomial::one());
  return BoolPoly::of_terms(std::move(ms));
}

// Relational part of the analysis state: solvable wires plus constraints
// over pre-state and intermediates, in the mode's own representation.
struct DomainState {
  Mode mode = Mode::Pol;
  uint32_t n = 0;
  std::vector<BoolPoly> wires;
  F2Matrix aff;                // affine constraints; column = variable id
  std::vector<BoolPoly> gens;  // polynomial constraint generators
  gb::IdealBasis basis;
  bool dirty = false;
  bool degraded = false;

  void init(Mode m, uint32_t nq) {
    mode = m;
    n = nq;
    wires.clear();
    for (uint32_t i = 0; i < nq; ++i) wires.push_back(BoolPoly::var(i));
  }

  void meet(const BoolPoly& c) {
    if (c.is_zero()) return;
    if (mode == Mode::Aff) {
      if (c.degree() <= 1) {
        aff.add_row(poly_to_row(c));
        aff.canonicalize_desc();  // rewrite intermediates toward the pre-state
      }
      return;
    }
    gens.push_back(c);
    dirty = true;
  }

  void refresh(const gb::Budget& budget) {
    if (mode == Mode::Aff || !dirty) return;
    // Intermediates form the elimination block, so the harvested solved-form
    // constraints keep their bound variable as the lead and division
    // back-substitutes toward the pre-state vocabulary.
    std::set<uint32_t> front;
    for (const auto& g : gens)
      for (uint32_t v : g.vars())
        if (v >= 2 * n) front.insert(v);
    basis = gb::buchberger(gens, poly::MonomialOrder::block({front.begin(), front.end()}),
                           budget);
    if (basis.degraded) degraded = true;
    dirty = false;
  }

  BoolPoly reduce(const BoolPoly& f, const gb::Budget& budget) {
    if (mode == Mode::Aff) {
      if (f.degree() > 1) return f;  // nonlinear conditions left untouched
      return row_to_poly(aff.reduce_desc(poly_to_row(f)));
    }
    refresh(budget);
    return gb::normal_form(basis, f);
  }
};

struct Term {
  BoolPoly key;   // canonical condition, affine constant split off
  BoolPoly raw;   // representative original condition
  bool flipped = false;  // representative's constant parity at last reduce
  uint32_t scope = 0;
  bool bottom = false;
  bool nullable = false;
  std::vector<Loc> locs;
  Angle angle;    // sign-normalized to key
};

struct Ctx {
  DomainState st;
  std::vector<Term> terms;
  poly::PhasePoly seg_phase;
  std::vector<uint32_t> seg_vars;
  bool seg_active = false;
};

struct Summary {
  TransitionIdeal ti;
  KsElement ks;
  std::vector<Term> inner;
  bool widened = false;
  bool is_loop = false;
};

struct Engine {
  const ir::Program& prog;
  Options opt;
  uint32_t n;
  uint32_t fresh;
  uint32_t next_scope = 1;
  int loop_counter = 0;
  MergeReport report;
  Angle global_phase;
  std::map<std::string, Summary> proc_summaries;
  std::set<std::string> proc_terms_emitted;

  Engine(const ir::Program& p, const Options& o)
      : prog(p), opt(o), n(p.nqubits()), fresh(2 * p.nqubits()) {
    report.mode = o.mode;
  }

  //--------------------------------------------------- term bookkeeping

  void insert_term(Ctx& c, const BoolPoly& raw, Angle angle, Loc loc) {
    if (angle.is_zero()) return;
    Term t;
    t.raw = raw;
    t.locs = {loc};
    BoolPoly red = c.st.reduce(raw, opt.gb_budget);
    t.flipped = red.constant_term();
    t.key = red.without_constant();
    if (t.flipped) {
      global_phase = global_phase + angle;
      t.angle = -angle;
    } else {
      t.angle = angle;
    }
    for (Term& u : c.terms) {
      if (u.bottom || u.nullable || u.scope != 0) continue;
      if (u.key == t.key) {
        u.angle = u.angle + t.angle;
        u.locs.push_back(loc);
        return;
      }
    }
    c.terms.push_back(std::move(t));
  }

  // Re-canonicalize every condition after new constraints and merge
  // partitions that now coincide.
  void coalesce(Ctx& c) {
    std::vector<Term> old = std::move(c.terms);
    c.terms.clear();
    for (Term& t : old) {
      // summarized partitions never coalesce further (Fig. 9 demotes them);
      // only the null check may still remove them
      if (t.bottom || t.nullable || t.scope != 0) {
        c.terms.push_back(std::move(t));
        continue;
      }
      BoolPoly red = c.st.reduce(t.raw, opt.gb_budget);
      bool flip = red.constant_term();
      if (flip != t.flipped) {
        t.angle = -t.angle;
        t.flipped = flip;
      }
      t.key = red.without_constant();
      bool merged = false;
      for (Term& u : c.terms) {
        if (u.bottom || u.nullable || u.scope != 0) continue;
        if (u.key == t.key) {
          u.angle = u.angle + t.angle;
          u.locs.insert(u.locs.end(), t.locs.begin(), t.locs.end());
          merged = true;
          break;
        }
      }
      if (!merged) c.terms.push_back(std::move(t));
    }
  }

  //--------------------------------------------------- segment handling

  void flush(Ctx& c) {
    if (!c.seg_active && c.seg_vars.empty()) return;
    ps::PathSum sum;
    sum.n_in = sum.n_out = n;
    sum.outputs = c.st.wires;  // copied: rewriting must not touch the state
    sum.phase = std::move(c.seg_phase);
    sum.path_vars = std::move(c.seg_vars);
    ps::Strategy strat;
    strat.sub_degree_cap = degree_cap(opt.mode);
    strat.max_steps = opt.rewrite_budget;
    ps::ReduceResult r = ps::reduce(sum, strat);
    if (r.budget_hit) {
      report.warnings.push_back("rewrite budget exceeded; partial strengthening");
      report.degraded = true;
    }
    int cap = degree_cap(opt.mode);
    bool met = false;
    for (const auto& cons : r.constraints) {
      if (cap >= 0 && cons.degree() > size_t(cap)) continue;
      c.st.meet(cons);
      met = true;
    }
    if (met) coalesce(c);
    c.seg_phase = poly::PhasePoly();
    c.seg_vars.clear();
    c.seg_active = false;
  }

  //--------------------------------------------------- gate transfer

  void hadamard(Ctx& c, uint32_t q) {
    uint32_t v = fresh++;
    c.seg_phase.add_rotation(Angle::pi(), c.st.wires[q] * BoolPoly::var(v));
    c.st.wires[q] = BoolPoly::var(v);
    c.seg_vars.push_back(v);
    c.seg_active = true;
  }

  void phase_gate(Ctx& c, uint32_t q, Angle angle, Loc loc) {
    insert_term(c, c.st.wires[q], angle, loc);
    c.seg_phase.add_rotation(angle, c.st.wires[q]);
    c.seg_active = true;
  }

  void ccz_gadget(Ctx& c, const BoolPoly& a, const BoolPoly& b, const BoolPoly& cc,
                  int32_t gate_loc) {
    const BoolPoly conds[7] = {a, b, cc, a ^ b, a ^ cc, b ^ cc, a ^ b ^ cc};
    static const int64_t signs[7] = {1, 1, 1, -1, -1, -1, 1};
    for (int k = 0; k < 7; ++k) {
      Angle ang = Angle::quarter(signs[k]);
      insert_term(c, conds[k], ang, Loc{gate_loc, int16_t(k)});
      c.seg_phase.add_rotation(ang, conds[k]);
    }
    c.seg_active = true;
  }

  void transfer(Ctx& c, const ir::GateApp& g) {
    using ir::GateKind;
    auto& w = c.st.wires;
    switch (g.kind) {
      case GateKind::H: hadamard(c, g.qubits[0]); break;
      case GateKind::X: w[g.qubits[0]] ^= BoolPoly::one(); break;
      case GateKind::CNOT: w[g.qubits[1]] ^= w[g.qubits[0]]; break;
      case GateKind::SWAP: std::swap(w[g.qubits[0]], w[g.qubits[1]]); break;
      case GateKind::Z: phase_gate(c, g.qubits[0], Angle::pi(), {g.location, -1}); break;
      case GateKind::S: phase_gate(c, g.qubits[0], Angle::half(), {g.location, -1}); break;
      case GateKind::Sdg:
        phase_gate(c, g.qubits[0], Angle::half(-1), {g.location, -1});
        break;
      case GateKind::T: phase_gate(c, g.qubits[0], Angle::quarter(), {g.location, -1}); break;
      case GateKind::Tdg:
        phase_gate(c, g.qubits[0], Angle::quarter(-1), {g.location, -1});
        break;
      case GateKind::RZ: phase_gate(c, g.qubits[0], g.angle, {g.location, -1}); break;
      case GateKind::CCZ:
        if (opt.mode == Mode::Aff) {
          ccz_gadget(c, w[g.qubits[0]], w[g.qubits[1]], w[g.qubits[2]], g.location);
        } else {
          BoolPoly cond = w[g.qubits[0]] * w[g.qubits[1]] * w[g.qubits[2]];
          insert_term(c, cond, Angle::pi(), {g.location, -1});
          c.seg_phase.add_rotation(Angle::pi(), cond);
          c.seg_active = true;
        }
        break;
      case GateKind::Toffoli:
        if (opt.mode == Mode::Aff || opt.toffoli_hczh) {
          hadamard(c, g.qubits[2]);
          ccz_gadget(c, w[g.qubits[0]], w[g.qubits[1]], w[g.qubits[2]], g.location);
          hadamard(c, g.qubits[2]);
        } else {
          w[g.qubits[2]] ^= w[g.qubits[0]] * w[g.qubits[1]];
        }
        break;
      case GateKind::Uninterpreted:
        flush(c);
        for (uint32_t q : g.qubits) w[q] = BoolPoly::var(fresh++);
        break;
    }
  }

  //--------------------------------------------------- summary construction

  TransitionIdeal relation_pol(Ctx& c, uint32_t nq) {
    std::vector<BoolPoly> gens;
    std::set<uint32_t> aux;
    for (uint32_t i = 0; i < nq; ++i) gens.push_back(BoolPoly::var(nq + i) ^ c.st.wires[i]);
    for (const auto& g : c.st.gens) gens.push_back(g);
    for (const auto& g : gens)
      for (uint32_t v : g.vars())
        if (v >= 2 * nq) aux.insert(v);
    TransitionIdeal t;
    t.n = nq;
    if (aux.empty()) {
      t.basis = gb::buchberger(gens, poly::MonomialOrder::grevlex(), opt.gb_budget);
    } else {
      gb::IdealBasis raw;
      raw.gens = std::move(gens);
      t.basis = gb::eliminate(raw, {aux.begin(), aux.end()}, opt.gb_budget);
    }
    if (t.basis.degraded) report.degraded = true;
    return t;
  }

  KsElement relation_aff(Ctx& c, uint32_t nq) {
    std::set<uint32_t> auxset;
    for (const auto& wp : c.st.wires)
      for (uint32_t v : wp.vars())
        if (v >= 2 * nq) auxset.insert(v);
    for (const BitRow& r : c.st.aff.rows())
      for (uint32_t v : r.support())
        if (v >= 2 * nq) auxset.insert(v);
    std::vector<uint32_t> aux(auxset.begin(), auxset.end());
    auto col_of = [&](uint32_t v) -> uint32_t {
      if (v < nq) return nq + v;
      size_t k = std::lower_bound(aux.begin(), aux.end(), v) - aux.begin();
      return uint32_t(2 * nq + k);
    };
    dom::Vocabulary voc{nq, uint32_t(aux.size())};
    F2Matrix m(voc.total());
    if (c.st.aff.is_bottom()) {
      m.set_bottom();
      return KsElement(voc, std::move(m)).project_aux();
    }
    for (uint32_t i = 0; i < nq; ++i) {
      BitRow r(voc.total());
      r.set(i);
      for (const auto& mo : c.st.wires[i].terms()) {
        if (mo.is_one()) {
          r.constant = !r.constant;
          continue;
        }
        r.flip(col_of(mo.vars[0]));
      }
      m.add_row(std::move(r));
    }
    for (const BitRow& row : c.st.aff.rows()) {
      BitRow r(voc.total());
      for (uint32_t v : row.support()) r.flip(col_of(v));
      r.constant = row.constant;
      m.add_row(std::move(r));
    }
    return KsElement(voc, std::move(m)).project_aux();
  }

  // Keep body terms whose condition is expressible over the body pre-state
  // as null-detection candidates; demote the rest.
  std::vector<Term> summarize_terms(Ctx& body, uint32_t scope, uint32_t nq, bool force_bottom) {
    std::vector<Term> out;
    for (Term& t : body.terms) {
      Term s = std::move(t);
      if (s.scope == 0) s.scope = scope;
      if (!s.bottom && !s.nullable) {
        bool pre_only = true;
        for (uint32_t v : s.key.vars())
          if (v >= nq) pre_only = false;
        if (force_bottom || !pre_only) s.bottom = true;
      }
      out.push_back(std::move(s));
    }
    return out;
  }

  Summary summarize_while(const ir::Stmt& body_stmt) {
    Ctx body;
    body.st.init(opt.mode, n);
    analyze(body_stmt, body);
    flush(body);
    uint32_t scope = next_scope++;
    Summary s;
    s.is_loop = true;
    if (opt.mode == Mode::Aff) {
      s.ks = dom::star(relation_aff(body, n));
    } else {
      s.ti = dom::star(relation_pol(body, n), opt.star_cap, opt.gb_budget);
      s.widened = s.ti.widened;
      if (s.widened) {
        report.warnings.push_back("loop closure hit its iteration cap; widened to top");
        report.degraded = true;
      }
    }
    if (body.st.degraded) report.degraded = true;
    s.inner = summarize_terms(body, scope, n, false);
    return s;
  }

  Summary summarize_if(const ir::Stmt& then_s, const ir::Stmt& else_s) {
    Ctx a, b;
    a.st.init(opt.mode, n);
    b.st.init(opt.mode, n);
    analyze(then_s, a);
    flush(a);
    analyze(else_s, b);
    flush(b);
    Summary s;
    if (opt.mode == Mode::Aff) {
      s.ks = dom::join(relation_aff(a, n), relation_aff(b, n));
    } else {
      s.ti = dom::join(relation_pol(a, n), relation_pol(b, n), opt.gb_budget);
    }
    if (a.st.degraded || b.st.degraded) report.degraded = true;
    uint32_t sa = next_scope++, sb = next_scope++;
    s.inner = summarize_terms(a, sa, n, false);
    for (Term& t : summarize_terms(b, sb, n, false)) s.inner.push_back(std::move(t));
    return s;
  }

  Summary& summarize_proc(const std::string& name) {
    auto it = proc_summaries.find(name);
    if (it != proc_summaries.end()) return it->second;
    const ir::Procedure& proc = prog.procedures.at(name);
    Ctx body;
    body.st.init(opt.mode, proc.nparams);
    analyze(*proc.body, body);
    flush(body);
    uint32_t scope = next_scope++;
    Summary s;
    if (opt.mode == Mode::Aff)
      s.ks = relation_aff(body, proc.nparams);
    else
      s.ti = relation_pol(body, proc.nparams);
    if (body.st.degraded) report.degraded = true;
    // procedure summaries demote every inner partition
    s.inner = summarize_terms(body, scope, proc.nparams, true);
    return proc_summaries.emplace(name, std::move(s)).first->second;
  }

  // Adds the summary relation to st with pre bound to the current wires of
  // `qubits` and post bound to the given variables.
  void instantiate(DomainState& st, const Summary& s, const std::vector<uint32_t>& qubits,
                   const std::vector<uint32_t>& post) {
    uint32_t nq = uint32_t(qubits.size());
    if (opt.mode == Mode::Aff) {
      if (s.ks.is_bottom()) return;  // infeasible body constrains nothing onward
      for (const BitRow& row : s.ks.matrix().rows()) {
        BoolPoly p;
        if (row.constant) p ^= BoolPoly::one();
        for (uint32_t col : row.support()) {
          if (col < nq)
            p ^= BoolPoly::var(post[col]);
          else
            p ^= st.wires[qubits[col - nq]];
        }
        st.meet(p);
      }
      return;
    }
    if (s.ti.is_bottom()) return;
    for (const auto& g : s.ti.basis.gens) {
      std::vector<std::pair<uint32_t, uint32_t>> map;
      std::vector<uint32_t> temps;
      for (uint32_t i = 0; i < nq; ++i) {
        map.push_back({nq + i, post[i]});
        uint32_t t = fresh++;
        temps.push_back(t);
        map.push_back({i, t});
      }
      BoolPoly p = dom::rename_vars(g, map);
      for (uint32_t i = 0; i < nq; ++i) p = p.substitute(temps[i], st.wires[qubits[i]]);
      st.meet(p);
    }
  }

  void apply_summary(Ctx& c, const Summary& s, const std::vector<uint32_t>& qubits,
                     bool emit_terms) {
    uint32_t nq = uint32_t(qubits.size());

    bool has_candidates = false;
    for (const Term& t : s.inner)
      if (!t.bottom && !t.nullable) has_candidates = true;

    // Entry-state view for null detection. For a loop the entry ranges over
    // every iteration: fresh variables related to the current wires by the
    // closure (which contains the identity). For a branch the entry is the
    // current state itself.
    DomainState scratch = c.st;
    std::vector<BoolPoly> entry;
    if (has_candidates && emit_terms) {
      if (s.is_loop) {
        std::vector<uint32_t> z;
        for (uint32_t i = 0; i < nq; ++i) z.push_back(fresh++);
        instantiate(scratch, s, qubits, z);
        for (uint32_t i = 0; i < nq; ++i) entry.push_back(BoolPoly::var(z[i]));
      } else {
        for (uint32_t i = 0; i < nq; ++i) entry.push_back(c.st.wires[qubits[i]]);
      }
    }

    if (emit_terms) {
      for (const Term& t : s.inner) {
        Term u = t;
        if (!u.bottom && !u.nullable) {
          BoolPoly f = u.key;
          // substitute body-pre variables by entry polynomials
          std::vector<std::pair<uint32_t, uint32_t>> map;
          std::vector<uint32_t> temps;
          for (uint32_t i = 0; i < nq; ++i) {
            uint32_t tv = fresh++;
            temps.push_back(tv);
            map.push_back({i, tv});
          }
          f = dom::rename_vars(f, map);
          for (uint32_t i = 0; i < nq; ++i) f = f.substitute(temps[i], entry[i]);
          BoolPoly r = scratch.reduce(f, opt.gb_budget);
          if (r.is_zero()) {
            u.nullable = true;
          } else {
            bool pre_only = !r.constant_term();
            for (uint32_t v : r.vars())
              if (v >= n) pre_only = false;
            if (pre_only) {
              u.key = r;
              u.raw = r;
              u.flipped = false;
            } else {
              u.bottom = true;
            }
          }
        }
        c.terms.push_back(std::move(u));
      }
    }

    std::vector<uint32_t> yvars;
    for (uint32_t i = 0; i < nq; ++i) yvars.push_back(fresh++);
    instantiate(c.st, s, qubits, yvars);
    for (uint32_t i = 0; i < nq; ++i) c.st.wires[qubits[i]] = BoolPoly::var(yvars[i]);
    coalesce(c);
  }

  //--------------------------------------------------- statement walk

  void analyze(const ir::Stmt& s, Ctx& c) {
    switch (s.kind) {
      case ir::Stmt::Skip: break;
      case ir::Stmt::Gate: transfer(c, s.gate); break;
      case ir::Stmt::Reset:
        flush(c);
        c.st.wires[s.qubit] = BoolPoly::zero();
        break;
      case ir::Stmt::Meas:
        flush(c);
        break;
      case ir::Stmt::Seq:
        for (const auto& ch : s.children) analyze(*ch, c);
        break;
      case ir::Stmt::IfStar: {
        flush(c);
        Summary sum = summarize_if(*s.children[0], *s.children[1]);
        std::vector<uint32_t> all;
        for (uint32_t i = 0; i < n; ++i) all.push_back(i);
        apply_summary(c, sum, all, true);
        break;
      }
      case ir::Stmt::WhileStar: {
        flush(c);
        Summary sum = summarize_while(*s.children[0]);
        LoopInvariant inv;
        inv.index = loop_counter++;
        inv.widened = sum.widened;
        inv.text = render_relation(sum, n);
        report.invariants.push_back(inv);
        std::vector<uint32_t> all;
        for (uint32_t i = 0; i < n; ++i) all.push_back(i);
        apply_summary(c, sum, all, true);
        break;
      }
      case ir::Stmt::Call: {
        flush(c);
        Summary& sum = summarize_proc(s.callee);
        bool emit = proc_terms_emitted.insert(s.callee).second;
        apply_summary(c, sum, s.args, emit);
        break;
      }
    }
  }

  //--------------------------------------------------- rendering

  std::string render_poly(const BoolPoly& p, uint32_t nq) {
    if (p.is_zero()) return "0";
    std::vector<Monomial> ms = p.terms();
    poly::MonomialOrder ord;
    std::sort(ms.begin(), ms.end(),
              [&](const Monomial& a, const Monomial& b) { return ord.less(b, a); });
    std::string out;
    for (size_t i = 0; i < ms.size(); ++i) {
      if (i) out += " \xE2\x8A\x95 ";
      if (ms[i].is_one()) {
        out += "1";
        continue;
      }
      for (uint32_t v : ms[i].vars) out += var_display_name(v, nq);
    }
    return out;
  }

  std::string render_relation(const Summary& s, uint32_t nq) {
    std::vector<std::string> gens;
    if (opt.mode == Mode::Aff) {
      if (s.ks.is_bottom()) return "\xE2\x8A\xA5";
      for (const BitRow& row : s.ks.matrix().rows()) {
        BoolPoly p;
        if (row.constant) p ^= BoolPoly::one();
        for (uint32_t col : row.support())
          p ^= BoolPoly::var(col < nq ? nq + col : col - nq);
        gens.push_back(render_poly(p, nq));
      }
    } else {
      for (const auto& g : s.ti.basis.gens) gens.push_back(render_poly(g, nq));
    }
    std::string out = "\xE2\x9F\xA8";
    for (size_t i = 0; i < gens.size(); ++i) {
      if (i) out += ", ";
      out += gens[i];
    }
    out += "\xE2\x9F\xA9";
    return out;
  }

  //--------------------------------------------------- top level

  MergeReport run() {
    auto t0 = std::chrono::steady_clock::now();
    Ctx top;
    top.st.init(opt.mode, n);
    analyze(*prog.body, top);
    flush(top);

    // The closed-form program relation is report metadata; elimination can
    // blow up on wide straightline circuits, so gate it by size.
    std::set<uint32_t> interm;
    for (const auto& wp : top.st.wires)
      for (uint32_t v : wp.vars())
        if (v >= 2 * n) interm.insert(v);
    for (const auto& g : top.st.gens)
      for (uint32_t v : g.vars())
        if (v >= 2 * n) interm.insert(v);
    if (interm.size() <= 24) {
      Summary fin;
      if (opt.mode == Mode::Aff) {
        fin.ks = relation_aff(top, n);
        for (const BitRow& row : fin.ks.matrix().rows()) {
          BoolPoly p;
          if (row.constant) p ^= BoolPoly::one();
          for (uint32_t col : row.support())
            p ^= BoolPoly::var(col < n ? n + col : col - n);
          report.final_relation.push_back(render_poly(p, n));
        }
      } else {
        fin.ti = relation_pol(top, n);
        for (const auto& g : fin.ti.basis.gens)
          report.final_relation.push_back(render_poly(g, n));
      }
    }
    if (top.st.degraded) {
      report.degraded = true;
      report.warnings.push_back("Groebner budget exceeded; conditions reduced non-canonically");
    }

    report.global_phase = global_phase;
    for (Term& t : top.terms) {
      Partition p;
      p.cond = t.key;
      p.bottom = t.bottom;
      p.scope = t.scope;
      p.nullable = t.nullable;
      p.locs = std::move(t.locs);
      std::sort(p.locs.begin(), p.locs.end());
      // representative parity: emitting the total on a flipped condition
      // negates once more
      p.angle = t.flipped ? -t.angle : t.angle;
      p.cond_text = t.bottom ? "\xE2\x8A\xA5" : render_poly(t.key, n);
      report.partitions.push_back(std::move(p));
    }
    for (const Partition& p : report.partitions) {
      if (p.eliminable()) {
        for (const Loc& l : p.locs) report.actions[l] = {true, Angle::zero()};
      } else if (p.locs.size() >= 2) {
        report.actions[p.locs.front()] = {false, p.angle};
        for (size_t i = 1; i < p.locs.size(); ++i)
          report.actions[p.locs[i]] = {true, Angle::zero()};
      }
    }
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return std::move(report);
  }
};

}  // namespace

MergeReport run(const ir::Program& p, const Options& opt) {
  Engine e(p, opt);
  return e.run();
}

dom::TransitionIdeal top_relation_pol(const ir::Program& p, const Options& opt) {
  Engine e(p, opt);
  Ctx top;
  top.st.init(opt.mode, e.n);
  e.analyze(*p.body, top);
  e.flush(top);
  return e.relation_pol(top, e.n);
}

dom::KsElement top_relation_aff(const ir::Program& p, const Options& opt) {
  Engine e(p, opt);
  Ctx top;
  top.st.init(opt.mode, e.n);
  e.analyze(*p.body, top);
  e.flush(top);
  return e.relation_aff(top, e.n);
}

}  // namespace qpf::an
