// Acceptance suite: reproduces the benchmark numbers, the worked examples,
// and the property-based soundness/preservation criteria. One summary line
// is printed per criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "analysis.hpp"
#include "frontend.hpp"
#include "pathsum.hpp"
#include "simulator.hpp"
#include "transform.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <set>

using namespace qpf;
using an::Mode;

namespace {

std::string bench_dir = QPF_BENCH_DIR;

ir::Program load(const std::string& rel) { return frontend::parse_file(bench_dir + "/" + rel); }

struct OptOut {
  int t_before = 0, t_after = 0;
  double ms = 0;
  an::MergeReport report;
  ir::Program optimized;
};

OptOut optimize(const ir::Program& p, Mode m, bool cleanup) {
  OptOut o;
  an::Options opt;
  opt.mode = m;
  auto t0 = std::chrono::steady_clock::now();
  o.report = an::run(p, opt);
  o.optimized = xform::apply_merges(p, o.report, cleanup);
  o.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  o.t_before = xform::count(p).t;
  o.t_after = xform::count(o.optimized).t;
  return o;
}

// "x'+x y+1"-style generator strings over named qubits (n <= 3: x, y, z).
poly::BoolPoly gen_of(const std::string& s, uint32_t n) {
  poly::BoolPoly p;
  std::vector<std::string> monos;
  std::string cur;
  for (char ch : s) {
    if (ch == '+') {
      monos.push_back(cur);
      cur.clear();
    } else if (!isspace(ch)) {
      cur += ch;
    }
  }
  monos.push_back(cur);
  for (const auto& m : monos) {
    if (m == "1") {
      p ^= poly::BoolPoly::one();
      continue;
    }
    poly::Monomial mo;
    for (size_t i = 0; i < m.size();) {
      uint32_t q = m[i] == 'x' ? 0 : m[i] == 'y' ? 1 : 2;
      ++i;
      uint32_t var = q;
      if (i < m.size() && m[i] == '\'') {
        var = n + q;
        ++i;
      }
      mo.vars.push_back(var);
    }
    std::sort(mo.vars.begin(), mo.vars.end());
    mo.vars.erase(std::unique(mo.vars.begin(), mo.vars.end()), mo.vars.end());
    p ^= poly::BoolPoly::of_terms({mo});
  }
  return p;
}

bool invariant_equals(const std::string& rendered, std::vector<std::string> gens, uint32_t n) {
  // compare as reduced bases, not as strings
  std::vector<poly::BoolPoly> want;
  for (const auto& g : gens) want.push_back(gen_of(g, n));
  auto want_basis = gb::buchberger(want, poly::MonomialOrder::grevlex());
  // parse the rendered form back: split on "," inside the angle brackets,
  // translate the display names
  std::string inner = rendered;
  auto strip = [&](const std::string& tok) {
    std::string out;
    for (char c : tok)
      if (!isspace(c)) out += c;
    return out;
  };
  size_t l = inner.find("\xE2\x9F\xA8"), r = inner.rfind("\xE2\x9F\xA9");
  if (l == std::string::npos || r == std::string::npos) return false;
  inner = inner.substr(l + 3, r - l - 3);
  std::vector<poly::BoolPoly> got;
  std::string tok;
  auto flush_tok = [&]() {
    std::string t = strip(tok);
    if (t.empty()) return;
    // replace the xor glyph with '+'
    std::string norm;
    for (size_t i = 0; i < t.size();) {
      if (t.compare(i, 3, "\xE2\x8A\x95") == 0) {
        norm += '+';
        i += 3;
      } else {
        norm += t[i++];
      }
    }
    got.push_back(gen_of(norm, n));
    tok.clear();
  };
  for (char c : inner) {
    if (c == ',')
      flush_tok();
    else
      tok += c;
  }
  flush_tok();
  auto got_basis = gb::buchberger(got, poly::MonomialOrder::grevlex());
  return got_basis == want_basis;
}

bool paths_equivalent(const ir::Program& a, const ir::Program& b, uint32_t unroll) {
  auto pa = sim::enumerate_paths(a, unroll);
  auto pb = sim::enumerate_paths(b, unroll);
  if (pa.size() != pb.size()) return false;
  for (size_t i = 0; i < pa.size(); ++i)
    if (!sim::equiv_up_to_phase(pa[i].op, pb[i].op)) return false;
  return true;
}

std::mt19937 rng(20260810);

ir::Program random_program(uint32_t n, int len, bool with_loop) {
  using ir::GateKind;
  ir::Program p;
  for (uint32_t i = 0; i < n; ++i) {
    p.qubits.push_back("q" + std::to_string(i));
    p.zero_init.push_back(0);
  }
  std::vector<GateKind> pool = {GateKind::H,    GateKind::X,    GateKind::Z,
                                GateKind::S,    GateKind::T,    GateKind::Tdg,
                                GateKind::CNOT, GateKind::CNOT, GateKind::SWAP,
                                GateKind::CCZ,  GateKind::Toffoli};
  auto emit_block = [&](int count) {
    std::vector<ir::StmtPtr> items;
    for (int i = 0; i < count; ++i) {
      int kind = int(rng() % (pool.size() + 2));
      if (kind == int(pool.size())) {
        items.push_back(ir::Stmt::reset(rng() % n));
        continue;
      }
      if (kind == int(pool.size()) + 1) {
        items.push_back(ir::Stmt::meas(rng() % n));
        continue;
      }
      ir::GateApp g;
      g.kind = pool[kind];
      int ar = ir::gate_arity(g.kind);
      if (ar > int(n)) {
        --i;
        continue;
      }
      while (int(g.qubits.size()) < ar) {
        uint32_t q = rng() % n;
        if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end())
          g.qubits.push_back(q);
      }
      items.push_back(ir::Stmt::of_gate(std::move(g)));
    }
    return ir::Stmt::seq(std::move(items));
  };
  std::vector<ir::StmtPtr> body;
  int pre = with_loop ? len / 3 : len;
  body.push_back(emit_block(pre));
  if (with_loop) {
    body.push_back(ir::Stmt::while_star(emit_block(len / 3)));
    body.push_back(emit_block(len - 2 * (len / 3)));
  }
  p.body = ir::Stmt::seq(std::move(body));
  ir::assign_locations(p);
  return p;
}

std::vector<ir::GateApp> random_circuit(uint32_t n, int len, bool clifford_only) {
  using ir::GateKind;
  std::vector<ir::GateApp> gates;
  std::vector<GateKind> pool = {GateKind::H, GateKind::X,    GateKind::Z,
                                GateKind::S, GateKind::CNOT, GateKind::CNOT};
  if (!clifford_only) {
    pool.push_back(GateKind::T);
    pool.push_back(GateKind::Tdg);
    pool.push_back(GateKind::CCZ);
  }
  for (int i = 0; i < len; ++i) {
    ir::GateApp g;
    g.kind = pool[rng() % pool.size()];
    int ar = ir::gate_arity(g.kind);
    if (ar > int(n)) {
      --i;
      continue;
    }
    while (int(g.qubits.size()) < ar) {
      uint32_t q = rng() % n;
      if (std::find(g.qubits.begin(), g.qubits.end(), q) == g.qubits.end()) g.qubits.push_back(q);
    }
    gates.push_back(std::move(g));
  }
  return gates;
}

}  // namespace

TEST_CASE("criterion 1: micro-benchmark reproduction") {
  struct Row {
    const char* file;
    int before;
    int aff, pol;
  };
  const Row rows[] = {
      {"micro/rus.qasm", 16, 10, 8},        {"micro/loop_swap.qasm", 2, 0, 0},
      {"micro/loop_nonlinear.qasm", 30, 18, 0}, {"micro/loop_null.qasm", 4, 2, 2},
      {"micro/if_simple.qasm", 2, 0, 0},    {"micro/reset_simple.qasm", 2, 1, 1},
  };
  bool ok = true;
  for (const Row& r : rows) {
    ir::Program p = load(r.file);
    OptOut a = optimize(p, Mode::Aff, true);
    OptOut q = optimize(p, Mode::Pol, true);
    CHECK(a.t_before == r.before);
    CHECK(a.t_after == r.aff);
    CHECK(q.t_after == r.pol);
    CHECK(a.ms < 5000);
    CHECK(q.ms < 5000);
    ok &= a.t_before == r.before && a.t_after == r.aff && q.t_after == r.pol && a.ms < 5000 &&
          q.ms < 5000;
  }
  // printed invariants
  {
    ir::Program p = load("micro/rus.qasm");
    an::Options o;
    o.mode = Mode::Pol;
    auto rep = an::run(p, o);
    REQUIRE(rep.invariants.size() == 1);
    bool inv = invariant_equals(rep.invariants[0].text, {"z'+z"}, 3);
    CHECK(inv);
    ok &= inv;
  }
  {
    ir::Program p = load("micro/loop_swap.qasm");
    an::Options o;
    o.mode = Mode::Pol;
    auto rep = an::run(p, o);
    REQUIRE(rep.invariants.size() == 1);
    bool inv = invariant_equals(rep.invariants[0].text, {"x'+y'+x+y", "x'+xy+xx'+yx'"}, 2);
    CHECK(inv);
    ok &= inv;
  }
  std::cout << "[criterion 1] micro-benchmark reproduction: " << (ok ? "PASS" : "FAIL") << "\n";
}

TEST_CASE("criterion 2: circuit benchmark reproduction") {
  struct Row {
    const char* file;
    int before, aff, quad, pol;
  };
  const Row rows[] = {
      {"circuits/mod5_4.qc", 28, 8, 8, 8},
      {"circuits/vbe_adder_3.qc", 70, 24, 24, 24},
      {"circuits/barenco_tof_3.qc", 21, 15, 15, 15},
      {"circuits/barenco_tof_4_dirty.qc", 56, 28, 24, 24},
      {"circuits/barenco_tof_5_dirty.qc", 84, 40, 32, 32},
      {"circuits/barenco_tof_10_dirty.qc", 224, 100, 72, 72},
      {"circuits/qft_4.qc", 69, 67, 65, 65},
  };
  bool ok = true;
  for (const Row& r : rows) {
    ir::Program p = load(r.file);
    auto before = xform::count(p);
    CHECK(before.t == r.before);
    ok &= before.t == r.before;
    Mode modes[] = {Mode::Aff, Mode::Quad, Mode::Pol};
    int want[] = {r.aff, r.quad, r.pol};
    for (int i = 0; i < 3; ++i) {
      OptOut o = optimize(p, modes[i], false);
      CHECK(o.t_after == want[i]);
      CHECK(o.ms < 60000);
      auto after = xform::count(o.optimized);
      CHECK(after.h == before.h);
      CHECK(after.cnot == before.cnot);
      ok &= o.t_after == want[i] && o.ms < 60000 && after.h == before.h &&
            after.cnot == before.cnot;
    }
  }
  std::cout << "[criterion 2] circuit benchmark reproduction: " << (ok ? "PASS" : "FAIL")
            << "\n";
}

TEST_CASE("criterion 3: worked-example oracles") {
  bool ok = true;
  // constraint-matrix reduction (columns x' y' x y t1 t2)
  {
    using f2::BitRow;
    using f2::F2Matrix;
    auto row = [](std::initializer_list<uint32_t> cols) {
      BitRow r(6);
      for (uint32_t c : cols) r.set(c);
      return r;
    };
    F2Matrix m(6);
    m.add_row(row({0, 2}));
    m.add_row(row({1, 3}));
    m.add_row(row({2, 3, 4}));
    m.add_row(row({2, 3, 5}));
    m.canonicalize();
    F2Matrix want(6);
    want.add_row(row({0, 3, 5}));
    want.add_row(row({1, 3}));
    want.add_row(row({2, 3, 5}));
    want.add_row(row({4, 5}));
    want.canonicalize();
    bool pass = m == want && m.reduce(row({4})) == m.reduce(row({5}));
    CHECK(pass);
    ok &= pass;
  }
  // Kleene closure of the cnot loop
  {
    auto P = [](std::initializer_list<std::initializer_list<uint32_t>> ms) {
      std::vector<poly::Monomial> v;
      for (auto m : ms) {
        poly::Monomial mo;
        for (uint32_t x : m) mo.vars.push_back(x);
        std::sort(mo.vars.begin(), mo.vars.end());
        v.push_back(std::move(mo));
      }
      return poly::BoolPoly::of_terms(std::move(v));
    };
    dom::TransitionIdeal cnot;
    cnot.n = 2;
    cnot.basis = gb::buchberger({P({{0}, {2}}), P({{1}, {0}, {3}})},
                                poly::MonomialOrder::grevlex());
    auto s = dom::star(cnot);
    std::vector<poly::BoolPoly> want = {P({{0}, {2}}), P({{3}, {1}, {0, 3}, {0, 1}})};
    std::sort(want.begin(), want.end());
    auto got = s.basis.gens;
    std::sort(got.begin(), got.end());
    bool pass = got == want;
    CHECK(pass);
    ok &= pass;
  }
  // strengthened identity block: both phase gates in one zero partition and
  // the strengthened relation x' = x
  {
    ir::Program p = frontend::parse_string("OPENQASM 3.0; qubit q; t q; h q; h q; tdg q;",
                                           ir::SourceFormat::QASM3);
    an::Options o;
    o.mode = Mode::Pol;
    auto rep = an::run(p, o);
    int merged = 0;
    for (const auto& part : rep.partitions)
      if (part.locs.size() == 2 && part.angle.is_zero()) ++merged;
    bool pass = merged == 1 && rep.final_relation == std::vector<std::string>{"x' \xE2\x8A\x95 x"};
    CHECK(pass);
    ok &= pass;
  }
  // adder-fragment basis and the doubly-controlled Z merge
  {
    auto P = [](std::initializer_list<std::initializer_list<uint32_t>> ms) {
      std::vector<poly::Monomial> v;
      for (auto m : ms) {
        poly::Monomial mo;
        for (uint32_t x : m) mo.vars.push_back(x);
        std::sort(mo.vars.begin(), mo.vars.end());
        v.push_back(std::move(mo));
      }
      return poly::BoolPoly::of_terms(std::move(v));
    };
    auto g = gb::buchberger(
        {P({{2}, {0, 1}, {5}}), P({{5}, {0, 1}, {7}}), P({{7}, {0, 1}, {9}})},
        poly::MonomialOrder::grevlex());
    std::vector<poly::BoolPoly> want = {
        P({{2}, {5}, {0, 1}}),         P({{2}, {5}, {1, 2}, {1, 5}}),
        P({{2}, {5}, {0, 2}, {0, 5}}), P({{2}, {7}}),
        P({{5}, {9}}),
    };
    std::sort(want.begin(), want.end());
    auto got = g.gens;
    std::sort(got.begin(), got.end());
    bool pass = got == want;
    CHECK(pass);

    std::string qc =
        ".v 1 2 3 4\n.i 1 2 3 4\nBEGIN\nH 3\nZ 1 2 3\nH 3\ntof 3 4\nH 3\nZ 1 2 3\nH 3\n"
        "tof 3 4\nH 3\nZ 1 2 3\nH 3\nEND\n";
    ir::Program p = frontend::parse_string(qc, ir::SourceFormat::QC);
    an::Options o;
    o.mode = Mode::Pol;
    auto rep = an::run(p, o);
    bool merged = false;
    for (const auto& part : rep.partitions)
      if (part.locs.size() == 2 && part.locs[0].gate == 1 && part.locs[1].gate == 9 &&
          part.eliminable())
        merged = true;
    CHECK(merged);
    ok &= pass && merged;
  }
  std::cout << "[criterion 3] worked-example oracles: " << (ok ? "PASS" : "FAIL") << "\n";
}

TEST_CASE("criterion 4: soundness of computed relations on random programs") {
  int violations = 0;
  int checked = 0;
  for (int trial = 0; checked < 500 && trial < 800; ++trial) {
    uint32_t n = 2 + rng() % 3;  // up to 4
    ir::Program p = random_program(n, 6 + rng() % 15, rng() % 2 == 0);
    std::vector<sim::PathOp> paths;
    try {
      paths = sim::enumerate_paths(p, 3, 4000);
    } catch (const sim::Unsupported&) {
      continue;
    }
    ++checked;
    for (Mode m : {Mode::Aff, Mode::Pol}) {
      an::Options o;
      o.mode = m;
      size_t dim = size_t(1) << n;
      if (m == Mode::Aff) {
        dom::KsElement rel = an::top_relation_aff(p, o);
        for (const auto& po : paths) {
          for (size_t col = 0; col < dim; ++col)
            for (uint32_t row : po.op.support(uint32_t(col))) {
              // point: posts at cols 0..n-1, pres at n..2n-1; qubit 0 is the
              // most significant simulator bit
              bool fits = true;
              for (const auto& r : rel.matrix().rows()) {
                bool acc = r.constant;
                for (uint32_t c : r.support()) {
                  uint32_t q = c < n ? c : c - n;
                  uint32_t v = c < n ? row : uint32_t(col);
                  if ((v >> (n - 1 - q)) & 1) acc = !acc;
                }
                if (acc) {
                  fits = false;
                  break;
                }
              }
              if (rel.is_bottom()) fits = false;
              if (!fits) ++violations;
            }
        }
      } else {
        dom::TransitionIdeal rel = an::top_relation_pol(p, o);
        for (const auto& po : paths) {
          for (size_t col = 0; col < dim; ++col)
            for (uint32_t row : po.op.support(uint32_t(col))) {
              std::vector<char> assign(2 * n, 0);
              for (uint32_t q = 0; q < n; ++q) {
                assign[q] = (col >> (n - 1 - q)) & 1;
                assign[n + q] = (row >> (n - 1 - q)) & 1;
              }
              for (const auto& g : rel.basis.gens)
                if (g.eval(assign)) ++violations;
            }
        }
      }
    }
  }
  CHECK(checked == 500);
  CHECK(violations == 0);
  std::cout << "[criterion 4] relation soundness on " << checked
            << " random programs: " << (violations == 0 ? "PASS" : "FAIL") << " (" << violations
            << " violations)\n";
}

TEST_CASE("criterion 5: path-wise semantics preservation on the fixtures") {
  const char* fixtures[] = {
      "micro/rus.qasm",        "micro/loop_swap.qasm",    "micro/loop_nonlinear.qasm",
      "micro/loop_null.qasm",  "micro/if_simple.qasm",    "micro/reset_simple.qasm",
      "micro/loop_simple.qasm", "micro/loop_h.qasm",      "micro/loop_nested.qasm",
      "micro/grover.qasm",     "circuits/mod5_4.qc",      "circuits/qft_4.qc",
      "circuits/barenco_tof_3.qc", "circuits/barenco_tof_3_dirty.qc",
      "circuits/barenco_tof_4.qc", "circuits/barenco_tof_4_dirty.qc",
  };
  int failures = 0, checked = 0;
  for (const char* f : fixtures) {
    ir::Program p = load(f);
    if (p.nqubits() > 8) continue;
    for (Mode m : {Mode::Aff, Mode::Quad, Mode::Pol}) {
      // grover's annotated loop makes unrolling heavy; trim it
      uint32_t unroll = 2;
      OptOut o = optimize(p, m, true);
      ++checked;
      if (!paths_equivalent(p, o.optimized, unroll)) {
        ++failures;
        MESSAGE("mismatch: ", f, " mode ", an::mode_name(m));
      }
    }
  }
  CHECK(failures == 0);
  std::cout << "[criterion 5] semantics preservation (" << checked
            << " fixture-mode pairs): " << (failures == 0 ? "PASS" : "FAIL") << "\n";
}

TEST_CASE("criterion 6: rewrite soundness and Clifford completeness") {
  int circuits = 0, step_violations = 0;
  while (circuits < 200) {
    uint32_t n = 2 + rng() % 4;  // up to 5
    auto gates = random_circuit(n, 8 + rng() % 8, false);
    uint32_t fresh = 2 * n;
    ps::PathSum s;
    s.n_in = s.n_out = n;
    for (uint32_t i = 0; i < n; ++i) s.outputs.push_back(poly::BoolPoly::var(i));
    for (const auto& g : gates) ps::apply_gate(s, g.kind, g.angle, g.qubits, fresh);
    if (s.path_vars.size() > 13) continue;
    ++circuits;
    sim::DenseOp ref = ps::evaluate_dense(s);
    ps::Strategy strat;
    for (int step = 0; step < 64; ++step) {
      auto info = ps::rewrite_step(s, strat);
      if (!info) break;
      if (!sim::equal(ps::evaluate_dense(s), ref)) ++step_violations;
    }
  }
  int cliff_violations = 0;
  for (int trial = 0; trial < 60; ++trial) {
    uint32_t n = 4;
    auto gates = random_circuit(n, 16, true);
    uint32_t fresh = 2 * n;
    ps::PathSum s;
    s.n_in = s.n_out = n;
    for (uint32_t i = 0; i < n; ++i) s.outputs.push_back(poly::BoolPoly::var(i));
    for (const auto& g : gates) ps::apply_gate(s, g.kind, g.angle, g.qubits, fresh);
    ps::Strategy strat;
    strat.sub_degree_cap = 1;
    strat.normalize_outputs = true;
    ps::reduce(s, strat);
    for (const auto& f : s.outputs) {
      int pv = 0;
      for (uint32_t v : f.vars())
        if (s.is_path_var(v)) ++pv;
      if (pv > 1) ++cliff_violations;
    }
  }
  CHECK(step_violations == 0);
  CHECK(cliff_violations == 0);
  std::cout << "[criterion 6] rewrite soundness (200 circuits) and Clifford normalization: "
            << (step_violations + cliff_violations == 0 ? "PASS" : "FAIL") << "\n";
}

TEST_CASE("criterion 7: algebra suites") {
  bool ok = true;
  // lattice laws by enumeration
  {
    auto rand_elem = [&](uint32_t n) {
      dom::Vocabulary voc{n, 0};
      f2::F2Matrix m(voc.total());
      int k = rng() % (n + 1);
      for (int i = 0; i < k; ++i) {
        f2::BitRow r(voc.total());
        for (uint32_t c = 0; c < voc.total(); ++c)
          if (rng() & 1) r.set(c);
        r.constant = rng() & 1;
        m.add_row(std::move(r));
      }
      return dom::KsElement(voc, std::move(m));
    };
    for (int t = 0; t < 60 && ok; ++t) {
      uint32_t n = 2 + rng() % 3;  // up to 4
      auto a = rand_elem(n), b = rand_elem(n), c = rand_elem(n);
      ok &= dom::join(a, b) == dom::join(b, a);
      ok &= dom::meet(a, b) == dom::meet(b, a);
      ok &= dom::join(a, dom::join(b, c)) == dom::join(dom::join(a, b), c);
      ok &= dom::meet(a, dom::meet(b, c)) == dom::meet(dom::meet(a, b), c);
      ok &= dom::join(a, a) == a && dom::meet(a, a) == a;
      ok &= dom::join(a, dom::meet(a, b)) == a && dom::meet(a, dom::join(a, b)) == a;
      auto top = dom::KsElement::top({n, 0}), bot = dom::KsElement::bottom({n, 0});
      ok &= dom::join(a, bot) == a && dom::meet(a, top) == a;
    }
    CHECK(ok);
  }
  // variety correspondences and the radical property, <= 6 variables
  {
    auto rand_poly = [&](uint32_t nv, int nt) {
      std::vector<poly::Monomial> ms;
      for (int i = 0; i < nt; ++i) {
        poly::Monomial m;
        for (uint32_t v = 0; v < nv; ++v)
          if (rng() % 3 == 0) m.vars.push_back(v);
        ms.push_back(std::move(m));
      }
      return poly::BoolPoly::of_terms(std::move(ms));
    };
    auto variety = [](const std::vector<poly::BoolPoly>& gens, uint32_t nv) {
      std::set<uint32_t> pts;
      for (uint32_t v = 0; v < (1u << nv); ++v) {
        std::vector<char> assign(nv);
        for (uint32_t i = 0; i < nv; ++i) assign[i] = (v >> i) & 1;
        bool all = true;
        for (const auto& g : gens)
          if (g.eval(assign)) {
            all = false;
            break;
          }
        if (all) pts.insert(v);
      }
      return pts;
    };
    bool pass = true;
    for (int t = 0; t < 25 && pass; ++t) {
      uint32_t nv = 4 + rng() % 3;  // up to 6
      std::vector<poly::BoolPoly> ga = {rand_poly(nv, 2), rand_poly(nv, 2)};
      std::vector<poly::BoolPoly> gbv = {rand_poly(nv, 2)};
      auto A = gb::buchberger(ga, poly::MonomialOrder::grevlex());
      auto B = gb::buchberger(gbv, poly::MonomialOrder::grevlex());
      auto prod = gb::ideal_product(A, B);
      auto sum = gb::ideal_sum(A, B);
      auto va = variety(A.gens, nv), vb = variety(B.gens, nv);
      std::set<uint32_t> vu = va, vi;
      vu.insert(vb.begin(), vb.end());
      for (uint32_t v : va)
        if (vb.count(v)) vi.insert(v);
      pass &= variety(prod.gens, nv) == vu;
      pass &= variety(sum.gens, nv) == vi;
      // radical: membership in I(V(I)) matches reduction to zero
      auto pts = variety(A.gens, nv);
      for (int k = 0; k < 8; ++k) {
        auto f = rand_poly(nv, 2);
        bool vanishes = true;
        for (uint32_t v : pts) {
          std::vector<char> assign(nv);
          for (uint32_t i = 0; i < nv; ++i) assign[i] = (v >> i) & 1;
          if (f.eval(assign)) {
            vanishes = false;
            break;
          }
        }
        pass &= gb::normal_form(A, f).is_zero() == vanishes;
      }
    }
    CHECK(pass);
    ok &= pass;
  }
  // idempotence and shuffle canonicality
  {
    bool pass = true;
    for (int t = 0; t < 20 && pass; ++t) {
      f2::F2Matrix m(10);
      for (int i = 0; i < 5; ++i) {
        f2::BitRow r(10);
        for (uint32_t c = 0; c < 10; ++c)
          if (rng() & 1) r.set(c);
        m.add_row(std::move(r));
      }
      m.canonicalize();
      f2::F2Matrix again = m;
      again.canonicalize();
      pass &= m == again;
    }
    auto rand_poly6 = [&](int nt) {
      std::vector<poly::Monomial> ms;
      for (int i = 0; i < nt; ++i) {
        poly::Monomial m;
        for (uint32_t v = 0; v < 5; ++v)
          if (rng() % 3 == 0) m.vars.push_back(v);
        ms.push_back(std::move(m));
      }
      return poly::BoolPoly::of_terms(std::move(ms));
    };
    std::vector<poly::BoolPoly> gens = {rand_poly6(3), rand_poly6(2), rand_poly6(3)};
    auto ref = gb::buchberger(gens, poly::MonomialOrder::grevlex());
    for (int t = 0; t < 5; ++t) {
      std::shuffle(gens.begin(), gens.end(), rng);
      pass &= gb::buchberger(gens, poly::MonomialOrder::grevlex()) == ref;
      auto f = rand_poly6(3);
      auto nf = gb::normal_form(ref, f);
      pass &= gb::normal_form(ref, nf) == nf;
    }
    CHECK(pass);
    ok &= pass;
  }
  std::cout << "[criterion 7] algebra suites: " << (ok ? "PASS" : "FAIL") << "\n";
}

TEST_CASE("criterion 8: mode dominance on every fixture") {
  const char* fixtures[] = {
      "micro/rus.qasm",       "micro/loop_swap.qasm", "micro/loop_nonlinear.qasm",
      "micro/loop_null.qasm", "micro/if_simple.qasm", "micro/reset_simple.qasm",
      "micro/loop_simple.qasm", "micro/loop_h.qasm",  "micro/loop_nested.qasm",
      "micro/grover.qasm",
      "circuits/mod5_4.qc",   "circuits/vbe_adder_3.qc",
      "circuits/barenco_tof_3.qc", "circuits/barenco_tof_4.qc",
      "circuits/barenco_tof_5.qc", "circuits/barenco_tof_10.qc",
      "circuits/barenco_tof_3_dirty.qc", "circuits/barenco_tof_4_dirty.qc",
      "circuits/barenco_tof_5_dirty.qc", "circuits/barenco_tof_10_dirty.qc",
      "circuits/qft_4.qc",
  };
  int violations = 0;
  for (const char* f : fixtures) {
    ir::Program p = load(f);
    auto merged_pairs = [&](Mode m) {
      an::Options o;
      o.mode = m;
      auto rep = an::run(p, o);
      std::set<std::pair<int, int>> pairs;
      for (const auto& part : rep.partitions) {
        std::vector<int> real;
        for (const an::Loc& l : part.locs)
          if (l.sub < 0) real.push_back(l.gate);
        for (size_t i = 0; i < real.size(); ++i)
          for (size_t j = i + 1; j < real.size(); ++j) pairs.insert({real[i], real[j]});
      }
      return pairs;
    };
    auto aff = merged_pairs(Mode::Aff);
    auto quad = merged_pairs(Mode::Quad);
    auto pol = merged_pairs(Mode::Pol);
    for (auto& pr : aff)
      if (!quad.count(pr)) ++violations;
    for (auto& pr : quad)
      if (!pol.count(pr)) ++violations;
  }
  CHECK(violations == 0);
  std::cout << "[criterion 8] mode dominance (aff <= quad <= pol): "
            << (violations == 0 ? "PASS" : "FAIL") << "\n";
}
