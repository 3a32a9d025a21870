#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "analysis.hpp"
#include "frontend.hpp"
#include "pathsum.hpp"
#include "simulator.hpp"
#include "transform.hpp"

#include <random>
#include <set>

using namespace qpf;
using an::Mode;
using an::Options;

namespace {

ir::Program parse(const std::string& text, ir::SourceFormat fmt = ir::SourceFormat::QASM3) {
  return frontend::parse_string(text, fmt);
}

int t_after(const ir::Program& p, Mode m, bool cleanup = true) {
  Options o;
  o.mode = m;
  an::MergeReport r = an::run(p, o);
  ir::Program q = xform::apply_merges(p, r, cleanup);
  return xform::count(q).t;
}

bool verify(const ir::Program& a, const ir::Program& b, uint32_t unroll = 3) {
  auto pa = sim::enumerate_paths(a, unroll);
  auto pb = sim::enumerate_paths(b, unroll);
  if (pa.size() != pb.size()) return false;
  for (size_t i = 0; i < pa.size(); ++i)
    if (!sim::equiv_up_to_phase(pa[i].op, pb[i].op)) return false;
  return true;
}

// Parses an invariant generator like "x' + x y + 1" over named variables.
poly::BoolPoly gen_of(const std::string& s, uint32_t n) {
  poly::BoolPoly p;
  std::string tok;
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
      uint32_t q = 0;
      char c = m[i];
      if (c == 'x') q = 0;
      else if (c == 'y') q = 1;
      else if (c == 'z') q = 2;
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

bool relation_is(const dom::TransitionIdeal& t, std::vector<std::string> gens, uint32_t n) {
  std::vector<poly::BoolPoly> want;
  for (const auto& g : gens) want.push_back(gen_of(g, n));
  auto basis = gb::buchberger(want, poly::MonomialOrder::grevlex());
  return t.basis == basis;
}

}  // namespace

TEST_CASE("strengthen merges across HH and removes both phase gates") {
  // T; H; H; Tdg: the worked identity example
  ir::Program p = parse("OPENQASM 3.0; qubit q; t q; h q; h q; tdg q;");
  Options o;
  o.mode = Mode::Pol;
  an::MergeReport r = an::run(p, o);
  // one merged partition holding both phase gates, angle zero
  int merged = 0;
  for (const auto& part : r.partitions)
    if (part.locs.size() == 2) {
      ++merged;
      CHECK(part.angle.is_zero());
      CHECK(part.eliminable());
    }
  CHECK(merged == 1);
  CHECK(r.final_relation == std::vector<std::string>{"x' \xE2\x8A\x95 x"});
  ir::Program q = xform::apply_merges(p, r, true);
  CHECK(xform::count(q).t == 0);
  CHECK(xform::count(q).total == 0);  // HH cancels in cleanup
  CHECK(verify(p, q));
  // without the cleanup pass the two Hadamards remain
  ir::Program q2 = xform::apply_merges(p, r, false);
  CHECK(xform::count(q2).total == 2);
  CHECK(xform::count(q2).h == 2);

  // affine mode merges it too (the witness is affine)
  CHECK(t_after(p, Mode::Aff) == 0);
}

TEST_CASE("opaque gate example from the background section") {
  ir::Program p = parse(
      ".v x y\n.i x y\nBEGIN\nT y\nU x\nT y\nEND\n", ir::SourceFormat::QC);
  Options o;
  o.mode = Mode::Aff;
  an::MergeReport r = an::run(p, o);
  bool found = false;
  for (const auto& part : r.partitions)
    if (part.locs.size() == 2) {
      found = true;
      CHECK(part.angle == poly::Angle::half());
    }
  CHECK(found);
  ir::Program q = xform::apply_merges(p, r, true);
  CHECK(xform::count(q).t == 0);  // two T gates became one S
}

TEST_CASE("micro: rus") {
  ir::Program p = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/rus.qasm");
  CHECK(xform::count(p).t == 16);
  CHECK(t_after(p, Mode::Aff) == 10);
  CHECK(t_after(p, Mode::Pol) == 8);
  Options o;
  o.mode = Mode::Pol;
  an::MergeReport r = an::run(p, o);
  REQUIRE(r.invariants.size() == 1);
  CHECK(r.invariants[0].text == "\xE2\x9F\xA8z' \xE2\x8A\x95 z\xE2\x9F\xA9");
}

TEST_CASE("micro: loop_swap") {
  ir::Program p = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/loop_swap.qasm");
  CHECK(xform::count(p).t == 2);
  CHECK(t_after(p, Mode::Aff) == 0);
  CHECK(t_after(p, Mode::Pol) == 0);
}

TEST_CASE("micro: loop_nonlinear") {
  ir::Program p =
      frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/loop_nonlinear.qasm");
  CHECK(xform::count(p).t == 30);
  CHECK(t_after(p, Mode::Aff) == 18);
  CHECK(t_after(p, Mode::Pol) == 0);
}

TEST_CASE("micro: loop_null") {
  ir::Program p = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/loop_null.qasm");
  CHECK(xform::count(p).t == 4);
  CHECK(t_after(p, Mode::Aff) == 2);
  CHECK(t_after(p, Mode::Pol) == 2);
}

TEST_CASE("micro: if_simple and reset_simple") {
  ir::Program a = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/if_simple.qasm");
  CHECK(xform::count(a).t == 2);
  CHECK(t_after(a, Mode::Aff) == 0);
  CHECK(t_after(a, Mode::Pol) == 0);

  ir::Program b =
      frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/reset_simple.qasm");
  CHECK(xform::count(b).t == 2);
  CHECK(t_after(b, Mode::Aff) == 1);
  CHECK(t_after(b, Mode::Pol) == 1);
}

TEST_CASE("micro: loop_simple, loop_h, loop_nested") {
  ir::Program a = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/loop_simple.qasm");
  CHECK(t_after(a, Mode::Aff) == 0);
  CHECK(t_after(a, Mode::Pol) == 0);
  ir::Program b = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/loop_h.qasm");
  CHECK(t_after(b, Mode::Aff) == 0);
  CHECK(t_after(b, Mode::Pol) == 0);
  Options o;
  o.mode = Mode::Pol;
  an::MergeReport rb = an::run(b, o);
  REQUIRE(rb.invariants.size() == 1);
  CHECK(rb.invariants[0].text == "\xE2\x9F\xA8y' \xE2\x8A\x95 y\xE2\x9F\xA9");
  ir::Program c = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/loop_nested.qasm");
  CHECK(xform::count(c).t == 3);
  CHECK(t_after(c, Mode::Aff) == 2);
  CHECK(t_after(c, Mode::Pol) == 2);
}

TEST_CASE("optimized micro fixtures preserve path semantics") {
  for (const char* name : {"rus", "loop_swap", "loop_nonlinear", "loop_null", "if_simple",
                           "reset_simple", "loop_simple", "loop_h", "loop_nested"}) {
    ir::Program p =
        frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/" + name + ".qasm");
    for (Mode m : {Mode::Aff, Mode::Quad, Mode::Pol}) {
      Options o;
      o.mode = m;
      an::MergeReport r = an::run(p, o);
      ir::Program q = xform::apply_merges(p, r, true);
      INFO(name, " mode ", an::mode_name(m));
      CHECK(verify(p, q, 2));
    }
  }
}

TEST_CASE("loop relation for the nonlinear fixture matches the reported invariant") {
  // while (*) { cx x, y } inside the nonlinear fixture
  ir::Program body = parse("OPENQASM 3.0; qubit x; qubit y; cx x, y;");
  Options o;
  o.mode = Mode::Pol;
  auto rel = an::top_relation_pol(body, o);
  auto closed = dom::star(rel);
  CHECK(relation_is(closed, {"x'+x", "y'+y+xy'+xy"}, 2));
}

TEST_CASE("mode dominance on the micro fixtures") {
  for (const char* name : {"rus", "loop_swap", "loop_nonlinear", "loop_null", "if_simple",
                           "reset_simple", "loop_simple", "loop_h", "loop_nested"}) {
    ir::Program p =
        frontend::parse_file(std::string(QPF_BENCH_DIR) + "/micro/" + name + ".qasm");
    // merged literal phase-gate location pairs, per mode
    auto merged_pairs = [&](Mode m) {
      Options o;
      o.mode = m;
      an::MergeReport r = an::run(p, o);
      std::set<std::pair<int, int>> pairs;
      for (const auto& part : r.partitions) {
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
    for (auto& pr : aff) CHECK(quad.count(pr));
    for (auto& pr : quad) CHECK(pol.count(pr));
  }
}

TEST_CASE("affine relation is precise for loop-free dihedral circuits") {
  // over {CNOT, X, Rz} the computed relation equals the brute-force
  // transition relation exactly
  std::mt19937 rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    uint32_t n = 2 + rng() % 4;  // up to 5
    ir::Program p;
    for (uint32_t i = 0; i < n; ++i) {
      p.qubits.push_back("q" + std::to_string(i));
      p.zero_init.push_back(0);
    }
    std::vector<ir::StmtPtr> items;
    std::vector<ir::GateApp> gates;
    for (int g = 0; g < 12; ++g) {
      ir::GateApp ga;
      int pick = rng() % 3;
      if (pick == 0) {
        ga.kind = ir::GateKind::CNOT;
        uint32_t a = rng() % n, b = rng() % n;
        if (a == b) b = (b + 1) % n;
        ga.qubits = {a, b};
      } else if (pick == 1) {
        ga.kind = ir::GateKind::X;
        ga.qubits = {rng() % n};
      } else {
        ga.kind = ir::GateKind::T;
        ga.qubits = {rng() % n};
      }
      gates.push_back(ga);
      items.push_back(ir::Stmt::of_gate(std::move(ga)));
    }
    p.body = ir::Stmt::seq(std::move(items));
    ir::assign_locations(p);

    an::Options o;
    o.mode = Mode::Aff;
    dom::KsElement rel = an::top_relation_aff(p, o);
    sim::DenseOp u = sim::unitary_of(gates, n);
    // membership in ker(rel) must coincide with nonzero transitions
    for (uint32_t x = 0; x < (1u << n); ++x) {
      auto supp = u.support(x);
      for (uint32_t xp = 0; xp < (1u << n); ++xp) {
        bool concrete = std::find(supp.begin(), supp.end(), xp) != supp.end();
        bool abstract_ok = !rel.is_bottom();
        for (const auto& r : rel.matrix().rows()) {
          bool acc = r.constant;
          for (uint32_t c : r.support()) {
            uint32_t q = c < n ? c : c - n;
            uint32_t v = c < n ? xp : x;
            if ((v >> (n - 1 - q)) & 1) acc = !acc;
          }
          if (acc) {
            abstract_ok = false;
            break;
          }
        }
        CHECK(concrete == abstract_ok);
      }
    }
  }
}

TEST_CASE("phase degree stays cubic before rewriting on Clifford+T input") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    uint32_t n = 3;
    ir::Program p;
    for (uint32_t i = 0; i < n; ++i) {
      p.qubits.push_back("q" + std::to_string(i));
      p.zero_init.push_back(0);
    }
    std::vector<ir::StmtPtr> items;
    using ir::GateKind;
    GateKind pool[] = {GateKind::H, GateKind::T, GateKind::CNOT, GateKind::S, GateKind::X};
    ps::PathSum s;
    s.n_in = s.n_out = n;
    for (uint32_t i = 0; i < n; ++i) s.outputs.push_back(poly::BoolPoly::var(i));
    uint32_t fresh = 2 * n;
    for (int g = 0; g < 20; ++g) {
      GateKind k = pool[rng() % 5];
      std::vector<uint32_t> qs = {uint32_t(rng() % n)};
      if (k == GateKind::CNOT) {
        uint32_t b = uint32_t(rng() % n);
        if (b == qs[0]) b = (b + 1) % n;
        qs.push_back(b);
      }
      ps::apply_gate(s, k, poly::Angle::zero(), qs, fresh);
    }
    size_t deg = 0;
    for (const auto& [m, a] : s.phase.terms()) deg = std::max(deg, m.degree());
    CHECK(deg <= 3);
  }
}

TEST_CASE("validation diagnostics") {
  ir::Program p;
  p.qubits = {"a", "b"};
  p.zero_init = {0, 0};
  ir::GateApp bad;
  bad.kind = ir::GateKind::CNOT;
  bad.qubits = {0};  // arity mismatch
  std::vector<ir::StmtPtr> items;
  items.push_back(ir::Stmt::of_gate(std::move(bad)));
  p.body = ir::Stmt::seq(std::move(items));
  auto diags = ir::validate(p);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("expects 2") != std::string::npos);

  ir::Program q;
  q.qubits = {"a"};
  q.zero_init = {0};
  ir::GateApp dup;
  dup.kind = ir::GateKind::CNOT;
  dup.qubits = {0, 0};
  std::vector<ir::StmtPtr> it2;
  it2.push_back(ir::Stmt::of_gate(std::move(dup)));
  q.body = ir::Stmt::seq(std::move(it2));
  CHECK(!ir::validate(q).empty());
}

TEST_CASE("parse-emit-parse holds on every committed fixture") {
  const char* files[] = {
      "micro/rus.qasm",        "micro/loop_swap.qasm",  "micro/loop_nonlinear.qasm",
      "micro/loop_null.qasm",  "micro/if_simple.qasm",  "micro/reset_simple.qasm",
      "micro/loop_simple.qasm", "micro/loop_h.qasm",    "micro/loop_nested.qasm",
      "micro/grover.qasm",     "circuits/mod5_4.qc",    "circuits/qft_4.qc",
      "circuits/vbe_adder_3.qc", "circuits/barenco_tof_3.qc",
      "circuits/barenco_tof_4_dirty.qc",
  };
  for (const char* f : files) {
    ir::Program p = frontend::parse_file(std::string(QPF_BENCH_DIR) + "/" + f);
    std::string emitted = frontend::emit(p);
    ir::Program q = frontend::parse_string(emitted, p.format);
    std::string emitted2 = frontend::emit(q);
    INFO(f);
    CHECK(emitted == emitted2);
    CHECK(xform::count(p).t == xform::count(q).t);
    CHECK(xform::count(p).total == xform::count(q).total);
  }
}

TEST_CASE("procedure calls summarize once and compose at every site") {
  std::string src = R"(OPENQASM 3.0;
def mix(qubit a, qubit b) { cx a, b; t b; }
qubit q0;
qubit q1;
t q0;
mix(q0, q1);
mix(q0, q1);
tdg q0;
)";
  ir::Program p = parse(src);
  CHECK(xform::count(p).t == 4);  // the called body counts once per site
  for (Mode m : {Mode::Aff, Mode::Pol}) {
    Options o;
    o.mode = m;
    an::MergeReport r = an::run(p, o);
    ir::Program q = xform::apply_merges(p, r, true);
    // the outer pair merges through the call summaries (q0 is preserved);
    // the inner phase gate is demoted and survives
    CHECK(xform::count(q).t == 2);
    CHECK(verify(p, q, 2));
  }
}
