#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frontend.hpp"

using namespace qpf;
using frontend::parse_string;

namespace {

bool same_tree(const ir::Stmt& a, const ir::Stmt& b) {
  if (a.kind != b.kind || a.qubit != b.qubit || a.callee != b.callee || a.args != b.args)
    return false;
  if (a.kind == ir::Stmt::Gate) {
    if (a.gate.kind != b.gate.kind || a.gate.qubits != b.gate.qubits ||
        a.gate.uname != b.gate.uname || !(a.gate.angle == b.gate.angle))
      return false;
  }
  if (a.trips != b.trips) return false;
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!same_tree(*a.children[i], *b.children[i])) return false;
  return true;
}

bool roundtrips(const ir::Program& p) {
  std::string text = frontend::emit(p);
  ir::Program q = parse_string(text, p.format);
  if (p.qubits != q.qubits || p.zero_init != q.zero_init) return false;
  if (p.procedures.size() != q.procedures.size()) return false;
  for (const auto& [name, proc] : p.procedures) {
    auto it = q.procedures.find(name);
    if (it == q.procedures.end()) return false;
    if (!same_tree(*proc.body, *it->second.body)) return false;
  }
  return same_tree(*p.body, *q.body);
}

int count_gates(const ir::Program& p, ir::GateKind k) {
  int n = 0;
  ir::for_each_gate(p, [&](const ir::GateApp& g) {
    if (g.kind == k) ++n;
  });
  return n;
}

}  // namespace

TEST_CASE("dotqc parse basics") {
  std::string src = R"(.v a b c
.i a b
.o c

BEGIN
H c
tof a b c
T a ; T* b
Z a b c
P c
END
)";
  ir::Program p = parse_string(src, ir::SourceFormat::QC);
  CHECK(p.qubits.size() == 3);
  CHECK(p.zero_init == std::vector<char>{0, 0, 1});
  CHECK(count_gates(p, ir::GateKind::Toffoli) == 1);
  CHECK(count_gates(p, ir::GateKind::CCZ) == 1);
  CHECK(count_gates(p, ir::GateKind::T) == 1);
  CHECK(count_gates(p, ir::GateKind::Tdg) == 1);
  CHECK(count_gates(p, ir::GateKind::S) == 1);
  CHECK(roundtrips(p));
}

TEST_CASE("dotqc errors") {
  CHECK_THROWS_AS(parse_string(".v a\n.i a\nBEGIN\nH b\nEND\n", ir::SourceFormat::QC),
                  frontend::ParseError);
  // while cannot be expressed in .qc
  ir::Program p;
  p.qubits = {"q"};
  p.zero_init = {0};
  p.format = ir::SourceFormat::QC;
  p.body = ir::Stmt::while_star(ir::Stmt::skip());
  CHECK_THROWS_AS(frontend::emit(p), frontend::EmitError);
}

TEST_CASE("unknown dotqc gate becomes uninterpreted") {
  std::string src = ".v a b\n.i a b\nBEGIN\nU2 a b\nEND\n";
  ir::Program p = parse_string(src, ir::SourceFormat::QC);
  CHECK(count_gates(p, ir::GateKind::Uninterpreted) == 1);
  CHECK(roundtrips(p));
}

TEST_CASE("qasm3 subset: control flow lowers to stars") {
  std::string src = R"(OPENQASM 3.0;
include "stdgates.inc";
qubit[2] q;
bit c;
h q[0];
while (c == 0) {
  cx q[0], q[1];
  c = measure q[1];
}
if (c) { t q[0]; } else { tdg q[0]; }
)";
  ir::Program p = parse_string(src, ir::SourceFormat::QASM3);
  CHECK(p.qubits.size() == 2);
  REQUIRE(p.body->children.size() == 3);
  CHECK(p.body->children[1]->kind == ir::Stmt::WhileStar);
  CHECK(p.body->children[2]->kind == ir::Stmt::IfStar);
  CHECK(count_gates(p, ir::GateKind::T) == 1);
  CHECK(count_gates(p, ir::GateKind::Tdg) == 1);
  CHECK(roundtrips(p));
}

TEST_CASE("qasm3 gate definitions are inlined, defs preserved as calls") {
  std::string src = R"(OPENQASM 3.0;
gate mytof a, b, c { h c; ccz a, b, c; h c; }
def sub(qubit a, qubit b) { cx a, b; t b; }
qubit[3] q;
mytof q[0], q[1], q[2];
sub(q[0], q[2]);
)";
  ir::Program p = parse_string(src, ir::SourceFormat::QASM3);
  CHECK(count_gates(p, ir::GateKind::CCZ) == 1);  // inlined gate call
  CHECK(p.procedures.count("sub") == 1);
  bool found_call = false;
  std::function<void(const ir::Stmt&)> walk = [&](const ir::Stmt& s) {
    if (s.kind == ir::Stmt::Call) {
      found_call = true;
      CHECK(s.callee == "sub");
      CHECK(s.args == std::vector<uint32_t>{0, 2});
    }
    for (const auto& c : s.children)
      if (c) walk(*c);
  };
  walk(*p.body);
  CHECK(found_call);
  CHECK(roundtrips(p));
}

TEST_CASE("angles: dyadic literals stay exact, others become atoms") {
  std::string src = R"(OPENQASM 3.0;
qubit q;
rz(pi/4) q;
rz(3*pi/8) q;
rz(theta) q;
rz(theta) q;
rz(0.3) q;
)";
  ir::Program p = parse_string(src, ir::SourceFormat::QASM3);
  std::vector<poly::Angle> angles;
  ir::for_each_gate(p, [&](const ir::GateApp& g) { angles.push_back(g.angle); });
  REQUIRE(angles.size() == 5);
  CHECK(angles[0] == poly::Angle::quarter());
  CHECK(angles[1] == poly::Angle::dyadic(3, 3));
  CHECK(!angles[2].dyadic_only());
  CHECK(angles[2] == angles[3]);  // same atom
  CHECK(!angles[4].dyadic_only());
  CHECK(angles[2] != angles[4]);
  CHECK(roundtrips(p));
}

TEST_CASE("for loops with literal ranges carry trip counts") {
  std::string src = R"(OPENQASM 3.0;
qubit q;
for uint i in [1:1000] { x q; }
)";
  ir::Program p = parse_string(src, ir::SourceFormat::QASM3);
  REQUIRE(p.body->children.size() == 1);
  CHECK(p.body->children[0]->kind == ir::Stmt::WhileStar);
  CHECK(p.body->children[0]->trips == 1000);
  CHECK(roundtrips(p));
}

TEST_CASE("recursion is rejected") {
  std::string src = R"(OPENQASM 3.0;
def f(qubit a) { f(a); }
qubit q;
f(q);
)";
  CHECK_THROWS_AS(parse_string(src, ir::SourceFormat::QASM3), frontend::ParseError);
}

TEST_CASE("location assignment is idempotent and dense") {
  ir::Program p = parse_string(
      "OPENQASM 3.0; qubit q; t q; h q; while (c) { x q; } t q;", ir::SourceFormat::QASM3);
  std::vector<int> locs;
  ir::for_each_gate(p, [&](const ir::GateApp& g) { locs.push_back(g.location); });
  CHECK(locs == std::vector<int>{0, 1, 2, 3});
  ir::Program q = p.clone();
  ir::assign_locations(q);
  std::vector<int> locs2;
  ir::for_each_gate(q, [&](const ir::GateApp& g) { locs2.push_back(g.location); });
  CHECK(locs == locs2);
}

TEST_CASE("parsing never changes straightline T counts") {
  std::string src = ".v a b\n.i a b\nBEGIN\nT a\nT b\nT* a\nH a\nT a\nEND\n";
  ir::Program p = parse_string(src, ir::SourceFormat::QC);
  CHECK(count_gates(p, ir::GateKind::T) + count_gates(p, ir::GateKind::Tdg) == 4);
}
