#pragma once

#include "polyring.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qpf::ir {

enum class GateKind {
  H,
  X,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  RZ,
  CNOT,
  SWAP,
  CCZ,
  Toffoli,
  Uninterpreted,
};

int gate_arity(GateKind k);
bool is_diagonal(GateKind k);
bool is_self_inverse(GateKind k);
const char* gate_name(GateKind k);

struct GateApp {
  GateKind kind = GateKind::H;
  poly::Angle angle;       // RZ only
  std::string uname;       // Uninterpreted only
  std::vector<uint32_t> qubits;
  int32_t location = -1;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum Kind { Skip, Reset, Gate, Meas, Call, Seq, IfStar, WhileStar } kind = Skip;

  uint32_t qubit = 0;                 // Reset / Meas
  GateApp gate;                       // Gate
  std::string callee;                 // Call
  std::vector<uint32_t> args;         // Call
  std::vector<StmtPtr> children;      // Seq: items; IfStar: [then, else]; WhileStar: [body]
  uint64_t trips = 0;                 // optional loop trip-count annotation

  static StmtPtr skip() { return mk(Skip); }
  static StmtPtr reset(uint32_t q) {
    auto s = mk(Reset);
    s->qubit = q;
    return s;
  }
  static StmtPtr meas(uint32_t q) {
    auto s = mk(Meas);
    s->qubit = q;
    return s;
  }
  static StmtPtr of_gate(GateApp g) {
    auto s = mk(Gate);
    s->gate = std::move(g);
    return s;
  }
  static StmtPtr call(std::string name, std::vector<uint32_t> args) {
    auto s = mk(Call);
    s->callee = std::move(name);
    s->args = std::move(args);
    return s;
  }
  static StmtPtr seq(std::vector<StmtPtr> items) {
    auto s = mk(Seq);
    s->children = std::move(items);
    return s;
  }
  static StmtPtr if_star(StmtPtr then_b, StmtPtr else_b) {
    auto s = mk(IfStar);
    s->children.push_back(std::move(then_b));
    s->children.push_back(std::move(else_b));
    return s;
  }
  static StmtPtr while_star(StmtPtr body, uint64_t trips = 0) {
    auto s = mk(WhileStar);
    s->children.push_back(std::move(body));
    s->trips = trips;
    return s;
  }

  StmtPtr clone() const;

 private:
  static StmtPtr mk(Kind k) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    return s;
  }
};

struct Procedure {
  std::string name;
  uint32_t nparams = 0;
  StmtPtr body;
};

enum class SourceFormat { QC, QASM3 };

struct Program {
  std::vector<std::string> qubits;
  std::vector<char> zero_init;  // wire starts in |0> (not a primary input)
  std::map<std::string, Procedure> procedures;
  StmtPtr body;
  SourceFormat format = SourceFormat::QASM3;
  std::vector<std::string> angle_atom_names;  // symbolic rotation atoms by id

  uint32_t nqubits() const { return uint32_t(qubits.size()); }
  Program clone() const;
};

// Numbers every GateApp in program order (body first, then procedures by
// name); idempotent. Returns the number of locations.
int assign_locations(Program& p);

// Well-formedness diagnostics: undeclared qubits, arity mismatches,
// duplicate qubit operands, recursive or unknown procedure calls.
std::vector<std::string> validate(const Program& p);

void for_each_gate(const Stmt& s, const std::function<void(const GateApp&)>& fn);
void for_each_gate(const Program& p, const std::function<void(const GateApp&)>& fn);

}  // namespace qpf::ir
