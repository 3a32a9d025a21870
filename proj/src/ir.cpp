#include "ir.hpp"

#include <functional>
#include <set>

namespace qpf::ir {

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::SWAP:
      return 2;
    case GateKind::CCZ:
    case GateKind::Toffoli:
      return 3;
    case GateKind::Uninterpreted:
      return -1;
    default:
      return 1;
  }
}

bool is_diagonal(GateKind k) {
  switch (k) {
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RZ:
    case GateKind::CCZ:
      return true;
    default:
      return false;
  }
}

bool is_self_inverse(GateKind k) {
  switch (k) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::CCZ:
    case GateKind::Toffoli:
      return true;
    default:
      return false;
  }
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "S*";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "T*";
    case GateKind::RZ: return "Rz";
    case GateKind::CNOT: return "cnot";
    case GateKind::SWAP: return "swap";
    case GateKind::CCZ: return "ccz";
    case GateKind::Toffoli: return "tof";
    case GateKind::Uninterpreted: return "?";
  }
  return "?";
}

StmtPtr Stmt::clone() const {
  auto s = std::make_unique<Stmt>();
  s->kind = kind;
  s->qubit = qubit;
  s->gate = gate;
  s->callee = callee;
  s->args = args;
  s->trips = trips;
  for (const auto& c : children) s->children.push_back(c ? c->clone() : nullptr);
  return s;
}

Program Program::clone() const {
  Program p;
  p.qubits = qubits;
  p.zero_init = zero_init;
  p.format = format;
  p.angle_atom_names = angle_atom_names;
  p.body = body ? body->clone() : nullptr;
  for (const auto& [name, proc] : procedures) {
    Procedure np;
    np.name = proc.name;
    np.nparams = proc.nparams;
    np.body = proc.body ? proc.body->clone() : nullptr;
    p.procedures.emplace(name, std::move(np));
  }
  return p;
}

static void number_gates(Stmt& s, int& next) {
  if (s.kind == Stmt::Gate) {
    s.gate.location = next++;
    return;
  }
  for (auto& c : s.children)
    if (c) number_gates(*c, next);
}

int assign_locations(Program& p) {
  int next = 0;
  if (p.body) number_gates(*p.body, next);
  for (auto& [name, proc] : p.procedures)
    if (proc.body) number_gates(*proc.body, next);
  return next;
}

static void check_stmt(const Program& p, const Stmt& s, const std::string& where,
                       std::vector<std::string>& diags,
                       std::set<std::string>& call_stack) {
  auto check_qubit = [&](uint32_t q) {
    if (q >= p.qubits.size())
      diags.push_back(where + ": undeclared qubit index " + std::to_string(q));
  };
  switch (s.kind) {
    case Stmt::Reset:
    case Stmt::Meas:
      check_qubit(s.qubit);
      break;
    case Stmt::Gate: {
      int ar = gate_arity(s.gate.kind);
      if (ar >= 0 && s.gate.qubits.size() != size_t(ar))
        diags.push_back(where + ": gate " + gate_name(s.gate.kind) + " expects " +
                        std::to_string(ar) + " qubits, got " +
                        std::to_string(s.gate.qubits.size()));
      std::set<uint32_t> seen;
      for (uint32_t q : s.gate.qubits) {
        check_qubit(q);
        if (!seen.insert(q).second)
          diags.push_back(where + ": repeated qubit operand on " + gate_name(s.gate.kind));
      }
      break;
    }
    case Stmt::Call: {
      auto it = p.procedures.find(s.callee);
      if (it == p.procedures.end()) {
        diags.push_back(where + ": call to unknown procedure " + s.callee);
        break;
      }
      if (it->second.nparams != s.args.size())
        diags.push_back(where + ": procedure " + s.callee + " expects " +
                        std::to_string(it->second.nparams) + " arguments");
      for (uint32_t q : s.args) check_qubit(q);
      if (call_stack.count(s.callee)) {
        diags.push_back(where + ": recursive call to " + s.callee);
        break;
      }
      call_stack.insert(s.callee);
      if (it->second.body) check_stmt(p, *it->second.body, s.callee, diags, call_stack);
      call_stack.erase(s.callee);
      break;
    }
    default:
      for (const auto& c : s.children)
        if (c) check_stmt(p, *c, where, diags, call_stack);
  }
}

std::vector<std::string> validate(const Program& p) {
  std::vector<std::string> diags;
  std::set<std::string> stack;
  if (p.body) check_stmt(p, *p.body, "main", diags, stack);
  return diags;
}

void for_each_gate(const Stmt& s, const std::function<void(const GateApp&)>& fn) {
  if (s.kind == Stmt::Gate) {
    fn(s.gate);
    return;
  }
  for (const auto& c : s.children)
    if (c) for_each_gate(*c, fn);
}

void for_each_gate(const Program& p, const std::function<void(const GateApp&)>& fn) {
  if (p.body) for_each_gate(*p.body, fn);
  for (const auto& [name, proc] : p.procedures)
    if (proc.body) for_each_gate(*proc.body, fn);
}

}  // namespace qpf::ir
