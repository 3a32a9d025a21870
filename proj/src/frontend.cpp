#include "frontend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qpf::frontend {

using ir::GateApp;
using ir::GateKind;
using ir::Program;
using ir::Stmt;
using ir::StmtPtr;
using poly::Angle;

namespace {

//------------------------------------------------------------- .qc format

struct QcParser {
  std::istringstream in;
  int line = 1;
  std::map<std::string, uint32_t> index;
  Program prog;
  std::vector<std::vector<std::string>> pending;  // ';' splits one line into statements

  explicit QcParser(const std::string& text) : in(text) { prog.format = ir::SourceFormat::QC; }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, 0); }

  std::vector<std::string> next_fields() {
    while (pending.empty()) {
      std::string raw;
      if (!std::getline(in, raw)) return {};
      ++line;
      size_t h = raw.find('#');
      if (h != std::string::npos) raw.erase(h);
      std::replace(raw.begin(), raw.end(), '\r', ' ');
      std::istringstream ls(raw);
      std::vector<std::string> fields;
      std::string piece;
      std::string chunk;
      std::getline(ls, chunk);
      std::istringstream parts(chunk);
      std::string stmt;
      std::vector<std::string> stmts;
      while (std::getline(parts, stmt, ';')) stmts.push_back(stmt);
      for (const std::string& s : stmts) {
        std::istringstream ss(s);
        std::vector<std::string> fs;
        std::string f;
        while (ss >> f) fs.push_back(f);
        if (!fs.empty()) pending.push_back(std::move(fs));
      }
    }
    std::vector<std::string> out = std::move(pending.front());
    pending.erase(pending.begin());
    return out;
  }

  uint32_t qubit(const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) fail("no such qubit \"" + name + "\"");
    return it->second;
  }

  void push_gate(std::vector<StmtPtr>& out, GateKind k, std::vector<uint32_t> qs,
                 Angle angle = Angle::zero(), std::string uname = {}) {
    GateApp g;
    g.kind = k;
    g.qubits = std::move(qs);
    g.angle = angle;
    g.uname = std::move(uname);
    out.push_back(Stmt::of_gate(std::move(g)));
  }

  Program run() {
    std::vector<std::string> f = next_fields();
    // headers
    while (!f.empty() && f[0] != "BEGIN") {
      if (f[0] == ".v") {
        for (size_t i = 1; i < f.size(); ++i) {
          if (index.count(f[i])) fail("duplicate wire " + f[i]);
          index[f[i]] = uint32_t(prog.qubits.size());
          prog.qubits.push_back(f[i]);
          prog.zero_init.push_back(1);
        }
      } else if (f[0] == ".i") {
        for (size_t i = 1; i < f.size(); ++i) prog.zero_init[qubit(f[i])] = 0;
      } else if (f[0] == ".o" || f[0] == ".c" || f[0] == ".ol") {
        // outputs / constants: not used by the analysis
      } else {
        fail("unknown header " + f[0]);
      }
      f = next_fields();
    }
    if (f.empty()) fail("missing BEGIN");

    std::vector<StmtPtr> body;
    f = next_fields();
    if (f.empty()) fail("missing END");
    while (f[0] != "END") {
      std::string op = f[0];
      std::vector<uint32_t> qs;
      for (size_t i = 1; i < f.size(); ++i) qs.push_back(qubit(f[i]));
      if (op == "TOF") op = "tof";

      if (op == "tof" || op == "cnot") {
        if (qs.size() == 1)
          push_gate(body, GateKind::X, qs);
        else if (qs.size() == 2)
          push_gate(body, GateKind::CNOT, qs);
        else if (qs.size() == 3)
          push_gate(body, GateKind::Toffoli, qs);
        else
          fail(op + " with " + std::to_string(qs.size()) + " operands");
      } else if (op == "H" || op == "h") {
        push_gate(body, GateKind::H, qs);
      } else if (op == "X" || op == "x") {
        push_gate(body, GateKind::X, qs);
      } else if (op == "Y" || op == "y") {
        // Y = iXZ: the global phase is dropped (unobservable per path)
        push_gate(body, GateKind::Z, qs);
        push_gate(body, GateKind::X, qs);
      } else if (op == "Z" || op == "z") {
        if (qs.size() == 1)
          push_gate(body, GateKind::Z, qs);
        else if (qs.size() == 3)
          push_gate(body, GateKind::CCZ, qs);
        else if (qs.size() == 2) {
          // CZ desugared exactly: S a; S b; CNOT a b; S* b; CNOT a b
          push_gate(body, GateKind::S, {qs[0]});
          push_gate(body, GateKind::S, {qs[1]});
          push_gate(body, GateKind::CNOT, qs);
          push_gate(body, GateKind::Sdg, {qs[1]});
          push_gate(body, GateKind::CNOT, qs);
        } else
          fail("Z with " + std::to_string(qs.size()) + " operands");
      } else if (op == "S" || op == "P") {
        push_gate(body, GateKind::S, qs);
      } else if (op == "S*" || op == "P*") {
        push_gate(body, GateKind::Sdg, qs);
      } else if (op == "T") {
        push_gate(body, GateKind::T, qs);
      } else if (op == "T*") {
        push_gate(body, GateKind::Tdg, qs);
      } else if (op == "swap" || op == "SWAP") {
        push_gate(body, GateKind::SWAP, qs);
      } else {
        push_gate(body, GateKind::Uninterpreted, qs, Angle::zero(), op);
      }
      f = next_fields();
      if (f.empty()) fail("missing END");
    }
    prog.body = Stmt::seq(std::move(body));
    return std::move(prog);
  }
};

void emit_qc_gate(std::ostream& out, const Program& p, const GateApp& g) {
  auto names = [&](const char* op) {
    out << op;
    for (uint32_t q : g.qubits) out << " " << p.qubits[q];
    out << "\n";
  };
  switch (g.kind) {
    case GateKind::H: names("H"); break;
    case GateKind::X: names("X"); break;
    case GateKind::Z: names("Z"); break;
    case GateKind::S: names("P"); break;
    case GateKind::Sdg: names("P*"); break;
    case GateKind::T: names("T"); break;
    case GateKind::Tdg: names("T*"); break;
    case GateKind::CNOT: names("tof"); break;
    case GateKind::Toffoli: names("tof"); break;
    case GateKind::CCZ: names("Z"); break;
    case GateKind::SWAP: names("swap"); break;
    case GateKind::RZ: {
      if (!g.angle.dyadic_only() || g.angle.pow > 2)
        throw EmitError(".qc cannot express rotation " + poly::to_string(g.angle));
      // angle k/4*pi as a Z/P/T product
      int64_t k = (g.angle.num << (2 - g.angle.pow)) & 7;
      if (k & 4) names("Z");
      if (k & 2) names("P");
      if (k & 1) names("T");
      break;
    }
    case GateKind::Uninterpreted: names(g.uname.c_str()); break;
  }
}

std::string emit_qc(const Program& p) {
  std::ostringstream out;
  out << ".v";
  for (const auto& q : p.qubits) out << " " << q;
  out << "\n.i";
  for (size_t i = 0; i < p.qubits.size(); ++i)
    if (!p.zero_init[i]) out << " " << p.qubits[i];
  out << "\n.o";
  for (const auto& q : p.qubits) out << " " << q;
  out << "\n\nBEGIN\n";

  std::function<void(const Stmt&)> walk = [&](const Stmt& s) {
    switch (s.kind) {
      case Stmt::Skip: break;
      case Stmt::Gate: emit_qc_gate(out, p, s.gate); break;
      case Stmt::Seq:
        for (const auto& c : s.children) walk(*c);
        break;
      default:
        throw EmitError(".qc cannot express control flow or measurement");
    }
  };
  if (!p.procedures.empty()) throw EmitError(".qc cannot express procedures");
  walk(*p.body);
  out << "END\n";
  return out.str();
}

//------------------------------------------------------------- QASM 3 subset

struct Token {
  enum Kind { Ident, Number, String, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
};

struct Lexer {
  std::string src;
  size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(std::string s) : src(std::move(s)) { advance(); }

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        bump(c);
      } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '*') {
        while (pos + 1 < src.size() && !(src[pos] == '*' && src[pos + 1] == '/')) bump(src[pos]);
        if (pos + 1 < src.size()) {
          bump(src[pos]);
          bump(src[pos]);
        }
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_ws();
    cur = Token{};
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur.kind = Token::End;
      return;
    }
    char c = src[pos];
    if (isalpha(c) || c == '_' || c == '$') {
      while (pos < src.size() && (isalnum(src[pos]) || src[pos] == '_' || src[pos] == '$')) {
        cur.text += src[pos];
        bump(src[pos]);
      }
      cur.kind = Token::Ident;
    } else if (isdigit(c) || (c == '.' && pos + 1 < src.size() && isdigit(src[pos + 1]))) {
      while (pos < src.size() && (isalnum(src[pos]) || src[pos] == '.')) {
        cur.text += src[pos];
        bump(src[pos]);
      }
      cur.kind = Token::Number;
    } else if (c == '"') {
      bump(c);
      while (pos < src.size() && src[pos] != '"') {
        cur.text += src[pos];
        bump(src[pos]);
      }
      if (pos < src.size()) bump('"');
      cur.kind = Token::String;
    } else {
      // multi-char operators we care about
      static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=", "**"};
      for (const char* t : two) {
        if (src.compare(pos, 2, t) == 0) {
          cur.text = t;
          bump(src[pos]);
          bump(src[pos]);
          cur.kind = Token::Punct;
          return;
        }
      }
      cur.text = std::string(1, c);
      bump(c);
      cur.kind = Token::Punct;
    }
  }
};

struct GateDef {
  std::vector<std::string> params;
  std::vector<std::string> qargs;
  // body stored as raw statements re-parsed at inline time
  std::vector<StmtPtr> body;  // over local qubit indices 0..qargs-1
  std::vector<std::string> local_qubits;
};

struct QasmParser {
  Lexer lex;
  Program prog;
  std::map<std::string, std::pair<uint32_t, uint32_t>> registers;  // name -> (base, size)
  std::map<std::string, GateDef> gates;
  std::map<std::string, uint32_t> angle_atoms;
  uint32_t next_atom = 0;

  explicit QasmParser(const std::string& text) : lex(text) {
    prog.format = ir::SourceFormat::QASM3;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex.cur.line, lex.cur.col);
  }

  bool at(const std::string& t) { return lex.cur.text == t && lex.cur.kind != Token::String; }
  bool at_ident() { return lex.cur.kind == Token::Ident; }
  void expect(const std::string& t) {
    if (!at(t)) fail("expected '" + t + "', found '" + lex.cur.text + "'");
    lex.advance();
  }
  bool accept(const std::string& t) {
    if (at(t)) {
      lex.advance();
      return true;
    }
    return false;
  }
  std::string ident() {
    if (!at_ident()) fail("expected identifier, found '" + lex.cur.text + "'");
    std::string s = lex.cur.text;
    lex.advance();
    return s;
  }

  void skip_balanced_until_semi() {
    int depth = 0;
    while (lex.cur.kind != Token::End) {
      if (at("(") || at("[") || at("{")) ++depth;
      if (at(")") || at("]") || at("}")) --depth;
      if (at(";") && depth <= 0) {
        lex.advance();
        return;
      }
      lex.advance();
    }
  }

  // Skips a parenthesized condition; classical conditions are erased to *.
  void skip_condition() {
    expect("(");
    int depth = 1;
    while (depth > 0 && lex.cur.kind != Token::End) {
      if (at("(")) ++depth;
      if (at(")")) --depth;
      lex.advance();
    }
  }

  uint32_t add_qubit(const std::string& name) {
    prog.qubits.push_back(name);
    prog.zero_init.push_back(0);  // program inputs: state is symbolic
    return uint32_t(prog.qubits.size() - 1);
  }

  // qubit reference: name or name[k]
  uint32_t qubit_ref(const std::map<std::string, uint32_t>* locals) {
    std::string name = ident();
    if (locals) {
      auto it = locals->find(name);
      if (it != locals->end()) return it->second;
    }
    auto rit = registers.find(name);
    if (rit == registers.end()) fail("unknown qubit " + name);
    auto [base, size] = rit->second;
    if (accept("[")) {
      if (lex.cur.kind != Token::Number) fail("expected index");
      uint32_t k = uint32_t(std::stoul(lex.cur.text));
      lex.advance();
      expect("]");
      if (k >= size) fail("index out of range for " + name);
      return base + k;
    }
    if (size != 1) fail("register " + name + " used without index");
    return base;
  }

  // Angle expression: [-] (k*pi/m | pi/m | pi | number | ident). Dyadic
  // multiples of pi stay exact; anything else becomes a symbolic atom.
  Angle angle_expr(const std::map<std::string, Angle>* params) {
    bool neg = accept("-");
    Angle a;
    std::string text;
    if (lex.cur.kind == Token::Number) {
      int64_t k = 0;
      double d = std::stod(lex.cur.text);
      bool integral = std::floor(d) == d;
      k = int64_t(d);
      text = lex.cur.text;
      lex.advance();
      if (accept("*")) {
        if (!at("pi")) fail("expected pi");
        lex.advance();
        if (accept("/")) {
          int64_t m = std::stoll(lex.cur.text);
          lex.advance();
          a = dyadic_or_atom(k, m, integral, text + "*pi/" + std::to_string(m));
        } else {
          a = integral ? Angle::dyadic(k, 0) : atom(text + "*pi");
        }
      } else if (integral && k == 0) {
        a = Angle::zero();
      } else {
        // plain number in radians: non-exact, symbolic
        a = atom(text);
      }
    } else if (at("pi")) {
      lex.advance();
      if (accept("/")) {
        int64_t m = std::stoll(lex.cur.text);
        lex.advance();
        a = dyadic_or_atom(1, m, true, "pi/" + std::to_string(m));
      } else {
        a = Angle::pi();
      }
    } else {
      std::string name = ident();
      if (params) {
        auto it = params->find(name);
        if (it != params->end()) {
          a = it->second;
          return neg ? -a : a;
        }
      }
      a = atom(name);
    }
    return neg ? -a : a;
  }

  Angle atom(const std::string& text) {
    auto it = angle_atoms.find(text);
    uint32_t id;
    if (it == angle_atoms.end()) {
      id = next_atom++;
      angle_atoms.emplace(text, id);
    } else {
      id = it->second;
    }
    return Angle::symbol(id);
  }

  Angle dyadic_or_atom(int64_t k, int64_t m, bool integral, const std::string& text) {
    if (integral && m > 0 && (m & (m - 1)) == 0) {
      uint32_t pow = 0;
      while ((int64_t(1) << pow) < m) ++pow;
      return Angle::dyadic(k, pow);
    }
    return atom(text);
  }

  StmtPtr gate_stmt(const std::string& name, const std::map<std::string, uint32_t>* locals,
                    const std::map<std::string, Angle>* params) {
    // optional parameter list
    std::vector<Angle> args;
    if (accept("(")) {
      if (!at(")")) {
        args.push_back(angle_expr(params));
        while (accept(",")) args.push_back(angle_expr(params));
      }
      expect(")");
    }
    std::vector<uint32_t> qs;
    qs.push_back(qubit_ref(locals));
    while (accept(",")) qs.push_back(qubit_ref(locals));
    expect(";");

    auto g = [&](GateKind k) {
      GateApp ga;
      ga.kind = k;
      ga.qubits = qs;
      if (!args.empty()) ga.angle = args[0];
      return Stmt::of_gate(std::move(ga));
    };
    if (name == "h") return g(GateKind::H);
    if (name == "x") return g(GateKind::X);
    if (name == "y") {  // Y = iXZ up to global phase
      std::vector<StmtPtr> two;
      GateApp z, xx;
      z.kind = GateKind::Z;
      z.qubits = qs;
      xx.kind = GateKind::X;
      xx.qubits = qs;
      two.push_back(Stmt::of_gate(std::move(z)));
      two.push_back(Stmt::of_gate(std::move(xx)));
      return Stmt::seq(std::move(two));
    }
    if (name == "z") return g(GateKind::Z);
    if (name == "s") return g(GateKind::S);
    if (name == "sdg") return g(GateKind::Sdg);
    if (name == "t") return g(GateKind::T);
    if (name == "tdg") return g(GateKind::Tdg);
    if (name == "rz" || name == "p" || name == "phase" || name == "u1") {
      if (args.empty()) fail(name + " needs an angle");
      GateApp ga;
      ga.kind = GateKind::RZ;
      ga.qubits = qs;
      ga.angle = args[0];
      return Stmt::of_gate(std::move(ga));
    }
    if (name == "cx" || name == "cnot") return g(GateKind::CNOT);
    if (name == "swap") return g(GateKind::SWAP);
    if (name == "ccx") return g(GateKind::Toffoli);
    if (name == "ccz") return g(GateKind::CCZ);
    if (name == "cz") {
      // exact Clifford expansion
      std::vector<StmtPtr> seq;
      auto push = [&](GateKind k, std::vector<uint32_t> q) {
        GateApp ga;
        ga.kind = k;
        ga.qubits = std::move(q);
        seq.push_back(Stmt::of_gate(std::move(ga)));
      };
      push(GateKind::S, {qs[0]});
      push(GateKind::S, {qs[1]});
      push(GateKind::CNOT, {qs[0], qs[1]});
      push(GateKind::Sdg, {qs[1]});
      push(GateKind::CNOT, {qs[0], qs[1]});
      return Stmt::seq(std::move(seq));
    }

    // user-defined gate: inline
    auto git = gates.find(name);
    if (git != gates.end()) {
      const GateDef& def = git->second;
      if (qs.size() != def.qargs.size()) fail("gate " + name + " arity mismatch");
      if (args.size() != def.params.size()) fail("gate " + name + " parameter mismatch");
      std::map<std::string, Angle> penv;
      for (size_t i = 0; i < def.params.size(); ++i) penv[def.params[i]] = args[i];
      std::vector<StmtPtr> items;
      for (const auto& st : def.body) items.push_back(remap_gate_body(*st, qs, penv));
      return Stmt::seq(std::move(items));
    }

    // opaque / unknown gate symbol: uninterpreted semantics
    GateApp ga;
    ga.kind = GateKind::Uninterpreted;
    ga.uname = name;
    ga.qubits = qs;
    return Stmt::of_gate(std::move(ga));
  }

  // Rebind a stored gate-def statement to actual qubits / parameters.
  StmtPtr remap_gate_body(const Stmt& s, const std::vector<uint32_t>& qmap,
                          const std::map<std::string, Angle>& penv) {
    StmtPtr c = s.clone();
    std::function<void(Stmt&)> fix = [&](Stmt& st) {
      if (st.kind == Stmt::Gate) {
        for (auto& q : st.gate.qubits) q = qmap[q];
        // parameter references were stored as symbolic atoms named by param
        if (st.gate.kind == GateKind::RZ && !st.gate.angle.syms.empty()) {
          Angle a = st.gate.angle;
          Angle out = Angle::dyadic(a.num, a.pow);
          for (auto [id, k] : a.syms) {
            bool mapped = false;
            for (const auto& [pname, pid] : param_ids)
              if (pid == id) {
                auto pit = penv.find(pname);
                if (pit != penv.end()) {
                  out = out + pit->second.times(k);
                  mapped = true;
                }
                break;
              }
            if (!mapped) out = out + Angle::symbol(id, k);
          }
          st.gate.angle = out;
        }
      }
      for (auto& ch : st.children)
        if (ch) fix(*ch);
    };
    fix(*c);
    return c;
  }

  std::map<std::string, uint32_t> param_ids;

  StmtPtr statement(const std::map<std::string, uint32_t>* locals,
                    const std::map<std::string, Angle>* params, bool in_gate_def) {
    if (accept("{")) {
      std::vector<StmtPtr> items;
      while (!accept("}")) items.push_back(statement(locals, params, in_gate_def));
      return Stmt::seq(std::move(items));
    }
    if (at("if")) {
      lex.advance();
      skip_condition();
      StmtPtr then_b = statement(locals, params, in_gate_def);
      StmtPtr else_b = accept("else") ? statement(locals, params, in_gate_def) : Stmt::skip();
      return Stmt::if_star(std::move(then_b), std::move(else_b));
    }
    if (at("while")) {
      lex.advance();
      skip_condition();
      return Stmt::while_star(statement(locals, params, in_gate_def));
    }
    if (at("for")) {
      lex.advance();
      // for <type> name in [a:b] { ... } ; literal ranges annotate trips
      uint64_t trips = 0;
      while (!at("{") && lex.cur.kind != Token::End) {
        if (at("[")) {
          lex.advance();
          if (lex.cur.kind == Token::Number) {
            int64_t a = std::stoll(lex.cur.text);
            lex.advance();
            if (accept(":")) {
              if (lex.cur.kind == Token::Number) {
                int64_t b = std::stoll(lex.cur.text);
                lex.advance();
                if (at(":")) {  // stride form [a:s:b]
                  lex.advance();
                  if (lex.cur.kind == Token::Number) {
                    b = std::stoll(lex.cur.text);
                    lex.advance();
                  }
                }
                if (b >= a) trips = uint64_t(b - a + 1);
              }
            }
          }
          while (!at("]") && lex.cur.kind != Token::End) lex.advance();
          if (at("]")) lex.advance();
        } else {
          lex.advance();
        }
      }
      return Stmt::while_star(statement(locals, params, in_gate_def), trips);
    }
    if (at("reset")) {
      lex.advance();
      uint32_t q = qubit_ref(locals);
      expect(";");
      return Stmt::reset(q);
    }
    if (at("measure")) {
      lex.advance();
      uint32_t q = qubit_ref(locals);
      expect(";");
      return Stmt::meas(q);
    }
    if (at("barrier")) {
      skip_balanced_until_semi();
      return Stmt::skip();
    }
    if (at("skip")) {
      lex.advance();
      expect(";");
      return Stmt::skip();
    }

    if (!at_ident()) fail("unexpected token '" + lex.cur.text + "'");
    std::string name = lex.cur.text;

    // classical assignment or measure-assignment: erase / keep the measure
    size_t save_pos = lex.pos;
    Token save_tok = lex.cur;
    int save_line = lex.line, save_col = lex.col;
    lex.advance();
    if (at("=") || at("[") || at("+=") || at("-=") || at("*=") || at("/=")) {
      // look for "= measure q"
      while (!at("=") && !at(";") && lex.cur.kind != Token::End) lex.advance();
      if (accept("=")) {
        if (at("measure")) {
          lex.advance();
          uint32_t q = qubit_ref(locals);
          expect(";");
          return Stmt::meas(q);
        }
        skip_balanced_until_semi();
        return Stmt::skip();
      }
      expect(";");
      return Stmt::skip();
    }
    // roll back and treat as a gate / call statement
    lex.pos = save_pos;
    lex.cur = save_tok;
    lex.line = save_line;
    lex.col = save_col;
    name = ident();

    if (prog.procedures.count(name)) {
      expect("(");
      std::vector<uint32_t> args;
      if (!at(")")) {
        args.push_back(qubit_ref(locals));
        while (accept(",")) args.push_back(qubit_ref(locals));
      }
      expect(")");
      expect(";");
      return Stmt::call(name, std::move(args));
    }
    return gate_stmt(name, locals, params);
  }

  void top_level_decl() {
    if (at("OPENQASM")) {
      skip_balanced_until_semi();
      return;
    }
    if (at("include")) {
      skip_balanced_until_semi();
      return;
    }
    if (at("qubit") || at("qreg")) {
      bool qasm2 = at("qreg");
      lex.advance();
      uint32_t size = 1;
      if (!qasm2 && accept("[")) {
        size = uint32_t(std::stoul(lex.cur.text));
        lex.advance();
        expect("]");
      }
      std::string name = ident();
      if (qasm2 && accept("[")) {
        size = uint32_t(std::stoul(lex.cur.text));
        lex.advance();
        expect("]");
      }
      expect(";");
      uint32_t base = uint32_t(prog.qubits.size());
      for (uint32_t i = 0; i < size; ++i)
        add_qubit(size == 1 ? name : name + "_" + std::to_string(i));
      registers[name] = {base, size};
      return;
    }
    if (at("bit") || at("creg") || at("int") || at("uint") || at("bool") || at("float") ||
        at("angle") || at("const") || at("input") || at("output")) {
      skip_balanced_until_semi();  // classical state is erased
      return;
    }
    if (at("gate")) {
      lex.advance();
      std::string name = ident();
      GateDef def;
      if (accept("(")) {
        if (!at(")")) {
          def.params.push_back(ident());
          while (accept(",")) def.params.push_back(ident());
        }
        expect(")");
      }
      def.qargs.push_back(ident());
      while (accept(",")) def.qargs.push_back(ident());
      // local scope: qubits named by position
      std::map<std::string, uint32_t> locals;
      for (size_t i = 0; i < def.qargs.size(); ++i) locals[def.qargs[i]] = uint32_t(i);
      std::map<std::string, Angle> params;
      for (const auto& pn : def.params) {
        if (!param_ids.count(pn)) param_ids[pn] = next_atom, angle_atoms["__param_" + pn] = next_atom++;
        params[pn] = Angle::symbol(param_ids[pn]);
      }
      expect("{");
      while (!accept("}")) def.body.push_back(statement(&locals, &params, true));
      gates[name] = std::move(def);
      return;
    }
    if (at("def")) {
      lex.advance();
      std::string name = ident();
      expect("(");
      std::vector<std::string> qparams;
      while (!at(")")) {
        if (at("qubit")) {
          lex.advance();
          if (accept("[")) {
            lex.advance();  // size (only single-qubit params supported)
            expect("]");
          }
          qparams.push_back(ident());
        } else {
          fail("unsupported parameter kind in def " + name + " (only qubit)");
        }
        if (!at(")")) expect(",");
      }
      expect(")");
      if (at("->")) skip_balanced_until_semi();  // return type: unsupported, erased

      // procedure body parses against parameter-local qubits appended to the
      // global space temporarily
      ir::Procedure proc;
      proc.name = name;
      proc.nparams = uint32_t(qparams.size());
      prog.procedures[name] = {};  // allow recursion detection at validate
      std::map<std::string, uint32_t> locals;
      for (size_t i = 0; i < qparams.size(); ++i) locals[qparams[i]] = uint32_t(i);
      expect("{");
      std::vector<StmtPtr> body;
      while (!accept("}")) body.push_back(statement(&locals, nullptr, false));
      proc.body = Stmt::seq(std::move(body));
      prog.procedures[name] = std::move(proc);
      return;
    }
    fail("unsupported construct '" + lex.cur.text + "'");
  }

  Program run() {
    std::vector<StmtPtr> body;
    while (lex.cur.kind != Token::End) {
      if (at("OPENQASM") || at("include") || at("qubit") || at("qreg") || at("bit") ||
          at("creg") || at("int") || at("uint") || at("bool") || at("float") || at("angle") ||
          at("const") || at("input") || at("output") || at("gate") || at("def")) {
        top_level_decl();
      } else {
        body.push_back(statement(nullptr, nullptr, false));
      }
    }
    prog.body = Stmt::seq(std::move(body));
    prog.angle_atom_names.resize(next_atom);
    for (const auto& [text, id] : angle_atoms) prog.angle_atom_names[id] = text;
    return std::move(prog);
  }
};

//------------------------------------------------------------- QASM emitter

void emit_qasm_angle(std::ostream& out, const Angle& a,
                     const std::vector<std::string>& atom_names) {
  if (a.dyadic_only()) {
    out << a.num << "*pi/" << (int64_t(1) << a.pow);
    return;
  }
  bool first = true;
  if (a.num) {
    out << a.num << "*pi/" << (int64_t(1) << a.pow);
    first = false;
  }
  for (auto [id, k] : a.syms) {
    if (!first) out << "+";
    if (k != 1) out << k << "*";
    out << (id < atom_names.size() ? atom_names[id] : "theta" + std::to_string(id));
    first = false;
  }
}

struct QasmEmitter {
  explicit QasmEmitter(const Program& prog) : p(prog) {}
  const Program& p;
  std::ostringstream out;
  int indent = 0;

  void pad() {
    for (int i = 0; i < indent; ++i) out << "  ";
  }

  void gate(const GateApp& g) {
    pad();
    auto qs = [&](size_t i) { return p.qubits[g.qubits[i]]; };
    switch (g.kind) {
      case GateKind::H: out << "h " << qs(0) << ";\n"; break;
      case GateKind::X: out << "x " << qs(0) << ";\n"; break;
      case GateKind::Z: out << "z " << qs(0) << ";\n"; break;
      case GateKind::S: out << "s " << qs(0) << ";\n"; break;
      case GateKind::Sdg: out << "sdg " << qs(0) << ";\n"; break;
      case GateKind::T: out << "t " << qs(0) << ";\n"; break;
      case GateKind::Tdg: out << "tdg " << qs(0) << ";\n"; break;
      case GateKind::RZ: {
        out << "rz(";
        emit_qasm_angle(out, g.angle, atom_names);
        out << ") " << qs(0) << ";\n";
        break;
      }
      case GateKind::CNOT: out << "cx " << qs(0) << ", " << qs(1) << ";\n"; break;
      case GateKind::SWAP: out << "swap " << qs(0) << ", " << qs(1) << ";\n"; break;
      case GateKind::CCZ: out << "ccz " << qs(0) << ", " << qs(1) << ", " << qs(2) << ";\n"; break;
      case GateKind::Toffoli:
        out << "ccx " << qs(0) << ", " << qs(1) << ", " << qs(2) << ";\n";
        break;
      case GateKind::Uninterpreted: {
        out << g.uname;
        for (size_t i = 0; i < g.qubits.size(); ++i) out << (i ? ", " : " ") << qs(i);
        out << ";\n";
        break;
      }
    }
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Skip: break;
      case Stmt::Reset:
        pad();
        out << "reset " << p.qubits[s.qubit] << ";\n";
        break;
      case Stmt::Meas:
        pad();
        out << "measure " << p.qubits[s.qubit] << ";\n";
        break;
      case Stmt::Gate: gate(s.gate); break;
      case Stmt::Call: {
        pad();
        out << s.callee << "(";
        for (size_t i = 0; i < s.args.size(); ++i)
          out << (i ? ", " : "") << p.qubits[s.args[i]];
        out << ");\n";
        break;
      }
      case Stmt::Seq:
        for (const auto& c : s.children) stmt(*c);
        break;
      case Stmt::IfStar:
        pad();
        out << "if (star) {\n";
        ++indent;
        stmt(*s.children[0]);
        --indent;
        pad();
        out << "} else {\n";
        ++indent;
        stmt(*s.children[1]);
        --indent;
        pad();
        out << "}\n";
        break;
      case Stmt::WhileStar:
        pad();
        if (s.trips) {
          out << "for uint __i in [1:" << s.trips << "] {\n";
        } else {
          out << "while (star) {\n";
        }
        ++indent;
        stmt(*s.children[0]);
        --indent;
        pad();
        out << "}\n";
        break;
    }
  }

  std::vector<std::string> atom_names;

  std::string run() {
    atom_names = p.angle_atom_names;
    out << "OPENQASM 3.0;\n";
    for (const auto& [name, proc] : p.procedures) {
      out << "def " << name << "(";
      for (uint32_t i = 0; i < proc.nparams; ++i) out << (i ? ", " : "") << "qubit p" << i;
      out << ") {\n";
      // procedure bodies address their parameters by position
      Program tmp;
      for (uint32_t i = 0; i < proc.nparams; ++i) tmp.qubits.push_back("p" + std::to_string(i));
      QasmEmitter inner{tmp};
      inner.indent = 1;
      inner.atom_names = atom_names;
      inner.stmt(*proc.body);
      out << inner.out.str();
      out << "}\n";
    }
    for (const auto& q : p.qubits) out << "qubit " << q << ";\n";
    stmt(*p.body);
    return out.str();
  }
};

}  // namespace

namespace {

// Nested sequences are spliced so the parse of re-emitted text is the
// identical tree (gate inlining and desugaring introduce nesting).
void flatten(StmtPtr& s) {
  for (auto& c : s->children) flatten(c);
  if (s->kind != Stmt::Seq) return;
  std::vector<StmtPtr> items;
  for (auto& c : s->children) {
    if (c->kind == Stmt::Seq) {
      for (auto& cc : c->children) items.push_back(std::move(cc));
    } else if (c->kind != Stmt::Skip) {
      items.push_back(std::move(c));
    }
  }
  s->children = std::move(items);
  if (s->children.empty()) s->kind = Stmt::Skip;
}

}  // namespace

Program parse_string(const std::string& text, ir::SourceFormat fmt) {
  Program p = fmt == ir::SourceFormat::QC ? QcParser(text).run() : QasmParser(text).run();
  flatten(p.body);
  for (auto& [name, proc] : p.procedures)
    if (proc.body) flatten(proc.body);
  ir::assign_locations(p);
  auto diags = ir::validate(p);
  if (!diags.empty()) throw ParseError(diags.front(), 0, 0);
  return p;
}

Program parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  ir::SourceFormat fmt = ir::SourceFormat::QASM3;
  if (path.size() > 3 && path.substr(path.size() - 3) == ".qc") fmt = ir::SourceFormat::QC;
  return parse_string(ss.str(), fmt);
}

std::string emit(const ir::Program& p, ir::SourceFormat fmt) {
  if (fmt == ir::SourceFormat::QC) return emit_qc(p);
  QasmEmitter em{p};
  return em.run();
}

std::string emit(const ir::Program& p) { return emit(p, p.format); }

}  // namespace qpf::frontend
