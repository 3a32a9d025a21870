#include "simulator.hpp"

#include <cassert>

namespace qpf::sim {

Zw Zw::omega_pow(int k) {
  k %= 8;
  if (k < 0) k += 8;
  int64_t sign = k >= 4 ? -1 : 1;
  Zw r;
  switch (k % 4) {
    case 0: r.a = sign; break;
    case 1: r.b = sign; break;
    case 2: r.c = sign; break;
    case 3: r.d = sign; break;
  }
  return r;
}

Zw Zw::operator*(const Zw& o) const {
  // convolution with w^4 = -1 wraparound
  int64_t x[4] = {a, b, c, d}, y[4] = {o.a, o.b, o.c, o.d}, r[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < 4; ++j) {
      if (!y[j]) continue;
      int k = i + j;
      int64_t v = x[i] * y[j];
      if (k >= 4) {
        k -= 4;
        v = -v;
      }
      r[k] += v;
    }
  }
  return {r[0], r[1], r[2], r[3]};
}

DenseOp DenseOp::identity(uint32_t n) {
  DenseOp d;
  d.n_ = n;
  d.m_.assign(d.dim() * d.dim(), Zw::zero());
  for (size_t i = 0; i < d.dim(); ++i) d.at(i, i) = Zw::one();
  return d;
}

DenseOp DenseOp::zero(uint32_t n) {
  DenseOp d;
  d.n_ = n;
  d.m_.assign(d.dim() * d.dim(), Zw::zero());
  return d;
}

bool DenseOp::is_zero() const {
  for (const Zw& z : m_)
    if (!z.is_zero()) return false;
  return true;
}

bool DenseOp::is_identity() const {
  DenseOp i = identity(n_);
  return equal(*this, i);
}

namespace {
// angle as a multiple of pi/4, when expressible in Z[w]
int omega_steps(const poly::Angle& a) {
  if (!a.dyadic_only()) throw Unsupported("symbolic angle in exact simulation");
  if (a.pow > 2) throw Unsupported("rotation finer than pi/4 in exact simulation");
  return int(a.num << (2 - a.pow));
}
}  // namespace

void DenseOp::apply(const ir::GateApp& g) {
  using ir::GateKind;
  size_t d = dim();
  auto bit = [&](size_t idx, uint32_t q) { return (idx >> (n_ - 1 - q)) & 1; };
  auto flip = [&](size_t idx, uint32_t q) { return idx ^ (size_t(1) << (n_ - 1 - q)); };

  switch (g.kind) {
    case GateKind::X: {
      uint32_t q = g.qubits[0];
      for (size_t r = 0; r < d; ++r) {
        if (bit(r, q)) continue;
        size_t r1 = flip(r, q);
        for (size_t c = 0; c < d; ++c) std::swap(at(r, c), at(r1, c));
      }
      break;
    }
    case GateKind::H: {
      uint32_t q = g.qubits[0];
      for (size_t r = 0; r < d; ++r) {
        if (bit(r, q)) continue;
        size_t r1 = flip(r, q);
        for (size_t c = 0; c < d; ++c) {
          Zw a = at(r, c), b = at(r1, c);
          at(r, c) = a + b;
          at(r1, c) = a - b;
        }
      }
      s_ += 1;
      break;
    }
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RZ: {
      int k;
      switch (g.kind) {
        case GateKind::Z: k = 4; break;
        case GateKind::S: k = 2; break;
        case GateKind::Sdg: k = 6; break;
        case GateKind::T: k = 1; break;
        case GateKind::Tdg: k = 7; break;
        default: k = omega_steps(g.angle); break;
      }
      uint32_t q = g.qubits[0];
      Zw w = Zw::omega_pow(k);
      for (size_t r = 0; r < d; ++r)
        if (bit(r, q))
          for (size_t c = 0; c < d; ++c) at(r, c) = at(r, c) * w;
      break;
    }
    case GateKind::CNOT: {
      uint32_t a = g.qubits[0], b = g.qubits[1];
      for (size_t r = 0; r < d; ++r) {
        if (!bit(r, a) || bit(r, b)) continue;
        size_t r1 = flip(r, b);
        for (size_t c = 0; c < d; ++c) std::swap(at(r, c), at(r1, c));
      }
      break;
    }
    case GateKind::SWAP: {
      uint32_t a = g.qubits[0], b = g.qubits[1];
      for (size_t r = 0; r < d; ++r) {
        if (bit(r, a) != 0 || bit(r, b) != 1) continue;
        size_t r1 = flip(flip(r, a), b);
        for (size_t c = 0; c < d; ++c) std::swap(at(r, c), at(r1, c));
      }
      break;
    }
    case GateKind::Toffoli: {
      uint32_t a = g.qubits[0], b = g.qubits[1], t = g.qubits[2];
      for (size_t r = 0; r < d; ++r) {
        if (!bit(r, a) || !bit(r, b) || bit(r, t)) continue;
        size_t r1 = flip(r, t);
        for (size_t c = 0; c < d; ++c) std::swap(at(r, c), at(r1, c));
      }
      break;
    }
    case GateKind::CCZ: {
      uint32_t a = g.qubits[0], b = g.qubits[1], t = g.qubits[2];
      for (size_t r = 0; r < d; ++r) {
        if (!bit(r, a) || !bit(r, b) || !bit(r, t)) continue;
        for (size_t c = 0; c < d; ++c) at(r, c) = Zw::zero() - at(r, c);
      }
      break;
    }
    case GateKind::Uninterpreted:
      throw Unsupported("uninterpreted gate " + g.uname + " has no concrete semantics");
  }
}

void DenseOp::apply_projector(uint32_t q, bool value) {
  size_t d = dim();
  for (size_t r = 0; r < d; ++r) {
    bool b = (r >> (n_ - 1 - q)) & 1;
    if (b != value)
      for (size_t c = 0; c < d; ++c) at(r, c) = Zw::zero();
  }
}

DenseOp DenseOp::operator*(const DenseOp& o) const {
  assert(n_ == o.n_);
  DenseOp r = zero(n_);
  r.s_ = s_ + o.s_;
  size_t d = dim();
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (at(i, k).is_zero()) continue;
      for (size_t j = 0; j < d; ++j) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    }
  return r;
}

// Comparisons rescale to a common sqrt2 exponent via sqrt(2) = w - w^3.
bool equal(const DenseOp& a, const DenseOp& b) {
  if (a.nqubits() != b.nqubits()) return false;
  int32_t s = std::max(a.s_, b.s_);
  Zw sqrt2{0, 1, 0, -1};
  size_t d = a.dim();
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Zw x = a.at(i, j), y = b.at(i, j);
      for (int32_t k = a.s_; k < s; ++k) x = x * sqrt2;
      for (int32_t k = b.s_; k < s; ++k) y = y * sqrt2;
      if (!(x == y)) return false;
    }
  return true;
}

bool equiv_up_to_phase(const DenseOp& a, const DenseOp& b) {
  if (a.nqubits() != b.nqubits()) return false;
  int32_t s = std::max(a.s_, b.s_);
  Zw sqrt2{0, 1, 0, -1};
  size_t d = a.dim();
  auto norm = [&](const DenseOp& m, size_t i, size_t j) {
    Zw v = m.at(i, j);
    for (int32_t k = m.s_; k < s; ++k) v = v * sqrt2;
    return v;
  };
  // first nonzero pair
  Zw alpha, beta;
  bool found = false;
  for (size_t i = 0; i < d && !found; ++i)
    for (size_t j = 0; j < d && !found; ++j) {
      Zw x = norm(a, i, j), y = norm(b, i, j);
      if (x.is_zero() != y.is_zero()) return false;
      if (!x.is_zero()) {
        alpha = x;
        beta = y;
        found = true;
      }
    }
  if (!found) return true;  // both zero
  // proportionality: alpha * B == beta * A
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Zw x = norm(a, i, j), y = norm(b, i, j);
      if (!(alpha * y == beta * x)) return false;
    }
  // |alpha| == |beta| so the ratio is a unit phase
  return alpha * alpha.conj() == beta * beta.conj();
}

std::vector<uint32_t> DenseOp::support(uint32_t basis_in) const {
  std::vector<uint32_t> out;
  for (size_t r = 0; r < dim(); ++r)
    if (!at(r, basis_in).is_zero()) out.push_back(uint32_t(r));
  return out;
}

DenseOp unitary_of(const std::vector<ir::GateApp>& gates, uint32_t n) {
  if (n > 10) throw Unsupported("dense simulation limited to 10 qubits");
  DenseOp u = DenseOp::identity(n);
  for (const auto& g : gates) u.apply(g);
  return u;
}

namespace {

struct PathEnum {
  const ir::Program& prog;
  uint32_t unroll;
  size_t max_paths;

  std::vector<DenseOp> run(const ir::Stmt& s, std::vector<DenseOp> in,
                           const std::vector<uint32_t>* argmap) {
    auto mapq = [&](uint32_t q) { return argmap ? (*argmap)[q] : q; };
    switch (s.kind) {
      case ir::Stmt::Skip:
        return in;
      case ir::Stmt::Gate: {
        ir::GateApp g = s.gate;
        for (auto& q : g.qubits) q = mapq(q);
        for (auto& op : in) op.apply(g);
        return in;
      }
      case ir::Stmt::Meas: {
        std::vector<DenseOp> out;
        check(in.size() * 2);
        for (auto& op : in) {
          DenseOp p0 = op, p1 = std::move(op);
          p0.apply_projector(mapq(s.qubit), false);
          p1.apply_projector(mapq(s.qubit), true);
          out.push_back(std::move(p0));
          out.push_back(std::move(p1));
        }
        return out;
      }
      case ir::Stmt::Reset: {
        std::vector<DenseOp> out;
        check(in.size() * 2);
        uint32_t q = mapq(s.qubit);
        for (auto& op : in) {
          DenseOp p0 = op, p1 = std::move(op);
          p0.apply_projector(q, false);
          p1.apply_projector(q, true);
          ir::GateApp x;
          x.kind = ir::GateKind::X;
          x.qubits = {q};
          p1.apply(x);
          out.push_back(std::move(p0));
          out.push_back(std::move(p1));
        }
        return out;
      }
      case ir::Stmt::Seq: {
        for (const auto& c : s.children) in = run(*c, std::move(in), argmap);
        return in;
      }
      case ir::Stmt::IfStar: {
        std::vector<DenseOp> out = run(*s.children[0], in, argmap);
        std::vector<DenseOp> e = run(*s.children[1], std::move(in), argmap);
        out.insert(out.end(), std::make_move_iterator(e.begin()),
                   std::make_move_iterator(e.end()));
        check(out.size());
        return out;
      }
      case ir::Stmt::WhileStar: {
        std::vector<DenseOp> out = in;  // zero iterations
        std::vector<DenseOp> acc = std::move(in);
        for (uint32_t k = 1; k <= unroll; ++k) {
          acc = run(*s.children[0], std::move(acc), argmap);
          out.insert(out.end(), acc.begin(), acc.end());
          check(out.size());
        }
        return out;
      }
      case ir::Stmt::Call: {
        auto it = prog.procedures.find(s.callee);
        assert(it != prog.procedures.end());
        std::vector<uint32_t> map;
        for (uint32_t a : s.args) map.push_back(mapq(a));
        return run(*it->second.body, std::move(in), &map);
      }
    }
    return in;
  }

  void check(size_t count) {
    if (count > max_paths) throw Unsupported("path enumeration budget exceeded");
  }
};

}  // namespace

std::vector<PathOp> enumerate_paths(const ir::Program& p, uint32_t unroll, size_t max_paths) {
  if (p.nqubits() > 10) throw Unsupported("path enumeration limited to 10 qubits");
  PathEnum pe{p, unroll, max_paths};
  std::vector<DenseOp> init = {DenseOp::identity(p.nqubits())};
  std::vector<DenseOp> ops = pe.run(*p.body, std::move(init), nullptr);
  std::vector<PathOp> out;
  out.reserve(ops.size());
  for (auto& op : ops) {
    PathOp po;
    po.infeasible = op.is_zero();
    po.op = std::move(op);
    out.push_back(std::move(po));
  }
  return out;
}

}  // namespace qpf::sim
