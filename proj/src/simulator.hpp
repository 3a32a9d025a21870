#pragma once

#include "ir.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qpf::sim {

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of Z[w], w = exp(i*pi/4), with w^4 = -1.
struct Zw {
  int64_t a = 0, b = 0, c = 0, d = 0;

  static Zw zero() { return {}; }
  static Zw one() { return {1, 0, 0, 0}; }
  static Zw omega_pow(int k);  // w^k, any integer k

  bool is_zero() const { return !a && !b && !c && !d; }
  Zw operator+(const Zw& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Zw operator-(const Zw& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Zw operator*(const Zw& o) const;
  Zw conj() const { return {a, -d, -c, -b}; }
  Zw times2() const { return {2 * a, 2 * b, 2 * c, 2 * d}; }
  bool operator==(const Zw& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

// Dense linear operator on n qubits with entries in Z[w] scaled by
// 2^(-sqrt2_exp/2). Qubit 0 is the most significant index bit, so basis
// index reads like the ket string.
class DenseOp {
 public:
  DenseOp() = default;
  static DenseOp identity(uint32_t n);
  static DenseOp zero(uint32_t n);

  uint32_t nqubits() const { return n_; }
  size_t dim() const { return size_t(1) << n_; }
  int32_t scale_exp() const { return s_; }
  void set_scale_exp(int32_t s) { s_ = s; }
  const Zw& at(size_t row, size_t col) const { return m_[row * dim() + col]; }
  Zw& at(size_t row, size_t col) { return m_[row * dim() + col]; }

  bool is_zero() const;
  bool is_identity() const;

  // Left-multiplies by the gate: *this := G . *this
  void apply(const ir::GateApp& g);
  void apply_projector(uint32_t q, bool value);

  DenseOp operator*(const DenseOp& o) const;  // composition

  // Scale-normalized comparison helpers.
  friend bool equal(const DenseOp& a, const DenseOp& b);
  friend bool equiv_up_to_phase(const DenseOp& a, const DenseOp& b);

  std::vector<uint32_t> support(uint32_t basis_in) const;

 private:
  uint32_t n_ = 0;
  int32_t s_ = 0;  // power of sqrt(2) in the denominator
  std::vector<Zw> m_;
};

// Product of the listed gates in program order (first gate acts first).
DenseOp unitary_of(const std::vector<ir::GateApp>& gates, uint32_t n);

struct PathOp {
  DenseOp op;
  bool infeasible = false;  // zero operator
};

// All control-flow path operators with loops unrolled 0..unroll times.
// Throws Unsupported past the qubit/path budget.
std::vector<PathOp> enumerate_paths(const ir::Program& p, uint32_t unroll,
                                    size_t max_paths = 100000);

bool equal(const DenseOp& a, const DenseOp& b);
bool equiv_up_to_phase(const DenseOp& a, const DenseOp& b);

}  // namespace qpf::sim
