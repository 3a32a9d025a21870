#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpf::poly {

// Square-free monomial: strictly ascending variable indices; empty = 1.
struct Monomial {
  std::vector<uint32_t> vars;

  Monomial() = default;
  explicit Monomial(std::vector<uint32_t> v) : vars(std::move(v)) {}
  static Monomial one() { return {}; }
  static Monomial var(uint32_t v) { return Monomial({v}); }

  size_t degree() const { return vars.size(); }
  bool is_one() const { return vars.empty(); }
  bool contains(uint32_t v) const;
  bool divides(const Monomial& m) const;  // subset test
  Monomial mul(const Monomial& o) const;  // union (field equations squash)
  Monomial quotient(uint32_t v) const;    // m / v, v must occur
  Monomial quotient(const Monomial& d) const;

  bool operator==(const Monomial& o) const { return vars == o.vars; }
  bool operator!=(const Monomial& o) const { return vars != o.vars; }
  bool operator<(const Monomial& o) const {  // container key order only
    if (vars.size() != o.vars.size()) return vars.size() < o.vars.size();
    return vars < o.vars;
  }
};

// Total well-order on multilinear monomials. Grevlex, or a two-block
// elimination order with `front` variables greatest.
struct MonomialOrder {
  enum Kind { Grevlex, BlockElim };
  Kind kind = Grevlex;
  std::vector<uint32_t> front;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder block(std::vector<uint32_t> front_vars) {
    MonomialOrder o;
    o.kind = BlockElim;
    o.front = std::move(front_vars);
    return o;
  }

  // true iff a < b in the order
  bool less(const Monomial& a, const Monomial& b) const;
};

// Multilinear polynomial over F2: XOR-set of monomials.
class BoolPoly {
 public:
  BoolPoly() = default;
  explicit BoolPoly(Monomial m) : terms_{std::move(m)} {}
  static BoolPoly zero() { return {}; }
  static BoolPoly one() { return BoolPoly(Monomial::one()); }
  static BoolPoly var(uint32_t v) { return BoolPoly(Monomial::var(v)); }
  static BoolPoly of_terms(std::vector<Monomial> ms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
  size_t nterms() const { return terms_.size(); }
  const std::vector<Monomial>& terms() const { return terms_; }
  size_t degree() const;
  bool contains_var(uint32_t v) const;
  std::vector<uint32_t> vars() const;

  // Constant part handling (the affine "+1").
  bool constant_term() const;
  BoolPoly without_constant() const;

  BoolPoly operator^(const BoolPoly& o) const;  // addition over F2
  BoolPoly& operator^=(const BoolPoly& o);
  BoolPoly operator*(const BoolPoly& o) const;  // multilinear product
  friend BoolPoly operator*(const Monomial& m, const BoolPoly& p);

  // Replaces v by r everywhere; requires v not in r's variables.
  BoolPoly substitute(uint32_t v, const BoolPoly& r) const;

  bool eval(const std::vector<char>& assign) const;

  const Monomial* leading(const MonomialOrder& ord) const;

  bool operator==(const BoolPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const BoolPoly& o) const { return terms_ != o.terms_; }
  bool operator<(const BoolPoly& o) const { return terms_ < o.terms_; }

 private:
  void normalize();
  std::vector<Monomial> terms_;  // kept sorted by container key order
};

// Phase coefficient: dyadic multiple of pi taken mod 2, plus an integer
// combination of named symbolic angle atoms.
struct Angle {
  int64_t num = 0;   // numerator of num/2^pow * pi, reduced, in [0, 2^(pow+1))
  uint32_t pow = 0;  // denominator exponent
  std::vector<std::pair<uint32_t, int64_t>> syms;  // sorted by atom id

  static Angle zero() { return {}; }
  static Angle dyadic(int64_t num, uint32_t pow) {
    Angle a;
    a.num = num;
    a.pow = pow;
    a.normalize();
    return a;
  }
  static Angle pi() { return dyadic(1, 0); }
  static Angle quarter(int64_t k = 1) { return dyadic(k, 2); }  // T = pi/4
  static Angle half(int64_t k = 1) { return dyadic(k, 1); }     // S = pi/2
  static Angle symbol(uint32_t id, int64_t k = 1) {
    Angle a;
    if (k) a.syms.push_back({id, k});
    return a;
  }

  void normalize();
  bool is_zero() const { return num == 0 && syms.empty(); }
  bool dyadic_only() const { return syms.empty(); }
  // Phase-gate classification used by the T metric: odd multiple of pi/4.
  bool odd_quarter() const { return syms.empty() ? (pow == 2 && (num & 1)) : false; }
  bool is_integer_pi() const { return syms.empty() && pow == 0; }
  bool is_pi() const { return syms.empty() && pow == 0 && num == 1; }

  Angle operator+(const Angle& o) const;
  Angle operator-() const;
  Angle times(int64_t k) const;
  bool operator==(const Angle& o) const {
    return num == o.num && pow == o.pow && syms == o.syms;
  }
  bool operator!=(const Angle& o) const { return !(*this == o); }
};

// Multilinear phase polynomial: monomial -> Angle, representing
// exp(i*pi*sum a_m * m). Rotations on XOR conditions are added through the
// real lift, truncated mod 2.
class PhasePoly {
 public:
  PhasePoly() = default;

  bool empty() const { return terms_.empty(); }
  const std::map<Monomial, Angle>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Angle& a);
  // Adds theta * lift(f). Subsets whose doubling vanishes mod 2 are pruned.
  void add_rotation(const Angle& theta, const BoolPoly& f);
  // Adds pi * (cubic or any) product monomial of boolean polys, fully lifted:
  // exp(i*pi*p*q*r) for CCZ-style diagonal phases.
  void add_pi_product(const std::vector<BoolPoly>& factors);

  PhasePoly operator+(const PhasePoly& o) const;

  bool contains_var(uint32_t v) const;
  // Sum over terms containing v of coeff * (m / v); the "v-part" P with
  // phase = ... + v * P + (terms without v).
  std::map<Monomial, Angle> var_part(uint32_t v) const;
  // Replaces v by boolean r: each monomial v*m' becomes lift(r)*m'.
  void substitute(uint32_t v, const BoolPoly& r);
  // Renames variable old -> fresh (no lift needed).
  void rename_var(uint32_t from, uint32_t to);

  Angle constant() const;
  Angle eval(const std::vector<char>& assign) const;  // dyadic-only use

  bool operator==(const PhasePoly& o) const { return terms_ == o.terms_; }

 private:
  std::map<Monomial, Angle> terms_;
};

// Exact real lift of a boolean polynomial: integer-coefficient multilinear
// polynomial agreeing with p on 0/1 points.
std::map<Monomial, int64_t> lift(const BoolPoly& p);

// Rendering with a caller-supplied variable namer.
using VarNamer = std::string (*)(uint32_t, const void*);
std::string to_string(const Monomial& m, VarNamer namer, const void* ctx);
std::string to_string(const BoolPoly& p, VarNamer namer, const void* ctx);
std::string to_string(const Angle& a);

}  // namespace qpf::poly
