#include "polyring.hpp"

#include <algorithm>
#include <cassert>

namespace qpf::poly {

bool Monomial::contains(uint32_t v) const {
  return std::binary_search(vars.begin(), vars.end(), v);
}

bool Monomial::divides(const Monomial& m) const {
  return std::includes(m.vars.begin(), m.vars.end(), vars.begin(), vars.end());
}

Monomial Monomial::mul(const Monomial& o) const {
  Monomial r;
  r.vars.reserve(vars.size() + o.vars.size());
  std::set_union(vars.begin(), vars.end(), o.vars.begin(), o.vars.end(),
                 std::back_inserter(r.vars));
  return r;
}

Monomial Monomial::quotient(uint32_t v) const {
  Monomial r;
  r.vars.reserve(vars.size());
  for (uint32_t x : vars)
    if (x != v) r.vars.push_back(x);
  return r;
}

Monomial Monomial::quotient(const Monomial& d) const {
  Monomial r;
  std::set_difference(vars.begin(), vars.end(), d.vars.begin(), d.vars.end(),
                      std::back_inserter(r.vars));
  return r;
}

// Graded reverse lexicographic: lower total degree is smaller; on equal
// degree the monomial containing the least differing variable is smaller.
static bool grevlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  size_t i = 0, j = 0;
  while (i < a.vars.size() && j < b.vars.size()) {
    if (a.vars[i] == b.vars[j]) {
      ++i;
      ++j;
      continue;
    }
    return a.vars[i] < b.vars[j];
  }
  return false;  // equal
}

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
  if (kind == Grevlex) return grevlex_less(a, b);
  Monomial af, ar, bf, br;
  auto split = [&](const Monomial& m, Monomial& f, Monomial& r) {
    for (uint32_t v : m.vars) {
      if (std::binary_search(front.begin(), front.end(), v))
        f.vars.push_back(v);
      else
        r.vars.push_back(v);
    }
  };
  split(a, af, ar);
  split(b, bf, br);
  if (af != bf) return grevlex_less(af, bf);
  return grevlex_less(ar, br);
}

BoolPoly BoolPoly::of_terms(std::vector<Monomial> ms) {
  BoolPoly p;
  p.terms_ = std::move(ms);
  p.normalize();
  return p;
}

void BoolPoly::normalize() {
  std::sort(terms_.begin(), terms_.end());
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (size_t i = 0; i < terms_.size();) {
    size_t j = i;
    while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
    if ((j - i) & 1) out.push_back(terms_[i]);
    i = j;
  }
  terms_ = std::move(out);
}

size_t BoolPoly::degree() const {
  size_t d = 0;
  for (const auto& m : terms_) d = std::max(d, m.degree());
  return d;
}

bool BoolPoly::contains_var(uint32_t v) const {
  for (const auto& m : terms_)
    if (m.contains(v)) return true;
  return false;
}

std::vector<uint32_t> BoolPoly::vars() const {
  std::vector<uint32_t> vs;
  for (const auto& m : terms_) vs.insert(vs.end(), m.vars.begin(), m.vars.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool BoolPoly::constant_term() const {
  for (const auto& m : terms_)
    if (m.is_one()) return true;
  return false;
}

BoolPoly BoolPoly::without_constant() const {
  BoolPoly p = *this;
  p.terms_.erase(std::remove_if(p.terms_.begin(), p.terms_.end(),
                                [](const Monomial& m) { return m.is_one(); }),
                 p.terms_.end());
  return p;
}

BoolPoly BoolPoly::operator^(const BoolPoly& o) const {
  BoolPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

BoolPoly& BoolPoly::operator^=(const BoolPoly& o) {
  *this = *this ^ o;
  return *this;
}

BoolPoly BoolPoly::operator*(const BoolPoly& o) const {
  BoolPoly r;
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.terms_.push_back(a.mul(b));
  r.normalize();
  return r;
}

BoolPoly operator*(const Monomial& m, const BoolPoly& p) {
  BoolPoly r;
  r.terms_.reserve(p.terms_.size());
  for (const auto& t : p.terms_) r.terms_.push_back(m.mul(t));
  r.normalize();
  return r;
}

BoolPoly BoolPoly::substitute(uint32_t v, const BoolPoly& r) const {
  assert(!r.contains_var(v));
  BoolPoly keep, repl;
  for (const auto& m : terms_) {
    if (m.contains(v))
      repl.terms_.push_back(m.quotient(v));
    else
      keep.terms_.push_back(m);
  }
  repl.normalize();
  keep.normalize();
  return keep ^ (repl * r);
}

bool BoolPoly::eval(const std::vector<char>& assign) const {
  bool acc = false;
  for (const auto& m : terms_) {
    bool t = true;
    for (uint32_t v : m.vars)
      if (v >= assign.size() || !assign[v]) {
        t = false;
        break;
      }
    acc ^= t;
  }
  return acc;
}

const Monomial* BoolPoly::leading(const MonomialOrder& ord) const {
  const Monomial* best = nullptr;
  for (const auto& m : terms_)
    if (!best || ord.less(*best, m)) best = &m;
  return best;
}

void Angle::normalize() {
  if (num == 0) {
    pow = 0;
    return;
  }
  while (pow > 0 && (num & 1) == 0) {
    num >>= 1;
    --pow;
  }
  int64_t mod = int64_t(1) << (pow + 1);  // angle taken mod 2
  num %= mod;
  if (num < 0) num += mod;
  if (num == 0) pow = 0;
}

Angle Angle::operator+(const Angle& o) const {
  Angle r;
  uint32_t p = std::max(pow, o.pow);
  r.num = (num << (p - pow)) + (o.num << (p - o.pow));
  r.pow = p;
  // merge symbolic atoms
  size_t i = 0, j = 0;
  while (i < syms.size() || j < o.syms.size()) {
    if (j == o.syms.size() || (i < syms.size() && syms[i].first < o.syms[j].first)) {
      r.syms.push_back(syms[i++]);
    } else if (i == syms.size() || o.syms[j].first < syms[i].first) {
      r.syms.push_back(o.syms[j++]);
    } else {
      int64_t c = syms[i].second + o.syms[j].second;
      if (c) r.syms.push_back({syms[i].first, c});
      ++i;
      ++j;
    }
  }
  r.normalize();
  return r;
}

Angle Angle::operator-() const { return times(-1); }

Angle Angle::times(int64_t k) const {
  Angle r;
  r.num = num * k;
  r.pow = pow;
  for (auto [id, c] : syms)
    if (c * k != 0) r.syms.push_back({id, c * k});
  r.normalize();
  return r;
}

void PhasePoly::add_term(const Monomial& m, const Angle& a) {
  if (a.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, a);
  } else {
    it->second = it->second + a;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PhasePoly::add_rotation(const Angle& theta, const BoolPoly& f) {
  if (theta.is_zero() || f.is_zero()) return;
  const auto& ms = f.terms();
  // Subsets of size k contribute theta*(-2)^(k-1); for a dyadic angle this
  // vanishes mod 2 once k > pow+1.
  size_t kmax = theta.dyadic_only() ? size_t(theta.pow) + 1 : size_t(10);
  kmax = std::min(kmax, ms.size());
  std::vector<size_t> idx;
  Angle coeff = theta;
  auto rec = [&](auto&& self, size_t start, Monomial acc, Angle c, size_t depth) -> void {
    if (depth > 0) add_term(acc, c);
    if (depth == kmax) return;
    for (size_t i = start; i < ms.size(); ++i)
      self(self, i + 1, acc.mul(ms[i]), depth == 0 ? theta : c.times(-2), depth + 1);
  };
  rec(rec, 0, Monomial::one(), theta, 0);
}

void PhasePoly::add_pi_product(const std::vector<BoolPoly>& factors) {
  BoolPoly prod = BoolPoly::one();
  for (const auto& f : factors) prod = prod * f;
  add_rotation(Angle::pi(), prod);
}

PhasePoly PhasePoly::operator+(const PhasePoly& o) const {
  PhasePoly r = *this;
  for (const auto& [m, a] : o.terms_) r.add_term(m, a);
  return r;
}

bool PhasePoly::contains_var(uint32_t v) const {
  for (const auto& [m, a] : terms_)
    if (m.contains(v)) return true;
  return false;
}

std::map<Monomial, Angle> PhasePoly::var_part(uint32_t v) const {
  std::map<Monomial, Angle> part;
  for (const auto& [m, a] : terms_)
    if (m.contains(v)) part.emplace(m.quotient(v), a);
  return part;
}

void PhasePoly::substitute(uint32_t v, const BoolPoly& r) {
  std::map<Monomial, Angle> part = var_part(v);
  if (part.empty()) return;
  std::map<Monomial, Angle> rest;
  for (const auto& [m, a] : terms_)
    if (!m.contains(v)) rest.emplace(m, a);
  terms_ = std::move(rest);
  for (const auto& [m, a] : part) {
    // a * m * lift(r): reuse the rotation expansion with each subset product
    // multiplied by m.
    PhasePoly tmp;
    tmp.add_rotation(a, r);
    for (const auto& [tm, ta] : tmp.terms_) add_term(m.mul(tm), ta);
  }
}

void PhasePoly::rename_var(uint32_t from, uint32_t to) {
  std::map<Monomial, Angle> out;
  for (auto& [m, a] : terms_) {
    if (!m.contains(from)) {
      auto it = out.find(m);
      if (it == out.end())
        out.emplace(m, a);
      else {
        it->second = it->second + a;
        if (it->second.is_zero()) out.erase(it);
      }
      continue;
    }
    Monomial nm = m.quotient(from).mul(Monomial::var(to));
    auto it = out.find(nm);
    if (it == out.end())
      out.emplace(nm, a);
    else {
      it->second = it->second + a;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  terms_ = std::move(out);
}

Angle PhasePoly::constant() const {
  auto it = terms_.find(Monomial::one());
  return it == terms_.end() ? Angle::zero() : it->second;
}

Angle PhasePoly::eval(const std::vector<char>& assign) const {
  Angle acc;
  for (const auto& [m, a] : terms_) {
    bool t = true;
    for (uint32_t v : m.vars)
      if (v >= assign.size() || !assign[v]) {
        t = false;
        break;
      }
    if (t) acc = acc + a;
  }
  return acc;
}

std::map<Monomial, int64_t> lift(const BoolPoly& p) {
  std::map<Monomial, int64_t> out;
  const auto& ms = p.terms();
  assert(ms.size() <= 24 && "lift subset expansion too large");
  auto rec = [&](auto&& self, size_t start, Monomial acc, int64_t c, size_t depth) -> void {
    if (depth > 0) {
      out[acc] += c;
      if (out[acc] == 0) out.erase(acc);
    }
    for (size_t i = start; i < ms.size(); ++i)
      self(self, i + 1, acc.mul(ms[i]), depth == 0 ? int64_t(1) : c * -2, depth + 1);
  };
  rec(rec, 0, Monomial::one(), 1, 0);
  return out;
}

std::string to_string(const Monomial& m, VarNamer namer, const void* ctx) {
  if (m.is_one()) return "1";
  std::string s;
  for (uint32_t v : m.vars) s += namer(v, ctx);
  return s;
}

std::string to_string(const BoolPoly& p, VarNamer namer, const void* ctx) {
  if (p.is_zero()) return "0";
  std::vector<Monomial> ms = p.terms();
  MonomialOrder ord;
  std::sort(ms.begin(), ms.end(),
            [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  std::string s;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) s += " \xE2\x8A\x95 ";  // ⊕
    s += to_string(ms[i], namer, ctx);
  }
  return s;
}

std::string to_string(const Angle& a) {
  std::string s;
  if (a.num != 0 || a.syms.empty()) {
    s = std::to_string(a.num);
    if (a.pow > 0) s += "/" + std::to_string(int64_t(1) << a.pow);
    s += "\xCF\x80";  // π
  }
  for (auto [id, c] : a.syms) {
    if (!s.empty()) s += "+";
    if (c != 1) s += std::to_string(c) + "*";
    s += "\xCE\xB8" + std::to_string(id);  // θ
  }
  return s;
}

}  // namespace qpf::poly
