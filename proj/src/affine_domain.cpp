#include "affine_domain.hpp"

#include <cassert>

namespace qpf::dom {

KsElement KsElement::identity(uint32_t n) {
  Vocabulary voc{n, 0};
  F2Matrix m(voc.total());
  for (uint32_t i = 0; i < n; ++i) {
    BitRow r(voc.total());
    r.set(voc.post(i));
    r.set(voc.pre(i));
    m.add_row(std::move(r));
  }
  return KsElement(voc, std::move(m));
}

KsElement KsElement::project_aux() const {
  if (voc_.k == 0) return *this;
  std::vector<uint32_t> drop;
  for (uint32_t j = 0; j < voc_.k; ++j) drop.push_back(voc_.aux(j));
  return KsElement({voc_.n, 0}, mat_.project(drop));
}

KsElement meet(const KsElement& a, const KsElement& b) {
  assert(a.voc() == b.voc());
  if (a.is_bottom() || b.is_bottom()) return KsElement::bottom(a.voc());
  F2Matrix m = a.matrix();
  for (const BitRow& r : b.matrix().rows()) m.add_row(r);
  m.canonicalize();
  return KsElement(a.voc(), std::move(m));
}

// A |_| B = exists Z. [A Z+X ; B Z] on homogenized columns: the constant is
// treated as an extra duplicated coordinate so the affine hull comes out of
// the subspace sum of the homogeneous kernels.
KsElement join(const KsElement& a, const KsElement& b) {
  assert(a.voc() == b.voc());
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  uint32_t w = a.voc().total();
  // columns: [Z(w) zc | X(w) xc]
  F2Matrix big(2 * (w + 1));
  for (const BitRow& r : a.matrix().rows()) {
    BitRow nr(2 * (w + 1));
    for (uint32_t c : r.support()) {
      nr.set(c);
      nr.set(w + 1 + c);
    }
    if (r.constant) {
      nr.set(w);
      nr.set(2 * w + 1);
    }
    big.add_row(std::move(nr));
  }
  for (const BitRow& r : b.matrix().rows()) {
    BitRow nr(2 * (w + 1));
    for (uint32_t c : r.support()) nr.set(c);
    if (r.constant) nr.set(w);
    big.add_row(std::move(nr));
  }
  std::vector<uint32_t> drop(w + 1);
  for (uint32_t c = 0; c <= w; ++c) drop[c] = c;
  F2Matrix proj = big.project(drop);
  // un-homogenize: last remaining column is the constant
  F2Matrix out(w);
  for (const BitRow& r : proj.rows()) {
    BitRow nr(w);
    bool c = false;
    for (uint32_t col : r.support()) {
      if (col == w)
        c = true;
      else
        nr.set(col);
    }
    nr.constant = c ^ r.constant;
    out.add_row(std::move(nr));
  }
  out.canonicalize();
  return KsElement(a.voc(), std::move(out));
}

KsElement compose(const KsElement& a, const KsElement& b) {
  assert(a.voc().n == b.voc().n);
  assert(a.voc().k == 0 && b.voc().k == 0);
  uint32_t n = a.voc().n;
  if (a.is_bottom() || b.is_bottom()) return KsElement::bottom({n, 0});
  // columns: [X'(n) | X(n) | M(n)]
  F2Matrix big(3 * n);
  for (const BitRow& r : a.matrix().rows()) {
    BitRow nr(3 * n);
    for (uint32_t c : r.support()) nr.set(c < n ? 2 * n + c : c);  // post -> M
    nr.constant = r.constant;
    big.add_row(std::move(nr));
  }
  for (const BitRow& r : b.matrix().rows()) {
    BitRow nr(3 * n);
    for (uint32_t c : r.support()) nr.set(c < n ? c : n + c);  // pre -> M
    nr.constant = r.constant;
    big.add_row(std::move(nr));
  }
  std::vector<uint32_t> drop;
  for (uint32_t c = 2 * n; c < 3 * n; ++c) drop.push_back(c);
  return KsElement({n, 0}, big.project(drop));
}

KsElement star(const KsElement& a) {
  assert(a.voc().k == 0);
  uint32_t n = a.voc().n;
  KsElement s = KsElement::identity(n);
  for (uint32_t i = 0; i <= 2 * n + 1; ++i) {
    KsElement next = join(s, compose(s, a));
    if (next == s) return s;
    s = next;
  }
  assert(false && "Kleene closure failed to stabilize within 2n joins");
  return s;
}

}  // namespace qpf::dom
