#pragma once

#include "f2linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qpf::dom {

using f2::BitRow;
using f2::F2Matrix;

// Column layout of a KS constraint matrix: [X'(n) | X(n) | Y(k)] with the
// affine constant carried separately on each row.
struct Vocabulary {
  uint32_t n = 0;
  uint32_t k = 0;
  uint32_t total() const { return 2 * n + k; }
  uint32_t post(uint32_t i) const { return i; }
  uint32_t pre(uint32_t i) const { return n + i; }
  uint32_t aux(uint32_t j) const { return 2 * n + j; }
  bool operator==(const Vocabulary& o) const { return n == o.n && k == o.k; }
};

// KS affine relation domain element: an affine subspace of F2^(2n+k) given
// as the kernel of a canonical constraint matrix.
class KsElement {
 public:
  KsElement() = default;
  KsElement(Vocabulary voc, F2Matrix mat) : voc_(voc), mat_(std::move(mat)) {
    mat_.set_ncols(voc_.total());
    mat_.canonicalize();
  }

  static KsElement top(Vocabulary voc) { return KsElement(voc, F2Matrix(voc.total())); }
  static KsElement bottom(Vocabulary voc) {
    F2Matrix m(voc.total());
    m.set_bottom();
    return KsElement(voc, std::move(m));
  }
  static KsElement identity(uint32_t n);

  const Vocabulary& voc() const { return voc_; }
  const F2Matrix& matrix() const { return mat_; }
  bool is_bottom() const { return mat_.is_bottom(); }
  bool is_top() const { return mat_.empty(); }

  bool operator==(const KsElement& o) const { return voc_ == o.voc_ && mat_ == o.mat_; }

  // Canonical representative of a linear functional on the concretization.
  BitRow reduce(BitRow f) const { return mat_.reduce(std::move(f)); }

  KsElement project_aux() const;  // drop the Y block

 private:
  Vocabulary voc_;
  F2Matrix mat_;
};

KsElement meet(const KsElement& a, const KsElement& b);
// Affine hull of the two concretizations.
KsElement join(const KsElement& a, const KsElement& b);
// Relational composition b after a (two-vocabulary elements).
KsElement compose(const KsElement& a, const KsElement& b);
// Kleene closure: least fixpoint containing the identity relation and closed
// under composition with a. Stabilizes within 2n joins.
KsElement star(const KsElement& a);

}  // namespace qpf::dom
