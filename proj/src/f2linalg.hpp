#pragma once

#include <cstdint>
#include <vector>

namespace qpf::f2 {

// Row vector over F2, bit-packed 64 columns per word, with the affine
// constant kept as a separate trailing column.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(uint32_t width) : width_(width), words_((width + 63) / 64, 0) {}

  static BitRow unit(uint32_t width, uint32_t col) {
    BitRow r(width);
    r.set(col);
    return r;
  }

  uint32_t width() const { return width_; }
  void resize(uint32_t width) {
    width_ = width;
    words_.resize((width + 63) / 64, 0);
  }

  bool get(uint32_t col) const {
    if (col >= width_) return false;
    return (words_[col >> 6] >> (col & 63)) & 1;
  }
  void set(uint32_t col, bool v = true) {
    if (col >= width_) resize(col + 1);
    uint64_t m = uint64_t(1) << (col & 63);
    if (v)
      words_[col >> 6] |= m;
    else
      words_[col >> 6] &= ~m;
  }
  void flip(uint32_t col) { set(col, !get(col)); }

  BitRow& operator^=(const BitRow& o) {
    if (o.width_ > width_) resize(o.width_);
    for (size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    constant ^= o.constant;
    return *this;
  }
  friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }

  // True when every variable coefficient is zero (the constant may be set).
  bool zero_vars() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }
  bool zero() const { return zero_vars() && !constant; }

  int lowest_set() const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return int(i * 64 + __builtin_ctzll(words_[i]));
    return -1;
  }
  int highest_set() const {
    for (size_t i = words_.size(); i-- > 0;)
      if (words_[i]) return int(i * 64 + 63 - __builtin_clzll(words_[i]));
    return -1;
  }
  size_t popcount() const {
    size_t n = 0;
    for (uint64_t w : words_) n += __builtin_popcountll(w);
    return n;
  }
  std::vector<uint32_t> support() const {
    std::vector<uint32_t> s;
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        s.push_back(uint32_t(i * 64 + __builtin_ctzll(w)));
        w &= w - 1;
      }
    }
    return s;
  }

  bool operator==(const BitRow& o) const {
    if (constant != o.constant) return false;
    size_t n = std::max(words_.size(), o.words_.size());
    for (size_t i = 0; i < n; ++i) {
      uint64_t a = i < words_.size() ? words_[i] : 0;
      uint64_t b = i < o.words_.size() ? o.words_[i] : 0;
      if (a != b) return false;
    }
    return true;
  }
  bool operator!=(const BitRow& o) const { return !(*this == o); }

  bool constant = false;

 private:
  uint32_t width_ = 0;
  std::vector<uint64_t> words_;
};

// Constraint matrix over F2 in reduced row echelon form. Rows are affine
// constraints r(x) + c = 0; the system { 0 = 1 } canonicalizes to a
// distinguished bottom marker.
class F2Matrix {
 public:
  F2Matrix() = default;
  explicit F2Matrix(uint32_t ncols) : ncols_(ncols) {}

  uint32_t ncols() const { return ncols_; }
  void set_ncols(uint32_t n) { ncols_ = std::max(ncols_, n); }
  bool is_bottom() const { return bottom_; }
  void set_bottom() {
    bottom_ = true;
    rows_.clear();
  }
  bool empty() const { return rows_.empty() && !bottom_; }
  size_t nrows() const { return rows_.size(); }
  const std::vector<BitRow>& rows() const { return rows_; }

  // Appends a constraint; call canonicalize() before reading back.
  void add_row(BitRow r) {
    if (bottom_) return;
    if (r.width() > ncols_) ncols_ = r.width();
    rows_.push_back(std::move(r));
    canonical_ = false;
  }

  void canonicalize() { rref_order(nullptr); }

  // RREF with pivots scanned from the highest column down, so reduction
  // rewrites later variables in terms of earlier ones.
  void canonicalize_desc();

  // RREF with pivots chosen along `order` (a permutation of a subset of
  // columns scanned first, then the rest ascending). Used by projection.
  void rref_order(const std::vector<uint32_t>* front);

  // Unique normal form of f modulo the row space. Requires canonical form.
  BitRow reduce(BitRow f) const;
  // Normal form against a descending-canonical matrix.
  BitRow reduce_desc(BitRow f) const;

  // Membership of f's kernel-functional in the row space.
  bool in_rowspace(const BitRow& f) const {
    BitRow r = reduce(f);
    return r.zero();
  }

  // Eliminates the given columns: rows with support in `drop` are removed
  // after re-pivoting so dropped columns are leftmost; remaining columns are
  // re-indexed densely in their original relative order.
  F2Matrix project(const std::vector<uint32_t>& drop) const;

  // Applies a column relabeling: new_col = map[old_col]; map entries must be
  // distinct. Columns not present in map keep their index.
  F2Matrix rename(const std::vector<std::pair<uint32_t, uint32_t>>& map, uint32_t new_ncols) const;

  bool operator==(const F2Matrix& o) const {
    if (bottom_ != o.bottom_) return false;
    if (rows_.size() != o.rows_.size()) return false;
    for (size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i] != o.rows_[i]) return false;
    return true;
  }

 private:
  std::vector<BitRow> rows_;
  uint32_t ncols_ = 0;
  bool canonical_ = false;
  bool bottom_ = false;
};

F2Matrix rref(F2Matrix m);

}  // namespace qpf::f2
