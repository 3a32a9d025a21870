#include "f2linalg.hpp"

#include <algorithm>

namespace qpf::f2 {

void F2Matrix::rref_order(const std::vector<uint32_t>* front) {
  if (bottom_) return;

  // Pivot scan order: `front` columns first, then the rest ascending.
  std::vector<uint32_t> order;
  order.reserve(ncols_);
  std::vector<char> in_front(ncols_, 0);
  if (front) {
    for (uint32_t c : *front) {
      if (c < ncols_ && !in_front[c]) {
        in_front[c] = 1;
        order.push_back(c);
      }
    }
  }
  for (uint32_t c = 0; c < ncols_; ++c)
    if (!in_front[c]) order.push_back(c);

  std::vector<BitRow> work = std::move(rows_);
  rows_.clear();
  std::vector<std::pair<uint32_t, size_t>> pivots;  // (order position, row index)

  size_t next = 0;
  for (uint32_t pos = 0; pos < order.size() && next < work.size(); ++pos) {
    uint32_t col = order[pos];
    size_t pick = next;
    while (pick < work.size() && !work[pick].get(col)) ++pick;
    if (pick == work.size()) continue;
    std::swap(work[next], work[pick]);
    for (size_t i = 0; i < work.size(); ++i)
      if (i != next && work[i].get(col)) work[i] ^= work[next];
    pivots.push_back({pos, next});
    ++next;
  }

  for (size_t i = 0; i < work.size(); ++i) {
    if (work[i].zero()) continue;
    if (work[i].zero_vars() && work[i].constant) {
      set_bottom();
      canonical_ = true;
      return;
    }
    rows_.push_back(std::move(work[i]));
  }
  // Rows sorted by pivot position in scan order.
  std::sort(rows_.begin(), rows_.end(), [&](const BitRow& a, const BitRow& b) {
    auto key = [&](const BitRow& r) {
      for (uint32_t pos = 0; pos < order.size(); ++pos)
        if (r.get(order[pos])) return pos;
      return uint32_t(order.size());
    };
    return key(a) < key(b);
  });
  canonical_ = true;
}

BitRow F2Matrix::reduce(BitRow f) const {
  if (bottom_) {
    // Empty concretization: all functionals agree; canonical form is 0.
    BitRow z(f.width());
    return z;
  }
  for (const BitRow& r : rows_) {
    int p = r.lowest_set();
    if (p >= 0 && f.get(uint32_t(p))) f ^= r;
  }
  return f;
}

void F2Matrix::canonicalize_desc() {
  std::vector<uint32_t> order;
  for (uint32_t c = ncols_; c-- > 0;) order.push_back(c);
  rref_order(&order);
}

BitRow F2Matrix::reduce_desc(BitRow f) const {
  if (bottom_) {
    BitRow z(f.width());
    return z;
  }
  for (const BitRow& r : rows_) {
    int p = r.highest_set();
    if (p >= 0 && f.get(uint32_t(p))) f ^= r;
  }
  return f;
}

F2Matrix F2Matrix::project(const std::vector<uint32_t>& drop) const {
  if (bottom_) {
    F2Matrix b;
    b.set_bottom();
    return b;
  }
  std::vector<char> dropped(ncols_, 0);
  for (uint32_t c : drop)
    if (c < ncols_) dropped[c] = 1;

  F2Matrix work = *this;
  work.rref_order(&drop);
  if (work.is_bottom()) return work;

  // Remaining columns re-indexed densely.
  std::vector<uint32_t> remap(ncols_, 0);
  uint32_t k = 0;
  for (uint32_t c = 0; c < ncols_; ++c)
    if (!dropped[c]) remap[c] = k++;

  F2Matrix out(k);
  for (const BitRow& r : work.rows_) {
    bool touches = false;
    for (uint32_t c : r.support())
      if (dropped[c]) {
        touches = true;
        break;
      }
    if (touches) continue;
    BitRow nr(k);
    for (uint32_t c : r.support()) nr.set(remap[c]);
    nr.constant = r.constant;
    out.add_row(std::move(nr));
  }
  out.canonicalize();
  return out;
}

F2Matrix F2Matrix::rename(const std::vector<std::pair<uint32_t, uint32_t>>& map,
                          uint32_t new_ncols) const {
  if (bottom_) {
    F2Matrix b;
    b.set_bottom();
    return b;
  }
  std::vector<int64_t> remap(ncols_, -1);
  for (auto [from, to] : map)
    if (from < ncols_) remap[from] = to;
  F2Matrix out(std::max(new_ncols, ncols_));
  for (const BitRow& r : rows_) {
    BitRow nr(out.ncols());
    for (uint32_t c : r.support()) {
      int64_t t = remap[c] >= 0 ? remap[c] : c;
      nr.set(uint32_t(t));
    }
    nr.constant = r.constant;
    out.add_row(std::move(nr));
  }
  out.canonicalize();
  return out;
}

F2Matrix rref(F2Matrix m) {
  m.canonicalize();
  return m;
}

}  // namespace qpf::f2
