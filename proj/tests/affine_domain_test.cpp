#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "affine_domain.hpp"

#include <random>
#include <set>

using namespace qpf::dom;
using qpf::f2::BitRow;
using qpf::f2::F2Matrix;

namespace {

// Concretization by enumeration: points of F2^(2n) (post bits high-to-low
// first, then pre) satisfying every row.
std::set<uint32_t> gamma(const KsElement& e) {
  std::set<uint32_t> pts;
  if (e.is_bottom()) return pts;
  uint32_t w = e.voc().total();
  for (uint32_t v = 0; v < (1u << w); ++v) {
    bool ok = true;
    for (const BitRow& r : e.matrix().rows()) {
      bool acc = r.constant;
      for (uint32_t c = 0; c < w; ++c)
        if (r.get(c) && ((v >> c) & 1)) acc = !acc;
      if (acc) {
        ok = false;
        break;
      }
    }
    if (ok) pts.insert(v);
  }
  return pts;
}

KsElement of_rows(Vocabulary voc, std::vector<std::pair<std::vector<uint32_t>, bool>> rows) {
  F2Matrix m(voc.total());
  for (auto& [cols, c] : rows) {
    BitRow r(voc.total());
    for (uint32_t x : cols) r.set(x);
    r.constant = c;
    m.add_row(std::move(r));
  }
  return KsElement(voc, std::move(m));
}

// Relation as a set of (post, pre) pairs; encode point = post | pre<<n.
std::set<uint32_t> rel_points(const KsElement& e) { return gamma(e); }

std::set<uint32_t> rel_compose(const std::set<uint32_t>& a, const std::set<uint32_t>& b,
                               uint32_t n) {
  // (post', pre) with some mid: (mid, pre) in a, (post', mid) in b
  std::set<uint32_t> out;
  uint32_t mask = (1u << n) - 1;
  for (uint32_t pa : a)
    for (uint32_t pb : b) {
      uint32_t mid_a = pa & mask, pre_a = pa >> n;
      uint32_t post_b = pb & mask, mid_b = pb >> n;
      if (mid_a == mid_b) out.insert(post_b | (pre_a << n));
    }
  return out;
}

std::set<uint32_t> affine_hull(std::set<uint32_t> pts, uint32_t w) {
  if (pts.empty()) return pts;
  uint32_t base = *pts.begin();
  // span of differences
  std::set<uint32_t> space = {0};
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t p : pts)
      for (uint32_t s : std::set<uint32_t>(space)) {
        uint32_t v = (p ^ base) ^ s;
        if (!space.count(v)) {
          space.insert(v);
          changed = true;
        }
      }
  }
  std::set<uint32_t> out;
  for (uint32_t s : space) out.insert(s ^ base);
  return out;
}

KsElement rand_elem(std::mt19937& rng, uint32_t n) {
  Vocabulary voc{n, 0};
  F2Matrix m(voc.total());
  int k = rng() % (n + 1);
  for (int i = 0; i < k; ++i) {
    BitRow r(voc.total());
    for (uint32_t c = 0; c < voc.total(); ++c)
      if (rng() & 1) r.set(c);
    r.constant = rng() & 1;
    m.add_row(std::move(r));
  }
  return KsElement(voc, std::move(m));
}

}  // namespace

TEST_CASE("identity, top, bottom") {
  KsElement id = KsElement::identity(1);
  // matrix {[1 1 | 0]} over (x', x)
  REQUIRE(id.matrix().nrows() == 1);
  CHECK(id.matrix().rows()[0].get(0));
  CHECK(id.matrix().rows()[0].get(1));
  CHECK(!id.matrix().rows()[0].constant);

  CHECK(KsElement::bottom({1, 0}).is_bottom());
  Vocabulary v2{2, 0};
  CHECK(meet(KsElement::top(v2), KsElement::identity(2)) == KsElement::identity(2));
}

TEST_CASE("meet by enumeration") {
  Vocabulary voc{1, 0};
  KsElement a = of_rows(voc, {{{0, 1}, false}});          // x' + x
  KsElement b = of_rows(voc, {{{1}, false}});             // x
  KsElement m = meet(a, b);
  std::set<uint32_t> want;
  for (uint32_t p : gamma(a))
    if (gamma(b).count(p)) want.insert(p);
  CHECK(gamma(m) == want);
  CHECK(meet(a, KsElement::top(voc)) == a);
  CHECK(meet(a, KsElement::bottom(voc)).is_bottom());
}

TEST_CASE("join is the affine hull") {
  Vocabulary voc{1, 0};
  // <x'+x, x> |_| <x'+x, x+1> = <x'+x>   (measurement abstraction)
  KsElement a = of_rows(voc, {{{0, 1}, false}, {{1}, false}});
  KsElement b = of_rows(voc, {{{0, 1}, false}, {{1}, true}});
  CHECK(join(a, b) == of_rows(voc, {{{0, 1}, false}}));
  // <x'+x, x> |_| <x', x+1> = <x'>       (reset abstraction)
  KsElement c = of_rows(voc, {{{0}, false}, {{1}, true}});
  CHECK(join(a, c) == of_rows(voc, {{{0}, false}}));

  // <x'+x, y'+y> |_| <x'+y, y'+x> = <x'+y'+x+y>  (swap loop join)
  Vocabulary voc2{2, 0};
  KsElement i2 = KsElement::identity(2);
  KsElement sw = of_rows(voc2, {{{0, 3}, false}, {{1, 2}, false}});
  KsElement j = join(i2, sw);
  CHECK(j == of_rows(voc2, {{{0, 1, 2, 3}, false}}));

  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    KsElement x = rand_elem(rng, 2), y = rand_elem(rng, 2);
    std::set<uint32_t> pts = gamma(x);
    for (uint32_t p : gamma(y)) pts.insert(p);
    CHECK(gamma(join(x, y)) == affine_hull(pts, 4));
  }
}

TEST_CASE("lattice laws on random elements") {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    KsElement a = rand_elem(rng, 2), b = rand_elem(rng, 2), c = rand_elem(rng, 2);
    CHECK(join(a, b) == join(b, a));
    CHECK(meet(a, b) == meet(b, a));
    CHECK(join(a, a) == a);
    CHECK(meet(a, a) == a);
    CHECK(join(a, join(b, c)) == join(join(a, b), c));
    CHECK(meet(a, meet(b, c)) == meet(meet(a, b), c));
    CHECK(join(a, meet(a, b)) == a);
    CHECK(meet(a, join(a, b)) == a);
  }
}

TEST_CASE("compose matches relational composition up to affine hull") {
  // top . top = top
  Vocabulary voc{1, 0};
  CHECK(compose(KsElement::top(voc), KsElement::top(voc)).is_top());
  // identity . a = a
  std::mt19937 rng(13);
  for (int t = 0; t < 30; ++t) {
    KsElement a = rand_elem(rng, 2);
    CHECK(compose(KsElement::identity(2), a) == a);
    CHECK(compose(a, KsElement::identity(2)) == a);
  }
  // X . X = identity on 1 qubit
  KsElement x = of_rows(voc, {{{0, 1}, true}});
  CHECK(compose(x, x) == KsElement::identity(1));
  // soundness + hull-exactness by enumeration
  for (int t = 0; t < 40; ++t) {
    KsElement a = rand_elem(rng, 2), b = rand_elem(rng, 2);
    std::set<uint32_t> want = affine_hull(rel_compose(gamma(a), gamma(b), 2), 4);
    CHECK(gamma(compose(a, b)) == want);
  }
}

TEST_CASE("star: swap loop and cnot loop") {
  Vocabulary voc2{2, 0};
  KsElement sw = of_rows(voc2, {{{0, 3}, false}, {{1, 2}, false}});
  CHECK(star(sw) == of_rows(voc2, {{{0, 1, 2, 3}, false}}));
  CHECK(star(KsElement::identity(2)) == KsElement::identity(2));

  // cnot-style loop: x preserved, y havocked across iterations:
  // relation <x'+x, y'+x+y>; closure = <x'+x>
  KsElement cnot = of_rows(voc2, {{{0, 2}, false}, {{1, 2, 3}, false}});
  CHECK(star(cnot) == of_rows(voc2, {{{0, 2}, false}}));

  // star contains identity and is closed under composition with the body
  std::mt19937 rng(17);
  for (int t = 0; t < 25; ++t) {
    KsElement a = rand_elem(rng, 2);
    KsElement s = star(a);
    std::set<uint32_t> ss = gamma(s);
    for (uint32_t p : gamma(KsElement::identity(2))) CHECK(ss.count(p));
    for (uint32_t p : rel_compose(ss, gamma(a), 2)) CHECK(ss.count(p));
  }
}

TEST_CASE("reduce on bottom sends every functional to zero") {
  KsElement b = KsElement::bottom({2, 0});
  BitRow f(4);
  f.set(1);
  f.set(3);
  CHECK(b.reduce(f).zero());
}
