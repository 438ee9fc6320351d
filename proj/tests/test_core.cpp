#include <doctest.h>

#include <sstream>

#include "rota/exchange.hpp"
#include "rota/oracle.hpp"
#include "test_helpers.hpp"

using namespace rota;

namespace {

// Rank by raw subset enumeration; arbitrates the sketch-based oracles.
int rank_by_enumeration(const Matroid& m, const IntSet& s) {
  int best = 0;
  int sz = static_cast<int>(s.size());
  for (unsigned mask = 0; mask < (1u << sz); ++mask) {
    IntSet sub;
    for (int i = 0; i < sz; ++i)
      if (mask & (1u << i)) sub.push_back(s[i]);
    if (m.is_independent(sub)) best = std::max(best, static_cast<int>(sub.size()));
  }
  return best;
}

LinearMatroid tiny_gf2() {
  // e0=(1,0) e1=(0,1) e2=(1,1) e3=(1,0) parallel copy
  return LinearMatroid(2, 2, {{1, 0}, {0, 1}, {1, 1}, {1, 0}});
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("linear independence basics over GF(2)") {
  LinearMatroid m = tiny_gf2();
  CHECK(m.is_independent(IntSet{0, 1}));
  CHECK_FALSE(m.is_independent(IntSet{0, 3}));  // two parallel copies of (1,0)
  CHECK_FALSE(m.is_independent(IntSet{0, 1, 2}));
  CHECK(m.rank(IntSet{0, 1, 2}) == 2);
  CHECK(m.rank(IntSet{}) == 0);
}

TEST_CASE("graphic independence: triangle is dependent") {
  GraphicMatroid m(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(m.is_independent(IntSet{0, 1}));
  CHECK_FALSE(m.is_independent(IntSet{0, 1, 2}));
  CHECK(m.rank(IntSet{0, 1, 2}) == 2);
}

TEST_CASE("graphic rank of K4 is 3") {
  GraphicMatroid k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  IntSet all{0, 1, 2, 3, 4, 5};
  CHECK(rank_by_enumeration(k4, all) == 3);  // spanning tree of 4 vertices
  CHECK(k4.rank(all) == 3);
}

TEST_CASE("closure basics") {
  LinearMatroid m = tiny_gf2();
  CHECK(m.closure(IntSet{}).empty());
  // closure of a parallel element contains both copies
  IntSet cl = m.closure(IntSet{0});
  CHECK(set_contains(cl, 0));
  CHECK(set_contains(cl, 3));
  CHECK_FALSE(set_contains(cl, 1));
  // closure of a basis is everything
  IntSet full = m.closure(IntSet{0, 1});
  CHECK(static_cast<int>(full.size()) == m.ground_size());
  // idempotence
  CHECK(m.closure(cl) == cl);
}

TEST_CASE("augment grows to the larger size") {
  LinearMatroid m(3, 2, {{1, 0}, {0, 1}, {1, 1}});
  IntSet s{0};
  IntSet t{1, 2};
  IntSet star = m.augment(s, t);
  CHECK(static_cast<int>(star.size()) >= 2);
  CHECK(set_contains(star, 0));
  CHECK(m.is_independent(star));
  // enumeration oracle: valid augmentations are {0,1} and {0,2}
  bool valid = (star == IntSet{0, 1}) || (star == IntSet{0, 2});
  CHECK(valid);
  CHECK(m.augment(IntSet{}, t) == t);
  CHECK(m.augment(s, s) == s);
}

TEST_CASE("augment rejects dependent inputs") {
  LinearMatroid m = tiny_gf2();
  CHECK_THROWS_AS((void)m.augment(IntSet{0, 3}, IntSet{1}), Error);
}

TEST_CASE("unknown element ids are instance errors") {
  LinearMatroid m = tiny_gf2();
  CHECK_THROWS_AS((void)m.is_independent(IntSet{11}), Error);
}

TEST_CASE("build_instance duplicates shared elements") {
  // n = 2 over GF(3); both raw bases are the same pair {e0, e1}.
  LinearMatroid base(3, 2, {{1, 0}, {0, 1}});
  auto inst = build_instance(base, {{0, 1}, {0, 1}});
  CHECK(inst.n == 2);
  CHECK(inst.ground_size() == 4);
  inst.validate();
  // copies of one original are pairwise dependent
  int copy_a = inst.classes[0][0];
  int copy_b = -1;
  for (int e : inst.classes[1])
    if (inst.matroid->parallel_group(e) == inst.matroid->parallel_group(copy_a)) copy_b = e;
  REQUIRE(copy_b >= 0);
  CHECK_FALSE(inst.matroid->is_independent(IntSet{copy_a, copy_b}));
  // each copy still behaves as the original
  CHECK(inst.matroid->rank(inst.ground()) == 2);
}

TEST_CASE("build_instance keeps disjoint bases intact") {
  LinearMatroid base(5, 2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  auto inst = build_instance(base, {{0, 1}, {2, 3}});
  CHECK(inst.ground_size() == 4);
  for (int c = 0; c < 2; ++c) CHECK(inst.matroid->is_independent(inst.classes[c]));
}

TEST_CASE("build_instance rejects non-bases naming the class") {
  LinearMatroid base(2, 2, {{1, 0}, {1, 0}, {0, 1}});
  try {
    (void)build_instance(base, {{0, 1}, {0, 2}});
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Validation);
    CHECK(std::string(e.what()).find("class 1") != std::string::npos);
  }
}

TEST_CASE("axiom audit on all matroid kinds") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    ColouredInstance inst = test::any_instance(3, trial);
    const Matroid& m = *inst.matroid;
    CHECK(m.is_independent(IntSet{}));  // empty set
    IntSet s = test::random_subset_capped(inst, rng, 6);
    if (m.is_independent(s) && !s.empty()) {
      // downward closure
      IntSet sub = s;
      sub.erase(sub.begin() + static_cast<long>(rng.below(sub.size())));
      CHECK(m.is_independent(sub));
    }
    IntSet a = test::random_independent(inst, rng, 3);
    IntSet b = test::random_independent(inst, rng, 5);
    if (a.size() < b.size()) {
      // augmentation: some element of b extends a
      bool found = false;
      for (int e : set_minus(b, a))
        if (m.is_independent(set_add(a, e))) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("oracle agreement with rank-by-enumeration") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    ColouredInstance inst = test::any_instance(3, trial);
    IntSet s = test::random_subset_capped(inst, rng, 8);
    CHECK(inst.matroid->rank(s) == rank_by_enumeration(*inst.matroid, s));
  }
}

TEST_CASE("rank submodularity across kinds") {
  for (std::uint64_t kindseed : {0ull, 1ull, 2ull}) {
    ColouredInstance inst = test::any_instance(4, kindseed);
    Rng rng(7 + kindseed);
    for (int trial = 0; trial < 300; ++trial) {
      IntSet a = test::random_subset(inst, rng, 1, 3);
      IntSet b = test::random_subset(inst, rng, 1, 3);
      int lhs = inst.matroid->rank(set_intersect(a, b)) + inst.matroid->rank(set_union(a, b));
      int rhs = inst.matroid->rank(a) + inst.matroid->rank(b);
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("closure laws on random subsets") {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    ColouredInstance inst = test::any_instance(3, trial);
    const Matroid& m = *inst.matroid;
    IntSet s = test::random_subset(inst, rng, 1, 3);
    IntSet cs = m.closure(s);
    CHECK(set_minus(s, cs).empty());            // S within span(S)
    CHECK(m.rank(cs) == m.rank(s));             // same rank
    IntSet t = set_union(s, test::random_subset(inst, rng, 1, 4));
    CHECK(set_minus(cs, m.closure(t)).empty()); // monotone
    if (m.rank(s) == m.rank(t) && set_minus(s, t).empty())
      CHECK(m.closure(s) == m.closure(t));
  }
}

TEST_CASE("instance text format round trip") {
  for (std::uint64_t seed : {1ull, 2ull}) {
    for (auto kind : {InstanceKind::Linear, InstanceKind::Graphic, InstanceKind::Uniform}) {
      ColouredInstance inst =
          generate_instance(kind, 3, kind == InstanceKind::Linear ? 5 : 4, seed);
      std::string text = serialize_instance(inst);
      std::istringstream in(text);
      ColouredInstance back = parse_instance(in);
      CHECK(serialize_instance(back) == text);
      CHECK(instance_digest(back) == instance_digest(inst));
    }
  }
}

TEST_CASE("parser rejects malformed input with line numbers") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      (void)parse_instance(in);
      FAIL_CHECK("expected parse error for: " << needle);
    } catch (const Error& e) {
      CHECK(e.kind() == Error::Kind::Parse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("bogus\n", "rota-instance");
  expect_parse_error(
      "rota-instance v1\nkind linear p=4 n=1\nelem 0 colour=1 vec=1\n", "prime");
  expect_parse_error(
      "rota-instance v1\nkind linear p=2 n=1\nelem 0 colour=1 vec=1\nelem 0 colour=1 vec=1\n",
      "duplicate id");
  expect_parse_error("rota-instance v1\nkind linear p=2 n=1\n", "expected n^2");
  // a colour class that is not a basis
  expect_parse_error(
      "rota-instance v1\nkind linear p=2 n=2\n"
      "elem 0 colour=1 vec=1,0\nelem 1 colour=1 vec=1,0\n"
      "elem 2 colour=2 vec=0,1\nelem 3 colour=2 vec=1,1\n",
      "not a basis");
}

TEST_CASE("generation is deterministic per seed") {
  auto a = generate_instance(InstanceKind::Linear, 2, 3, 1);
  auto b = generate_instance(InstanceKind::Linear, 2, 3, 1);
  CHECK(serialize_instance(a) == serialize_instance(b));
  auto c = generate_instance(InstanceKind::Graphic, 3, 4, 9);
  auto d = generate_instance(InstanceKind::Graphic, 3, 4, 9);
  CHECK(serialize_instance(c) == serialize_instance(d));
}

TEST_CASE("generated instances validate across seeds") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = generate_instance(InstanceKind::Linear, 4, 5, seed);
    inst.validate();  // every class a basis, ground n^2
  }
}

}  // TEST_SUITE
