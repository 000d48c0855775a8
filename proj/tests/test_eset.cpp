#include <doctest.h>

#include "sumset_forge/eset.hpp"
#include "sumset_forge/rng.hpp"

using namespace sumset_forge;

TEST_SUITE("eset") {

TEST_CASE("construction and membership") {
  const auto f = Field::parse("7");
  const auto a = ESet::of(f, {3, 1, 3, 5});
  CHECK(a.size() == 3);
  CHECK(a.elements() == std::vector<Elem>{1, 3, 5});
  CHECK(a.contains(5));
  CHECK_FALSE(a.contains(4));
  CHECK_FALSE(a.contains(70));
  CHECK(a.min() == 1);
  CHECK(a.with(0).size() == 4);
  CHECK(a.without(3).elements() == std::vector<Elem>{1, 5});
  CHECK(ESet::full(f).size() == 7);
  CHECK(ESet(f).empty());
}

TEST_CASE("boolean operations") {
  const auto f = Field::parse("2^7");
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = rng.random_set(f, static_cast<std::uint32_t>(rng.below(60)), false);
    const auto b = rng.random_set(f, static_cast<std::uint32_t>(rng.below(60)), false);
    std::size_t both = 0, either = 0;
    for (Elem x = 0; x < f->q(); ++x) {
      both += a.contains(x) && b.contains(x);
      either += a.contains(x) || b.contains(x);
    }
    CHECK(a.intersect(b).size() == both);
    CHECK(a.intersect_count(b) == both);
    CHECK(a.unite(b).size() == either);
    CHECK(a.minus(b).size() == a.size() - both);
    CHECK(a.intersect(b).subset_of(a));
    CHECK(a.subset_of(a.unite(b)));
  }
}

TEST_CASE("mask and literal round trips") {
  const auto f = Field::parse("5");
  const auto a = ESet::of(f, {0, 1, 2});
  CHECK(a.mask_hex() == "07");
  CHECK(ESet::of(f, {0, 3, 4}).mask_hex() == "19");
  CHECK(ESet::parse(f, "maskhex:19") == ESet::of(f, {0, 3, 4}));
  CHECK(a.literal() == "{0,1,2}");
  CHECK(ESet::parse(f, "{ 2, 1,0 }") == a);
  CHECK(ESet::parse(f, "{}").empty());

  const auto g = Field::parse("3^2");
  const auto b = ESet::of(g, {0, 4, 8});
  CHECK(b.literal(true) == "{0,1+x,2+2*x}");
  CHECK(ESet::parse(g, b.literal(true)) == b);
  CHECK(ESet::parse(g, "maskhex:" + b.mask_hex()) == b);

  const auto h = Field::parse("2^8");
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto s = rng.random_set(h, static_cast<std::uint32_t>(rng.below(256)), false);
    CHECK(s.mask_hex().size() == 64);
    CHECK(ESet::from_mask_hex(h, s.mask_hex()) == s);
    CHECK(ESet::parse(h, s.literal()) == s);
    CHECK(ESet::parse(h, s.literal(true)) == s);
  }
}

TEST_CASE("malformed set text") {
  const auto f = Field::parse("5");
  CHECK_THROWS(ESet::parse(f, "{1,2"));
  CHECK_THROWS(ESet::parse(f, "{1,9}"));
  CHECK_THROWS(ESet::parse(f, "maskhex:20"));  // bit 5 is outside F_5
  CHECK_THROWS(ESet::parse(f, "maskhex:zz"));
  CHECK_THROWS(ESet::parse(f, "1,2"));
}

TEST_CASE("sets over different fields do not mix") {
  const auto a = ESet::of(Field::parse("2^3:1,1,0,1"), {1});
  const auto b = ESet::of(Field::parse("2^3:1,0,1,1"), {1});
  const auto c = ESet::of(Field::parse("2^3:1,1,0,1"), {1});
  CHECK_FALSE(a == b);
  CHECK(a == c);
  CHECK_THROWS_AS(a.unite(b), ContextMismatch);
}

}
