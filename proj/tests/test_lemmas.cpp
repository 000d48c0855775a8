#include <doctest.h>

#include "sumset_forge/lemmas.hpp"
#include "sumset_forge/rng.hpp"
#include "sumset_forge/setalg.hpp"

using namespace sumset_forge;

namespace {

Rational rhs(const IneqReport& r) { return r.rhs(); }

}  // namespace

TEST_SUITE("lemmas") {

TEST_CASE("literal triangle form") {
  const auto f = Field::parse("7");
  const auto x = ESet::of(f, {1, 2});
  const auto r = check_ruzsa_triangle(x, ESet::of(f, {3}), ESet::of(f, {0, 5}));
  CHECK(r.lhs == 4);
  CHECK(rhs(r) == 4);
  CHECK(r.holds);
  CHECK(r.label == "ruzsa-triangle");
  CHECK(r.tsv() == "ruzsa-triangle\t4\t4\t1\t1");

  const auto zero = ESet::of(f, {0});
  CHECK(check_ruzsa_triangle(zero, zero, zero).holds);
  CHECK_THROWS(check_ruzsa_triangle(ESet(f), zero, zero));

  // The printed form fails in odd characteristic.
  const auto a = ESet::of(f, {0, 1, 3});
  const auto bad = check_ruzsa_triangle(a, zero, a);
  CHECK(bad.lhs == 7);
  CHECK(rhs(bad) == 6);
  CHECK_FALSE(bad.holds);
  CHECK(check_ruzsa_sum_form(a, zero, a).holds);
}

TEST_CASE("triangle sum form holds on random triples") {
  for (auto spec : {"101", "3^3", "5^2", "2^6"}) {
    const auto f = Field::parse(spec);
    Rng rng(8);
    for (int i = 0; i < 300; ++i) {
      const auto x = rng.random_set(f, static_cast<std::uint32_t>(rng.between(1, 10)), false);
      const auto y = rng.random_set(f, static_cast<std::uint32_t>(rng.between(1, 10)), false);
      const auto z = rng.random_set(f, static_cast<std::uint32_t>(rng.between(1, 10)), false);
      REQUIRE(check_ruzsa_sum_form(x, y, z).holds);
      if (f->p() == 2) REQUIRE(check_ruzsa_triangle(x, y, z).holds);
    }
  }
}

TEST_CASE("plunnecke corollary") {
  const auto f = Field::parse("7");
  const std::vector<ESet> bs = {ESet::of(f, {1, 2}), ESet::of(f, {3})};
  const auto r = check_plunneke_corollary(ESet::of(f, {0}), bs);
  CHECK(r.label == "plunnecke-k2");
  CHECK(r.lhs == 2);
  CHECK(rhs(r) == 2);
  CHECK(r.holds);
  CHECK_THROWS(check_plunneke_corollary(ESet::of(f, {0}), std::vector<ESet>{}));

  const auto g = Field::parse("3^2");
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto x = rng.random_set(g, static_cast<std::uint32_t>(rng.between(1, 6)), false);
    std::vector<ESet> three;
    for (int j = 0; j < 3; ++j) three.push_back(rng.random_set(g, static_cast<std::uint32_t>(rng.between(1, 5)), false));
    REQUIRE(check_plunneke_corollary(x, three).holds);
  }
}

TEST_CASE("dilate corollaries") {
  const auto f = Field::parse("7");
  const auto a = ESet::of(f, {1, 2, 3});
  const auto [plus, minus] = check_cor_dilates(a, 1, 2);
  CHECK(plus.lhs == 7);
  CHECK(rhs(plus) == 25);
  CHECK(plus.holds);
  CHECK(minus.holds);
  CHECK(minus.label == "dilate-diff");

  const auto [p2, m2] = check_cor_products(a, 2, 3, 1);
  CHECK(p2.lhs == 5);
  CHECK(m2.lhs == 5);
  CHECK(rhs(p2) == Rational(625, 6));
  CHECK(p2.holds);

  CHECK_THROWS_AS(check_cor_dilates(a, 0, 1), std::domain_error);
  CHECK_THROWS_AS(check_cor_dilates(ESet::of(f, {1, 2, 4}), 1, 3), VacuousBound);

  const auto g = Field::parse("5^2");
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    const auto s = rng.random_set(g, static_cast<std::uint32_t>(rng.between(1, 10)), true);
    const auto el = s.elements();
    const auto [x, y] = check_cor_dilates(s, el[rng.below(el.size())], el[rng.below(el.size())]);
    REQUIRE(x.holds);
    REQUIRE(y.holds);
  }
  const auto h = Field::parse("2^5");
  for (int i = 0; i < 500; ++i) {
    const auto s = rng.random_set(h, static_cast<std::uint32_t>(rng.between(1, 10)), true);
    const auto el = s.elements();
    const auto [x, y] = check_cor_products(s, el[rng.below(el.size())], el[rng.below(el.size())],
                                           el[rng.below(el.size())]);
    REQUIRE(x.holds);
    REQUIRE(y.holds);
  }
}

TEST_CASE("plunnecke witness search") {
  const auto f = Field::parse("7");
  const auto x = ESet::of(f, {0, 1});
  const std::vector<ESet> bs = {x, x};
  CHECK(plunneke_witness_small(x, bs) == x);

  const auto g = Field::parse("3^2");
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto xs = rng.random_set(g, static_cast<std::uint32_t>(rng.between(1, 9)), false);
    std::vector<ESet> b;
    const auto k = rng.between(1, 3);
    for (std::uint64_t j = 0; j < k; ++j) b.push_back(rng.random_set(g, static_cast<std::uint32_t>(rng.between(1, 4)), false));
    const auto x1 = plunneke_witness_small(xs, b);
    REQUIRE_FALSE(x1.empty());
    REQUIRE(x1.subset_of(xs));
    BigInt growth = 1;
    for (const auto& bi : b) growth *= sumset(xs, bi).size();
    REQUIRE(BigInt(sumset(x1, iterated_sumset(b)).size()) * ipow(BigInt(xs.size()), static_cast<unsigned>(k)) <=
            growth * x1.size());
  }
  CHECK_THROWS_AS(plunneke_witness_small(ESet::full(g), std::vector<ESet>{ESet::of(g, {0})}, 4),
                  std::length_error);
}

TEST_CASE("ratio witness") {
  const auto f = Field::parse("11");
  const auto a = ESet::of(f, {1, 2, 5});
  const auto w = lemma11_witness(a);
  CHECK(w.x == 2);
  CHECK(w.energy == 11);
  CHECK(w.sum_card == 8);
  CHECK(w.quadruple.b1 != w.quadruple.b2);
  CHECK(f->div(f->sub(w.quadruple.a1, w.quadruple.a2), f->sub(w.quadruple.b1, w.quadruple.b2)) == w.x);
  CHECK(w.sum_card * w.energy >= 81);
  CHECK(w.energy <= 2 * 9);

  CHECK_THROWS_AS(lemma11_witness(ESet::of(Field::parse("5"), {0, 1})), HypothesisError);
}

TEST_CASE("first representation") {
  const auto f = Field::parse("7");
  const auto a = ESet::of(f, {1, 2, 4});
  const auto q = first_representation(a, 3);
  REQUIRE(q);
  CHECK(f->div(f->sub(q->a1, q->a2), f->sub(q->b1, q->b2)) == 3);
  CHECK(*first_representation(a, 0) == Quadruple{1, 1, 1, 2});
  CHECK_FALSE(first_representation(ESet::of(f, {1}), 1));
}

TEST_CASE("sum dilates outside the ratio set are injective") {
  const auto f = Field::parse("101");
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto a = rng.random_set(f, static_cast<std::uint32_t>(rng.between(2, 8)), false);
    const auto r = ratio_of_differences(a);
    for (Elem x = 0; x < f->q(); ++x) {
      if (!r.contains(x)) REQUIRE(sumset(a, dilate(x, a)).size() == a.size() * a.size());
    }
  }
}

TEST_CASE("affine witness") {
  const auto f4 = Field::parse("2^2");
  const auto g2 = subfields(f4)[0];
  const auto w = lemma13_affine_witness(ESet::of(f4, {2, 3}), g2);
  CHECK(w.c == 1);
  CHECK(w.d == 2);
  CHECK_FALSE(w.counterexample);

  const auto f16 = Field::parse("2^4");
  const auto g4 = subfields(f16)[1];
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Elem c = rng.nonzero(*f16);
    const Elem d = static_cast<Elem>(rng.below(16));
    const auto coset = affine_set(f16, g4, c, d);
    const auto a = ESet::of(f16, [&] {
      std::vector<Elem> out;
      for (auto j : rng.subset(4, 3)) out.push_back(coset.elements()[j]);
      return out;
    }());
    const auto aw = lemma13_affine_witness(a, g4);
    REQUIRE_FALSE(aw.counterexample);
    REQUIRE(aw.c != 0);
    REQUIRE(a.subset_of(affine_set(f16, g4, aw.c, aw.d)));
  }
  const auto off = lemma13_affine_witness(ESet::of(f16, {0, 1, 2}), g4);
  REQUIRE(off.counterexample);
  CHECK(*off.counterexample == 2);
  CHECK_THROWS(lemma13_affine_witness(ESet::of(f16, {3}), g4));
}

TEST_CASE("subfield recognition") {
  CHECK(is_subfield(ESet::of(Field::parse("2^2"), {0, 1})));
  CHECK_FALSE(is_subfield(ESet::of(Field::parse("7"), {0, 1, 6})));
  CHECK(is_subfield(ESet::full(Field::parse("7"))));
  const auto f = Field::parse("3^4");
  for (const auto& g : subfields(f)) CHECK(is_subfield(g.elems));
  CHECK_FALSE(is_subfield(ESet::of(f, {0, 1, 2, 3, 4, 5, 6, 7, 8})));
}

}
