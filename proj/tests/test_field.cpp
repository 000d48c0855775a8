#include <doctest.h>

#include <cstdlib>

#include "sumset_forge/field.hpp"
#include "sumset_forge/rng.hpp"

using namespace sumset_forge;

TEST_SUITE("field") {

// Least monic irreducible polynomials, c0 compared first. Values frozen from
// tests/oracles/brute_force.py.
TEST_CASE("default moduli") {
  struct Row {
    std::uint32_t p;
    unsigned k;
    std::vector<std::uint32_t> modulus;
  };
  const std::vector<Row> rows = {
      {3, 2, {1, 0, 1}},          {2, 2, {1, 1, 1}},          {2, 3, {1, 0, 1, 1}},
      {2, 4, {1, 0, 0, 1, 1}},    {2, 6, {1, 0, 0, 0, 0, 1, 1}},
      {2, 8, {1, 0, 0, 0, 1, 1, 0, 1, 1}},                    {3, 3, {1, 0, 2, 1}},
      {3, 4, {1, 0, 1, 1, 1}},    {5, 2, {1, 1, 1}},          {5, 3, {1, 0, 1, 1}},
  };
  for (const auto& row : rows) {
    CAPTURE(row.p);
    CAPTURE(row.k);
    const auto f = Field::make(row.p, row.k);
    CHECK(f->modulus() == row.modulus);
    CHECK(f->q() == static_cast<std::uint32_t>(std::pow(row.p, row.k)));
  }
  CHECK(Field::make(3, 2)->modulus_string() == "x^2+1");
}

TEST_CASE("prime field basics") {
  const auto f = Field::make(7, 1);
  CHECK(f->inv(3) == 5);
  CHECK(f->mul(3, 5) == 1);
  CHECK(f->add(5, 4) == 2);
  CHECK(f->sub(2, 5) == 4);
  CHECK(f->neg(0) == 0);
  CHECK_THROWS_AS(f->inv(0), std::domain_error);
  CHECK(f->spec() == "7^1:0,1");
}

TEST_CASE("spec parsing") {
  const auto f = Field::parse("2^3:1,1,0,1");
  CHECK(f->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
  CHECK(Field::parse(f->spec())->spec() == f->spec());
  CHECK(Field::parse("101")->q() == 101);
  CHECK(Field::parse("3^3")->spec() == "3^3:1,0,2,1");
  CHECK_THROWS_AS(Field::parse("4^2"), FieldError);
  CHECK_THROWS_AS(Field::parse("2^3:1,0,0,1"), FieldError);  // x^3+1 = (x+1)(x^2+x+1)
  CHECK_THROWS_AS(Field::parse("2^3:1,0,1,0"), FieldError);  // not monic of degree 3
  CHECK_THROWS_AS(Field::parse("2^29"), FieldError);
  CHECK_THROWS_AS(Field::parse("banana"), FieldError);
  CHECK_THROWS_AS(Field::parse("2^0"), FieldError);
}

TEST_CASE("irreducibility against trial division") {
  // Degree-4 polynomials over Z_3 with no roots and no quadratic factor.
  auto divides = [](std::uint32_t p, std::vector<std::uint32_t> num, const std::vector<std::uint32_t>& den) {
    while (num.size() >= den.size()) {
      const std::uint32_t lead = num.back();
      const std::size_t shift = num.size() - den.size();
      for (std::size_t i = 0; i < den.size(); ++i) {
        num[shift + i] = (num[shift + i] + p * p - lead * den[i] % p) % p;
      }
      num.pop_back();
    }
    for (auto c : num) {
      if (c) return false;
    }
    return true;
  };
  const std::uint32_t p = 3;
  for (std::uint32_t code = 0; code < 81; ++code) {
    std::vector<std::uint32_t> poly = {code % 3, code / 3 % 3, code / 9 % 3, code / 27, 1};
    bool reducible = false;
    for (std::uint32_t a = 0; a < 9 && !reducible; ++a) {
      reducible = divides(p, poly, {a % 3, 1}) ||
                  divides(p, poly, {a % 3, a / 3, 1});
    }
    CAPTURE(code);
    CHECK(is_irreducible(p, poly) == !reducible);
  }
}

TEST_CASE("tables agree with polynomial multiplication") {
  for (auto spec : {"2^1", "2^5", "2^8", "2^12", "3^2", "3^5", "5^3", "7^2", "13^1", "11^3", "2^10:1,0,0,1,0,0,0,0,0,0,1"}) {
    const auto f = Field::parse(spec);
    REQUIRE(f->has_tables());
    CAPTURE(f->spec());
    if (f->q() <= 256) {
      for (Elem x = 0; x < f->q(); ++x) {
        for (Elem y = 0; y < f->q(); ++y) REQUIRE(f->mul(x, y) == f->mul_poly(x, y));
      }
    } else {
      Rng rng(17);
      for (int i = 0; i < 20000; ++i) {
        const auto x = static_cast<Elem>(rng.below(f->q()));
        const auto y = static_cast<Elem>(rng.below(f->q()));
        REQUIRE(f->mul(x, y) == f->mul_poly(x, y));
      }
    }
  }
}

TEST_CASE("field axioms on random triples") {
  for (auto spec : {"2^6", "3^3", "5^2", "101", "2^8", "3^4", "5^3", "251"}) {
    const auto f = Field::parse(spec);
    CAPTURE(f->spec());
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
      const auto x = static_cast<Elem>(rng.below(f->q()));
      const auto y = static_cast<Elem>(rng.below(f->q()));
      const auto z = static_cast<Elem>(rng.below(f->q()));
      REQUIRE(f->mul(x, f->add(y, z)) == f->add(f->mul(x, y), f->mul(x, z)));
      REQUIRE(f->mul(f->mul(x, y), z) == f->mul(x, f->mul(y, z)));
      REQUIRE(f->add(f->sub(x, y), y) == x);
      if (y != 0) REQUIRE(f->mul(f->div(x, y), y) == x);
      // Addition is digitwise mod p.
      const auto dx = f->digits(x), dy = f->digits(y);
      std::vector<std::uint32_t> ds(dx.size());
      for (std::size_t j = 0; j < ds.size(); ++j) ds[j] = (dx[j] + dy[j]) % f->p();
      REQUIRE(f->from_digits(ds) == f->add(x, y));
    }
  }
}

TEST_CASE("frobenius is an automorphism of order k") {
  for (auto spec : {"2^4", "3^3", "5^2", "2^6"}) {
    const auto f = Field::parse(spec);
    for (Elem x = 0; x < f->q(); ++x) {
      CHECK(f->frobenius(x, f->k()) == x);
      CHECK(f->frobenius(x) == f->pow(x, f->p()));
      for (Elem y = 0; y < f->q(); y += 7) {
        CHECK(f->frobenius(f->add(x, y)) == f->add(f->frobenius(x), f->frobenius(y)));
        CHECK(f->frobenius(f->mul(x, y)) == f->mul(f->frobenius(x), f->frobenius(y)));
      }
    }
  }
}

TEST_CASE("generator has full order") {
  const auto f = Field::parse("3^4");
  const Elem g = f->generator();
  Elem y = 1;
  for (std::uint32_t j = 1; j < f->q() - 1; ++j) {
    y = f->mul(y, g);
    REQUIRE(y != 1);
  }
  CHECK(f->mul(y, g) == 1);
  for (Elem x = 1; x < f->q(); ++x) CHECK(f->exp(f->log(x)) == x);
}

TEST_CASE("no-table path matches the table path") {
  const auto with = Field::make(2, 9);
  const auto without = Field::make(2, 9, std::nullopt, 0);
  CHECK(with->has_tables());
  CHECK_FALSE(without->has_tables());
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) {
    const auto x = static_cast<Elem>(rng.below(512));
    const auto y = static_cast<Elem>(rng.below(512));
    REQUIRE(with->mul(x, y) == without->mul(x, y));
    if (x) REQUIRE(with->inv(x) == without->inv(x));
  }
}

TEST_CASE("log table cap from the environment") {
  ::setenv("SUMSET_FORGE_LOG_TABLE_CAP", "100", 1);
  CHECK(log_table_cap_from_env() == 100);
  CHECK_FALSE(Field::parse("2^7", log_table_cap_from_env())->has_tables());
  ::unsetenv("SUMSET_FORGE_LOG_TABLE_CAP");
  CHECK(log_table_cap_from_env() == kDefaultLogTableCap);
}

TEST_CASE("element rendering round trip") {
  const auto f = Field::parse("3^2");
  CHECK(f->render(0) == "0");
  CHECK(f->render(3) == "x");
  CHECK(f->render(4) == "1+x");
  CHECK(f->render(6) == "2*x");
  for (Elem x = 0; x < f->q(); ++x) CHECK(f->parse_element(f->render(x)) == x);
  CHECK(f->parse_element("7") == 7);
  CHECK_THROWS(f->parse_element("9"));
  CHECK_THROWS(f->parse_element("x^2"));
}

}
