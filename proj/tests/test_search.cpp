#include <doctest.h>

#include <sstream>

#include "sumset_forge/rng.hpp"
#include "sumset_forge/search.hpp"
#include "sumset_forge/setalg.hpp"

using namespace sumset_forge;

namespace {

SearchConfig exhaustive(std::uint32_t m, bool exclude_zero = true, unsigned jobs = 1) {
  SearchConfig c;
  c.m = m;
  c.exclude_zero = exclude_zero;
  c.jobs = jobs;
  return c;
}

std::vector<std::string> masks(const std::vector<SearchRecord>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.mask_hex);
  return out;
}

std::string text(const Store& s) {
  std::ostringstream out;
  s.write(out);
  return out.str();
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("binomials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(255, 0) == 1);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(binomial(1000, 500) == UINT64_MAX);
}

TEST_CASE("colex rank and unrank") {
  std::vector<std::uint32_t> combo = {0, 1, 2};
  std::uint64_t r = 0;
  do {
    CHECK(colex_rank(combo) == r);
    CHECK(colex_unrank(r, 3) == combo);
    ++r;
  } while (colex_next(combo, 9));
  CHECK(r == binomial(9, 3));
  CHECK(colex_unrank(0, 2) == std::vector<std::uint32_t>{0, 1});
  CHECK(colex_unrank(1, 2) == std::vector<std::uint32_t>{0, 2});
  CHECK(colex_unrank(2, 2) == std::vector<std::uint32_t>{1, 2});
}

// Minima frozen from tests/oracles/brute_force.py.
TEST_CASE("exhaustive minima") {
  const auto f5 = Field::parse("5");
  const auto excl = exhaustive_min(f5, exhaustive(3));
  REQUIRE_FALSE(excl.empty());
  CHECK(excl.front().objective() == 5);
  const auto incl = exhaustive_min(f5, exhaustive(3, false));
  CHECK(incl.front().objective() == 5);
  CHECK(masks(incl) == std::vector<std::string>{"07", "0b", "0d", "0e", "13", "15", "16", "19", "1a", "1c"});

  const auto f7 = Field::parse("7");
  const auto seven = exhaustive_min(f7, exhaustive(3));
  CHECK(seven.front().objective() == 5);
  CHECK(masks(seven) == std::vector<std::string>{"0e", "1c", "26", "2a", "32", "38", "4a", "4c", "52", "54", "64", "70"});
  CHECK(exhaustive_min(f7, exhaustive(3, false)).front().objective() == 5);

  const auto whole = exhaustive_min(f5, exhaustive(5, false));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].mask_hex == "1f");
  CHECK_THROWS(exhaustive_min(f5, exhaustive(5)));
}

TEST_CASE("records are recomputable") {
  const auto f = Field::parse("2^8");
  SearchConfig c;
  c.mode = SearchMode::Random;
  c.m = 12;
  c.sample_count = 300;
  c.seed = 4;
  c.jobs = 2;
  for (const auto& r : random_scan(f, c)) {
    const auto a = ESet::from_mask_hex(f, r.mask_hex);
    REQUIRE(a.size() == 12);
    REQUIRE(sumset(a, a).size() == r.s);
    REQUIRE(productset(a, a).size() == r.t);
    REQUIRE(SearchRecord::parse(r.tsv()) == r);
  }
  c.sample_count = 0;
  CHECK(random_scan(f, c).empty());
}

TEST_CASE("prime fields satisfy Cauchy-Davenport") {
  const auto f = Field::parse("13");
  SearchConfig c;
  c.m = 4;
  c.sample_count = 100;
  c.with_case = false;
  for (const auto& r : random_scan(f, c)) CHECK(r.s >= std::min<std::uint64_t>(13, 2 * r.m - 1));
}

TEST_CASE("sharding and threads do not change results") {
  const auto f = Field::parse("3^3");
  auto base = exhaustive(3, true, 1);
  base.with_case = false;
  const auto whole = exhaustive_min(f, base);
  auto four = base;
  four.jobs = 4;
  CHECK(masks(exhaustive_min(f, four)) == masks(whole));

  const std::uint64_t total = search_space_size(*f, 3, true);
  Store sharded(f->spec()), unsharded(f->spec());
  unsharded.merge(whole);
  for (std::uint64_t lo = 0; lo < total; lo += 500) sharded.merge(exhaustive_min(f, base, lo, std::min(total, lo + 500)));
  CHECK(sharded.minimum()->objective() == unsharded.minimum()->objective());
  CHECK(sharded.minimum()->mask_hex == unsharded.minimum()->mask_hex);

  // Shard-local minima that are globally minimal reproduce the unsharded list.
  std::vector<SearchRecord> best;
  for (const auto& r : sharded.records()) {
    if (r.objective() == whole.front().objective()) best.push_back(r);
  }
  CHECK(masks(best) == masks(whole));
}

TEST_CASE("random scans are deterministic") {
  const auto f = Field::parse("5^2");
  SearchConfig c;
  c.mode = SearchMode::Random;
  c.m = 6;
  c.sample_count = 50;
  c.seed = 9;
  c.jobs = 1;
  const auto a = random_scan(f, c);
  c.jobs = 3;
  const auto b = random_scan(f, c);
  CHECK(a == b);
  c.seed = 10;
  CHECK_FALSE(random_scan(f, c) == a);
}

TEST_CASE("budget") {
  const auto f = Field::parse("2^8");
  auto c = exhaustive(6);
  c.budget = 1000;
  CHECK_THROWS_AS(exhaustive_min(f, c), BudgetExceeded);
  CHECK_NOTHROW(exhaustive_min(f, c, 0, 1000));
}

TEST_CASE("hypothesis filter") {
  const auto f = Field::parse("7");
  auto c = exhaustive(3);
  c.hypothesis_filter = true;
  for (const auto& r : exhaustive_min(f, c)) CHECK(r.hypothesis_ok);
}

TEST_CASE("store merge, persistence and errors") {
  const auto f = Field::parse("5");
  const auto recs = exhaustive_min(f, exhaustive(3, false));
  Store s(f->spec());
  s.merge(recs);
  s.merge(recs);
  CHECK(s.records().size() == recs.size());
  const auto written = text(s);
  CHECK(written.rfind("#sumset-forge v1 5^1:0,1\n", 0) == 0);
  CHECK(written.find("#min 5 07\n") != std::string::npos);

  std::istringstream in(written);
  const auto back = Store::load(in, "mem");
  CHECK(back.records() == s.records());
  CHECK(text(back) == written);

  CHECK(text(Store(f->spec())) == "#sumset-forge v1 5^1:0,1\n");

  std::istringstream bad("#sumset-forge v1 5^1:0,1\n5^1:0,1\t07\t3\t5\tx\t0\t-\n");
  try {
    Store::load(bad, "shard.tsv");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).rfind("shard.tsv:2:", 0) == 0);
  }
  std::istringstream noheader("5^1:0,1\t07\t3\t5\t4\t0\t-\n");
  CHECK_THROWS(Store::load(noheader, "x"));
  std::istringstream badtag("#sumset-forge v1 5^1:0,1\n5^1:0,1\t07\t3\t5\t4\t0\tNope\n");
  CHECK_THROWS(Store::load(badtag, "x"));

  Store other(Field::parse("7")->spec());
  CHECK_THROWS(other.merge(s));
}

TEST_CASE("report") {
  const auto f = Field::parse("5");
  Store empty(f->spec());
  CHECK(report({empty}) == "field_spec\tm\tcount\tmin_max_st\tmedian_max_st\thypothesis_ok\tcase_tags\n");

  Store one(f->spec());
  one.merge(exhaustive_min(f, exhaustive(3)));
  const auto r = one.records().front();
  Store single(f->spec());
  single.merge({r});
  CHECK(report({single}) == "field_spec\tm\tcount\tmin_max_st\tmedian_max_st\thypothesis_ok\tcase_tags\n" +
                                r.field_spec + "\t3\t1\t" + std::to_string(r.objective()) + "\t" +
                                std::to_string(r.objective()) + "\t" + (r.hypothesis_ok ? "1" : "0") + "\t" +
                                r.case_tag + ":1\n");

  // Two shards against the unsharded run.
  auto cfg = exhaustive(3, false);
  const std::uint64_t total = search_space_size(*f, 3, false);
  Store a(f->spec()), b(f->spec()), whole(f->spec());
  a.merge(exhaustive_min(f, cfg, 0, total / 2));
  b.merge(exhaustive_min(f, cfg, total / 2, total));
  whole.merge(exhaustive_min(f, cfg));
  Store merged = a;
  merged.merge(b);
  CHECK(merged.minimum() == whole.minimum());
  CHECK(report({a, b}) == report({merged}));
}

TEST_CASE("cardinalities do not depend on the modulus") {
  const auto f1 = Field::parse("2^4:1,1,0,0,1");
  const auto f2 = Field::parse("2^4:1,0,0,1,1");
  const auto a = exhaustive_min(f1, exhaustive(4));
  const auto b = exhaustive_min(f2, exhaustive(4));
  CHECK(a.front().objective() == b.front().objective());
  CHECK(a.size() == b.size());
}

}
