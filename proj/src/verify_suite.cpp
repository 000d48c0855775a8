#include "sumset_forge/verify_suite.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "sumset_forge/garaev.hpp"
#include "sumset_forge/lemmas.hpp"
#include "sumset_forge/rng.hpp"
#include "sumset_forge/setalg.hpp"
#include "sumset_forge/subfields.hpp"

namespace sumset_forge {

namespace {

constexpr std::string_view kSuiteNames[] = {"ruzsa",        "plunnecke",  "cor-dilates",
                                            "cor-products", "lemma12",    "plunnecke-witness",
                                            "pigeonhole",   "energy",     "affine-witness"};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

BigInt big(std::uint64_t v) { return BigInt(v); }

std::uint32_t cap(const Field& f, std::uint32_t limit, bool nonzero) {
  return std::min<std::uint32_t>(limit, f.q() - (nonzero ? 1 : 0));
}

ESet sized_set(Rng& rng, const FieldPtr& ctx, std::uint32_t lo, std::uint32_t hi, bool nonzero) {
  const auto m = static_cast<std::uint32_t>(rng.between(lo, std::max(lo, hi)));
  return rng.random_set(ctx, m, nonzero);
}

using Reports = std::vector<IneqReport>;

void ruzsa(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const auto hi = cap(*ctx, 12, false);
  const ESet x = sized_set(rng, ctx, 1, hi, false);
  const ESet y = sized_set(rng, ctx, 1, hi, false);
  const ESet z = sized_set(rng, ctx, 1, hi, false);
  out.push_back(check_ruzsa_triangle(x, y, z));
  out.push_back(check_ruzsa_sum_form(x, y, z));
}

void plunnecke(Rng& rng, const FieldPtr& ctx, std::uint64_t index, Reports& out) {
  const std::size_t k = 1 + index % 4;
  const ESet x = sized_set(rng, ctx, 1, cap(*ctx, 8, false), false);
  std::vector<ESet> bs;
  for (std::size_t i = 0; i < k; ++i) bs.push_back(sized_set(rng, ctx, 1, cap(*ctx, 6, false), false));
  out.push_back(check_plunneke_corollary(x, bs));
}

void cor_dilates(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const ESet a = sized_set(rng, ctx, 1, cap(*ctx, 12, true), true);
  const auto elems = a.elements();
  const Elem da = elems[rng.below(elems.size())];
  const Elem db = elems[rng.below(elems.size())];
  auto [plus, minus] = check_cor_dilates(a, da, db);
  out.push_back(std::move(plus));
  out.push_back(std::move(minus));
}

void cor_products(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const ESet a = sized_set(rng, ctx, 1, cap(*ctx, 12, true), true);
  const auto elems = a.elements();
  const Elem a1 = elems[rng.below(elems.size())];
  const Elem a2 = elems[rng.below(elems.size())];
  const Elem b = elems[rng.below(elems.size())];
  auto [plus, minus] = check_cor_products(a, a1, a2, b);
  out.push_back(std::move(plus));
  out.push_back(std::move(minus));
}

// |A + xA| = |A|^2 for every x outside the ratio set.
void lemma12(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const ESet a = sized_set(rng, ctx, 2, cap(*ctx, 12, false), false);
  const ESet r = ratio_of_differences(a);
  const std::uint64_t square = a.size() * a.size();
  std::uint64_t lo = square, hi = square;
  for (Elem x = 0; x < ctx->q(); ++x) {
    if (r.contains(x)) continue;
    const auto growth = sumset(a, dilate(x, a)).size();
    lo = std::min<std::uint64_t>(lo, growth);
    hi = std::max<std::uint64_t>(hi, growth);
  }
  out.push_back(IneqReport::make("sum-dilate-injective", big(square), big(lo)));
  out.push_back(IneqReport::make("sum-dilate-bounded", big(hi), big(square)));
}

void plunnecke_witness(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const ESet x = sized_set(rng, ctx, 1, cap(*ctx, 10, false), false);
  const std::size_t k = 1 + rng.below(3);
  std::vector<ESet> bs;
  for (std::size_t i = 0; i < k; ++i) bs.push_back(sized_set(rng, ctx, 1, cap(*ctx, 5, false), false));
  const ESet x1 = plunneke_witness_small(x, bs);
  BigInt growth = 1;
  for (const auto& b : bs) growth *= sumset(x, b).size();
  const ESet total = iterated_sumset(bs);
  out.push_back(IneqReport::make("plunnecke-witness",
                                 big(sumset(x1, total).size()) * ipow(big(x.size()), static_cast<unsigned>(k)),
                                 growth * x1.size()));
  out.push_back(IneqReport::make("plunnecke-witness-subset", big(x1.size()), big(x1.intersect_count(x))));
}

void pigeonhole_check(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const ESet a = sized_set(rng, ctx, 2, cap(*ctx, 40, true), true);
  const auto ph = pigeonhole(a);
  const std::uint64_t m = a.size();
  const std::uint64_t t = productset(a, a).size();
  const BigInt two_tl = 2 * big(t) * ph.levels;
  out.push_back(IneqReport::make("pigeonhole-mass", ipow(big(m), 3), two_tl * ph.a1.size() * ph.n));
  out.push_back(IneqReport::make("pigeonhole-level", ipow(big(m), 2), two_tl * ph.n));
  std::uint64_t outside_band = 0;
  for (auto x : ph.a1.elements()) {
    const auto c = dilate_intersection_count(ph.b0, x, a);
    if (c < ph.n || c >= 2 * ph.n) ++outside_band;
  }
  out.push_back(IneqReport::make("level-band", big(outside_band), big(0)));
}

void energy(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const ESet a = sized_set(rng, ctx, 1, cap(*ctx, 16, true), true);
  const Field& f = *ctx;
  const auto elems = a.elements();
  const std::uint64_t e = mult_energy(a);
  std::uint64_t by_dilates = 0;
  for (auto x : elems) {
    for (auto y : elems) by_dilates += dilate_intersection_count(x, y, a);
  }
  out.push_back(IneqReport::make("energy-identity", big(e), big(by_dilates)));
  out.push_back(IneqReport::make("energy-identity-converse", big(by_dilates), big(e)));
  if (elems.size() <= 8) {
    std::uint64_t quads = 0;
    for (auto a1 : elems) {
      for (auto a2 : elems) {
        for (auto b1 : elems) {
          for (auto b2 : elems) quads += f.mul(a1, a2) == f.mul(b1, b2) ? 1 : 0;
        }
      }
    }
    out.push_back(IneqReport::make("energy-quadruples", big(quads), big(e)));
    out.push_back(IneqReport::make("energy-quadruples-converse", big(e), big(quads)));
  }
  const std::uint64_t t = productset(a, a).size();
  out.push_back(IneqReport::make("energy-lower", ipow(big(a.size()), 4), big(e) * t));
}

void affine_witness(Rng& rng, const FieldPtr& ctx, Reports& out) {
  const auto fields = subfields(ctx);
  std::vector<const SubfieldDesc*> proper;
  for (const auto& g : fields) {
    if (g.d < ctx->k()) proper.push_back(&g);
  }
  const SubfieldDesc& g = proper.empty() ? fields.back() : *proper[rng.below(proper.size())];
  const Field& f = *ctx;
  const Elem c = rng.nonzero(f);
  const Elem d = static_cast<Elem>(rng.below(f.q()));
  const auto gelems = g.elems.elements();
  const auto size = static_cast<std::uint32_t>(rng.between(2, gelems.size()));
  std::vector<Elem> members;
  for (auto i : rng.subset(static_cast<std::uint32_t>(gelems.size()), size)) {
    members.push_back(f.add(f.mul(c, gelems[i]), d));
  }
  const ESet a = ESet::of(ctx, members);
  const ESet r = ratio_of_differences(a);
  out.push_back(IneqReport::make("ratio-in-subfield", big(r.size()), big(r.intersect_count(g.elems))));
  const auto w = lemma13_affine_witness(a, g);
  out.push_back(IneqReport::make("affine-containment", big(a.size()),
                                 big(a.intersect_count(affine_set(ctx, g, w.c, w.d)))));
  // Moving one member off the image must be caught once two others pin it down.
  if (a.size() >= 3 && g.size() < f.q()) {
    const ESet coset = affine_set(ctx, g, c, d);
    Elem outside = static_cast<Elem>(rng.below(f.q()));
    while (coset.contains(outside)) outside = (outside + 1) % f.q();
    const Elem moved = members[rng.below(members.size())];
    const ESet planted = a.without(moved).with(outside);
    const auto pw = lemma13_affine_witness(planted, g);
    out.push_back(IneqReport::make("planted-detected", big(1), big(pw.counterexample ? 1 : 0)));
  }
}

void run_one(Suite suite, const FieldPtr& ctx, std::uint64_t seed, std::uint64_t index, Reports& out) {
  const std::uint64_t stream = fnv1a(ctx->spec()) ^ (static_cast<std::uint64_t>(suite) * 0x9e3779b97f4a7c15ULL);
  Rng rng(stream_seed(seed, stream, index));
  switch (suite) {
    case Suite::Ruzsa: ruzsa(rng, ctx, out); break;
    case Suite::Plunnecke: plunnecke(rng, ctx, index, out); break;
    case Suite::CorDilates: cor_dilates(rng, ctx, out); break;
    case Suite::CorProducts: cor_products(rng, ctx, out); break;
    case Suite::Lemma12: lemma12(rng, ctx, out); break;
    case Suite::PlunneckeWitness: plunnecke_witness(rng, ctx, out); break;
    case Suite::Pigeonhole: pigeonhole_check(rng, ctx, out); break;
    case Suite::Energy: energy(rng, ctx, out); break;
    case Suite::AffineWitness: affine_witness(rng, ctx, out); break;
  }
}

std::string describe(Suite suite, const FieldPtr& ctx, std::uint64_t seed, std::uint64_t index) {
  return "verify --suite " + std::string(to_string(suite)) + " --field " + ctx->spec() + " --seed " +
         std::to_string(seed) + " --index " + std::to_string(index);
}

}  // namespace

std::string_view to_string(Suite suite) { return kSuiteNames[static_cast<int>(suite)]; }

std::vector<Suite> parse_suites(std::string_view text) {
  std::vector<Suite> out;
  if (text == "all") {
    for (int i = 0; i < 9; ++i) out.push_back(static_cast<Suite>(i));
    return out;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto name = text.substr(0, comma);
    const auto* it = std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name);
    if (it == std::end(kSuiteNames)) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
    out.push_back(static_cast<Suite>(it - std::begin(kSuiteNames)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("no suite selected");
  return out;
}

SuiteRun run_instance(Suite suite, const FieldPtr& ctx, std::uint64_t seed, std::uint64_t index) {
  SuiteRun run;
  run.instances = 1;
  run_one(suite, ctx, seed, index, run.reports);
  for (const auto& r : run.reports) {
    if (!r.holds) {
      run.failures.push_back(describe(suite, ctx, seed, index));
      break;
    }
  }
  return run;
}

SuiteRun run_suite(Suite suite, const FieldPtr& ctx, std::uint64_t trials, std::uint64_t seed,
                   unsigned jobs) {
  jobs = std::max(1u, jobs);
  std::vector<SuiteRun> parts(trials);
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < trials; i += jobs) parts[i] = run_instance(suite, ctx, seed, i);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  SuiteRun run;
  for (auto& p : parts) {
    run.instances += p.instances;
    for (auto& r : p.reports) run.reports.push_back(std::move(r));
    for (auto& f : p.failures) run.failures.push_back(std::move(f));
  }
  return run;
}

}  // namespace sumset_forge
