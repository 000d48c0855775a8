#pragma once

// Step skeleton shared by certificate emission and verification. Each caller
// supplies its own set backend, so the cardinalities entering the steps are
// computed independently on the two sides.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "sumset_forge/garaev.hpp"

namespace sumset_forge::detail {

struct ChainInput {
  CaseTag tag = CaseTag::Degenerate;
  std::uint64_t m = 0, s = 0, t = 0;
  std::uint64_t m1 = 0, n = 0;
  unsigned levels = 0;
  Elem b0 = 0;
  std::vector<Elem> a1;
  std::optional<Elem> x;
  std::vector<Quadruple> reps;
  std::uint64_t ratio_card = 0;   // FieldCase / FieldHypothesisViolation: |R| = |G|
  std::uint64_t energy = 0;       // FieldCase
  std::optional<AffineWitness> affine;
};

struct ChainOutput {
  std::vector<IneqReport> steps;
  Rational constant{1};
  ExponentClaim claim;
};

inline BigInt big(std::uint64_t v) { return BigInt(v); }

/// Ops must provide: Set; of(elems); dilate(c, S); sum(S, T); neg(S);
/// card(S); inter(S, T); elems(S) (ascending); and field().
template <class Ops>
class ChainBuilder {
 public:
  using Set = typename Ops::Set;

  ChainBuilder(const Ops& ops, const Set& a, const ChainInput& in) : ops_(ops), a_(a), in_(in) {}

  ChainOutput build() {
    if (in_.tag == CaseTag::Degenerate) {
      out_.claim = {1, 0, 1};
      return std::move(out_);
    }
    const BigInt two_tl = 2 * big(in_.t) * in_.levels;
    push("pigeonhole-mass", ipow(big(in_.m), 3), two_tl * in_.m1 * in_.n);
    push("pigeonhole-level", ipow(big(in_.m), 2), two_tl * in_.n);
    switch (in_.tag) {
      case CaseTag::SmallA1: small_case(); break;
      case CaseTag::FieldHypothesisViolation: violation_case(); break;
      case CaseTag::FieldCase: field_case(); break;
      case CaseTag::SumCase: sum_case(); break;
      case CaseTag::ProductCase: product_case(); break;
      case CaseTag::Degenerate: break;
    }
    return std::move(out_);
  }

 private:
  const Field& f() const { return ops_.field(); }

  void push(std::string label, BigInt lhs, BigInt rhs_num, BigInt rhs_den = 1) {
    out_.steps.push_back(IneqReport::make(std::move(label), std::move(lhs), std::move(rhs_num),
                                          std::move(rhs_den)));
  }
  void push(std::string label, BigInt lhs, const Rational& rhs) {
    out_.steps.push_back(IneqReport::make(std::move(label), std::move(lhs), rhs));
  }

  BigInt two_l() const { return big(2 * std::uint64_t{in_.levels}); }

  void large_level_set() {
    push("large-level-set", ipow(big(in_.m), 47) + 1, ipow(big(in_.m1), 48));
  }

  void small_case() {
    push("small-level-set", ipow(big(in_.m1), 48), ipow(big(in_.m), 47));
    push("level-cap", big(in_.n), big(in_.m));
    out_.constant = Rational(ipow(two_l(), 48));
    out_.claim = {0, 48, 49};
    push("small-final", ipow(big(in_.m), 49), ipow(big(in_.t), 48) * out_.constant);
  }

  void violation_case() {
    large_level_set();
    push("coset-excess", big(in_.ratio_card) + 1, ipow(big(in_.m1), 2));
    const auto& w = *in_.affine;
    std::uint64_t inside = 0;
    const Elem c_inv = f().inv(w.c);
    for (auto e : in_.a1) {
      // Membership of (e − d)/c in the subfield: fixed by the Frobenius power |G|.
      const Elem y = f().mul(f().sub(e, w.d), c_inv);
      if (f().pow(y, in_.ratio_card) == y) ++inside;
    }
    push("affine-containment", big(in_.m1), big(inside));
    out_.claim = {1, 0, 1};
  }

  // |X + B_1 + … + B_4| bound with X = b0A and signed dilates B_i = ±e_i A.
  BigInt four_term(const std::array<std::pair<int, Elem>, 4>& terms, Set& total) {
    const Set x = ops_.dilate(in_.b0, a_);
    std::vector<Set> parts;
    for (const auto& [sign, e] : terms) {
      Set d = ops_.dilate(e, a_);
      parts.push_back(sign < 0 ? ops_.neg(d) : d);
      used_.insert(e);
    }
    total = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) total = ops_.sum(total, parts[i]);
    BigInt prod = 1;
    std::vector<BigInt> factors;
    for (const auto& part : parts) {
      factors.push_back(big(ops_.card(ops_.sum(x, part))));
      prod *= factors.back();
    }
    push("plunnecke-k4", big(ops_.card(total)), prod, ipow(big(in_.m), 3));
    const BigInt bound = ipow(big(in_.s), 2);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto overlap = ops_.inter(x, ops_.dilate(terms[i].second, a_));
      push(terms[i].first < 0 ? "dilate-diff" : "dilate-sum", factors[i], bound, big(overlap));
    }
    return ops_.card(total);
  }

  void level_members() {
    const Set x = ops_.dilate(in_.b0, a_);
    for (auto e : used_) {
      push("level-member", big(in_.n), big(ops_.inter(x, ops_.dilate(e, a_))));
    }
  }

  void field_case() {
    large_level_set();
    const auto& q = in_.reps.at(0);
    const BigInt m1 = big(in_.m1);
    const BigInt e = big(in_.energy);
    const Set a1 = ops_.of(in_.a1);
    const std::uint64_t a1_growth = ops_.card(ops_.sum(a1, ops_.dilate(*in_.x, a1)));
    push("ratio-set-size", ipow(m1, 2), big(in_.ratio_card));
    push("collision-energy", e, 2 * ipow(m1, 2));
    push("collision-cs", ipow(m1, 4), e * a1_growth);
    Set total;
    const std::array<std::pair<int, Elem>, 4> terms{{{1, q.a1}, {-1, q.a2}, {1, q.b1}, {-1, q.b2}}};
    // The expansion step precedes the four-term bound in the transcript.
    const std::size_t mark = out_.steps.size();
    const BigInt spread = four_term(terms, total);
    out_.steps.insert(out_.steps.begin() + static_cast<std::ptrdiff_t>(mark),
                      IneqReport::make("witness-expansion", big(a1_growth), spread));
    level_members();
    const BigInt m = big(in_.m), s = big(in_.s), t = big(in_.t);
    push("field-chain", ipow(m1, 4) * ipow(big(in_.n), 4) * ipow(m, 3), e * ipow(s, 8));
    const Rational kappa(e, ipow(m1, 2));
    push("field-intermediate", ipow(big(in_.n), 2) * ipow(m, 9),
         kappa * Rational(ipow(two_l(), 2) * ipow(t, 2) * ipow(s, 8)));
    out_.constant = kappa * Rational(ipow(two_l(), 4));
    out_.claim = {8, 4, 13};
    push("field-final", ipow(m, 13), out_.constant * Rational(ipow(s, 8) * ipow(t, 4)));
  }

  // m1^2 = |A1 + xA1| ≤ |A + xA|.
  std::uint64_t injective_growth() {
    const Set a1 = ops_.of(in_.a1);
    const auto inner = ops_.card(ops_.sum(a1, ops_.dilate(*in_.x, a1)));
    const auto outer = ops_.card(ops_.sum(a_, ops_.dilate(*in_.x, a_)));
    push("sum-dilate-injective", ipow(big(in_.m1), 2), big(inner));
    push("subset-growth", big(inner), big(outer));
    return outer;
  }

  void sum_case() {
    large_level_set();
    const auto& r = in_.reps.at(0);  // (a1, a2, b1, b2)
    const auto& u = in_.reps.at(1);  // (c1, c2, d1, d2)
    const auto outer = injective_growth();
    const Elem db = f().sub(r.b1, r.b2), dd = f().sub(u.b1, u.b2);
    const Elem dcoef = f().mul(db, dd);
    const Elem pcoef = f().mul(db, f().sub(u.a1, u.a2));
    const Elem qcoef = f().mul(f().sub(r.a1, r.a2), dd);
    const Set da = ops_.dilate(dcoef, a_), pa = ops_.dilate(pcoef, a_), qa = ops_.dilate(qcoef, a_);
    const Set triple = ops_.sum(ops_.sum(da, pa), qa);
    push("sum-expansion", big(outer), big(ops_.card(triple)));
    const auto dd_card = ops_.card(ops_.sum(da, da));
    const auto dp_card = ops_.card(ops_.sum(da, pa));
    const auto dq_card = ops_.card(ops_.sum(da, qa));
    push("plunnecke-k3", big(ops_.card(triple)), big(dd_card) * dp_card * dq_card,
         ipow(big(ops_.card(da)), 2));
    push("sumset-dilate", big(dd_card), big(in_.s));
    Set total;
    const std::size_t mark_cd = out_.steps.size();
    const BigInt spread_cd = four_term({{{1, u.b1}, {-1, u.b2}, {1, u.a1}, {-1, u.a2}}}, total);
    out_.steps.insert(out_.steps.begin() + static_cast<std::ptrdiff_t>(mark_cd),
                      IneqReport::make("expansion-cd", big(dp_card), spread_cd));
    const std::size_t mark_ab = out_.steps.size();
    const BigInt spread_ab = four_term({{{1, r.a1}, {-1, r.a2}, {1, r.b1}, {-1, r.b2}}}, total);
    out_.steps.insert(out_.steps.begin() + static_cast<std::ptrdiff_t>(mark_ab),
                      IneqReport::make("expansion-ab", big(dq_card), spread_ab));
    level_members();
    const BigInt m = big(in_.m), s = big(in_.s), t = big(in_.t), m1 = big(in_.m1);
    push("sum-chain", ipow(m1, 2) * ipow(big(in_.n), 8) * ipow(m, 8), ipow(s, 17));
    out_.constant = Rational(ipow(two_l(), 8));
    out_.claim = {17, 8, 26};
    push("sum-final", ipow(m, 26), out_.constant * Rational(ipow(s, 17) * ipow(t, 8)));
  }

  void product_case() {
    large_level_set();
    const auto& r1 = in_.reps.at(0);  // (a10, a11, a30, a31)
    const auto& r2 = in_.reps.at(1);  // (a20, a21, a40, a41)
    const auto outer = injective_growth();
    // x = (a10−a11)(a20−a21) / ((a30−a31)(a40−a41)).
    const std::array<Elem, 2> top_l{r1.a1, r1.a2}, top_r{r2.a1, r2.a2};
    const std::array<Elem, 2> bot_l{r1.b1, r1.b2}, bot_r{r2.b1, r2.b2};
    struct Term {
      int sign;
      Elem u, v;
    };
    std::vector<Term> terms;
    for (const auto& [lhs, rhs] : {std::pair{top_l, top_r}, std::pair{bot_l, bot_r}}) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) terms.push_back({(i + j) % 2 ? -1 : 1, lhs[i], rhs[j]});
      }
    }
    const Elem b0sq = f().mul(in_.b0, in_.b0);
    const Set x = ops_.dilate(b0sq, a_);
    std::vector<Set> parts;
    for (const auto& term : terms) {
      Set d = ops_.dilate(f().mul(term.u, term.v), a_);
      parts.push_back(term.sign < 0 ? ops_.neg(d) : d);
      used_.insert(term.u);
      used_.insert(term.v);
    }
    Set total = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) total = ops_.sum(total, parts[i]);
    push("product-expansion", big(outer), big(ops_.card(total)));
    BigInt prod = 1;
    std::vector<BigInt> factors;
    for (const auto& part : parts) {
      factors.push_back(big(ops_.card(ops_.sum(x, part))));
      prod *= factors.back();
    }
    push("plunnecke-k8", big(ops_.card(total)), prod, ipow(big(in_.m), 7));
    const BigInt bound = ipow(big(in_.s), 4);
    const Set b0a = ops_.dilate(in_.b0, a_);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto cu = ops_.inter(ops_.dilate(terms[i].u, a_), b0a);
      const auto cv = ops_.inter(ops_.dilate(terms[i].v, a_), b0a);
      push(terms[i].sign < 0 ? "product-dilate-diff" : "product-dilate-sum", factors[i], bound,
           big(cu) * cv * in_.m);
    }
    level_members();
    const BigInt m = big(in_.m), s = big(in_.s), t = big(in_.t), m1 = big(in_.m1);
    push("product-chain", ipow(m1, 2) * ipow(big(in_.n), 16) * ipow(m, 15), ipow(s, 32));
    out_.constant = Rational(ipow(two_l(), 16));
    out_.claim = {32, 16, 49};
    push("product-final", ipow(m, 49), out_.constant * Rational(ipow(s, 32) * ipow(t, 16)));
  }

  const Ops& ops_;
  const Set& a_;
  const ChainInput& in_;
  ChainOutput out_;
  std::set<Elem> used_;
};

}  // namespace sumset_forge::detail
