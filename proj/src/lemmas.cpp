#include "sumset_forge/lemmas.hpp"

#include <algorithm>

#include "sumset_forge/setalg.hpp"

namespace sumset_forge {

namespace {

void require_nonempty(const ESet& x, const char* what) {
  if (x.empty()) throw std::invalid_argument(std::string(what) + " must be nonempty");
}

void require_nonzero(Elem e) {
  if (e == 0) throw std::domain_error("dilators must be nonzero");
}

BigInt card(const ESet& s) { return BigInt(s.size()); }

}  // namespace

std::optional<Quadruple> first_representation(const ESet& a, Elem x) {
  const Field& f = a.field();
  const auto elems = a.elements();
  if (elems.size() < 2) return std::nullopt;
  if (x == 0) return Quadruple{elems[0], elems[0], elems[0], elems[1]};
  const Elem inv_x = f.inv(x);
  for (auto a1 : elems) {
    for (auto a2 : elems) {
      if (a1 == a2) continue;
      const Elem delta = f.mul(f.sub(a1, a2), inv_x);  // b1 − b2
      for (auto b1 : elems) {
        const Elem b2 = f.sub(b1, delta);
        if (a.contains(b2)) return Quadruple{a1, a2, b1, b2};
      }
    }
  }
  return std::nullopt;
}

IneqReport check_ruzsa_triangle(const ESet& x, const ESet& y, const ESet& z) {
  require_nonempty(x, "X");
  require_same_field(x, y);
  require_same_field(x, z);
  return IneqReport::make("ruzsa-triangle", card(diffset(x, z)),
                          card(diffset(y, x)) * card(sumset(x, z)), card(x));
}

IneqReport check_ruzsa_sum_form(const ESet& x, const ESet& y, const ESet& z) {
  require_nonempty(x, "X");
  require_same_field(x, y);
  require_same_field(x, z);
  return IneqReport::make("ruzsa-triangle-sum", card(sumset(y, z)),
                          card(diffset(y, x)) * card(sumset(x, z)), card(x));
}

IneqReport check_plunneke_corollary(const ESet& x, std::span<const ESet> bs) {
  require_nonempty(x, "X");
  if (bs.empty()) throw std::invalid_argument("need at least one summand");
  BigInt num = 1;
  for (const auto& b : bs) num *= card(sumset(x, b));
  const BigInt den = ipow(card(x), static_cast<unsigned>(bs.size() - 1));
  return IneqReport::make("plunnecke-k" + std::to_string(bs.size()), card(iterated_sumset(bs)),
                          num, den);
}

std::pair<IneqReport, IneqReport> check_cor_dilates(const ESet& a, Elem da, Elem db) {
  require_nonzero(da);
  require_nonzero(db);
  const ESet left = dilate(da, a);
  const ESet right = dilate(db, a);
  const std::size_t overlap = left.intersect_count(right);
  if (overlap == 0) throw VacuousBound("dilate intersection is empty");
  const BigInt bound = ipow(card(sumset(a, a)), 2);
  return {IneqReport::make("dilate-sum", card(sumset(left, right)), bound, overlap),
          IneqReport::make("dilate-diff", card(diffset(left, right)), bound, overlap)};
}

std::pair<IneqReport, IneqReport> check_cor_products(const ESet& a, Elem a1, Elem a2, Elem b) {
  require_nonzero(a1);
  require_nonzero(a2);
  require_nonzero(b);
  require_nonempty(a, "A");
  const Field& f = a.field();
  const ESet bA = dilate(b, a);
  const std::size_t o1 = dilate(a1, a).intersect_count(bA);
  const std::size_t o2 = dilate(a2, a).intersect_count(bA);
  if (o1 == 0 || o2 == 0) throw VacuousBound("dilate intersection is empty");
  const ESet left = dilate(f.mul(a1, a2), a);
  const ESet right = dilate(f.mul(b, b), a);
  const BigInt bound = ipow(card(sumset(a, a)), 4);
  const BigInt den = BigInt(o1) * o2 * a.size();
  return {IneqReport::make("product-dilate-sum", card(sumset(left, right)), bound, den),
          IneqReport::make("product-dilate-diff", card(diffset(left, right)), bound, den)};
}

ESet plunneke_witness_small(const ESet& x, std::span<const ESet> bs, std::size_t cap) {
  require_nonempty(x, "X");
  if (bs.empty()) throw std::invalid_argument("need at least one summand");
  if (x.size() > cap) throw std::length_error("X exceeds the exhaustive search cap");
  const auto members = x.elements();
  const std::size_t n = members.size();
  // Target: |X1 + ΣB| · |X|^k ≤ Π|X+B_i| · |X1|.
  BigInt growth = 1;
  for (const auto& b : bs) growth *= card(sumset(x, b));
  const BigInt scale = ipow(card(x), static_cast<unsigned>(bs.size()));
  const ESet total = iterated_sumset(bs);

  std::optional<std::uint64_t> best;
  std::size_t best_size = 0;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    const auto size = static_cast<std::size_t>(std::popcount(bits));
    if (best && size < best_size) continue;
    if (best && size == best_size && bits > *best) continue;
    std::vector<Elem> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if ((bits >> i) & 1) chosen.push_back(members[i]);
    }
    const ESet x1 = ESet::of(x.ctx(), chosen);
    if (card(sumset(x1, total)) * scale <= growth * size) {
      best = bits;
      best_size = size;
    }
  }
  if (!best) throw std::logic_error("no Plunnecke witness found; the inequality is a theorem");
  std::vector<Elem> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    if ((*best >> i) & 1) chosen.push_back(members[i]);
  }
  return ESet::of(x.ctx(), chosen);
}

Lemma11Witness lemma11_witness(const ESet& a) {
  const ESet ratios = ratio_of_differences(a);
  const std::uint64_t m = a.size();
  if (ratios.size() < m * m) {
    throw HypothesisError("ratio set has " + std::to_string(ratios.size()) + " < |A|^2 = " +
                          std::to_string(m * m) + " elements");
  }
  Lemma11Witness w;
  bool found = false;
  for (auto x : ratios.elements()) {
    const auto e = collision_energy(a, x);
    if (!found || e < w.energy) {
      w.x = x;
      w.energy = e;
      found = true;
    }
  }
  w.quadruple = *first_representation(a, w.x);
  w.sum_card = sumset(a, dilate(w.x, a)).size();
  return w;
}

AffineWitness lemma13_affine_witness(const ESet& a, const SubfieldDesc& g) {
  if (a.size() < 2) throw std::invalid_argument("affine witness needs at least two elements");
  const Field& f = a.field();
  const auto elems = a.elements();
  AffineWitness w;
  w.d = elems[0];
  w.c = f.sub(elems[1], elems[0]);
  const Elem c_inv = f.inv(w.c);
  for (auto x : elems) {
    if (!g.elems.contains(f.mul(f.sub(x, w.d), c_inv))) {
      w.counterexample = x;
      break;
    }
  }
  return w;
}

bool is_subfield(const ESet& s) {
  const Field& f = s.field();
  if (!s.contains(0) || !s.contains(1)) return false;
  // A finite subfield has order p^d with d | k.
  std::uint64_t order = 1;
  bool order_ok = false;
  for (unsigned d = 1; d <= f.k(); ++d) {
    order *= f.p();
    if (f.k() % d == 0 && order == s.size()) order_ok = true;
  }
  if (!order_ok) return false;
  if (s.size() == f.q()) return true;
  return sumset(s, s).subset_of(s) && productset(s, s).subset_of(s);
}

}  // namespace sumset_forge
