// Certificate verification by direct enumeration. Nothing here goes through
// the bitmask kernels in setalg; sets are sorted element vectors.

#include <algorithm>
#include <map>

#include "chain.hpp"
#include "sumset_forge/garaev.hpp"

namespace sumset_forge {

namespace {

using Elems = std::vector<Elem>;

struct NaiveOps {
  using Set = Elems;
  const Field* f;

  const Field& field() const { return *f; }

  static Set normalize(Set s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }
  Set of(const std::vector<Elem>& elems) const { return normalize(elems); }
  Set dilate(Elem c, const Set& s) const {
    Set out;
    for (auto x : s) out.push_back(f->mul(c, x));
    return normalize(std::move(out));
  }
  Set sum(const Set& a, const Set& b) const {
    std::vector<char> seen(f->q(), 0);
    for (auto x : a) {
      for (auto y : b) seen[f->add(x, y)] = 1;
    }
    Set out;
    for (Elem z = 0; z < f->q(); ++z) {
      if (seen[z]) out.push_back(z);
    }
    return out;
  }
  Set product(const Set& a, const Set& b) const {
    std::vector<char> seen(f->q(), 0);
    for (auto x : a) {
      for (auto y : b) seen[f->mul(x, y)] = 1;
    }
    Set out;
    for (Elem z = 0; z < f->q(); ++z) {
      if (seen[z]) out.push_back(z);
    }
    return out;
  }
  Set neg(const Set& s) const {
    Set out;
    for (auto x : s) out.push_back(f->neg(x));
    return normalize(std::move(out));
  }
  std::uint64_t card(const Set& s) const { return s.size(); }
  std::uint64_t inter(const Set& a, const Set& b) const {
    std::uint64_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++n;
        ++i;
        ++j;
      }
    }
    return n;
  }
};

bool contains(const Elems& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

Elems ratio_set(const NaiveOps& ops, const Elems& a) {
  const Field& f = ops.field();
  Elems diffs;
  for (auto u : a) {
    for (auto v : a) diffs.push_back(f.sub(u, v));
  }
  diffs = NaiveOps::normalize(std::move(diffs));
  Elems inv_nonzero;
  for (auto d : diffs) {
    if (d) inv_nonzero.push_back(f.inv(d));
  }
  return ops.product(diffs, NaiveOps::normalize(std::move(inv_nonzero)));
}

std::uint64_t quadruple_energy(const Field& f, const Elems& a, Elem x) {
  std::map<Elem, std::uint64_t> reps;
  for (auto u : a) {
    for (auto v : a) ++reps[f.sub(u, f.mul(x, v))];
  }
  std::uint64_t e = 0;
  for (const auto& [z, c] : reps) e += c * c;
  return e;
}

bool valid_quadruple(const Elems& a1, const Quadruple& q) {
  return contains(a1, q.a1) && contains(a1, q.a2) && contains(a1, q.b1) && contains(a1, q.b2) &&
         q.b1 != q.b2;
}

Elem quad_ratio(const Field& f, const Quadruple& q) {
  return f.div(f.sub(q.a1, q.a2), f.sub(q.b1, q.b2));
}

// R is a subfield iff |R| = p^d with d | k and every member is fixed by x ↦ x^{p^d}.
std::optional<unsigned> subfield_degree(const Field& f, const Elems& r) {
  std::uint64_t order = 1;
  for (unsigned d = 1; d <= f.k(); ++d) {
    order *= f.p();
    if (f.k() % d || order != r.size()) continue;
    for (auto x : r) {
      if (f.pow(x, order) != x) return std::nullopt;
    }
    return d;
  }
  return std::nullopt;
}

}  // namespace

bool verify_certificate(const CaseCertificate& cert, const ESet& input) {
  const Field& f = input.field();
  if (cert.pigeonhole && !cert.pigeonhole->a1.same_field(input)) {
    throw ContextMismatch("certificate and set live in different fields");
  }
  try {
    const NaiveOps ops{&f};
    if (cert.zero_stripped != input.contains(0)) return false;
    Elems a;
    for (Elem x = 1; x < f.q(); ++x) {
      if (input.contains(x)) a.push_back(x);
    }
    const std::uint64_t m = a.size();
    const std::uint64_t s = ops.card(ops.sum(a, a));
    const std::uint64_t t = ops.card(ops.product(a, a));
    if (cert.m != m || cert.sum_card != s || cert.prod_card != t) return false;

    detail::ChainInput in;
    in.m = m;
    in.s = s;
    in.t = t;
    in.tag = cert.tag;
    if (m < 2) {
      if (cert.tag != CaseTag::Degenerate) return false;
    } else {
      if (!cert.pigeonhole || cert.tag == CaseTag::Degenerate) return false;
      const auto& ph = *cert.pigeonhole;
      // Re-run the level-set selection from explicit intersections.
      unsigned levels = 0;
      while ((std::uint64_t{1} << levels) <= m) ++levels;
      std::vector<Elems> dil;
      for (auto b : a) dil.push_back(ops.dilate(b, a));
      std::uint64_t best_mass = 0;
      std::size_t best_b0 = 0;
      unsigned best_level = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<std::uint64_t> sizes(levels, 0);
        for (std::size_t j = 0; j < a.size(); ++j) {
          const auto c = ops.inter(dil[i], dil[j]);
          unsigned lvl = 0;
          while ((std::uint64_t{2} << lvl) <= c) ++lvl;
          ++sizes[lvl];
        }
        for (int lvl = static_cast<int>(levels) - 1; lvl >= 0; --lvl) {
          if ((sizes[lvl] << lvl) > best_mass) {
            best_mass = sizes[lvl] << lvl;
            best_b0 = i;
            best_level = static_cast<unsigned>(lvl);
          }
        }
      }
      Elems a1;
      for (std::size_t j = 0; j < a.size(); ++j) {
        const auto c = ops.inter(dil[best_b0], dil[j]);
        if (c >= (std::uint64_t{1} << best_level) && c < (std::uint64_t{2} << best_level)) {
          a1.push_back(a[j]);
        }
      }
      if (ph.b0 != a[best_b0] || ph.n != (std::uint64_t{1} << best_level) || ph.levels != levels ||
          ph.a1.elements() != a1) {
        return false;
      }
      const std::uint64_t m1 = a1.size();
      in.m1 = m1;
      in.n = ph.n;
      in.levels = levels;
      in.b0 = ph.b0;
      in.a1 = a1;

      const bool small = ipow(BigInt(m1), 48) <= ipow(BigInt(m), 47);
      if (small != (cert.tag == CaseTag::SmallA1)) return false;
      if (!small) {
        const Elems r = ratio_set(ops, a1);
        const auto degree = subfield_degree(f, r);
        const bool field_like =
            cert.tag == CaseTag::FieldCase || cert.tag == CaseTag::FieldHypothesisViolation;
        if (degree.has_value() != field_like) return false;
        if (field_like) {
          if (cert.subfield_degree != degree) return false;
          in.ratio_card = r.size();
          const bool violated = m1 * m1 > r.size();
          if (violated != (cert.tag == CaseTag::FieldHypothesisViolation)) return false;
          if (violated) {
            if (!cert.affine || cert.affine->c == 0) return false;
            in.affine = cert.affine;
          } else {
            if (!cert.x || cert.representation.size() != 1 || !cert.energy) return false;
            const auto& q = cert.representation[0];
            if (!contains(r, *cert.x) || !valid_quadruple(a1, q) || quad_ratio(f, q) != *cert.x) {
              return false;
            }
            const auto e = quadruple_energy(f, a1, *cert.x);
            if (e != *cert.energy) return false;
            for (auto y : r) {
              if (quadruple_energy(f, a1, y) < e) return false;
            }
            in.energy = e;
          }
        } else {
          if (!cert.x || cert.representation.size() != 2 || contains(r, *cert.x)) return false;
          const auto& q0 = cert.representation[0];
          const auto& q1 = cert.representation[1];
          if (!valid_quadruple(a1, q0) || !valid_quadruple(a1, q1)) return false;
          const Elem r0 = quad_ratio(f, q0), r1 = quad_ratio(f, q1);
          const Elem combined = cert.tag == CaseTag::SumCase ? f.add(r0, r1) : f.mul(r0, r1);
          if (combined != *cert.x) return false;
          if (cert.tag == CaseTag::ProductCase) {
            // The sum case must not have been available.
            for (auto u : r) {
              for (auto v : r) {
                if (!contains(r, f.add(u, v))) return false;
              }
            }
          }
        }
        in.x = cert.x;
        in.reps = cert.representation;
      }
    }

    auto out = detail::ChainBuilder<NaiveOps>(ops, a, in).build();
    if (out.steps.size() != cert.steps.size()) return false;
    for (std::size_t i = 0; i < out.steps.size(); ++i) {
      if (!(out.steps[i] == cert.steps[i]) || !out.steps[i].holds) return false;
    }
    if (out.constant != cert.tracked_constant || !(out.claim == cert.claim)) return false;
    return cert.claim_holds();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace sumset_forge
