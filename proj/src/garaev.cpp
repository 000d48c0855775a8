#include "sumset_forge/garaev.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "chain.hpp"
#include "sumset_forge/detail/count_table.hpp"
#include "sumset_forge/setalg.hpp"
#include "sumset_forge/subfields.hpp"

namespace sumset_forge {

namespace {

struct MaskOps {
  using Set = ESet;
  FieldPtr ctx;

  const Field& field() const { return *ctx; }
  Set of(const std::vector<Elem>& elems) const { return ESet::of(ctx, elems); }
  Set dilate(Elem c, const Set& s) const { return sumset_forge::dilate(c, s); }
  Set sum(const Set& a, const Set& b) const { return sumset(a, b); }
  Set neg(const Set& s) const { return negate(s); }
  std::uint64_t card(const Set& s) const { return s.size(); }
  std::uint64_t inter(const Set& a, const Set& b) const { return a.intersect_count(b); }
};

constexpr std::string_view kTagNames[] = {"SmallA1", "FieldHypothesisViolation", "FieldCase",
                                          "SumCase", "ProductCase", "Degenerate"};

}  // namespace

std::string_view to_string(CaseTag tag) { return kTagNames[static_cast<int>(tag)]; }

CaseTag parse_case_tag(std::string_view text) {
  for (int i = 0; i < 6; ++i) {
    if (kTagNames[i] == text) return static_cast<CaseTag>(i);
  }
  throw std::invalid_argument("unknown case tag '" + std::string(text) + "'");
}

std::uint64_t PigeonholeOutcome::count(Elem a) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), std::pair<Elem, std::uint64_t>{a, 0});
  if (it == counts.end() || it->first != a) throw std::out_of_range("element not in A");
  return it->second;
}

unsigned dyadic_levels(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("dyadic levels of an empty set");
  return static_cast<unsigned>(std::bit_width(m));
}

PigeonholeOutcome pigeonhole(const ESet& a) {
  if (a.contains(0)) throw std::domain_error("pigeonhole needs 0 outside the set");
  if (a.size() < 2) throw std::invalid_argument("pigeonhole needs at least two elements");
  const Field& f = a.field();
  const auto elems = a.elements();
  std::vector<Elem> inverses;
  inverses.reserve(elems.size());
  for (auto v : elems) inverses.push_back(f.inv(v));
  // |b0A ∩ aA| = #{(u, v) ∈ A^2 : u/v = a/b0}.
  detail::CountTable ratio_reps(f.q());
  for (auto u : elems) {
    for (auto vi : inverses) ratio_reps.bump(f.mul(u, vi));
  }
  const unsigned levels = dyadic_levels(elems.size());

  std::size_t best_b0 = 0;
  unsigned best_level = 0;
  std::uint64_t best_mass = 0;
  std::vector<std::uint64_t> class_size(levels);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::fill(class_size.begin(), class_size.end(), 0);
    for (auto x : elems) {
      const auto c = ratio_reps.get(f.mul(x, inverses[i]));
      ++class_size[std::bit_width(c) - 1];
    }
    for (int j = static_cast<int>(levels) - 1; j >= 0; --j) {
      const std::uint64_t mass = class_size[j] << j;
      if (mass > best_mass) {
        best_mass = mass;
        best_b0 = i;
        best_level = static_cast<unsigned>(j);
      }
    }
  }

  PigeonholeOutcome out;
  out.b0 = elems[best_b0];
  out.n = std::uint64_t{1} << best_level;
  out.levels = levels;
  std::vector<Elem> level_set;
  for (auto x : elems) {
    const auto c = ratio_reps.get(f.mul(x, inverses[best_b0]));
    out.counts.emplace_back(x, c);
    if (static_cast<unsigned>(std::bit_width(c) - 1) == best_level) level_set.push_back(x);
  }
  out.a1 = ESet::of(a.ctx(), level_set);
  return out;
}

std::vector<HypothesisViolation> check_hypothesis(const ESet& a, const Rational& alpha) {
  const FieldPtr& ctx = a.ctx();
  const Field& f = *ctx;
  const auto elems = a.elements();
  const std::uint64_t m = elems.size();
  std::vector<HypothesisViolation> out;
  for (const auto& g : subfields(ctx)) {
    // t ≤ 1 never exceeds |G|^{1/2}, so only images through two members matter.
    std::set<AffineImage> images;
    if (g.size() == f.q()) {
      if (m >= 2) images.insert({1, 0});
    } else {
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
          images.insert(canonical_image(f, g, f.sub(elems[j], elems[i]), elems[i]));
        }
      }
    }
    for (const auto& img : images) {
      const Elem c_inv = f.inv(img.c);
      std::uint64_t t = 0;
      for (auto x : elems) {
        if (g.elems.contains(f.mul(f.sub(x, img.d), c_inv))) ++t;
      }
      if (power_at_least(t, m, alpha) && t * t > g.size()) {
        out.push_back({g.d, img.c, img.d, t});
      }
    }
  }
  return out;
}

RatioClassification classify_ratio_set(const ESet& a1) {
  if (a1.size() < 2) throw std::invalid_argument("classification needs at least two elements");
  const Field& f = a1.field();
  RatioClassification out;
  out.ratios = ratio_of_differences(a1);
  const ESet& r = out.ratios;
  if (is_subfield(r)) {
    out.tag = CaseTag::FieldCase;
    unsigned d = 0;
    for (std::uint64_t order = 1; order < r.size(); order *= f.p()) ++d;
    out.subfield_degree = d;
    return out;
  }
  const ESet sums = sumset(r, r).minus(r);
  if (!sums.empty()) {
    out.tag = CaseTag::SumCase;
    out.x = sums.min();
    for (auto r1 : r.elements()) {
      const Elem r2 = f.sub(*out.x, r1);
      if (r.contains(r2)) {
        out.representation = {*first_representation(a1, r1), *first_representation(a1, r2)};
        break;
      }
    }
    return out;
  }
  const ESet products = productset(r, r).minus(r);
  if (products.empty()) {
    throw std::logic_error("ratio set closed under + and x but not a subfield");
  }
  out.tag = CaseTag::ProductCase;
  out.x = products.min();
  for (auto r1 : r.elements()) {
    if (r1 == 0) continue;
    const Elem r2 = f.div(*out.x, r1);
    if (r.contains(r2)) {
      out.representation = {*first_representation(a1, r1), *first_representation(a1, r2)};
      break;
    }
  }
  return out;
}

bool CaseCertificate::claim_holds() const {
  const BigInt lhs_num =
      ipow(BigInt(sum_card), claim.w_plus) * ipow(BigInt(prod_card), claim.w_times);
  // lhs · C ≥ m^e.
  return Rational(lhs_num) * tracked_constant >= Rational(ipow(BigInt(m), claim.e));
}

std::string CaseCertificate::summary_line() const {
  std::string c = numerator(tracked_constant).str();
  if (denominator(tracked_constant) != 1) c += "/" + denominator(tracked_constant).str();
  return "CASE " + std::string(to_string(tag)) + " BOUND |A+A|^" + std::to_string(claim.w_plus) +
         "*|AA|^" + std::to_string(claim.w_times) + " >= |A|^" + std::to_string(claim.e) + " / " + c;
}

CaseCertificate run_main_theorem(const ESet& input) {
  CaseCertificate cert;
  cert.zero_stripped = input.contains(0);
  const ESet a = input.without(0);
  cert.m = a.size();
  cert.sum_card = sumset(a, a).size();
  cert.prod_card = productset(a, a).size();

  detail::ChainInput in;
  in.m = cert.m;
  in.s = cert.sum_card;
  in.t = cert.prod_card;

  if (cert.m >= 2) {
    auto ph = pigeonhole(a);
    const std::uint64_t m1 = ph.a1.size();
    in.m1 = m1;
    in.n = ph.n;
    in.levels = ph.levels;
    in.b0 = ph.b0;
    in.a1 = ph.a1.elements();
    if (ipow(BigInt(m1), 48) <= ipow(BigInt(cert.m), 47)) {
      cert.tag = CaseTag::SmallA1;
    } else {
      auto cls = classify_ratio_set(ph.a1);
      cert.tag = cls.tag;
      if (cls.tag == CaseTag::FieldCase) {
        cert.subfield_degree = cls.subfield_degree;
        in.ratio_card = cls.ratios.size();
        if (m1 * m1 > cls.ratios.size()) {
          cert.tag = CaseTag::FieldHypothesisViolation;
          const auto fields = subfields(a.ctx());
          const auto& g = *std::find_if(fields.begin(), fields.end(), [&](const SubfieldDesc& s) {
            return s.d == *cls.subfield_degree;
          });
          cert.affine = lemma13_affine_witness(ph.a1, g);
          in.affine = cert.affine;
        } else {
          const auto w = lemma11_witness(ph.a1);
          cert.x = w.x;
          cert.representation = {w.quadruple};
          cert.energy = w.energy;
          in.energy = w.energy;
        }
      } else {
        cert.x = cls.x;
        cert.representation = cls.representation;
      }
      in.x = cert.x;
      in.reps = cert.representation;
    }
    cert.pigeonhole = std::move(ph);
  } else {
    cert.tag = CaseTag::Degenerate;
  }
  in.tag = cert.tag;

  MaskOps ops{a.ctx()};
  auto out = detail::ChainBuilder<MaskOps>(ops, a, in).build();
  cert.steps = std::move(out.steps);
  cert.tracked_constant = out.constant;
  cert.claim = out.claim;
  return cert;
}

// Text form.

namespace {

std::string quad_text(const Quadruple& q) {
  return std::to_string(q.a1) + "," + std::to_string(q.a2) + "," + std::to_string(q.b1) + "," +
         std::to_string(q.b2);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t to_u64(std::string_view s) {
  std::size_t used = 0;
  const std::string str(s);
  const auto v = std::stoull(str, &used);
  if (used != str.size()) throw std::invalid_argument("malformed integer '" + str + "'");
  return v;
}

Quadruple parse_quad(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw std::invalid_argument("malformed quadruple");
  return {static_cast<Elem>(to_u64(parts[0])), static_cast<Elem>(to_u64(parts[1])),
          static_cast<Elem>(to_u64(parts[2])), static_cast<Elem>(to_u64(parts[3]))};
}

}  // namespace

std::string format_certificate(const CaseCertificate& cert, const ESet& a) {
  std::string out;
  out += "#field\t" + a.field().spec() + "\n";
  out += "#set\t" + a.literal() + "\n";
  out += "#zero-stripped\t" + std::string(cert.zero_stripped ? "1" : "0") + "\n";
  out += "#cards\t" + std::to_string(cert.m) + "\t" + std::to_string(cert.sum_card) + "\t" +
         std::to_string(cert.prod_card) + "\n";
  if (cert.pigeonhole) {
    const auto& ph = *cert.pigeonhole;
    out += "#pigeonhole\t" + std::to_string(ph.b0) + "\t" + std::to_string(ph.n) + "\t" +
           std::to_string(ph.levels) + "\t" + ph.a1.literal() + "\n";
  }
  if (cert.subfield_degree) out += "#subfield\t" + std::to_string(*cert.subfield_degree) + "\n";
  if (cert.affine) {
    out += "#affine\t" + std::to_string(cert.affine->c) + "\t" + std::to_string(cert.affine->d) + "\n";
  }
  if (cert.x) {
    out += "#x\t" + std::to_string(*cert.x);
    for (const auto& q : cert.representation) out += "\t" + quad_text(q);
    out += "\n";
  }
  if (cert.energy) out += "#energy\t" + std::to_string(*cert.energy) + "\n";
  for (const auto& step : cert.steps) out += step.tsv() + "\n";
  out += cert.summary_line() + "\n";
  return out;
}

CaseCertificate parse_certificate(const FieldPtr& ctx, std::string_view text) {
  CaseCertificate cert;
  bool saw_summary = false;
  for (auto line : split(text, '\n')) {
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (line.front() == '#') {
      const auto key = cols[0];
      if (key == "#zero-stripped") {
        cert.zero_stripped = cols.at(1) == "1";
      } else if (key == "#cards") {
        cert.m = to_u64(cols.at(1));
        cert.sum_card = to_u64(cols.at(2));
        cert.prod_card = to_u64(cols.at(3));
      } else if (key == "#pigeonhole") {
        PigeonholeOutcome ph;
        ph.b0 = static_cast<Elem>(to_u64(cols.at(1)));
        ph.n = to_u64(cols.at(2));
        ph.levels = static_cast<unsigned>(to_u64(cols.at(3)));
        ph.a1 = ESet::parse(ctx, cols.at(4));
        cert.pigeonhole = std::move(ph);
      } else if (key == "#subfield") {
        cert.subfield_degree = static_cast<unsigned>(to_u64(cols.at(1)));
      } else if (key == "#affine") {
        cert.affine = AffineWitness{static_cast<Elem>(to_u64(cols.at(1))),
                                    static_cast<Elem>(to_u64(cols.at(2))), std::nullopt};
      } else if (key == "#x") {
        cert.x = static_cast<Elem>(to_u64(cols.at(1)));
        for (std::size_t i = 2; i < cols.size(); ++i) cert.representation.push_back(parse_quad(cols[i]));
      } else if (key == "#energy") {
        cert.energy = to_u64(cols.at(1));
      } else if (key == "#field") {
        if (Field::parse(cols.at(1))->spec() != ctx->spec()) {
          throw ContextMismatch("certificate was produced in field " + std::string(cols.at(1)));
        }
      }
      continue;
    }
    if (line.substr(0, 5) == "CASE ") {
      // CASE <tag> BOUND |A+A|^w1*|AA|^w2 >= |A|^e / C
      const auto words = split(line, ' ');
      if (words.size() != 8 || words[2] != "BOUND" || words[4] != ">=" || words[6] != "/") throw std::invalid_argument("malformed summary line");
      cert.tag = parse_case_tag(words[1]);
      const auto bound = split(words[3], '*');
      cert.claim.w_plus = static_cast<unsigned>(to_u64(bound.at(0).substr(std::string_view("|A+A|^").size())));
      cert.claim.w_times = static_cast<unsigned>(to_u64(bound.at(1).substr(std::string_view("|AA|^").size())));
      cert.claim.e = static_cast<unsigned>(to_u64(words[5].substr(std::string_view("|A|^").size())));
      const auto frac = split(words[7], '/');
      cert.tracked_constant = frac.size() == 2 ? Rational(BigInt(std::string(frac[0])), BigInt(std::string(frac[1])))
                                               : Rational(BigInt(std::string(frac[0])));
      saw_summary = true;
      continue;
    }
    if (cols.size() != 5) throw std::invalid_argument("malformed step line '" + std::string(line) + "'");
    IneqReport r;
    r.label = std::string(cols[0]);
    r.lhs = BigInt(std::string(cols[1]));
    r.rhs_num = BigInt(std::string(cols[2]));
    r.rhs_den = BigInt(std::string(cols[3]));
    r.holds = cols[4] == "1";
    cert.steps.push_back(std::move(r));
  }
  if (!saw_summary) throw std::invalid_argument("certificate has no summary line");
  if (cert.pigeonhole) {
    // Counts are not serialized; they are recomputed on verification.
    cert.pigeonhole->counts.clear();
  }
  return cert;
}

}  // namespace sumset_forge
