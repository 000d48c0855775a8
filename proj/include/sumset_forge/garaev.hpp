#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumset_forge/eset.hpp"
#include "sumset_forge/exact.hpp"
#include "sumset_forge/lemmas.hpp"

namespace sumset_forge {

enum class CaseTag { SmallA1, FieldHypothesisViolation, FieldCase, SumCase, ProductCase, Degenerate };

std::string_view to_string(CaseTag tag);
CaseTag parse_case_tag(std::string_view text);

/// Level set of the dilate-intersection counts |b0A ∩ aA| around a base point b0.
struct PigeonholeOutcome {
  Elem b0 = 0;
  std::uint64_t n = 0;  // power of two; every a ∈ A1 has n ≤ count(a) < 2n
  ESet a1;
  std::vector<std::pair<Elem, std::uint64_t>> counts;  // a ↦ |b0A ∩ aA|, a ascending
  unsigned levels = 0;                                 // ⌊log2 |A|⌋ + 1

  std::uint64_t count(Elem a) const;
};

/// ⌊log2 m⌋ + 1 for m ≥ 1.
unsigned dyadic_levels(std::uint64_t m);

/// Chooses (b0, N) maximizing |A1|·N over all base points and dyadic classes;
/// ties go to the least b0, then the largest N. Requires 0 ∉ A and |A| ≥ 2.
PigeonholeOutcome pigeonhole(const ESet& a);

struct HypothesisViolation {
  unsigned degree = 0;  // subfield degree d
  Elem c = 1;
  Elem d = 0;
  std::uint64_t t = 0;  // |A ∩ (cG + d)|

  bool operator==(const HypothesisViolation&) const = default;
};

inline const Rational kDefaultHypothesisExponent{47, 48};

/// Every affine subfield image cG+d with t = |A ∩ (cG+d)| ≥ |A|^alpha and t^2 > |G|,
/// ordered by (degree, c, d).
std::vector<HypothesisViolation> check_hypothesis(const ESet& a,
                                                  const Rational& alpha = kDefaultHypothesisExponent);

struct RatioClassification {
  CaseTag tag = CaseTag::FieldCase;  // FieldCase, SumCase or ProductCase
  ESet ratios;
  std::optional<unsigned> subfield_degree;  // FieldCase
  std::optional<Elem> x;                    // SumCase / ProductCase
  /// SumCase: x = r(q0) + r(q1). ProductCase: x = r(q0)·r(q1), where r(a1,a2,b1,b2) = (a1−a2)/(b1−b2).
  std::vector<Quadruple> representation;
};

/// Decides whether (A1−A1)/(A1−A1) is a field, and otherwise returns the least
/// x in (R+R)∖R, or failing that the least x in (R·R)∖R. Requires |A1| ≥ 2.
RatioClassification classify_ratio_set(const ESet& a1);

/// |A+A|^plus · |AA|^times ≥ |A|^e / C.
struct ExponentClaim {
  unsigned w_plus = 1;
  unsigned w_times = 0;
  unsigned e = 1;

  bool operator==(const ExponentClaim&) const = default;
};

/// Exact transcript of the sum-product argument on one concrete set.
struct CaseCertificate {
  CaseTag tag = CaseTag::Degenerate;
  bool zero_stripped = false;
  std::uint64_t m = 0;         // |A| after stripping 0
  std::uint64_t sum_card = 0;  // |A+A|
  std::uint64_t prod_card = 0; // |AA|
  std::optional<PigeonholeOutcome> pigeonhole;
  std::optional<Elem> x;
  std::vector<Quadruple> representation;
  std::optional<unsigned> subfield_degree;
  std::optional<AffineWitness> affine;     // FieldHypothesisViolation
  std::optional<std::uint64_t> energy;     // FieldCase: collision energy of x on A1
  std::vector<IneqReport> steps;
  Rational tracked_constant{1};
  ExponentClaim claim;

  bool claim_holds() const;
  std::string summary_line() const;
};

/// Runs the pigeonhole and case analysis on A (0 is stripped first) and records
/// every inequality used as an exactly evaluated step.
CaseCertificate run_main_theorem(const ESet& a);

/// Recomputes every quantity of the certificate from A by direct enumeration,
/// independently of the bitmask kernels, and checks each step and the claim.
bool verify_certificate(const CaseCertificate& cert, const ESet& a);

/// Structured text form: '#'-prefixed witness lines, one TSV step per line,
/// and a final "CASE ..." summary line.
std::string format_certificate(const CaseCertificate& cert, const ESet& a);
/// Inverse of format_certificate; the field context comes from the caller.
CaseCertificate parse_certificate(const FieldPtr& ctx, std::string_view text);

}  // namespace sumset_forge
