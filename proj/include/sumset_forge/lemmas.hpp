#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "sumset_forge/eset.hpp"
#include "sumset_forge/exact.hpp"
#include "sumset_forge/subfields.hpp"

namespace sumset_forge {

/// A lemma was invoked on an instance outside its hypothesis.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bound divides by an empty dilate intersection and says nothing.
class VacuousBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (a1, a2, b1, b2) representing (a1 − a2)/(b1 − b2), b1 ≠ b2.
struct Quadruple {
  Elem a1 = 0, a2 = 0, b1 = 0, b2 = 0;

  bool operator==(const Quadruple&) const = default;
};

/// Least quadruple over A in lexicographic index order with (a1−a2) = x(b1−b2), b1 ≠ b2.
std::optional<Quadruple> first_representation(const ESet& a, Elem x);

// |X−Z| ≤ |Y−X||X+Z|/|X|, evaluated as written. This form is false outside
// characteristic 2 (X = Z = {0,1,3}, Y = {0} in F_7 gives 7 > 6).
IneqReport check_ruzsa_triangle(const ESet& x, const ESet& y, const ESet& z);

// Ruzsa triangle inequality in the form the dilate corollary needs:
// |Y+Z| ≤ |Y−X||X+Z|/|X|.
IneqReport check_ruzsa_sum_form(const ESet& x, const ESet& y, const ESet& z);

// |B_1+…+B_k| ≤ Π|X+B_i| / |X|^{k−1}.
IneqReport check_plunneke_corollary(const ESet& x, std::span<const ESet> bs);

/// |aA ± bA| ≤ |A+A|^2 / |aA ∩ bA|, sum first.
std::pair<IneqReport, IneqReport> check_cor_dilates(const ESet& a, Elem da, Elem db);

/// |a1a2A ± b^2A| ≤ |A+A|^4 / (|a1A ∩ bA| |a2A ∩ bA| |A|), sum first.
std::pair<IneqReport, IneqReport> check_cor_products(const ESet& a, Elem a1, Elem a2, Elem b);

/// Exhaustive search for a nonempty X1 ⊆ X with
/// |X1 + B_1 + … + B_k| ≤ (Π α_i)|X1|, α_i = |X+B_i|/|X|.
/// Prefers the largest X1, then the least mask.
ESet plunneke_witness_small(const ESet& x, std::span<const ESet> bs, std::size_t cap = 16);

/// Witness for the large-ratio-set lemma: a ratio x with few collisions.
struct Lemma11Witness {
  Elem x = 0;
  Quadruple quadruple;
  std::uint64_t energy = 0;    // collision_energy(A, x)
  std::uint64_t sum_card = 0;  // |A + xA|
};

/// Requires |(A−A)/(A−A)| ≥ |A|^2; picks the ratio of least collision energy
/// (least index on ties).
Lemma11Witness lemma11_witness(const ESet& a);

struct AffineWitness {
  Elem c = 1;
  Elem d = 0;
  /// Set when some a ∈ A has (a − d)/c ∉ G.
  std::optional<Elem> counterexample;
};

/// c = b1 − b2, d = b2 for the two least members b2 < b1 of A, then checks A ⊆ cG + d.
AffineWitness lemma13_affine_witness(const ESet& a, const SubfieldDesc& g);

/// 0, 1 ∈ S and S closed under + and ×.
bool is_subfield(const ESet& s);

}  // namespace sumset_forge
