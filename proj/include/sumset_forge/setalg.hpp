#pragma once

#include <cstdint>

#include "sumset_forge/eset.hpp"

namespace sumset_forge {

// All operators return the empty set when an input is empty.

ESet sumset(const ESet& a, const ESet& b);
ESet diffset(const ESet& a, const ESet& b);
ESet productset(const ESet& a, const ESet& b);
/// {a/b : a ∈ A, b ∈ B, b ≠ 0}. Throws std::domain_error if B is nonempty but ⊆ {0}.
ESet quotientset(const ESet& a, const ESet& b);

ESet dilate(Elem c, const ESet& a);
ESet translate(const ESet& a, Elem d);
ESet negate(const ESet& a);
/// {1/a : a ∈ A, a ≠ 0}.
ESet reciprocals(const ESet& a);

/// B_1 + ... + B_k.
ESet iterated_sumset(std::span<const ESet> sets);

/// (A−A)/(A−A) with zero denominators excluded. Requires |A| ≥ 2.
ESet ratio_of_differences(const ESet& a);

/// |aA ∩ bA| for nonzero a, b.
std::uint64_t dilate_intersection_count(Elem a, Elem b, const ESet& set);

/// #{(a1,a2,b1,b2) ∈ A^4 : a1 + x·b2 = a2 + x·b1}.
std::uint64_t collision_energy(const ESet& a, Elem x);

/// Σ_{a,b∈A} |aA ∩ bA| = Σ_z r_{AA}(z)^2. Requires 0 ∉ A.
std::uint64_t mult_energy(const ESet& a);

/// Pairwise reference kernels, always element-by-element. Used to cross-check
/// the word-level kernels.
namespace reference {
ESet sumset(const ESet& a, const ESet& b);
ESet productset(const ESet& a, const ESet& b);
}  // namespace reference

}  // namespace sumset_forge
