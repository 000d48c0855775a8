#pragma once

#include <utility>
#include <vector>

#include "sumset_forge/eset.hpp"

namespace sumset_forge {

/// The subfield of order p^d, d | k.
struct SubfieldDesc {
  unsigned d = 0;
  ESet elems;

  std::size_t size() const { return elems.size(); }
};

/// One subfield per divisor d of k, each the fixed points of x ↦ x^{p^d}; sorted by d.
std::vector<SubfieldDesc> subfields(const FieldPtr& ctx);

/// Representative of an affine image cG + d. c is the least index in cG^*,
/// d the least index in d + cG, so equal images have equal representatives.
struct AffineImage {
  Elem c = 1;
  Elem d = 0;

  auto operator<=>(const AffineImage&) const = default;
};

AffineImage canonical_image(const Field& f, const SubfieldDesc& g, Elem c, Elem d);

/// The set cG + d.
ESet affine_set(const FieldPtr& ctx, const SubfieldDesc& g, Elem c, Elem d);

/// Every distinct affine image of G, as canonical representatives ordered by (c, d).
/// There are ((q-1)/(|G|-1)) * (q/|G|) of them.
std::vector<AffineImage> affine_images(const FieldPtr& ctx, const SubfieldDesc& g);

}  // namespace sumset_forge
