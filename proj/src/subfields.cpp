#include "sumset_forge/subfields.hpp"

#include <algorithm>

namespace sumset_forge {

std::vector<SubfieldDesc> subfields(const FieldPtr& ctx) {
  const Field& f = *ctx;
  std::vector<SubfieldDesc> out;
  for (unsigned d = 1; d <= f.k(); ++d) {
    if (f.k() % d) continue;
    std::vector<Elem> fixed;
    if (d == f.k()) {
      out.push_back({d, ESet::full(ctx)});
      continue;
    }
    std::uint64_t e = 1;
    for (unsigned i = 0; i < d; ++i) e *= f.p();
    for (Elem x = 0; x < f.q(); ++x) {
      if (f.pow(x, e) == x) fixed.push_back(x);
    }
    out.push_back({d, ESet::of(ctx, fixed)});
  }
  return out;
}

AffineImage canonical_image(const Field& f, const SubfieldDesc& g, Elem c, Elem d) {
  if (c == 0) throw std::invalid_argument("affine image needs c != 0");
  if (g.size() == f.q()) return {1, 0};
  const auto members = g.elems.elements();
  Elem best_c = c;
  for (auto x : members) {
    if (x != 0) best_c = std::min(best_c, f.mul(c, x));
  }
  Elem best_d = d;
  for (auto x : members) best_d = std::min(best_d, f.add(d, f.mul(best_c, x)));
  return {best_c, best_d};
}

ESet affine_set(const FieldPtr& ctx, const SubfieldDesc& g, Elem c, Elem d) {
  std::vector<Elem> out;
  for (auto x : g.elems.elements()) out.push_back(ctx->add(ctx->mul(c, x), d));
  return ESet::of(ctx, out);
}

std::vector<AffineImage> affine_images(const FieldPtr& ctx, const SubfieldDesc& g) {
  const Field& f = *ctx;
  if (g.size() == f.q()) return {{1, 0}};
  const auto members = g.elems.elements();
  std::vector<Elem> nonzero;
  for (auto x : members) {
    if (x) nonzero.push_back(x);
  }
  std::vector<AffineImage> out;
  std::vector<bool> c_seen(f.q(), false);
  std::vector<bool> d_seen(f.q());
  for (Elem c = 1; c < f.q(); ++c) {
    if (c_seen[c]) continue;
    // Scanning c upward means c is the least index of its class c·G^*.
    for (auto x : nonzero) c_seen[f.mul(c, x)] = true;
    std::vector<Elem> line;
    for (auto x : members) line.push_back(f.mul(c, x));
    std::fill(d_seen.begin(), d_seen.end(), false);
    for (Elem d = 0; d < f.q(); ++d) {
      if (d_seen[d]) continue;
      for (auto y : line) d_seen[f.add(d, y)] = true;
      out.push_back({c, d});
    }
  }
  return out;
}

}  // namespace sumset_forge
