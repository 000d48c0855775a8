#include "sumset_forge/setalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "sumset_forge/detail/count_table.hpp"

namespace sumset_forge {

namespace {

using Word = ESet::Word;

void set_bit(std::vector<Word>& w, std::uint32_t i) { w[i >> 6] |= Word{1} << (i & 63); }

// Permutes bits inside a word by i ↦ i XOR s, s < 64.
Word xor_permute(Word x, unsigned s) {
  static constexpr Word kMasks[6] = {0x5555555555555555ULL, 0x3333333333333333ULL,
                                     0x0f0f0f0f0f0f0f0fULL, 0x00ff00ff00ff00ffULL,
                                     0x0000ffff0000ffffULL, 0x00000000ffffffffULL};
  for (unsigned level = 0; level < 6; ++level) {
    if (!((s >> level) & 1)) continue;
    const unsigned shift = 1u << level;
    x = ((x & kMasks[level]) << shift) | ((x >> shift) & kMasks[level]);
  }
  return x;
}

// dst |= src translated by a, where p = 2 so translation is XOR on indices.
void or_xor_translated(std::vector<Word>& dst, std::span<const Word> src, Elem a) {
  const std::size_t word_shift = a >> 6;
  const unsigned bit_shift = a & 63;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i]) dst[i ^ word_shift] |= xor_permute(src[i], bit_shift);
  }
}

// dst[i + s] |= src[i] for i + s < nbits.
void or_shift_up(std::vector<Word>& dst, const std::vector<Word>& src, std::size_t s,
                 std::size_t nbits) {
  const std::size_t ws = s / 64;
  const unsigned bs = s % 64;
  for (std::size_t j = ws; j < dst.size(); ++j) {
    Word v = src[j - ws] << bs;
    if (bs && j > ws) v |= src[j - ws - 1] >> (64 - bs);
    dst[j] |= v;
  }
  if (const unsigned tail = nbits & 63) dst.back() &= (Word{1} << tail) - 1;
}

// dst[i] |= src[i + s].
void or_shift_down(std::vector<Word>& dst, const std::vector<Word>& src, std::size_t s) {
  const std::size_t ws = s / 64;
  const unsigned bs = s % 64;
  for (std::size_t j = 0; j + ws < src.size(); ++j) {
    Word v = src[j + ws] >> bs;
    if (bs && j + ws + 1 < src.size()) v |= src[j + ws + 1] << (64 - bs);
    dst[j] |= v;
  }
}

// Word-level kernels pay off once the larger operand is dense enough.
bool prefer_word_kernel(const ESet& a, const ESet& b) {
  return std::max(a.size(), b.size()) * 16 > a.field().q();
}

ESet sumset_xor_kernel(const ESet& a, const ESet& b) {
  const ESet& small = a.size() <= b.size() ? a : b;
  const ESet& large = a.size() <= b.size() ? b : a;
  std::vector<Word> acc(large.words().size(), 0);
  for (auto x : small.elements()) or_xor_translated(acc, large.words(), x);
  return ESet(a.ctx(), std::move(acc));
}

// Multiplication by g^j is a rotation by j of the mask indexed by discrete log.
ESet productset_log_kernel(const ESet& a, const ESet& b) {
  const Field& f = a.field();
  const ESet& small = a.size() <= b.size() ? a : b;
  const ESet& large = a.size() <= b.size() ? b : a;
  const std::size_t n = f.q() - 1;
  const std::size_t nwords = (n + 63) / 64;
  std::vector<Word> large_log(nwords, 0);
  for (auto y : large.elements()) {
    if (y) set_bit(large_log, f.log(y));
  }
  std::vector<Word> acc(nwords, 0);
  for (auto x : small.elements()) {
    if (!x) continue;
    const std::size_t r = f.log(x);
    if (r == 0) {
      for (std::size_t i = 0; i < nwords; ++i) acc[i] |= large_log[i];
    } else {
      or_shift_up(acc, large_log, r, n);
      or_shift_down(acc, large_log, n - r);
    }
  }
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  for (std::size_t i = 0; i < nwords; ++i) {
    Word w = acc[i];
    while (w) {
      set_bit(out, f.exp(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w))));
      w &= w - 1;
    }
  }
  if (a.contains(0) || b.contains(0)) set_bit(out, 0);
  return ESet(a.ctx(), std::move(out));
}

}  // namespace

namespace reference {

ESet sumset(const ESet& a, const ESet& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  const auto bs = b.elements();
  for (auto x : a.elements()) {
    for (auto y : bs) set_bit(out, f.add(x, y));
  }
  return ESet(a.ctx(), std::move(out));
}

ESet productset(const ESet& a, const ESet& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  const auto bs = b.elements();
  for (auto x : a.elements()) {
    for (auto y : bs) set_bit(out, f.mul(x, y));
  }
  return ESet(a.ctx(), std::move(out));
}

}  // namespace reference

ESet sumset(const ESet& a, const ESet& b) {
  require_same_field(a, b);
  if (a.empty() || b.empty()) return ESet(a.ctx());
  if (a.field().p() == 2 && prefer_word_kernel(a, b)) return sumset_xor_kernel(a, b);
  return reference::sumset(a, b);
}

ESet diffset(const ESet& a, const ESet& b) { return sumset(a, negate(b)); }

ESet productset(const ESet& a, const ESet& b) {
  require_same_field(a, b);
  if (a.empty() || b.empty()) return ESet(a.ctx());
  if (a.field().has_tables() && a.field().q() > 2 && prefer_word_kernel(a, b)) {
    return productset_log_kernel(a, b);
  }
  return reference::productset(a, b);
}

ESet quotientset(const ESet& a, const ESet& b) {
  require_same_field(a, b);
  if (a.empty() || b.empty()) return ESet(a.ctx());
  const ESet denominators = b.without(0);
  if (denominators.empty()) throw std::domain_error("quotient by a divisor set contained in {0}");
  return productset(a, reciprocals(denominators));
}

ESet dilate(Elem c, const ESet& a) {
  const Field& f = a.field();
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  for (auto x : a.elements()) set_bit(out, f.mul(c, x));
  return ESet(a.ctx(), std::move(out));
}

ESet translate(const ESet& a, Elem d) {
  const Field& f = a.field();
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  for (auto x : a.elements()) set_bit(out, f.add(x, d));
  return ESet(a.ctx(), std::move(out));
}

ESet negate(const ESet& a) {
  const Field& f = a.field();
  if (f.p() == 2) return a;
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  for (auto x : a.elements()) set_bit(out, f.neg(x));
  return ESet(a.ctx(), std::move(out));
}

ESet reciprocals(const ESet& a) {
  const Field& f = a.field();
  std::vector<Word> out(ESet::words_for(f.q()), 0);
  for (auto x : a.elements()) {
    if (x) set_bit(out, f.inv(x));
  }
  return ESet(a.ctx(), std::move(out));
}

ESet iterated_sumset(std::span<const ESet> sets) {
  if (sets.empty()) throw std::invalid_argument("iterated sumset of no sets");
  ESet acc = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) acc = sumset(acc, sets[i]);
  return acc;
}

ESet ratio_of_differences(const ESet& a) {
  if (a.size() < 2) throw std::invalid_argument("ratio set needs at least two elements");
  const ESet diffs = diffset(a, a);
  return productset(diffs, reciprocals(diffs.without(0)));
}

std::uint64_t dilate_intersection_count(Elem a, Elem b, const ESet& set) {
  if (a == 0 || b == 0) throw std::domain_error("dilators must be nonzero");
  return dilate(a, set).intersect_count(dilate(b, set));
}

std::uint64_t collision_energy(const ESet& a, Elem x) {
  // a1 - x b1 = a2 - x b2: square of the representation function of A - xA.
  const Field& f = a.field();
  const auto elems = a.elements();
  detail::CountTable counts(f.q());
  for (auto u : elems) {
    for (auto v : elems) counts.bump(f.sub(u, f.mul(x, v)));
  }
  return counts.sum_of_squares();
}

std::uint64_t mult_energy(const ESet& a) {
  if (a.contains(0)) throw std::domain_error("multiplicative energy needs 0 outside the set");
  const Field& f = a.field();
  const auto elems = a.elements();
  detail::CountTable counts(f.q());
  for (auto u : elems) {
    for (auto v : elems) counts.bump(f.mul(u, v));
  }
  return counts.sum_of_squares();
}

}  // namespace sumset_forge
