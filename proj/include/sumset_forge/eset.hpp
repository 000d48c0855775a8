#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumset_forge/field.hpp"

namespace sumset_forge {

/// A subset of a finite field, stored as a q-bit membership mask.
///
/// Values are immutable once built; set operators return new sets. The
/// cardinality is cached at construction.
class ESet {
 public:
  using Word = std::uint64_t;

  ESet() = default;
  explicit ESet(FieldPtr ctx);
  /// Takes ownership of a mask with exactly words_for(q) words; bits >= q must be clear.
  ESet(FieldPtr ctx, std::vector<Word> words);

  static ESet of(FieldPtr ctx, std::span<const Elem> elems);
  static ESet of(FieldPtr ctx, std::initializer_list<Elem> elems);
  static ESet full(FieldPtr ctx);

  static std::size_t words_for(std::uint32_t q) { return (std::size_t{q} + 63) / 64; }

  const FieldPtr& ctx() const { return ctx_; }
  const Field& field() const { return *ctx_; }
  std::size_t size() const { return card_; }
  bool empty() const { return card_ == 0; }
  bool contains(Elem x) const {
    return x < ctx_->q() && ((words_[x >> 6] >> (x & 63)) & 1);
  }
  std::span<const Word> words() const { return words_; }

  /// Members in increasing index order.
  std::vector<Elem> elements() const;
  /// Least member; set must be nonempty.
  Elem min() const;

  ESet with(Elem x) const;
  ESet without(Elem x) const;

  bool subset_of(const ESet& other) const;
  ESet intersect(const ESet& other) const;
  ESet unite(const ESet& other) const;
  ESet minus(const ESet& other) const;
  std::size_t intersect_count(const ESet& other) const;

  bool operator==(const ESet& other) const {
    return same_field(other) && words_ == other.words_;
  }
  bool same_field(const ESet& other) const {
    return ctx_ == other.ctx_ || (ctx_ && other.ctx_ && *ctx_ == *other.ctx_);
  }

  /// Fixed-width lowercase hex of Σ 2^x, most significant digit first.
  std::string mask_hex() const;
  static ESet from_mask_hex(FieldPtr ctx, std::string_view hex);

  /// "{e1,e2,...}" with decimal indices, or polynomial renderings when poly is set.
  std::string literal(bool poly = false) const;
  /// Accepts "{...}" with either element rendering, or "maskhex:<hex>".
  static ESet parse(FieldPtr ctx, std::string_view text);

 private:
  void recount();

  FieldPtr ctx_;
  std::vector<Word> words_;
  std::size_t card_ = 0;
};

/// Raised when sets from different fields are combined.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_field(const ESet& a, const ESet& b);

}  // namespace sumset_forge
