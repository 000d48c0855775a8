#include "sumset_forge/eset.hpp"

#include <algorithm>
#include <cctype>

namespace sumset_forge {

void require_same_field(const ESet& a, const ESet& b) {
  if (!a.same_field(b)) throw ContextMismatch("sets belong to different fields");
}

ESet::ESet(FieldPtr ctx) : ctx_(std::move(ctx)), words_(words_for(ctx_->q()), 0) {}

ESet::ESet(FieldPtr ctx, std::vector<Word> words) : ctx_(std::move(ctx)), words_(std::move(words)) {
  if (words_.size() != words_for(ctx_->q())) throw std::invalid_argument("mask has wrong length");
  const unsigned tail = ctx_->q() & 63;
  if (tail && (words_.back() >> tail) != 0) throw std::invalid_argument("mask has bits beyond q");
  recount();
}

void ESet::recount() {
  card_ = 0;
  for (auto w : words_) card_ += static_cast<std::size_t>(std::popcount(w));
}

ESet ESet::of(FieldPtr ctx, std::span<const Elem> elems) {
  std::vector<Word> w(words_for(ctx->q()), 0);
  for (auto x : elems) {
    if (x >= ctx->q()) throw FieldError("element index " + std::to_string(x) + " out of range");
    w[x >> 6] |= Word{1} << (x & 63);
  }
  return ESet(std::move(ctx), std::move(w));
}

ESet ESet::of(FieldPtr ctx, std::initializer_list<Elem> elems) {
  return of(std::move(ctx), std::span<const Elem>(elems.begin(), elems.size()));
}

ESet ESet::full(FieldPtr ctx) {
  std::vector<Word> w(words_for(ctx->q()), ~Word{0});
  if (const unsigned tail = ctx->q() & 63) w.back() = (Word{1} << tail) - 1;
  return ESet(std::move(ctx), std::move(w));
}

std::vector<Elem> ESet::elements() const {
  std::vector<Elem> out;
  out.reserve(card_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    Word w = words_[i];
    while (w) {
      out.push_back(static_cast<Elem>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

Elem ESet::min() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return static_cast<Elem>(i * 64 + std::countr_zero(words_[i]));
  }
  throw std::logic_error("min of empty set");
}

ESet ESet::with(Elem x) const {
  auto w = words_;
  w[x >> 6] |= Word{1} << (x & 63);
  return ESet(ctx_, std::move(w));
}

ESet ESet::without(Elem x) const {
  auto w = words_;
  if (x < ctx_->q()) w[x >> 6] &= ~(Word{1} << (x & 63));
  return ESet(ctx_, std::move(w));
}

bool ESet::subset_of(const ESet& other) const {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

ESet ESet::intersect(const ESet& other) const {
  require_same_field(*this, other);
  auto w = words_;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= other.words_[i];
  return ESet(ctx_, std::move(w));
}

ESet ESet::unite(const ESet& other) const {
  require_same_field(*this, other);
  auto w = words_;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= other.words_[i];
  return ESet(ctx_, std::move(w));
}

ESet ESet::minus(const ESet& other) const {
  require_same_field(*this, other);
  auto w = words_;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~other.words_[i];
  return ESet(ctx_, std::move(w));
}

std::size_t ESet::intersect_count(const ESet& other) const {
  require_same_field(*this, other);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return n;
}

std::string ESet::mask_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t ndig = (std::size_t{ctx_->q()} + 3) / 4;
  std::string out(ndig, '0');
  for (std::size_t d = 0; d < ndig; ++d) {
    const std::size_t bit = d * 4;
    const unsigned nib = static_cast<unsigned>((words_[bit >> 6] >> (bit & 63)) & 0xf);
    out[ndig - 1 - d] = kDigits[nib];
  }
  return out;
}

ESet ESet::from_mask_hex(FieldPtr ctx, std::string_view hex) {
  std::vector<Word> w(words_for(ctx->q()), 0);
  const std::size_t n = hex.size();
  for (std::size_t d = 0; d < n; ++d) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[n - 1 - d])));
    unsigned v = 0;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else {
      throw FieldError("malformed mask hex '" + std::string(hex) + "'");
    }
    if (!v) continue;
    const std::size_t bit = d * 4;
    if (bit + static_cast<std::size_t>(std::bit_width(v)) > ctx->q()) {
      throw FieldError("mask hex has members beyond q");
    }
    w[bit >> 6] |= Word{v} << (bit & 63);
  }
  return ESet(std::move(ctx), std::move(w));
}

std::string ESet::literal(bool poly) const {
  std::string out = "{";
  bool first = true;
  for (auto x : elements()) {
    if (!first) out += ',';
    first = false;
    out += poly ? ctx_->render(x) : std::to_string(x);
  }
  out += '}';
  return out;
}

ESet ESet::parse(FieldPtr ctx, std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  constexpr std::string_view kHex = "maskhex:";
  if (text.substr(0, kHex.size()) == kHex) return from_mask_hex(std::move(ctx), text.substr(kHex.size()));
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw FieldError("set literal must look like {e1,e2,...} or maskhex:<hex>");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<Elem> elems;
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (!blank) {
    while (true) {
      const auto comma = text.find(',');
      elems.push_back(ctx->parse_element(text.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  }
  return of(std::move(ctx), elems);
}

}  // namespace sumset_forge
