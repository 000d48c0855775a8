#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumset_forge {

/// Dense element index: Σ c_i p^i for the residue c_0 + c_1 x + ... + c_{k-1} x^{k-1}.
using Elem = std::uint32_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest field order accepted for dense indexing.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 28;
/// Default bound on q for building discrete log / exp tables.
inline constexpr std::uint64_t kDefaultLogTableCap = std::uint64_t{1} << 20;

/// Reads SUMSET_FORGE_LOG_TABLE_CAP, falling back to kDefaultLogTableCap.
std::uint64_t log_table_cap_from_env();

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An immutable model of F_{p^k} as Z_p[x]/(f) with a verified irreducible f.
///
/// Elements are dense indices in [0, q). Multiplication goes through discrete
/// log tables when q does not exceed the table cap, and through polynomial
/// reduction otherwise; both paths give identical results.
class Field {
 public:
  /// Builds F_{p^k}. Without an explicit modulus the lexicographically least
  /// monic irreducible polynomial is used, comparing coefficients c_0, c_1, ...
  /// in that order.
  static FieldPtr make(std::uint32_t p, unsigned k,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                       std::uint64_t table_cap = kDefaultLogTableCap);

  /// Parses "p^k" or "p^k:c0,c1,...,ck" (modulus low degree first).
  static FieldPtr parse(std::string_view spec,
                        std::uint64_t table_cap = kDefaultLogTableCap);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  /// Monic modulus, low degree first, length k+1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }
  /// Generator of the multiplicative group (only meaningful with tables).
  Elem generator() const { return generator_; }

  /// "p^k:c0,...,ck"; always includes the modulus actually in use.
  std::string spec() const;
  std::string modulus_string() const;

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  /// Multiplication by explicit polynomial reduction, bypassing the tables.
  Elem mul_poly(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;
  /// x ↦ x^{p^times}.
  Elem frobenius(Elem x, unsigned times = 1) const;

  /// Discrete log base generator(); requires tables and x != 0.
  std::uint32_t log(Elem x) const { return log_[x]; }
  Elem exp(std::uint32_t j) const { return exp_[j % (q_ - 1)]; }

  std::vector<std::uint32_t> digits(Elem x) const;
  Elem from_digits(const std::vector<std::uint32_t>& digits) const;

  /// "c0+c1*x+..." with zero terms omitted; "0" for zero.
  std::string render(Elem x) const;
  /// Accepts a decimal index or a polynomial in x such as "1+x", "2*x^2+1".
  Elem parse_element(std::string_view text) const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

 private:
  Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);
  void build_tables();

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i in [0, k]
  std::uint64_t mod_bits_ = 0;        // p == 2: modulus as a bit pattern
  Elem generator_ = 1;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

bool is_prime(std::uint64_t n);
/// Ben-Or test over Z_p; coefficients low degree first, leading coefficient nonzero.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned k);

}  // namespace sumset_forge
