#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sumset_forge {

// Expression templates off so mixed expressions bind to plain BigInt parameters.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                              boost::multiprecision::et_off>;

inline BigInt ipow(BigInt base, unsigned e) { return boost::multiprecision::pow(base, e); }

/// One inequality instance lhs ≤ rhs, rhs kept as a reduced fraction.
struct IneqReport {
  std::string label;
  BigInt lhs;
  BigInt rhs_num;
  BigInt rhs_den = 1;
  bool holds = false;

  static IneqReport make(std::string label, BigInt lhs, BigInt rhs_num, BigInt rhs_den = 1);
  static IneqReport make(std::string label, BigInt lhs, const Rational& rhs);

  Rational rhs() const { return Rational(rhs_num, rhs_den); }
  /// label, lhs, rhs_num, rhs_den, holds (1/0), tab separated.
  std::string tsv() const;

  bool operator==(const IneqReport&) const = default;
};

/// x ≥ y ⟺ x^den ≥ y^num for alpha = num/den, all nonnegative.
bool power_at_least(std::uint64_t x, std::uint64_t y, const Rational& alpha);

}  // namespace sumset_forge
