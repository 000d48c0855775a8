#include "sumset_forge/exact.hpp"

#include <stdexcept>

namespace sumset_forge {

IneqReport IneqReport::make(std::string label, BigInt lhs, BigInt rhs_num, BigInt rhs_den) {
  if (rhs_den == 0) throw std::domain_error("inequality bound with zero denominator");
  const Rational rhs(rhs_num, rhs_den);
  return make(std::move(label), std::move(lhs), rhs);
}

IneqReport IneqReport::make(std::string label, BigInt lhs, const Rational& rhs) {
  IneqReport r;
  r.label = std::move(label);
  r.lhs = std::move(lhs);
  r.rhs_num = numerator(rhs);
  r.rhs_den = denominator(rhs);
  r.holds = r.lhs * r.rhs_den <= r.rhs_num;
  return r;
}

std::string IneqReport::tsv() const {
  return label + '\t' + lhs.str() + '\t' + rhs_num.str() + '\t' + rhs_den.str() + '\t' +
         (holds ? "1" : "0");
}

bool power_at_least(std::uint64_t x, std::uint64_t y, const Rational& alpha) {
  const BigInt num = numerator(alpha);
  const BigInt den = denominator(alpha);
  if (num < 0 || den <= 0) throw std::invalid_argument("exponent must be a nonnegative rational");
  return ipow(BigInt(x), den.convert_to<unsigned>()) >= ipow(BigInt(y), num.convert_to<unsigned>());
}

}  // namespace sumset_forge
