#include "sumset_forge/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace sumset_forge {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t powmod(std::uint64_t b, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// f mod g, g nonzero.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = powmod(g.back(), p - 2, p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = std::uint64_t{f.back()} * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - c) * g[i]) % p);
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), g, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t parse_u32(std::string_view s, const char* what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw FieldError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::uint64_t log_table_cap_from_env() {
  if (const char* v = std::getenv("SUMSET_FORGE_LOG_TABLE_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0') return cap;
  }
  return kDefaultLogTableCap;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  // x^{p^i} mod f for i = 1..k/2; any factor of degree i divides x^{p^i} - x.
  Poly xpow = {0, 1};
  for (std::size_t i = 1; i <= k / 2; ++i) {
    Poly base = xpow;
    Poly acc = {1};
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    xpow = acc;
    Poly diff = xpow;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned k) {
  // Counter over (c0, ..., c_{k-1}) with c0 most significant.
  Poly f(k + 1, 0);
  f[k] = 1;
  while (true) {
    if (is_irreducible(p, f)) return f;
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && f[i] == p - 1) {
      f[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++f[i];
  }
  throw FieldError("no irreducible polynomial found");  // unreachable for prime p
}

Field::Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i <= k; ++i) {
    pow_p_.push_back(static_cast<std::uint32_t>(std::min<std::uint64_t>(q, UINT32_MAX)));
    q *= p;
  }
  q_ = pow_p_[k];
  if (p == 2) {
    for (unsigned i = 0; i <= k; ++i) {
      if (modulus_[i]) mod_bits_ |= std::uint64_t{1} << i;
    }
  }
}

FieldPtr Field::make(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus,
                     std::uint64_t table_cap) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw FieldError("degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw FieldError("field order exceeds 2^28");
  }
  std::vector<std::uint32_t> f;
  if (modulus) {
    f = *modulus;
    if (f.size() != k + 1) throw FieldError("modulus must have exactly k+1 coefficients");
    for (auto c : f) {
      if (c >= p) throw FieldError("modulus coefficient out of range");
    }
    if (f.back() != 1) throw FieldError("modulus must be monic");
    if (!is_irreducible(p, f)) throw FieldError("modulus is reducible over Z_p");
  } else {
    f = least_irreducible(p, k);
  }
  std::shared_ptr<Field> field(new Field(p, k, std::move(f)));
  if (q <= table_cap) field->build_tables();
  return field;
}

FieldPtr Field::parse(std::string_view spec, std::uint64_t table_cap) {
  spec = strip(spec);
  std::optional<std::vector<std::uint32_t>> modulus;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    std::vector<std::uint32_t> coeffs;
    std::string_view rest = spec.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      coeffs.push_back(parse_u32(strip(rest.substr(0, comma)), "modulus coefficient"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    modulus = std::move(coeffs);
    spec = spec.substr(0, colon);
  }
  std::uint32_t p = 0;
  unsigned k = 1;
  if (auto caret = spec.find('^'); caret != std::string_view::npos) {
    p = parse_u32(strip(spec.substr(0, caret)), "characteristic");
    k = parse_u32(strip(spec.substr(caret + 1)), "degree");
  } else {
    p = parse_u32(spec, "characteristic");
  }
  return make(p, k, std::move(modulus), table_cap);
}

void Field::build_tables() {
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto pow_poly = [&](Elem x, std::uint64_t e) {
    Elem r = 1, b = x;
    while (e) {
      if (e & 1) r = mul_poly(r, b);
      b = mul_poly(b, b);
      e >>= 1;
    }
    return r;
  };
  Elem g = 1;
  for (Elem cand = (q_ == 2 ? 1 : 2); cand < q_; ++cand) {
    bool ok = true;
    for (auto r : factors) {
      if (pow_poly(cand, order / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  generator_ = g;
  exp_.assign(order, 0);
  log_.assign(q_, 0);
  Elem cur = 1;
  for (std::uint64_t j = 0; j < order; ++j) {
    exp_[j] = cur;
    log_[cur] = static_cast<std::uint32_t>(j);
    cur = mul_poly(cur, g);
  }
}

std::string Field::modulus_string() const {
  std::string out;
  for (int i = static_cast<int>(k_); i >= 0; --i) {
    const auto c = modulus_[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::string Field::spec() const {
  std::string out = std::to_string(p_) + "^" + std::to_string(k_) + ":";
  for (unsigned i = 0; i <= k_; ++i) {
    if (i) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out;
}

Elem Field::add(Elem x, Elem y) const {
  if (p_ == 2) return x ^ y;
  if (k_ == 1) {
    const Elem s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  Elem out = 0;
  for (unsigned i = 0; i < k_; ++i) {
    Elem d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    out += d * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return out;
}

Elem Field::neg(Elem x) const {
  if (p_ == 2) return x;
  if (k_ == 1) return x == 0 ? 0 : p_ - x;
  Elem out = 0;
  for (unsigned i = 0; i < k_; ++i) {
    const Elem d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    x /= p_;
  }
  return out;
}

Elem Field::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem Field::mul_poly(Elem x, Elem y) const {
  if (k_ == 1) return static_cast<Elem>(std::uint64_t{x} * y % p_);
  if (p_ == 2) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < k_; ++i) {
      if ((y >> i) & 1) r ^= std::uint64_t{x} << i;
    }
    for (int i = 2 * static_cast<int>(k_) - 2; i >= static_cast<int>(k_); --i) {
      if ((r >> i) & 1) r ^= mod_bits_ << (i - k_);
    }
    return static_cast<Elem>(r);
  }
  const auto a = digits(x);
  const auto b = digits(y);
  std::vector<std::uint64_t> r(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < k_; ++j) r[i + j] += std::uint64_t{a[i]} * b[j];
  }
  for (auto& c : r) c %= p_;
  for (int i = 2 * static_cast<int>(k_) - 2; i >= static_cast<int>(k_); --i) {
    const std::uint64_t c = r[i];
    if (!c) continue;
    for (unsigned j = 0; j <= k_; ++j) {
      auto& t = r[i - k_ + j];
      t = (t + (p_ - c) * modulus_[j]) % p_;
    }
  }
  Elem out = 0;
  for (unsigned i = 0; i < k_; ++i) out += static_cast<Elem>(r[i]) * pow_p_[i];
  return out;
}

Elem Field::mul(Elem x, Elem y) const {
  if (x == 0 || y == 0) return 0;
  if (!has_tables()) return mul_poly(x, y);
  std::uint32_t j = log_[x] + log_[y];
  if (j >= q_ - 1) j -= q_ - 1;
  return exp_[j];
}

Elem Field::inv(Elem x) const {
  if (x == 0) throw std::domain_error("inversion of zero");
  if (has_tables()) return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
  return pow(x, std::uint64_t{q_} - 2);
}

Elem Field::pow(Elem x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  if (has_tables()) {
    const std::uint64_t order = q_ - 1;
    return exp_[static_cast<std::uint32_t>((std::uint64_t{log_[x]} * (e % order)) % order)];
  }
  Elem r = 1, b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem x, unsigned times) const {
  for (unsigned i = 0; i < times; ++i) x = pow(x, p_);
  return x;
}

std::vector<std::uint32_t> Field::digits(Elem x) const {
  std::vector<std::uint32_t> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = x % p_;
    x /= p_;
  }
  return d;
}

Elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem out = 0;
  for (unsigned i = 0; i < k_ && i < d.size(); ++i) out += (d[i] % p_) * pow_p_[i];
  return out;
}

std::string Field::render(Elem x) const {
  if (x == 0) return "0";
  const auto d = digits(x);
  std::string out;
  for (unsigned i = 0; i < k_; ++i) {
    if (!d[i]) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Elem Field::parse_element(std::string_view text) const {
  text = strip(text);
  if (text.empty()) throw FieldError("empty element");
  const bool numeric = std::all_of(text.begin(), text.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (numeric) {
    const auto v = parse_u32(text, "element index");
    if (v >= q_) throw FieldError("element index " + std::to_string(v) + " out of range");
    return v;
  }
  // Sum of terms c, x, x^n, c*x, c*x^n.
  std::vector<std::uint32_t> coeffs(k_, 0);
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto plus = rest.find('+');
    std::string_view term = strip(rest.substr(0, plus));
    rest = plus == std::string_view::npos ? std::string_view{} : rest.substr(plus + 1);
    if (term.empty()) throw FieldError("malformed polynomial '" + std::string(text) + "'");
    std::uint64_t c = 1;
    unsigned degree = 0;
    const auto xpos = term.find('x');
    if (xpos == std::string_view::npos) {
      c = parse_u32(term, "coefficient");
    } else {
      std::string_view head = strip(term.substr(0, xpos));
      if (!head.empty()) {
        if (head.back() != '*') throw FieldError("malformed term '" + std::string(term) + "'");
        head.remove_suffix(1);
        c = parse_u32(strip(head), "coefficient");
      }
      std::string_view tail = strip(term.substr(xpos + 1));
      degree = 1;
      if (!tail.empty()) {
        if (tail.front() != '^') throw FieldError("malformed term '" + std::string(term) + "'");
        degree = parse_u32(strip(tail.substr(1)), "exponent");
      }
    }
    if (degree >= k_) throw FieldError("term degree must be below k in '" + std::string(text) + "'");
    coeffs[degree] = static_cast<std::uint32_t>((coeffs[degree] + c) % p_);
  }
  return from_digits(coeffs);
}

}  // namespace sumset_forge
