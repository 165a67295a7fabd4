#include "bqf/ffarith.hpp"

#include <algorithm>
#include <utility>

namespace bqf {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t p) : p_(p) {
  if (p > kMax) throw std::invalid_argument("prime too large: " + std::to_string(p));
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

void require_theorem_prime(const Prime& p) {
  if (p.value() <= 3) {
    throw std::invalid_argument("requires a prime p > 3, got " + std::to_string(p.value()));
  }
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) noexcept {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_reduce(const Integer& a, std::int64_t p) {
  Integer r = a % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) noexcept {
  return static_cast<std::int64_t>((static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b)) %
                                   static_cast<unsigned __int128>(p));
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t p) noexcept {
  std::int64_t result = 1 % p;
  base = mod_reduce(base, p);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

void FpElem::check_same(const FpElem& o) const {
  if (p_ != o.p_) {
    throw std::invalid_argument("mixed moduli: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
  }
}

FpElem FpElem::inverse() const {
  if (v_ == 0) throw std::domain_error("zero has no inverse mod " + std::to_string(p_));
  return raw(pow_mod(v_, static_cast<std::uint64_t>(p_ - 2), p_), p_);
}

FpElem& FpElem::operator+=(const FpElem& o) {
  check_same(o);
  v_ += o.v_;
  if (v_ >= p_) v_ -= p_;
  return *this;
}

FpElem& FpElem::operator-=(const FpElem& o) {
  check_same(o);
  v_ -= o.v_;
  if (v_ < 0) v_ += p_;
  return *this;
}

FpElem& FpElem::operator*=(const FpElem& o) {
  check_same(o);
  v_ = (v_ * o.v_) % p_;  // both below 2^31
  return *this;
}

int legendre(std::int64_t a, const Prime& p) {
  if (p.value() == 2) throw std::invalid_argument("legendre symbol needs an odd prime");
  const std::int64_t r = mod_reduce(a, p.value());
  if (r == 0) return 0;
  const std::int64_t e = pow_mod(r, static_cast<std::uint64_t>((p.value() - 1) / 2), p.value());
  return e == 1 ? 1 : -1;
}

int legendre(const Integer& a, const Prime& p) {
  if (p.value() == 2) throw std::invalid_argument("legendre symbol needs an odd prime");
  return legendre(mod_reduce(a, p.value()), p);
}

int chi12(const Prime& p) {
  require_theorem_prime(p);
  const std::int64_t r = p.value() % 12;
  return (r == 1 || r == 11) ? 1 : -1;
}

FpElem inv_mod(std::int64_t a, const Prime& p) {
  if (mod_reduce(a, p.value()) == 0) {
    throw std::invalid_argument(std::to_string(a) + " is not invertible mod " + std::to_string(p.value()));
  }
  return FpElem(a, p).inverse();
}

FpElem quadratic_nonresidue(const Prime& p) {
  if (p.value() == 2) throw std::invalid_argument("no nonresidues mod 2");
  for (std::int64_t a = 2;; ++a) {
    if (legendre(a, p) == -1) return FpElem(a, p);
  }
}

std::optional<FpElem> sqrt_mod(const FpElem& a) {
  const Prime p(a.modulus());
  if (a.is_zero()) return a;
  if (p.value() == 2) return a;
  if (legendre(a.value(), p) != 1) return std::nullopt;
  const std::int64_t pv = p.value();
  if (pv % 4 == 3) return a.pow(static_cast<std::uint64_t>((pv + 1) / 4));

  std::int64_t q = pv - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  const FpElem z = quadratic_nonresidue(p);
  FpElem c = z.pow(static_cast<std::uint64_t>(q));
  FpElem t = a.pow(static_cast<std::uint64_t>(q));
  FpElem r = a.pow(static_cast<std::uint64_t>((q + 1) / 2));
  int m = s;
  while (!(t == 1)) {
    int i = 0;
    FpElem t2 = t;
    while (!(t2 == 1)) {
      t2 *= t2;
      ++i;
    }
    FpElem b = c;
    for (int j = 0; j < m - i - 1; ++j) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  return r;
}

// ---------------------------------------------------------------------------

PolyFp::PolyFp(std::vector<std::int64_t> coeffs, const Prime& p) : c_(std::move(coeffs)), p_(p) {
  for (auto& v : c_) v = mod_reduce(v, p_.value());
  trim();
}

void PolyFp::trim() noexcept {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t PolyFp::eval(std::int64_t x) const noexcept {
  const std::int64_t p = p_.value();
  x = mod_reduce(x, p);
  std::int64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mul_mod(acc, x, p) + *it) % p;
  return acc;
}

PolyFp PolyFp::monic() const {
  if (c_.empty()) return *this;
  const std::int64_t inv = inv_mod(c_.back(), p_).value();
  std::vector<std::int64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = mul_mod(c_[i], inv, p_.value());
  return PolyFp(std::move(out), p_);
}

PolyFp PolyFp::derivative() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    out.push_back(mul_mod(c_[i], static_cast<std::int64_t>(i) % p_.value(), p_.value()));
  }
  return PolyFp(std::move(out), p_);
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
  std::vector<std::int64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  }
  return PolyFp(std::move(out), a.p_);
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) {
  std::vector<std::int64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  }
  return PolyFp(std::move(out), a.p_);
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
  if (a.is_zero() || b.is_zero()) return PolyFp({}, a.p_);
  const std::int64_t p = a.p_.value();
  std::vector<std::int64_t> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] = (out[i + j] + mul_mod(a.c_[i], b.c_[j], p)) % p;
    }
  }
  return PolyFp(std::move(out), a.p_);
}

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  const std::int64_t p = a.p_.value();
  std::vector<std::int64_t> rem = a.c_;
  const int db = b.degree();
  if (a.degree() < db) return {PolyFp({}, a.p_), a};
  std::vector<std::int64_t> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const std::int64_t lead_inv = inv_mod(b.leading(), b.p_).value();
  for (int i = a.degree(); i >= db; --i) {
    const std::int64_t coef = mul_mod(rem[static_cast<std::size_t>(i)], lead_inv, p);
    quot[static_cast<std::size_t>(i - db)] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = rem[static_cast<std::size_t>(i - db + j)];
      slot = mod_reduce(slot - mul_mod(coef, b.c_[static_cast<std::size_t>(j)], p), p);
    }
  }
  return {PolyFp(std::move(quot), a.p_), PolyFp(std::move(rem), a.p_)};
}

PolyFp poly_mod(const PolyFp& a, const PolyFp& m) { return divmod(a, m).second; }

PolyFp poly_gcd(PolyFp a, PolyFp b) {
  while (!b.is_zero()) {
    PolyFp r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyFp poly_powmod(const PolyFp& base, const Integer& exponent, const PolyFp& modulus) {
  if (modulus.is_zero()) throw std::invalid_argument("poly_powmod: zero modulus");
  if (exponent < 0) throw std::invalid_argument("poly_powmod: negative exponent");
  PolyFp result = poly_mod(PolyFp({1}, modulus.prime()), modulus);
  PolyFp b = poly_mod(base, modulus);
  Integer e = exponent;
  while (e > 0) {
    if ((e & 1) != 0) result = poly_mod(result * b, modulus);
    b = poly_mod(b * b, modulus);
    e >>= 1;
  }
  return result;
}

}  // namespace bqf
