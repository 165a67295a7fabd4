// Prime-field arithmetic: Legendre symbols, inverses, nonresidues and the
// small dense polynomial type used for factorization over F_p.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when a computation contradicts an identity that must always hold.
/// Seeing one of these means a bug, never bad input.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A validated prime. Bounded by 2^31 so that residue products fit in 64 bits.
class Prime {
 public:
  static constexpr std::int64_t kMax = (std::int64_t{1} << 31) - 1;

  explicit Prime(std::int64_t p);

  [[nodiscard]] std::int64_t value() const noexcept { return p_; }
  operator std::int64_t() const noexcept { return p_; }  // NOLINT

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Theorem-level entry points work in characteristic > 3 only.
void require_theorem_prime(const Prime& p);

/// Reduce any integer into [0, p).
std::int64_t mod_reduce(std::int64_t a, std::int64_t p) noexcept;
std::int64_t mod_reduce(const Integer& a, std::int64_t p);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) noexcept;
std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t p) noexcept;

/// Element of F_p. Carries its modulus so that mixed-field arithmetic is caught.
class FpElem {
 public:
  FpElem(std::int64_t value, const Prime& p) : v_(mod_reduce(value, p.value())), p_(p.value()) {}
  FpElem(const Integer& value, const Prime& p) : v_(mod_reduce(value, p.value())), p_(p.value()) {}

  [[nodiscard]] std::int64_t value() const noexcept { return v_; }
  [[nodiscard]] std::int64_t modulus() const noexcept { return p_; }
  [[nodiscard]] bool is_zero() const noexcept { return v_ == 0; }
  /// An integer mapped into the same field as *this.
  [[nodiscard]] FpElem lift(std::int64_t v) const noexcept { return raw(mod_reduce(v, p_), p_); }

  [[nodiscard]] FpElem pow(std::uint64_t e) const { return raw(pow_mod(v_, e, p_), p_); }
  /// Throws std::domain_error on zero.
  [[nodiscard]] FpElem inverse() const;

  FpElem operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  FpElem& operator+=(const FpElem& o);
  FpElem& operator-=(const FpElem& o);
  FpElem& operator*=(const FpElem& o);
  FpElem& operator/=(const FpElem& o) { return *this *= o.inverse(); }

  friend FpElem operator+(FpElem a, const FpElem& b) { return a += b; }
  friend FpElem operator-(FpElem a, const FpElem& b) { return a -= b; }
  friend FpElem operator*(FpElem a, const FpElem& b) { return a *= b; }
  friend FpElem operator/(FpElem a, const FpElem& b) { return a /= b; }
  friend FpElem operator*(FpElem a, std::int64_t k) { return a *= raw(mod_reduce(k, a.p_), a.p_); }
  friend FpElem operator*(std::int64_t k, FpElem a) { return a * k; }
  friend bool operator==(const FpElem& a, const FpElem& b) noexcept {
    return a.v_ == b.v_ && a.p_ == b.p_;
  }
  friend bool operator==(const FpElem& a, std::int64_t k) noexcept {
    return a.v_ == mod_reduce(k, a.p_);
  }

 private:
  struct RawTag {};
  FpElem(std::int64_t v, std::int64_t p, RawTag) noexcept : v_(v), p_(p) {}
  static FpElem raw(std::int64_t v, std::int64_t p) noexcept { return FpElem(v, p, RawTag{}); }
  void check_same(const FpElem& o) const;

  std::int64_t v_;
  std::int64_t p_;
};

/// Euler's criterion. Rejects p = 2.
int legendre(std::int64_t a, const Prime& p);
int legendre(const Integer& a, const Prime& p);
inline int legendre(const FpElem& a) { return legendre(a.value(), Prime(a.modulus())); }

/// The primitive character mod 12; agrees with (3/p).
int chi12(const Prime& p);

/// Throws std::invalid_argument if p | a.
FpElem inv_mod(std::int64_t a, const Prime& p);

/// Least positive nonresidue.
FpElem quadratic_nonresidue(const Prime& p);

/// Tonelli-Shanks; nullopt for nonresidues.
std::optional<FpElem> sqrt_mod(const FpElem& a);

/// Dense polynomial over F_p, coefficients stored low degree first and kept
/// trimmed (the zero polynomial has no coefficients).
class PolyFp {
 public:
  PolyFp(std::vector<std::int64_t> coeffs, const Prime& p);
  static PolyFp x(const Prime& p) { return PolyFp({0, 1}, p); }

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] std::int64_t coeff(int i) const noexcept {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0;
  }
  [[nodiscard]] std::int64_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  [[nodiscard]] const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
  [[nodiscard]] const Prime& prime() const noexcept { return p_; }

  [[nodiscard]] std::int64_t eval(std::int64_t x) const noexcept;
  [[nodiscard]] PolyFp monic() const;
  [[nodiscard]] PolyFp derivative() const;

  friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
  friend bool operator==(const PolyFp& a, const PolyFp& b) noexcept {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  /// Quotient and remainder; divisor must be nonzero.
  friend std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b);

 private:
  void trim() noexcept;

  std::vector<std::int64_t> c_;
  Prime p_;
};

PolyFp poly_mod(const PolyFp& a, const PolyFp& m);
/// Monic gcd (zero if both inputs are zero).
PolyFp poly_gcd(PolyFp a, PolyFp b);
/// base^exponent mod modulus. Throws std::invalid_argument on a zero modulus.
PolyFp poly_powmod(const PolyFp& base, const Integer& exponent, const PolyFp& modulus);

}  // namespace bqf
