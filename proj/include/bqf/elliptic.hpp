// Weierstrass models y^2 + c y = x^3 + g2 x^2 + g1 x + g0, point counts and
// traces over F_p, (2,2)-forms on P1 x P1 with their delta invariants, and
// the integral model of the curve attached to forms in the class S.
#pragma once

#include "bqf/quartic.hpp"

#include <string>

namespace bqf {

template <typename R>
struct WeierstrassCurve {
  R c;
  R g2;
  R g1;
  R g0;

  friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;
};

using IntCurve = WeierstrassCurve<Integer>;
using ModCurve = WeierstrassCurve<FpElem>;

/// Discriminant of the general Weierstrass model with a1 = 0, a2 = g2,
/// a3 = c, a4 = g1, a6 = g0.
template <typename R>
R curve_discriminant(const WeierstrassCurve<R>& E) {
  const R b2 = R(E.g2 * 4);
  const R b4 = R(E.g1 * 2);
  const R b6 = R(E.c * E.c + E.g0 * 4);
  const R b8 = R(E.g2 * E.g0 * 4 + E.g2 * E.c * E.c - E.g1 * E.g1);
  return R(-(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9);
}

ModCurve reduce(const IntCurve& E, const Prime& p);

/// #E(F_p) including the point at infinity. Needs p odd and E nonsingular mod p.
std::int64_t point_count(const ModCurve& E);
std::int64_t point_count(const IntCurve& E, const Prime& p);

/// p + 1 - #E(F_p). A Hasse violation raises InternalInconsistency.
std::int64_t trace(const ModCurve& E);
std::int64_t trace(const IntCurve& E, const Prime& p);

/// y^2 = x^3 - 3I x^2 + J^2. Rejects J = 0 or Disc = 0.
template <typename R>
WeierstrassCurve<R> e_prime_of(const QuarticForm<R>& f) {
  const auto inv = invariants(f);
  if (inv.J == 0 || inv.disc == 0) throw std::invalid_argument("e_prime_of: needs J(f) Disc(f) != 0");
  const R zero = constant_like(f.a[0], 0);
  return {zero, R(inv.I * -3), zero, R(inv.J * inv.J)};
}

/// "c;g2,g1,g0"
std::string format_curve(const IntCurve& E);
std::string format_curve(const ModCurve& E);

// --- (2,2)-forms -----------------------------------------------------------------

/// c = q0 t0^2 + q1 t0 t1 + q2 t1^2 with q_i = a[i][0] s0^2 + a[i][1] s0 s1 + a[i][2] s1^2.
template <typename R>
struct TwoTwoForm {
  Matrix3<R> a;

  [[nodiscard]] R operator()(const R& s0, const R& s1, const R& t0, const R& t1) const {
    R out = constant_like(s0, 0);
    const std::array<R, 3> s{R(s0 * s0), R(s0 * s1), R(s1 * s1)};
    const std::array<R, 3> t{R(t0 * t0), R(t0 * t1), R(t1 * t1)};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) out = R(out + a[i][j] * s[j] * t[i]);
    return out;
  }
  friend bool operator==(const TwoTwoForm&, const TwoTwoForm&) = default;
};

/// c_f with q0 = f_xx / 12, q1 = f_xy / 6, q2 = f_yy / 12; p > 3.
TwoTwoForm<FpElem> two_two_from_quartic(const ModForm& f);

/// 12 c_f, integral for integral f.
template <typename R>
TwoTwoForm<R> two_two_from_quartic_scaled12(const QuarticForm<R>& f) {
  const auto& [a0, a1, a2, a3, a4] = f.a;
  return {{{{R(a0 * 12), R(a1 * 6), R(a2 * 2)}, {R(a1 * 6), R(a2 * 8), R(a3 * 6)}, {R(a2 * 2), R(a3 * 6), R(a4 * 12)}}}};
}

/// H_c = q1^2 - 4 q0 q2, a binary quartic in (s0, s1).
template <typename R>
QuarticForm<R> h_covariant(const TwoTwoForm<R>& c) {
  const auto& q = c.a;
  const auto sq = detail::mul_binary(std::vector<R>(q[1].begin(), q[1].end()), std::vector<R>(q[1].begin(), q[1].end()));
  const auto pr = detail::mul_binary(std::vector<R>(q[0].begin(), q[0].end()), std::vector<R>(q[2].begin(), q[2].end()));
  QuarticForm<R> out{{sq[0], sq[1], sq[2], sq[3], sq[4]}};
  for (std::size_t j = 0; j < 5; ++j) out.a[j] = R(out.a[j] - pr[j] * 4);
  return out;
}

template <typename R>
struct DeltaInvariants {
  R d2;
  R d3;
  R d4;
};

template <typename R>
DeltaInvariants<R> delta_invariants(const TwoTwoForm<R>& c) {
  const auto& a = c.a;
  R d2 = R(a[1][1] * a[1][1] - a[1][0] * a[1][2] * 4 + a[0][2] * a[2][0] * 8 - a[0][1] * a[2][1] * 4 +
           a[0][0] * a[2][2] * 8);
  R d3 = R(-det3(a));
  R d4 = invariant_I(h_covariant(c));
  return {std::move(d2), std::move(d3), std::move(d4)};
}

/// y^2 + 216 d3 y = x^3 + 9 d2 x^2 + 27 (d2^2 - d4) x. Rejects Disc(H_c) = 0.
template <typename R>
WeierstrassCurve<R> jacobian_model(const TwoTwoForm<R>& c) {
  if (discriminant(h_covariant(c)) == 0) throw std::invalid_argument("jacobian_model: Disc(H_c) = 0");
  const auto d = delta_invariants(c);
  return {R(d.d3 * 216), R(d.d2 * 9), R((d.d2 * d.d2 - d.d4) * 27), constant_like(d.d2, 0)};
}

// --- integral model for the class S ----------------------------------------------

/// 3^3 * 2^12; forms in S reduce to f0 modulo this.
inline constexpr std::int64_t kSModulus = 110592;

struct ModelReduction {
  Integer a;
  Integer b;
  Integer delta;
};

/// y^2 + y = x^3 + a x + b with a = -I / 768, b = -J / 110592 - 1/4 and
/// delta = -64 a^3 - 432 b^2 - 216 b - 27 = Disc(f) / 2^20. Rejects forms whose
/// invariants miss the congruences I = -768, J = -27648 (mod 110592).
ModelReduction model_reduce(const IntForm& f);

/// H(E) = max(4 |A|^3, 27 B^2) for y^2 = x^3 + A x + B.
Integer curve_height(const Integer& A, const Integer& B);

/// The short model y^2 = x^3 + A x + B of E_f for f in S: A = -I/48, B = -J/1728.
std::pair<Integer, Integer> short_model_of(const IntForm& f);

}  // namespace bqf
