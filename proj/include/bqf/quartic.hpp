// Binary quartic forms f = a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4
// over Z (arbitrary precision) and over F_p.
//
// The generic templates work for any coefficient type with ring operators:
// Integer, std::int64_t, __int128 and FpElem. Anything that needs division
// by 2 or 3 is only offered over F_p (p > 3), with a 12-scaled integral
// variant for Z.
#pragma once

#include "bqf/ffarith.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bqf {

// --- ring glue --------------------------------------------------------------

template <typename R>
R constant_like(const R&, std::int64_t v) {
  return R(v);
}
inline FpElem constant_like(const FpElem& like, std::int64_t v) { return like.lift(v); }

template <typename R>
bool is_unit(const R& x) {
  return x == 1 || x == -1;
}
inline bool is_unit(const FpElem& x) { return !x.is_zero(); }

template <typename R>
void require_char_above_3(const R&) {}
inline void require_char_above_3(const FpElem& x) {
  if (x.modulus() <= 3) {
    throw std::invalid_argument("operation needs characteristic > 3, got p = " + std::to_string(x.modulus()));
  }
}

/// Exact division by a small integer: checked over Z, by the inverse over F_p.
template <typename R>
R divide_exact(const R& x, std::int64_t d) {
  if (x % d != 0) throw InternalInconsistency("inexact division by " + std::to_string(d));
  return R(x / d);
}
inline FpElem divide_exact(const FpElem& x, std::int64_t d) { return x * inv_mod(d, Prime(x.modulus())); }

// --- forms and matrices -----------------------------------------------------

template <typename R>
struct QuarticForm {
  std::array<R, 5> a;

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : a) {
      if (!(c == 0)) return false;
    }
    return true;
  }
  friend bool operator==(const QuarticForm&, const QuarticForm&) = default;
};

using IntForm = QuarticForm<Integer>;
using ModForm = QuarticForm<FpElem>;

/// g = [[a, b], [c, d]] acting by f(x, y) -> f(ax + cy, bx + dy).
template <typename R>
struct GL2Elem {
  R a, b, c, d;

  [[nodiscard]] R det() const { return R(a * d - b * c); }
  [[nodiscard]] GL2Elem transpose() const { return {a, c, b, d}; }
};

template <typename R>
using Matrix3 = std::array<std::array<R, 3>, 3>;

template <typename R>
R det3(const Matrix3<R>& m) {
  return R(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
}

template <typename R>
struct Invariants {
  R I;
  R J;
  R disc;
};

// --- evaluation and group actions -------------------------------------------

template <typename R>
R evaluate(const QuarticForm<R>& f, const R& x, const R& y) {
  R acc = f.a[0];
  R ypow = y;
  for (std::size_t i = 1; i < 5; ++i) {
    acc = R(acc * x + f.a[i] * ypow);
    ypow = R(ypow * y);
  }
  return acc;
}

namespace detail {

// Binary forms as coefficient vectors, entry j multiplying x^(k-j) y^j.
template <typename R>
std::vector<R> mul_binary(const std::vector<R>& u, const std::vector<R>& v) {
  std::vector<R> out(u.size() + v.size() - 1, constant_like(u.front(), 0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i + j] = R(out[i + j] + u[i] * v[j]);
  }
  return out;
}

}  // namespace detail

/// f(ax + cy, bx + dy) without any invertibility requirement.
template <typename R>
QuarticForm<R> substitute(const GL2Elem<R>& g, const QuarticForm<R>& f) {
  const R one = constant_like(g.a, 1);
  const std::vector<R> first{g.a, g.c};
  const std::vector<R> second{g.b, g.d};
  std::array<std::vector<R>, 5> pow1;
  std::array<std::vector<R>, 5> pow2;
  pow1[0] = pow2[0] = {one};
  for (std::size_t k = 1; k < 5; ++k) {
    pow1[k] = detail::mul_binary(pow1[k - 1], first);
    pow2[k] = detail::mul_binary(pow2[k - 1], second);
  }
  QuarticForm<R> out{{constant_like(g.a, 0), constant_like(g.a, 0), constant_like(g.a, 0), constant_like(g.a, 0),
                      constant_like(g.a, 0)}};
  for (std::size_t i = 0; i < 5; ++i) {
    const auto term = detail::mul_binary(pow1[4 - i], pow2[i]);
    for (std::size_t j = 0; j < 5; ++j) out.a[j] = R(out.a[j] + f.a[i] * term[j]);
  }
  return out;
}

/// The GL2 action. Throws std::invalid_argument unless det(g) is a unit.
template <typename R>
QuarticForm<R> act(const GL2Elem<R>& g, const QuarticForm<R>& f) {
  if (!is_unit(g.det())) throw std::invalid_argument("act: matrix is not invertible over the coefficient ring");
  return substitute(g, f);
}

template <typename R>
QuarticForm<R> scale(const R& lambda, const QuarticForm<R>& f) {
  QuarticForm<R> out = f;
  for (auto& c : out.a) c = R(c * lambda);
  return out;
}

/// det(g)^-2 * f(ax + cy, bx + dy); I, J and Disc are invariant under it.
ModForm twisted_act(const GL2Elem<FpElem>& g, const ModForm& f);

// --- invariants ---------------------------------------------------------------

template <typename R>
R invariant_I(const QuarticForm<R>& f) {
  const auto& [a0, a1, a2, a3, a4] = f.a;
  return R(a0 * a4 * 12 - a1 * a3 * 3 + a2 * a2);
}

template <typename R>
R invariant_J(const QuarticForm<R>& f) {
  const auto& [a0, a1, a2, a3, a4] = f.a;
  return R(a0 * a2 * a4 * 72 + a1 * a2 * a3 * 9 - (a0 * a3 * a3 + a1 * a1 * a4) * 27 - a2 * a2 * a2 * 2);
}

/// I, J and Disc = (4 I^3 - J^2) / 27. Over Z a nonzero remainder mod 27 is
/// an InternalInconsistency; over F_p this needs p > 3.
template <typename R>
Invariants<R> invariants(const QuarticForm<R>& f) {
  require_char_above_3(f.a[0]);
  R I = invariant_I(f);
  R J = invariant_J(f);
  R disc = divide_exact(R(I * I * I * 4 - J * J), 27);
  return {std::move(I), std::move(J), std::move(disc)};
}

template <typename R>
R discriminant(const QuarticForm<R>& f) {
  return invariants(f).disc;
}

// --- pairing, covariants, catalecticant ---------------------------------------

/// [f, h] = a0 b0 + a1 b1 / 4 + a2 b2 / 6 + a3 b3 / 4 + a4 b4 over F_p, p > 3.
FpElem pairing(const ModForm& f, const ModForm& h);

/// 12 [f, h], which is integral for integral forms.
template <typename R>
R pairing_scaled12(const QuarticForm<R>& f, const QuarticForm<R>& h) {
  return R(f.a[0] * h.a[0] * 12 + f.a[1] * h.a[1] * 3 + f.a[2] * h.a[2] * 2 + f.a[3] * h.a[3] * 3 +
           f.a[4] * h.a[4] * 12);
}

/// He_f = -det [[f_xx, f_xy], [f_xy, f_yy]].
template <typename R>
QuarticForm<R> hessian_cov(const QuarticForm<R>& f) {
  const auto& [a0, a1, a2, a3, a4] = f.a;
  const std::vector<R> fxx{R(a0 * 12), R(a1 * 6), R(a2 * 2)};
  const std::vector<R> fxy{R(a1 * 3), R(a2 * 4), R(a3 * 3)};
  const std::vector<R> fyy{R(a2 * 2), R(a3 * 6), R(a4 * 12)};
  const auto sq = detail::mul_binary(fxy, fxy);
  const auto prod = detail::mul_binary(fxx, fyy);
  QuarticForm<R> out = f;
  for (std::size_t j = 0; j < 5; ++j) out.a[j] = R(sq[j] - prod[j]);
  return out;
}

/// M_f with rows (a0, a1/4, a2/6), (a1/4, a2/6, a3/4), (a2/6, a3/4, a4); p > 3.
Matrix3<FpElem> catalecticant(const ModForm& f);

/// 12 M_f over Z; its determinant is 4 J(f).
template <typename R>
Matrix3<R> catalecticant_scaled12(const QuarticForm<R>& f) {
  const auto& [a0, a1, a2, a3, a4] = f.a;
  return {{{R(a0 * 12), R(a1 * 3), R(a2 * 2)}, {R(a1 * 3), R(a2 * 2), R(a3 * 3)}, {R(a2 * 2), R(a3 * 3), R(a4 * 12)}}};
}

/// Adjugate of M_f, from the closed 144-scaled formula.
Matrix3<FpElem> catalecticant_adjugate(const ModForm& f);

/// 3 - rank(M_f). Throws std::invalid_argument for the zero form.
int catalecticant_corank(const ModForm& f);

// --- factorization and splitting types ----------------------------------------

enum class SplittingType {
  Zero,
  T1111,
  T211,
  T31,
  T22,
  T4,
  T1sq11,   // (1^2 1 1)
  T1sq2,    // (1^2 2)
  T1sq1sq,  // (1^2 1^2)
  T2sq,     // (2^2)
  T1cube1,  // (1^3 1)
  T1four,   // (1^4)
};

inline constexpr std::array<SplittingType, 12> kAllSplittingTypes{
    SplittingType::Zero,   SplittingType::T1111,  SplittingType::T211,    SplittingType::T31,
    SplittingType::T22,    SplittingType::T4,     SplittingType::T1sq11,  SplittingType::T1sq2,
    SplittingType::T1sq1sq, SplittingType::T2sq, SplittingType::T1cube1, SplittingType::T1four};

std::string_view to_string(SplittingType t) noexcept;
bool is_degenerate(SplittingType t) noexcept;
/// Types making up the large-Fourier family: 0, (1^4), (1^3 1), (1^2 1^2), (2^2).
bool in_family_X(SplittingType t) noexcept;

SplittingType splitting_type(const ModForm& f);

bool in_family_X(const ModForm& f);

/// A quadratic form g with g^2 = f, if one exists over F_p.
std::optional<std::array<FpElem, 3>> square_root_form(const ModForm& f);

/// Primitive integral binary form of some degree, coefficient j on x^(d-j) y^j,
/// normalized so the first nonzero coefficient is positive.
template <typename T>
struct RationalFactor {
  std::vector<T> coeffs;
  int multiplicity;

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

template <typename T>
struct RationalFactorization {
  T content;  // signed, so that f = content * prod(factor^mult)
  std::vector<RationalFactor<T>> factors;
};

/// Complete factorization over Q. Throws std::invalid_argument for f = 0.
template <typename T>
RationalFactorization<T> factor_over_Q(const QuarticForm<T>& f);

template <typename T>
bool is_irreducible_over_Q(const QuarticForm<T>& f);

/// Membership in the family X over Q: zero, a factor of multiplicity >= 3, or
/// c * q^2 for a quadratic form q.
template <typename T>
bool in_family_X(const QuarticForm<T>& f);

/// Whether z^2 = f(x, y) has a real solution with (x, y) != (0, 0).
template <typename T>
bool is_R_soluble(const QuarticForm<T>& f);

/// max(|I|^3, J^2 / 4), exact.
Rational height(const IntForm& f);

// --- construction and serialization --------------------------------------------

IntForm make_int_form(const std::array<std::int64_t, 5>& coeffs);
ModForm make_mod_form(const std::array<std::int64_t, 5>& coeffs, const Prime& p);
ModForm reduce(const IntForm& f, const Prime& p);
ModForm zero_mod_form(const Prime& p);

/// "a0,a1,a2,a3,a4"; mod-p forms print their residues in [0, p).
std::string format_form(const IntForm& f);
std::string format_form(const ModForm& f);
/// Inverse of format_form for integral forms. Throws std::invalid_argument.
IntForm parse_form(std::string_view text);

}  // namespace bqf
