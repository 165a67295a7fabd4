#include "bqf/elliptic.hpp"

#include <vector>

namespace bqf {

ModCurve reduce(const IntCurve& E, const Prime& p) {
  return {FpElem(E.c, p), FpElem(E.g2, p), FpElem(E.g1, p), FpElem(E.g0, p)};
}

std::int64_t point_count(const ModCurve& E) {
  const std::int64_t p = E.c.modulus();
  if (p == 2) throw std::invalid_argument("point_count: p must be odd");
  if (curve_discriminant(E).is_zero()) {
    throw std::invalid_argument("point_count: curve " + format_curve(E) + " is singular mod " + std::to_string(p));
  }
  // (y + c/2)^2 = x^3 + g2 x^2 + g1 x + g0 + c^2/4
  const FpElem shift = E.c * E.c * inv_mod(4, Prime(p));
  const std::int64_t k0 = (E.g0 + shift).value();
  const std::int64_t k1 = E.g1.value();
  const std::int64_t k2 = E.g2.value();
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = (((x + k2) % p * x + k1) % p * x + k0) % p;
    sum += chi[static_cast<std::size_t>(rhs)];
  }
  return p + 1 + sum;
}

std::int64_t point_count(const IntCurve& E, const Prime& p) { return point_count(reduce(E, p)); }

std::int64_t trace(const ModCurve& E) {
  const std::int64_t p = E.c.modulus();
  const std::int64_t a = p + 1 - point_count(E);
  if (a * a > 4 * p) {
    throw InternalInconsistency("Hasse bound violated: a = " + std::to_string(a) + " for p = " + std::to_string(p));
  }
  return a;
}

std::int64_t trace(const IntCurve& E, const Prime& p) { return trace(reduce(E, p)); }

std::string format_curve(const IntCurve& E) {
  return E.c.str() + ";" + E.g2.str() + "," + E.g1.str() + "," + E.g0.str();
}

std::string format_curve(const ModCurve& E) {
  return std::to_string(E.c.value()) + ";" + std::to_string(E.g2.value()) + "," + std::to_string(E.g1.value()) + "," +
         std::to_string(E.g0.value());
}

TwoTwoForm<FpElem> two_two_from_quartic(const ModForm& f) {
  require_char_above_3(f.a[0]);
  const FpElem inv12 = inv_mod(12, Prime(f.a[0].modulus()));
  TwoTwoForm<FpElem> c = two_two_from_quartic_scaled12(f);
  for (auto& row : c.a)
    for (auto& e : row) e *= inv12;
  return c;
}

ModelReduction model_reduce(const IntForm& f) {
  const Integer I = invariant_I(f);
  const Integer J = invariant_J(f);
  if ((I + 768) % kSModulus != 0 || (J + 27648) % kSModulus != 0) {
    throw std::invalid_argument("model_reduce: " + format_form(f) +
                                " misses I = -768, J = -27648 (mod 110592)");
  }
  ModelReduction out;
  out.a = -I / 768;
  out.b = (-J - 27648) / kSModulus;
  out.delta = -64 * out.a * out.a * out.a - 432 * out.b * out.b - 216 * out.b - 27;
  const Integer disc = discriminant(f);
  if (out.delta * (Integer(1) << 20) != disc) {
    throw InternalInconsistency("model_reduce: delta * 2^20 != Disc for " + format_form(f));
  }
  return out;
}

Integer curve_height(const Integer& A, const Integer& B) {
  const Integer u = 4 * abs(A * A * A);
  const Integer v = 27 * B * B;
  return u > v ? u : v;
}

std::pair<Integer, Integer> short_model_of(const IntForm& f) {
  const Integer I = invariant_I(f);
  const Integer J = invariant_J(f);
  if (I % 48 != 0 || J % 1728 != 0) {
    throw std::invalid_argument("short_model_of: I/48 or J/1728 not integral for " + format_form(f));
  }
  return {Integer(-I / 48), Integer(-J / 1728)};
}

}  // namespace bqf
