// Point counts on the singular locus X in P(V), its hyperplane slices X^f,
// and the three parametrizing schemes
//   X122^f  in P1 x P2 : [l^2 q, f] = 0
//   X22^f   in P2      : [q^2, f] = 0
//   X1212^f in P1 x P1 : [l1^2 l2^2, f] = 0
// by brute enumeration and by closed formulas.
#pragma once

#include "bqf/elliptic.hpp"
#include "bqf/quartic.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace bqf {

/// Homogeneous coordinates with the first nonzero entry equal to 1.
template <std::size_t N>
using ProjPoint = std::array<std::int64_t, N>;

/// All points of P^(N-1)(F_p), in lexicographic order of normalized coordinates.
template <std::size_t N>
std::vector<ProjPoint<N>> projective_points(std::int64_t p) {
  std::vector<ProjPoint<N>> out;
  for (std::size_t lead = 0; lead < N; ++lead) {
    const std::size_t free = N - 1 - lead;
    std::int64_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= p;
    for (std::int64_t code = 0; code < total; ++code) {
      ProjPoint<N> pt{};
      pt[lead] = 1;
      std::int64_t rest = code;
      for (std::size_t i = N; i-- > lead + 1;) {
        pt[i] = rest % p;
        rest /= p;
      }
      out.push_back(pt);
    }
  }
  return out;
}

/// Scale so the first nonzero coordinate is 1. Throws on the zero vector.
template <std::size_t N>
ProjPoint<N> normalize(ProjPoint<N> v, std::int64_t p) {
  for (auto& c : v) c = mod_reduce(c, p);
  for (const auto c : v) {
    if (c != 0) {
      const std::int64_t inv = pow_mod(c, static_cast<std::uint64_t>(p - 2), p);
      for (auto& e : v) e = mul_mod(e, inv, p);
      return v;
    }
  }
  throw std::invalid_argument("normalize: zero vector has no projective point");
}

/// Per-prime images of the parametrizations, stored pre-multiplied by the
/// pairing weights (1, 1/4, 1/6, 1/4, 1) so that [h, f] is a plain dot product.
/// Built once per prime and shared read-only.
struct SchemeTables {
  std::int64_t p;
  std::array<std::int64_t, 5> weights;
  std::vector<ProjPoint<5>> singular;      // X(F_p), raw coefficients
  std::vector<ProjPoint<5>> singular_w;    // the same, weighted
  std::vector<ProjPoint<5>> image122_w;    // (l, q) in P1 x P2
  std::vector<ProjPoint<5>> image22_w;     // q in P2
  std::vector<ProjPoint<5>> image1212_w;   // (l1, l2) in P1 x P1
  std::vector<ProjPoint<5>> image122;      // unweighted, normalized
  std::vector<ProjPoint<5>> image22;
  std::vector<ProjPoint<5>> image1212;

  [[nodiscard]] std::int64_t dot(const ProjPoint<5>& weighted, const ModForm& f) const noexcept {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < 5; ++i) s += weighted[i] * f.a[i].value();
    return s % p;
  }
  [[nodiscard]] std::int64_t count_zero(const std::vector<ProjPoint<5>>& table, const ModForm& f) const noexcept {
    std::int64_t n = 0;
    for (const auto& w : table) n += dot(w, f) == 0;
    return n;
  }
};

/// Cached tables for p > 3; thread-safe.
const SchemeTables& scheme_tables(const Prime& p);

/// Disc(f) == 0 for a form given by residues, using word arithmetic.
bool is_singular_residues(const std::array<std::int64_t, 5>& a, std::int64_t p) noexcept;

// --- counting lemmas ----------------------------------------------------------------

std::int64_t count_singular_forms(const Prime& p);
std::int64_t count_singular_forms_brute(const Prime& p);

/// Squarefree binary n-ic forms over F_p: p^(n+1) (1 - 1/p) (1 - 1/p^2). Needs n >= 3.
Integer count_squarefree_forms(int n, const Prime& p);
Integer count_squarefree_forms_brute(int n, const Prime& p);

std::int64_t count_X(const Prime& p);
std::int64_t count_X_brute(const Prime& p);

/// #{h in X(F_p) : [h, f] = 0}. Rejects f = 0.
std::int64_t count_Xf(const ModForm& f);

// --- fibers and scheme counts ---------------------------------------------------------

struct FiberCounts {
  std::int64_t m122;
  std::int64_t m22;
  std::int64_t m1212;

  friend bool operator==(const FiberCounts&, const FiberCounts&) = default;
};

/// Sizes of the fibers of the three parametrizations over the point [h].
FiberCounts psi_fiber_counts(const ModForm& h);

std::int64_t count_X122(const ModForm& f);
std::int64_t count_X22(const ModForm& f);
std::int64_t count_X1212(const ModForm& f);

std::int64_t closed_X122(const ModForm& f);
std::int64_t closed_X22(const ModForm& f);
std::int64_t closed_X1212(const ModForm& f);

enum class SemidegCase { I, II, III, IV };

std::string_view to_string(SemidegCase c) noexcept;

struct SemidegInfo {
  SemidegCase which;
  bool lines_rational;  // the two Waring lines are defined over F_p
  bool hessian_square;  // He_f is the square of a quadratic form over F_p
};

/// Requires J(f) = 0 and Disc(f) != 0; throws std::invalid_argument otherwise.
SemidegInfo semideg_classify(const ModForm& f);

}  // namespace bqf
