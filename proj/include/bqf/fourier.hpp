// The finite Fourier transform of the indicator of singular forms,
//   Phi_q^(f) = q^-5 sum_{w in V(Z/q)} Phi_q(w) e([w, f] / q),
// computed by exhaustive summation and by its closed form.
#pragma once

#include "bqf/quartic.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace bqf {

/// n / q^5. For a prime q the numerator n is an integer with |n| <= q^4 + q^3 - q^2.
struct FourierValue {
  Integer n;
  Integer q;

  [[nodiscard]] Rational value() const;
  /// "n/q^5"
  [[nodiscard]] std::string str() const;

  friend bool operator==(const FourierValue&, const FourierValue&) = default;
};

/// Sums over every singular w in V(F_p). The singular set is a cone, so the
/// fibers of w -> [w, f] over nonzero values all have the same size and the
/// character sum collapses to N_0 - N_1. A fiber of the wrong size raises
/// InternalInconsistency. Needs p > 3.
FourierValue oracle_fourier(const ModForm& f);

/// The closed form, dispatched on splitting type, J and Disc. Needs p > 3.
FourierValue closed_fourier(const ModForm& f);

/// p^5 Phi_p^(f) for a form given by residues in [0, p). Traces of E'_f are
/// memoized per (p, I mod p, J mod p); safe to call from several threads.
std::int64_t closed_fourier_numerator(const std::array<std::int64_t, 5>& a, const Prime& p);

/// Product over primes p | q with p > 3 of Phi_p^(f mod p); the factors 2 and 3
/// contribute 1. Rejects q <= 0 and q that is not squarefree.
FourierValue fourier_q(const Integer& q, const IntForm& f);

enum class BoundClass { Origin, FamilyX, Generic };

std::string_view to_string(BoundClass c) noexcept;

/// Origin for f = 0, FamilyX for f in X(F_p) minus 0, Generic otherwise.
BoundClass bound_class(const ModForm& f);

/// The size bound on n = p^5 Phi_p^(f) for each class:
/// Origin p^4 + p^3, FamilyX p^3, Generic 2 p^(3/2) + p.
bool within_class_bound(BoundClass c, std::int64_t n, std::int64_t p);

}  // namespace bqf
