#include "bqf/fourier.hpp"

#include "bqf/elliptic.hpp"

#include <atomic>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace bqf {
namespace {

struct ResidueInvariants {
  std::int64_t I;
  std::int64_t J;
  std::int64_t four_I3_minus_J2;  // 27 Disc
};

ResidueInvariants residue_invariants(const std::array<std::int64_t, 5>& a, std::int64_t p) {
  const auto m = [p](std::int64_t x, std::int64_t y) { return x * y % p; };
  const std::int64_t I = mod_reduce(12 * m(a[0], a[4]) - 3 * m(a[1], a[3]) + m(a[2], a[2]), p);
  const std::int64_t J =
      mod_reduce(72 * m(m(a[0], a[2]), a[4]) + 9 * m(m(a[1], a[2]), a[3]) -
                     27 * ((m(m(a[0], a[3]), a[3]) + m(m(a[1], a[1]), a[4])) % p) - 2 * m(m(a[2], a[2]), a[2]),
                 p);
  return {I, J, mod_reduce(4 * m(m(I, I), I) - m(J, J), p)};
}

// Every singular w in V(F_p), including 0, pre-multiplied by the pairing weights.
const std::vector<std::array<std::int64_t, 5>>& weighted_singular_vectors(const Prime& prime) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<std::vector<std::array<std::int64_t, 5>>>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[prime.value()];
  if (slot) return *slot;
  const std::int64_t p = prime.value();
  const std::int64_t inv4 = inv_mod(4, prime).value();
  const std::int64_t inv6 = inv_mod(6, prime).value();
  auto out = std::make_unique<std::vector<std::array<std::int64_t, 5>>>();
  std::array<std::int64_t, 5> a{};
  for (a[0] = 0; a[0] < p; ++a[0])
    for (a[1] = 0; a[1] < p; ++a[1])
      for (a[2] = 0; a[2] < p; ++a[2])
        for (a[3] = 0; a[3] < p; ++a[3])
          for (a[4] = 0; a[4] < p; ++a[4]) {
            if (residue_invariants(a, p).four_I3_minus_J2 != 0) continue;
            out->push_back({a[0], a[1] * inv4 % p, a[2] * inv6 % p, a[3] * inv4 % p, a[4]});
          }
  slot = std::move(out);
  return *slot;
}

// Trace of y^2 = x^3 - 3I x^2 + J^2 by (I, J) residues.
class TraceMemo {
 public:
  explicit TraceMemo(std::int64_t p) : p_(p) {
    if (p <= kDenseLimit) {
      dense_ = std::make_unique<std::atomic<std::int32_t>[]>(static_cast<std::size_t>(p * p));
      for (std::int64_t i = 0; i < p * p; ++i) dense_[static_cast<std::size_t>(i)].store(kUnset);
    }
  }

  std::int64_t get(std::int64_t I, std::int64_t J) {
    if (dense_) {
      auto& slot = dense_[static_cast<std::size_t>(I * p_ + J)];
      std::int32_t v = slot.load(std::memory_order_relaxed);
      if (v == kUnset) {
        v = static_cast<std::int32_t>(compute(I, J));
        slot.store(v, std::memory_order_relaxed);
      }
      return v;
    }
    const std::uint64_t key = static_cast<std::uint64_t>(I) << 32 | static_cast<std::uint64_t>(J);
    {
      const std::lock_guard<std::mutex> lock(mutex_);
      const auto it = sparse_.find(key);
      if (it != sparse_.end()) return it->second;
    }
    const std::int64_t v = compute(I, J);
    const std::lock_guard<std::mutex> lock(mutex_);
    sparse_.emplace(key, v);
    return v;
  }

 private:
  static constexpr std::int64_t kDenseLimit = 2048;
  static constexpr std::int32_t kUnset = INT32_MIN;

  [[nodiscard]] std::int64_t compute(std::int64_t I, std::int64_t J) const {
    const Prime prime(p_);
    const FpElem zero(0, prime);
    return trace(ModCurve{zero, FpElem(-3 * I, prime), zero, FpElem(J, prime) * FpElem(J, prime)});
  }

  std::int64_t p_;
  std::unique_ptr<std::atomic<std::int32_t>[]> dense_;
  std::mutex mutex_;
  std::unordered_map<std::uint64_t, std::int64_t> sparse_;
};

TraceMemo& trace_memo(std::int64_t p) {
  thread_local std::int64_t last_p = 0;
  thread_local TraceMemo* last = nullptr;
  if (last_p == p) return *last;
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<TraceMemo>> memos;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = memos[p];
  if (!slot) slot = std::make_unique<TraceMemo>(p);
  last_p = p;
  last = slot.get();
  return *slot;
}

std::array<std::int64_t, 5> residues(const ModForm& f) {
  return {f.a[0].value(), f.a[1].value(), f.a[2].value(), f.a[3].value(), f.a[4].value()};
}

FourierValue prime_value(std::int64_t n, std::int64_t p) { return {Integer(n), Integer(p)}; }

}  // namespace

Rational FourierValue::value() const { return Rational(n, pow(q, 5)); }

std::string FourierValue::str() const { return n.str() + "/" + q.str() + "^5"; }

FourierValue oracle_fourier(const ModForm& f) {
  const Prime prime(f.a[0].modulus());
  require_theorem_prime(prime);
  const std::int64_t p = prime.value();
  const auto& singular = weighted_singular_vectors(prime);
  const auto a = residues(f);
  std::vector<std::int64_t> fiber(static_cast<std::size_t>(p), 0);
  for (const auto& w : singular) {
    ++fiber[static_cast<std::size_t>((w[0] * a[0] + w[1] * a[1] + w[2] * a[2] + w[3] * a[3] + w[4] * a[4]) % p)];
  }
  for (std::int64_t t = 2; t < p; ++t) {
    if (fiber[static_cast<std::size_t>(t)] != fiber[1]) {
      throw InternalInconsistency("oracle_fourier: unequal nonzero fibers for " + format_form(f));
    }
  }
  const auto total = static_cast<std::int64_t>(singular.size());
  if ((p - 1) * fiber[1] != total - fiber[0]) {
    throw InternalInconsistency("oracle_fourier: fiber sizes do not add up for " + format_form(f));
  }
  // sum_t N_t e(t/p) with N_t constant for t != 0, and the nonzero roots of unity sum to -1.
  return prime_value(fiber[0] - fiber[1], p);
}

std::int64_t closed_fourier_numerator(const std::array<std::int64_t, 5>& a, const Prime& prime) {
  require_theorem_prime(prime);
  const std::int64_t p = prime.value();
  if (a[0] == 0 && a[1] == 0 && a[2] == 0 && a[3] == 0 && a[4] == 0) return p * p * p * p + p * p * p - p * p;
  const auto inv = residue_invariants(a, p);
  if (inv.four_I3_minus_J2 != 0) {
    if (inv.J != 0) return p * trace_memo(p).get(inv.I, inv.J);
    return legendre(mod_reduce(-3 * inv.I, p), prime) * p;
  }
  const std::int64_t chi = chi12(prime);
  const SplittingType t = splitting_type(make_mod_form(a, prime));
  switch (t) {
    case SplittingType::T1four:
    case SplittingType::T1cube1: return p * p * (p - 1);
    case SplittingType::T1sq1sq: return -chi * p * (p - 1);
    case SplittingType::T2sq: return chi * p * (p + 1);
    case SplittingType::T1sq11:
    case SplittingType::T1sq2: return chi * p;
    default: break;
  }
  throw InternalInconsistency("closed_fourier: Disc = 0 but splitting type is " + std::string(to_string(t)));
}

FourierValue closed_fourier(const ModForm& f) {
  const Prime prime(f.a[0].modulus());
  return prime_value(closed_fourier_numerator(residues(f), prime), prime.value());
}

FourierValue fourier_q(const Integer& q, const IntForm& f) {
  if (q <= 0) throw std::invalid_argument("fourier_q: q must be positive");
  Integer rest = q;
  FourierValue out{1, 1};
  for (Integer d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    rest /= d;
    if (rest % d == 0) throw std::invalid_argument("fourier_q: q = " + q.str() + " is not squarefree");
    if (d > 3) {
      const Prime p(static_cast<std::int64_t>(d));
      out.n *= closed_fourier_numerator(residues(reduce(f, p)), p);
      out.q *= d;
    }
  }
  if (rest > 3) {
    const Prime p(static_cast<std::int64_t>(rest));
    out.n *= closed_fourier_numerator(residues(reduce(f, p)), p);
    out.q *= rest;
  }
  return out;
}

std::string_view to_string(BoundClass c) noexcept {
  switch (c) {
    case BoundClass::Origin: return "origin";
    case BoundClass::FamilyX: return "family_x";
    case BoundClass::Generic: return "generic";
  }
  return "?";
}

BoundClass bound_class(const ModForm& f) {
  require_theorem_prime(Prime(f.a[0].modulus()));
  if (f.is_zero()) return BoundClass::Origin;
  return in_family_X(f) ? BoundClass::FamilyX : BoundClass::Generic;
}

bool within_class_bound(BoundClass c, std::int64_t n, std::int64_t p) {
  const Integer m = abs(Integer(n));
  const Integer q = p;
  switch (c) {
    case BoundClass::Origin: return m <= q * q * q * q + q * q * q;
    case BoundClass::FamilyX: return m <= q * q * q;
    case BoundClass::Generic: return m <= q || (m - q) * (m - q) <= 4 * q * q * q;
  }
  return false;
}

}  // namespace bqf
