#include "bqf/schemes.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace bqf {
namespace {

using Binary = std::vector<std::int64_t>;  // entry j multiplies x^(d-j) y^j

Binary mul_mod_p(const Binary& u, const Binary& v, std::int64_t p) {
  Binary out(u.size() + v.size() - 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i + j] = (out[i + j] + u[i] * v[j]) % p;
  return out;
}

ProjPoint<5> to_point(const Binary& h) { return {h[0], h[1], h[2], h[3], h[4]}; }

ProjPoint<5> weighted(const ProjPoint<5>& h, const std::array<std::int64_t, 5>& w, std::int64_t p) {
  ProjPoint<5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = h[i] * w[i] % p;
  return out;
}

std::unique_ptr<SchemeTables> build_tables(const Prime& prime) {
  require_theorem_prime(prime);
  const std::int64_t p = prime.value();
  auto t = std::make_unique<SchemeTables>();
  t->p = p;
  const std::int64_t inv4 = inv_mod(4, prime).value();
  const std::int64_t inv6 = inv_mod(6, prime).value();
  t->weights = {1, inv4, inv6, inv4, 1};

  for (const auto& pt : projective_points<5>(p)) {
    if (is_singular_residues(pt, p)) {
      t->singular.push_back(pt);
      t->singular_w.push_back(weighted(pt, t->weights, p));
    }
  }

  const auto lines = projective_points<2>(p);
  const auto quads = projective_points<3>(p);
  const auto add = [&](std::vector<ProjPoint<5>>& raw, std::vector<ProjPoint<5>>& w, const Binary& h) {
    const ProjPoint<5> pt = normalize(to_point(h), p);
    raw.push_back(pt);
    w.push_back(weighted(pt, t->weights, p));
  };
  for (const auto& l : lines) {
    const Binary lb{l[0], l[1]};
    const Binary l2 = mul_mod_p(lb, lb, p);
    for (const auto& q : quads) add(t->image122, t->image122_w, mul_mod_p(l2, Binary{q[0], q[1], q[2]}, p));
  }
  for (const auto& q : quads) {
    const Binary qb{q[0], q[1], q[2]};
    add(t->image22, t->image22_w, mul_mod_p(qb, qb, p));
  }
  for (const auto& l1 : lines) {
    const Binary a{l1[0], l1[1]};
    const Binary a2 = mul_mod_p(a, a, p);
    for (const auto& l2 : lines) {
      const Binary b{l2[0], l2[1]};
      add(t->image1212, t->image1212_w, mul_mod_p(a2, mul_mod_p(b, b, p), p));
    }
  }
  return t;
}

void require_nonzero(const ModForm& f, const char* what) {
  if (f.is_zero()) throw std::invalid_argument(std::string(what) + ": f must be nonzero");
}

// Squarefreeness of a univariate polynomial (low degree first, trimmed) via gcd(g, g').
bool squarefree_poly(std::vector<std::int64_t> g, std::int64_t p, const std::vector<std::int64_t>& inverse) {
  const auto trim = [](std::vector<std::int64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(g);
  if (g.size() <= 2) return !g.empty();
  std::vector<std::int64_t> d;
  for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<std::int64_t>(i) % p);
  trim(d);
  std::vector<std::int64_t> a = std::move(g);
  std::vector<std::int64_t> b = std::move(d);
  while (!b.empty()) {
    const std::int64_t lead_inv = inverse[static_cast<std::size_t>(b.back())];
    while (a.size() >= b.size()) {
      const std::int64_t factor = a.back() * lead_inv % p;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod_reduce(a[shift + i] - factor * b[i], p);
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() == 1;
}

}  // namespace

const SchemeTables& scheme_tables(const Prime& p) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<SchemeTables>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[p.value()];
  if (!slot) slot = build_tables(p);
  return *slot;
}

bool is_singular_residues(const std::array<std::int64_t, 5>& a, std::int64_t p) noexcept {
  const auto m = [p](std::int64_t x, std::int64_t y) { return x * y % p; };
  const std::int64_t I = mod_reduce(12 * m(a[0], a[4]) - 3 * m(a[1], a[3]) + m(a[2], a[2]), p);
  const std::int64_t J =
      mod_reduce(72 * m(m(a[0], a[2]), a[4]) + 9 * m(m(a[1], a[2]), a[3]) -
                     27 * ((m(m(a[0], a[3]), a[3]) + m(m(a[1], a[1]), a[4])) % p) - 2 * m(m(a[2], a[2]), a[2]),
                 p);
  return mod_reduce(4 * m(m(I, I), I) - m(J, J), p) == 0;
}

std::int64_t count_singular_forms(const Prime& p) {
  require_theorem_prime(p);
  const std::int64_t q = p.value();
  return q * q * q * q + q * q * q - q * q;
}

std::int64_t count_singular_forms_brute(const Prime& prime) {
  require_theorem_prime(prime);
  const std::int64_t p = prime.value();
  std::int64_t n = 0;
  std::array<std::int64_t, 5> a{};
  for (a[0] = 0; a[0] < p; ++a[0])
    for (a[1] = 0; a[1] < p; ++a[1])
      for (a[2] = 0; a[2] < p; ++a[2])
        for (a[3] = 0; a[3] < p; ++a[3])
          for (a[4] = 0; a[4] < p; ++a[4]) n += is_singular_residues(a, p);
  return n;
}

Integer count_squarefree_forms(int n, const Prime& p) {
  if (n < 3) throw std::invalid_argument("count_squarefree_forms: degree must be at least 3");
  const Integer q = p.value();
  const Integer base = pow(q, static_cast<unsigned>(n - 2));
  return base * (q * q * q - q * q - q + 1);
}

Integer count_squarefree_forms_brute(int n, const Prime& prime) {
  if (n < 3) throw std::invalid_argument("count_squarefree_forms_brute: degree must be at least 3");
  const std::int64_t p = prime.value();
  std::vector<std::int64_t> inverse(static_cast<std::size_t>(p), 0);
  for (std::int64_t a = 1; a < p; ++a) inverse[static_cast<std::size_t>(a)] = inv_mod(a, prime).value();
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(n + 1), 0);  // coefficient of x^(n-j) y^j
  Integer count = 0;
  while (true) {
    // y^2 divides f exactly when the two leading coefficients vanish.
    if (coeffs[0] != 0 || coeffs[1] != 0) {
      std::vector<std::int64_t> g(coeffs.rbegin(), coeffs.rend());  // f(x, 1), low degree first
      if (squarefree_poly(std::move(g), p, inverse)) ++count;
    }
    std::size_t i = 0;
    while (i < coeffs.size() && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == coeffs.size()) break;
  }
  return count;
}

std::int64_t count_X(const Prime& p) {
  require_theorem_prime(p);
  const std::int64_t q = p.value();
  return q * q * q + 2 * q * q + q + 1;
}

std::int64_t count_X_brute(const Prime& p) { return static_cast<std::int64_t>(scheme_tables(p).singular.size()); }

std::int64_t count_Xf(const ModForm& f) {
  require_nonzero(f, "count_Xf");
  const auto& t = scheme_tables(Prime(f.a[0].modulus()));
  return t.count_zero(t.singular_w, f);
}

FiberCounts psi_fiber_counts(const ModForm& h) {
  require_nonzero(h, "psi_fiber_counts");
  const std::int64_t p = h.a[0].modulus();
  const auto& t = scheme_tables(Prime(p));
  const ProjPoint<5> target =
      normalize(ProjPoint<5>{h.a[0].value(), h.a[1].value(), h.a[2].value(), h.a[3].value(), h.a[4].value()}, p);
  const auto count = [&](const std::vector<ProjPoint<5>>& table) {
    return static_cast<std::int64_t>(std::count(table.begin(), table.end(), target));
  };
  return {count(t.image122), count(t.image22), count(t.image1212)};
}

std::int64_t count_X122(const ModForm& f) {
  require_nonzero(f, "count_X122");
  const auto& t = scheme_tables(Prime(f.a[0].modulus()));
  return t.count_zero(t.image122_w, f);
}

std::int64_t count_X22(const ModForm& f) {
  require_nonzero(f, "count_X22");
  const auto& t = scheme_tables(Prime(f.a[0].modulus()));
  return t.count_zero(t.image22_w, f);
}

std::int64_t count_X1212(const ModForm& f) {
  require_nonzero(f, "count_X1212");
  const auto& t = scheme_tables(Prime(f.a[0].modulus()));
  return t.count_zero(t.image1212_w, f);
}

std::int64_t closed_X122(const ModForm& f) {
  require_nonzero(f, "closed_X122");
  const Prime pr(f.a[0].modulus());
  require_theorem_prime(pr);
  const std::int64_t p = pr.value();
  const SplittingType t = splitting_type(f);
  if (t == SplittingType::T1cube1 || t == SplittingType::T1four) return 2 * p * p + 2 * p + 1;
  return (p + 1) * (p + 1);
}

std::int64_t closed_X22(const ModForm& f) {
  require_nonzero(f, "closed_X22");
  const Prime pr(f.a[0].modulus());
  require_theorem_prime(pr);
  const std::int64_t p = pr.value();
  const SplittingType t = splitting_type(f);
  if (t == SplittingType::T1cube1) return 2 * p + 1;
  if (t == SplittingType::T1four) return p + 1;
  const auto inv = invariants(f);
  if (!inv.J.is_zero()) return p + 1;
  if (inv.disc.is_zero()) {
    throw InternalInconsistency("closed_X22: degenerate form with J = 0 of type " + std::string(to_string(t)));
  }
  return semideg_classify(f).hessian_square ? 2 * p + 1 : 1;
}

std::int64_t closed_X1212(const ModForm& f) {
  require_nonzero(f, "closed_X1212");
  const Prime pr(f.a[0].modulus());
  require_theorem_prime(pr);
  const std::int64_t p = pr.value();
  const std::int64_t chi = chi12(pr);
  switch (splitting_type(f)) {
    case SplittingType::T1sq11:
    case SplittingType::T1sq2: return p + 1 - chi;
    case SplittingType::T1sq1sq: return p + 1 + chi * (p - 1);
    case SplittingType::T2sq: return (p + 1) - chi * (p + 1);
    case SplittingType::T1cube1: return 3 * p + 1;
    case SplittingType::T1four: return 2 * p + 1;
    default: break;
  }
  const auto inv = invariants(f);
  if (!inv.J.is_zero()) return point_count(e_prime_of(f));
  switch (semideg_classify(f).which) {
    case SemidegCase::I: return 2 * p;
    case SemidegCase::II: return 2 * p + 2;
    case SemidegCase::III: return 2;
    case SemidegCase::IV: return 0;
  }
  throw InternalInconsistency("closed_X1212: unreachable");
}

std::string_view to_string(SemidegCase c) noexcept {
  switch (c) {
    case SemidegCase::I: return "i";
    case SemidegCase::II: return "ii";
    case SemidegCase::III: return "iii";
    case SemidegCase::IV: return "iv";
  }
  return "?";
}

SemidegInfo semideg_classify(const ModForm& f) {
  const auto inv = invariants(f);
  if (!inv.J.is_zero() || inv.disc.is_zero()) {
    throw std::invalid_argument("semideg_classify: needs J = 0 and Disc != 0, got " + format_form(f));
  }
  // The kernel of M_f spans the column space of its rank-one adjugate.
  const auto adj = catalecticant_adjugate(f);
  std::optional<std::array<FpElem, 3>> u;
  for (std::size_t j = 0; j < 3 && !u; ++j) {
    if (!adj[0][j].is_zero() || !adj[1][j].is_zero() || !adj[2][j].is_zero()) u = {adj[0][j], adj[1][j], adj[2][j]};
  }
  if (!u) throw InternalInconsistency("semideg_classify: adjugate vanishes for " + format_form(f));
  const FpElem disc_u = (*u)[1] * (*u)[1] - (*u)[0] * (*u)[2] * 4;
  if (disc_u.is_zero()) throw InternalInconsistency("semideg_classify: kernel quadratic is a square");
  const bool rational = legendre(disc_u) == 1;
  const bool square = square_root_form(hessian_cov(f)).has_value();
  SemidegCase which;
  if (rational) {
    which = square ? SemidegCase::I : SemidegCase::III;
  } else {
    which = square ? SemidegCase::II : SemidegCase::IV;
  }
  return {which, rational, square};
}

}  // namespace bqf
