// Factorization of integral binary quartics over Q, and the predicates built
// on it. All arithmetic is done in Integer; the int64 instantiations convert
// on the way in and out.
#include "bqf/quartic.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>

namespace bqf {
namespace {

using Coeffs = std::vector<Integer>;  // entry j multiplies x^(d-j) y^j

Integer isqrt_ceil(const Integer& n) {
  Integer r = boost::multiprecision::sqrt(n);
  if (r * r < n) ++r;
  return r;
}

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Integer eval_homogeneous(const Coeffs& g, const Integer& x, const Integer& y) {
  Integer acc = 0;
  Integer ypow = 1;
  // Horner in x, with y powers folded in term by term.
  for (const auto& c : g) {
    acc = acc * x + c * ypow;
    ypow *= y;
  }
  return acc;
}

// Exact division of g by the binary form (s x - r y). Returns false if inexact.
bool divide_linear(Coeffs& g, const Integer& s, const Integer& r) {
  Coeffs q(g.size() - 1);
  Coeffs rem = g;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (rem[i] % s != 0) return false;
    q[i] = rem[i] / s;
    rem[i + 1] += q[i] * r;
  }
  if (rem.back() != 0) return false;
  g = std::move(q);
  return true;
}

Coeffs mul(const Coeffs& u, const Coeffs& v) {
  Coeffs out(u.size() + v.size() - 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i + j] += u[i] * v[j];
  }
  return out;
}

// A quadratic factor of a primitive quartic with no rational roots.
std::optional<std::pair<Coeffs, Coeffs>> find_quadratic_split(const Coeffs& g) {
  const Integer& g0 = g[0];
  const Integer& g4 = g[4];
  Integer norm2 = 0;
  for (const auto& c : g) norm2 += c * c;
  const Integer bound = 2 * isqrt_ceil(norm2) + 1;

  for (const Integer& b0 : positive_divisors(g0)) {
    const Integer c0 = g0 / b0;
    for (const Integer& d : positive_divisors(g4)) {
      for (const Integer& b2 : {d, Integer(-d)}) {
        const Integer c2 = g4 / b2;
        const auto accept = [&](const Integer& b1, const Integer& c1) -> std::optional<std::pair<Coeffs, Coeffs>> {
          Coeffs b{b0, b1, b2};
          Coeffs c{c0, c1, c2};
          if (mul(b, c) == g) return std::make_pair(std::move(b), std::move(c));
          return std::nullopt;
        };
        const Integer det = c0 * b2 - b0 * c2;
        if (det != 0) {
          const Integer nb1 = g[1] * b2 - b0 * g[3];
          const Integer nc1 = c0 * g[3] - c2 * g[1];
          if (nb1 % det != 0 || nc1 % det != 0) continue;
          if (auto hit = accept(nb1 / det, nc1 / det)) return hit;
        } else {
          for (Integer b1 = -bound; b1 <= bound; ++b1) {
            const Integer rest = g[1] - b1 * c0;
            if (rest % b0 != 0) continue;
            if (auto hit = accept(b1, rest / b0)) return hit;
          }
        }
      }
    }
  }
  return std::nullopt;
}

struct Factorization {
  Integer content;
  std::vector<std::pair<Coeffs, int>> factors;
};

void add_factor(Factorization& out, Coeffs c) {
  for (auto& [existing, mult] : out.factors) {
    if (existing == c) {
      ++mult;
      return;
    }
  }
  out.factors.emplace_back(std::move(c), 1);
}

Factorization factor_core(const std::array<Integer, 5>& a) {
  Integer content = 0;
  for (const auto& c : a) content = gcd(content, c);
  if (content == 0) throw std::invalid_argument("factor_over_Q: zero form");
  for (const auto& c : a) {
    if (c != 0) {
      if (c < 0) content = -content;
      break;
    }
  }
  Factorization out{content, {}};
  Coeffs g(a.begin(), a.end());
  for (auto& c : g) c /= content;

  while (g.front() == 0) {
    add_factor(out, {0, 1});
    g.erase(g.begin());
  }
  while (g.back() == 0) {
    add_factor(out, {1, 0});
    g.pop_back();
  }

  bool found = true;
  while (found && g.size() > 2) {
    found = false;
    const auto ss = positive_divisors(g.front());
    const auto rs = positive_divisors(g.back());
    for (const Integer& s : ss) {
      for (const Integer& rabs : rs) {
        if (gcd(s, rabs) != 1) continue;
        for (const Integer& r : {rabs, Integer(-rabs)}) {
          if (eval_homogeneous(g, r, s) != 0) continue;
          while (g.size() > 1 && divide_linear(g, s, r)) add_factor(out, {s, -r});
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
  }

  if (g.size() == 5) {
    if (auto split = find_quadratic_split(g)) {
      add_factor(out, std::move(split->first));
      add_factor(out, std::move(split->second));
      g = {1};
    }
  }
  if (g.size() > 1) {
    add_factor(out, std::move(g));
  } else if (g.front() != 1) {
    throw InternalInconsistency("factor_over_Q: leftover unit is not 1");
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& l, const auto& r) {
    if (l.first.size() != r.first.size()) return l.first.size() < r.first.size();
    return l.first < r.first;
  });
  return out;
}

template <typename T>
std::array<Integer, 5> widen(const QuarticForm<T>& f) {
  std::array<Integer, 5> out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = Integer(f.a[i]);
  return out;
}

template <typename T>
T narrow(const Integer& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v;
  } else {
    return v.template convert_to<T>();
  }
}

// --- Sturm sequences over Q ----------------------------------------------------

using QPoly = std::vector<Rational>;  // low degree first, trimmed

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly remainder(QPoly a, const QPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int count_real_roots(QPoly p) {
  trim(p);
  QPoly dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<int>(i));
  trim(dp);
  std::vector<QPoly> seq{p, dp};
  while (!seq.back().empty()) {
    QPoly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  const auto changes = [&](bool at_plus) {
    int count = 0;
    int prev = 0;
    for (const auto& q : seq) {
      int s = q.back() > 0 ? 1 : -1;
      if (!at_plus && (q.size() - 1) % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

}  // namespace

template <typename T>
RationalFactorization<T> factor_over_Q(const QuarticForm<T>& f) {
  const Factorization core = factor_core(widen(f));
  RationalFactorization<T> out{narrow<T>(core.content), {}};
  for (const auto& [coeffs, mult] : core.factors) {
    RationalFactor<T> factor{{}, mult};
    for (const auto& c : coeffs) factor.coeffs.push_back(narrow<T>(c));
    out.factors.push_back(std::move(factor));
  }
  return out;
}

// Factor degrees modulo a prime of good reduction refine those over Q. Type (4)
// rules out every splitting; (31) together with (22) does too.
bool irreducible_by_reduction(const std::array<Integer, 5>& a) {
  bool seen31 = false;
  bool seen22 = false;
  for (const std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    const Prime prime(p);
    if (FpElem(a[0], prime).is_zero()) continue;
    const ModForm g{{FpElem(a[0], prime), FpElem(a[1], prime), FpElem(a[2], prime), FpElem(a[3], prime),
                     FpElem(a[4], prime)}};
    if (discriminant(g).is_zero()) continue;
    switch (splitting_type(g)) {
      case SplittingType::T4: return true;
      case SplittingType::T31: seen31 = true; break;
      case SplittingType::T22: seen22 = true; break;
      default: break;
    }
    if (seen31 && seen22) return true;
  }
  return false;
}

template <typename T>
bool is_irreducible_over_Q(const QuarticForm<T>& f) {
  if (f.is_zero()) return false;
  if (irreducible_by_reduction(widen(f))) return true;
  const Factorization core = factor_core(widen(f));
  return core.factors.size() == 1 && core.factors.front().second == 1;
}

template <typename T>
bool in_family_X(const QuarticForm<T>& f) {
  if (f.is_zero()) return true;
  const IntForm wide{widen(f)};
  if (discriminant(wide) != 0) return false;
  const Factorization core = factor_core(wide.a);
  bool all_even = true;
  for (const auto& [coeffs, mult] : core.factors) {
    if (mult >= 3) return true;
    if (mult % 2 != 0) all_even = false;
  }
  return all_even;
}

template <typename T>
bool is_R_soluble(const QuarticForm<T>& f) {
  const auto a = widen(f);
  if (a[0] >= 0 || a[4] >= 0) return true;
  // Both ends negative: solubility means f(x, 1) has a real root.
  const Coeffs g(a.begin(), a.end());
  for (int x = -4; x <= 4; ++x) {
    if (eval_homogeneous(g, Integer(x), Integer(1)) >= 0) return true;
  }
  QPoly poly;
  for (auto it = a.rbegin(); it != a.rend(); ++it) poly.emplace_back(*it);
  return count_real_roots(std::move(poly)) > 0;
}

template RationalFactorization<Integer> factor_over_Q(const QuarticForm<Integer>&);
template RationalFactorization<std::int64_t> factor_over_Q(const QuarticForm<std::int64_t>&);
template bool is_irreducible_over_Q(const QuarticForm<Integer>&);
template bool is_irreducible_over_Q(const QuarticForm<std::int64_t>&);
template bool in_family_X(const QuarticForm<Integer>&);
template bool in_family_X(const QuarticForm<std::int64_t>&);
template bool is_R_soluble(const QuarticForm<Integer>&);
template bool is_R_soluble(const QuarticForm<std::int64_t>&);

}  // namespace bqf
