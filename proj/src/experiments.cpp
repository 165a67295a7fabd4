#include "bqf/experiments.hpp"

#include "bqf/fourier.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace bqf {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;
using Coeffs5 = std::array<std::int64_t, 5>;

template <typename T>
struct RawInvariants {
  T I;
  T J;
  T D;  // 4 I^3 - J^2 = 27 Disc
};

template <typename T>
RawInvariants<T> raw_invariants(const Coeffs5& c) {
  const T a0 = c[0], a1 = c[1], a2 = c[2], a3 = c[3], a4 = c[4];
  const T I = 12 * a0 * a4 - 3 * a1 * a3 + a2 * a2;
  const T J = 72 * a0 * a2 * a4 + 9 * a1 * a2 * a3 - 27 * (a0 * a3 * a3 + a1 * a1 * a4) - 2 * a2 * a2 * a2;
  return {I, J, T(4 * I * I * I - J * J)};
}

Integer to_integer(i128 v) {
  const bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  Integer out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? Integer(-out) : out;
}

IntForm to_form(const Coeffs5& c) { return make_int_form(c); }

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

const std::vector<std::int64_t>& primes_cached(std::int64_t n) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<const std::vector<std::int64_t>>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const std::vector<std::int64_t>>(primes_up_to(n));
  return *slot;
}

const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> primes = primes_up_to(1000);
  return primes;
}

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod_u64(r, b, m);
    b = mul_mod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Brent's variant of Pollard rho; n odd composite.
std::uint64_t rho_split(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    const auto step = [&](std::uint64_t v) { return (mul_mod_u64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mul_mod_u64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  for (const std::int64_t sp : small_primes()) {
    const auto p = static_cast<std::uint64_t>(sp);
    if (p * p > n) break;
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (n < 1'000'000 || is_prime_u64(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = rho_split(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

OmegaResult summarize(const std::map<std::uint64_t, int>& factors) {
  OmegaResult r;
  for (const auto& [p, e] : factors) {
    r.omega += e;
    if (e > 1) r.squarefree = false;
  }
  return r;
}

}  // namespace

// --- threads -----------------------------------------------------------------------------

unsigned default_threads() {
  if (const char* env = std::getenv("BQF_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

void parallel_chunks(std::int64_t n, unsigned threads, std::int64_t chunks,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& body) {
  if (chunks < 1) chunks = 1;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  const auto range = [&](std::int64_t k) { return std::pair{k * n / chunks, (k + 1) * n / chunks}; };
  if (threads == 1 || chunks == 1) {
    for (std::int64_t k = 0; k < chunks; ++k) body(k, range(k).first, range(k).second);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::int64_t>(threads, chunks); ++t) {
    pool.emplace_back([&] {
      for (std::int64_t k = next++; k < chunks; k = next++) {
        try {
          body(k, range(k).first, range(k).second);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// --- box sums ---------------------------------------------------------------------------

BoxSum box_sum(std::int64_t Q, std::int64_t r, unsigned threads) {
  if (r < 1 || Q <= r) throw std::invalid_argument("box_sum: needs Q > r >= 1");
  if (Q > 2000) throw std::invalid_argument("box_sum: Q above 2000 is outside desk scale");

  // Squarefree moduli and the primes > 3 they involve.
  std::vector<std::int64_t> primes;
  std::vector<std::vector<std::size_t>> moduli;  // indices into primes
  std::vector<std::int64_t> reduced;            // q / (q, 6)
  for (std::int64_t q = Q; q <= 2 * Q; ++q) {
    std::int64_t rest = q;
    bool squarefree = true;
    std::vector<std::size_t> idx;
    std::int64_t red = 1;
    for (std::int64_t d = 2; d * d <= rest && squarefree; ++d) {
      if (rest % d != 0) continue;
      rest /= d;
      if (rest % d == 0) squarefree = false;
      if (d > 3) {
        red *= d;
        idx.push_back(static_cast<std::size_t>(std::find(primes.begin(), primes.end(), d) - primes.begin()));
        if (idx.back() == primes.size()) primes.push_back(d);
      }
    }
    if (!squarefree) continue;
    if (rest > 3) {
      red *= rest;
      idx.push_back(static_cast<std::size_t>(std::find(primes.begin(), primes.end(), rest) - primes.begin()));
      if (idx.back() == primes.size()) primes.push_back(rest);
    }
    moduli.push_back(std::move(idx));
    reduced.push_back(red);
  }
  std::vector<Prime> prime_objs;
  for (const auto p : primes) prime_objs.emplace_back(p);

  const std::int64_t side = 2 * r + 1;
  const std::int64_t total_forms = side * side * side * side * side;
  const std::int64_t chunk_size = 4096;
  const std::int64_t chunks = (total_forms + chunk_size - 1) / chunk_size;
  std::vector<std::vector<Integer>> part(static_cast<std::size_t>(chunks));
  std::vector<std::vector<Integer>> part_x(static_cast<std::size_t>(chunks));

  parallel_chunks(total_forms, threads, chunks, [&](std::int64_t k, std::int64_t begin, std::int64_t end) {
    std::vector<std::int64_t> sum(moduli.size(), 0), sum_x(moduli.size(), 0);
    std::vector<std::int64_t> np(primes.size());
    for (std::int64_t idx = begin; idx < end; ++idx) {
      Coeffs5 c;
      std::int64_t rest = idx;
      for (auto& v : c) {
        v = rest % side - r;
        rest /= side;
      }
      if (c == Coeffs5{}) continue;
      bool family = false;
      if (raw_invariants<std::int64_t>(c).D == 0) family = in_family_X(QuarticForm<std::int64_t>{c});
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::int64_t p = primes[i];
        const Coeffs5 res{mod_reduce(c[0], p), mod_reduce(c[1], p), mod_reduce(c[2], p), mod_reduce(c[3], p),
                          mod_reduce(c[4], p)};
        np[i] = std::abs(closed_fourier_numerator(res, prime_objs[i]));
      }
      for (std::size_t j = 0; j < moduli.size(); ++j) {
        std::int64_t prod = 1;
        for (const auto i : moduli[j]) prod *= np[i];
        sum[j] += prod;
        if (family) sum_x[j] += prod;
      }
    }
    part[static_cast<std::size_t>(k)].assign(sum.begin(), sum.end());
    part_x[static_cast<std::size_t>(k)].assign(sum_x.begin(), sum_x.end());
  });

  BoxSum out{Q, r, 0, 0, static_cast<std::int64_t>(moduli.size()), total_forms - 1, 0, 0, 0};
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    Integer s = 0, sx = 0;
    for (std::size_t k = 0; k < part.size(); ++k) {
      s += part[k][j];
      sx += part_x[k][j];
    }
    const Integer denom = pow(Integer(reduced[j]), 5);
    out.total += Rational(s, denom);
    out.family_x_part += Rational(sx, denom);
  }
  out.approx = static_cast<double>(out.total);
  const double q = static_cast<double>(Q);
  const double rr = static_cast<double>(r);
  out.scale = rr * rr / q + std::pow(rr, 4) / (q * q) + std::pow(rr, 5) / std::pow(q, 2.5);
  out.ratio = out.approx / out.scale;
  return out;
}

// --- integral points of X -------------------------------------------------------------------

std::int64_t singular_lattice_count(std::int64_t r, LatticeMethod method) {
  if (r < 1) throw std::invalid_argument("singular_lattice_count: r must be positive");
  if (r > 1000) throw std::invalid_argument("singular_lattice_count: r above 1000 is outside desk scale");
  const auto in_box = [r](const Coeffs5& c) {
    return std::all_of(c.begin(), c.end(), [r](std::int64_t v) { return v >= -r && v <= r; });
  };

  if (method == LatticeMethod::Scan) {
    std::int64_t count = 0;
    Coeffs5 c;
    for (c[0] = -r; c[0] <= r; ++c[0])
      for (c[1] = -r; c[1] <= r; ++c[1])
        for (c[2] = -r; c[2] <= r; ++c[2])
          for (c[3] = -r; c[3] <= r; ++c[3])
            for (c[4] = -r; c[4] <= r; ++c[4]) {
              if (raw_invariants<std::int64_t>(c).D != 0) continue;
              count += in_family_X(QuarticForm<std::int64_t>{c});
            }
    return count;
  }

  // M(f) <= ||f||_2 <= sqrt(5) r; M(l) = max(|a|, |b|) for l = ax + by; |q_i| <= C(2, i) M(q).
  const auto largest = [](std::int64_t power, std::int64_t cap) {
    std::int64_t k = 0;
    while (true) {
      i128 v = 1;
      for (std::int64_t i = 0; i < power; ++i) v *= k + 1;
      if (v > cap) return k;
      ++k;
    }
  };
  const std::int64_t five_r2 = 5 * r * r;
  const std::int64_t bound_l = largest(6, five_r2);
  const std::int64_t bound_m = largest(2, five_r2);
  const std::int64_t bound_q = largest(4, 16 * five_r2);

  std::vector<Coeffs5> found{Coeffs5{}};
  for (std::int64_t a = -bound_l; a <= bound_l; ++a)
    for (std::int64_t b = -bound_l; b <= bound_l; ++b) {
      if (a == 0 && b == 0) continue;
      const std::int64_t a3 = a * a * a, a2b = a * a * b, ab2 = a * b * b, b3 = b * b * b;
      for (std::int64_t c = -bound_m; c <= bound_m; ++c)
        for (std::int64_t d = -bound_m; d <= bound_m; ++d) {
          if (c == 0 && d == 0) continue;
          const Coeffs5 f{a3 * c, a3 * d + 3 * a2b * c, 3 * a2b * d + 3 * ab2 * c, 3 * ab2 * d + b3 * c, b3 * d};
          if (in_box(f)) found.push_back(f);
        }
    }
  for (std::int64_t q0 = -bound_q; q0 <= bound_q; ++q0)
    for (std::int64_t q1 = -bound_q; q1 <= bound_q; ++q1)
      for (std::int64_t q2 = -bound_q; q2 <= bound_q; ++q2) {
        const Coeffs5 sq{q0 * q0, 2 * q0 * q1, q1 * q1 + 2 * q0 * q2, 2 * q1 * q2, q2 * q2};
        std::int64_t mx = 0;
        for (const auto v : sq) mx = std::max(mx, std::abs(v));
        if (mx == 0) continue;
        for (std::int64_t t = -r / mx; t <= r / mx; ++t) {
          if (t == 0) continue;
          found.push_back({t * sq[0], t * sq[1], t * sq[2], t * sq[3], t * sq[4]});
        }
      }
  std::sort(found.begin(), found.end());
  return static_cast<std::int64_t>(std::unique(found.begin(), found.end()) - found.begin());
}

// --- factorization ---------------------------------------------------------------------------

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (const std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = pow_mod_u64(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s && witness; ++i) {
      x = mul_mod_u64(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

OmegaResult omega_and_squarefree(const Integer& n, std::int64_t budget) {
  if (n == 0) throw std::invalid_argument("omega_and_squarefree: n must be nonzero");
  Integer m = abs(n);
  const Integer u64_max = std::numeric_limits<std::uint64_t>::max();
  std::map<std::uint64_t, int> factors;
  if (m <= u64_max) {
    factor_u64(static_cast<std::uint64_t>(m), factors);
    return summarize(factors);
  }
  std::int64_t limit = 1;  // largest trial divisor used
  for (const std::int64_t p : primes_cached(budget)) {
    if (Integer(p) * p > m) break;
    limit = p;
    while (m % p == 0) {
      ++factors[static_cast<std::uint64_t>(p)];
      m /= p;
    }
    if (m <= u64_max) break;
  }
  OmegaResult r;
  if (m <= u64_max) {
    factor_u64(static_cast<std::uint64_t>(m), factors);
    return summarize(factors);
  }
  r = summarize(factors);
  // Every prime factor of m now exceeds the largest trial divisor.
  if (Integer(limit) * limit * limit > m) {
    const Integer root = sqrt(m);
    if (boost::multiprecision::miller_rabin_test(m, 32)) {
      r.omega += 1;
    } else {
      r.omega += 2;
      if (root * root == m) r.squarefree = false;
    }
    return r;
  }
  r.omega += 1;  // at least one more prime factor
  r.complete = false;
  return r;
}

// --- census ----------------------------------------------------------------------------------

bool in_S_congruence(const IntForm& f) {
  for (std::size_t i = 0; i < 5; ++i) {
    if ((f.a[i] - kF0[i]) % kSModulus != 0) return false;
  }
  return true;
}

CensusOptions CensusOptions::box(std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("census: coefficient bound must be nonnegative");
  CensusOptions o;
  o.lo.fill(-bound);
  o.hi.fill(bound);
  return o;
}

namespace {

struct ChunkResult {
  CensusReport report;
  std::set<std::pair<Integer, Integer>> ij;
};

template <typename T>
void census_form(const Coeffs5& c, const CensusOptions& o, ChunkResult& out) {
  const auto raw = raw_invariants<T>(c);
  const auto big = [](const T& v) {
    if constexpr (std::is_same_v<T, Integer>) {
      return v;
    } else {
      return to_integer(v);
    }
  };
  if (o.height_bound) {
    const Integer I = big(raw.I);
    const Integer J = big(raw.J);
    if (abs(I * I * I) > *o.height_bound || J * J > 4 * *o.height_bound) return;
  }
  auto& rep = out.report;
  ++rep.scanned;
  const IntForm f = to_form(c);
  const bool s_class = in_S_congruence(f);
  rep.in_S += s_class;
  if (raw.D == 0) return;
  ++rep.nonsingular;

  Integer disc = big(raw.D) / 27;
  Integer disc_prime = disc;
  if (o.require_s) {
    if (disc % (Integer(1) << 20) != 0) throw InternalInconsistency("census: Disc not divisible by 2^20 in S");
    disc_prime = disc >> 20;
  }
  const OmegaResult om = omega_and_squarefree(disc_prime, o.factor_budget);
  if (om.complete) {
    ++rep.by_omega[om.omega];
  } else {
    ++rep.incomplete;
  }
  bool passes = om.complete && (!o.filter_squarefree || om.squarefree) && (o.max_omega < 0 || om.omega <= o.max_omega);
  const bool need_all = o.emit == EmitMode::All;
  std::optional<bool> rs, irr;
  if (passes || need_all) {
    rs = is_R_soluble(QuarticForm<std::int64_t>{c});
    if (o.filter_r_soluble && !*rs) passes = false;
  }
  if (passes || need_all) {
    irr = is_irreducible_over_Q(QuarticForm<std::int64_t>{c});
    if (o.filter_irreducible && !*irr) passes = false;
  }
  if (passes) {
    ++rep.passing;
    out.ij.emplace(big(raw.I), big(raw.J));
  }
  if (passes || need_all) {
    rep.rows.push_back(CensusRow{f, big(raw.I), big(raw.J), disc, height(f), om, *irr, *rs, s_class, passes});
  }
}

}  // namespace

CensusReport census(const CensusOptions& o) {
  std::array<std::vector<std::int64_t>, 5> values;
  std::int64_t total = 1;
  std::int64_t max_abs = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    if (o.lo[i] > o.hi[i]) throw std::invalid_argument("census: empty coefficient range");
    std::int64_t start = o.lo[i];
    std::int64_t step = 1;
    if (o.require_s) {
      start = o.lo[i] + mod_reduce(kF0[i] - o.lo[i], kSModulus);
      step = kSModulus;
    }
    for (std::int64_t v = start; v <= o.hi[i]; v += step) values[i].push_back(v);
    max_abs = std::max({max_abs, std::abs(o.lo[i]), std::abs(o.hi[i])});
    total *= static_cast<std::int64_t>(values[i].size());
    if (total > (std::int64_t{1} << 40)) throw std::invalid_argument("census: region too large");
  }
  const bool fast = max_abs <= 10'000;

  const std::int64_t chunk_size = 8192;
  const std::int64_t chunks = std::max<std::int64_t>(1, (total + chunk_size - 1) / chunk_size);
  std::vector<ChunkResult> parts(static_cast<std::size_t>(chunks));
  parallel_chunks(total, o.threads, chunks, [&](std::int64_t k, std::int64_t begin, std::int64_t end) {
    auto& out = parts[static_cast<std::size_t>(k)];
    for (std::int64_t idx = begin; idx < end; ++idx) {
      // Last coefficient varies fastest, so rows come out in lexicographic order.
      Coeffs5 c;
      std::int64_t rest = idx;
      for (std::size_t i = 5; i-- > 0;) {
        const auto n = static_cast<std::int64_t>(values[i].size());
        c[i] = values[i][static_cast<std::size_t>(rest % n)];
        rest /= n;
      }
      if (fast) {
        census_form<i128>(c, o, out);
      } else {
        census_form<Integer>(c, o, out);
      }
    }
  });

  CensusReport report;
  std::set<std::pair<Integer, Integer>> ij;
  for (auto& part : parts) {
    const auto& r = part.report;
    report.scanned += r.scanned;
    report.nonsingular += r.nonsingular;
    report.passing += r.passing;
    report.in_S += r.in_S;
    report.incomplete += r.incomplete;
    for (const auto& [om, n] : r.by_omega) report.by_omega[om] += n;
    std::move(part.report.rows.begin(), part.report.rows.end(), std::back_inserter(report.rows));
    ij.merge(part.ij);
  }
  report.distinct_IJ_passing = static_cast<std::int64_t>(ij.size());
  return report;
}

void write_census_csv(std::ostream& out, const CensusReport& report) {
  const auto flag = [](bool b) { return b ? "true" : "false"; };
  out << kCensusHeader << '\n';
  for (const auto& row : report.rows) {
    out << '"' << format_form(row.form) << '"';
    for (const auto& a : row.form.a) out << ',' << a;
    out << ',' << row.I << ',' << row.J << ',' << row.disc << ',' << row.height << ',';
    if (row.omega) {
      out << row.omega->omega << (row.omega->complete ? "" : "+") << ',' << flag(row.omega->squarefree);
    } else {
      out << ',';
    }
    out << ',' << flag(row.irreducible) << ',' << flag(row.r_soluble) << ',' << flag(row.in_S) << '\n';
  }
}

}  // namespace bqf
