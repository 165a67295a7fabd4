#include "bqf/ffarith.hpp"

#include <doctest.h>

#include <set>

using namespace bqf;

namespace {

// Squares mod p by direct enumeration.
std::set<std::int64_t> squares(std::int64_t p) {
  std::set<std::int64_t> out;
  for (std::int64_t x = 1; x < p; ++x) out.insert(x * x % p);
  return out;
}

std::vector<std::int64_t> small_odd_primes(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 3; n <= bound; n += 2) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK_NOTHROW(Prime(5));
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(15), std::invalid_argument);
  CHECK_THROWS_AS(Prime(Prime::kMax + 2), std::invalid_argument);
  CHECK_THROWS_AS(require_theorem_prime(Prime(3)), std::invalid_argument);
  CHECK_NOTHROW(require_theorem_prime(Prime(5)));
}

TEST_CASE("legendre examples") {
  CHECK(legendre(0, Prime(7)) == 0);
  CHECK(legendre(4, Prime(5)) == 1);
  CHECK(legendre(2, Prime(5)) == -1);
  CHECK_THROWS_AS(legendre(1, Prime(2)), std::invalid_argument);
  CHECK(legendre(Integer(-91), Prime(7)) == 0);
}

TEST_CASE("legendre agrees with enumerated squares and is multiplicative") {
  for (const auto p : small_odd_primes(13)) {
    const Prime pr(p);
    const auto sq = squares(p);
    CHECK(static_cast<std::int64_t>(sq.size()) == (p - 1) / 2);
    for (std::int64_t a = -p; a < 2 * p; ++a) {
      const std::int64_t r = mod_reduce(a, p);
      const int expected = r == 0 ? 0 : (sq.count(r) ? 1 : -1);
      CHECK(legendre(a, pr) == expected);
      for (std::int64_t b = 0; b < p; ++b) CHECK(legendre(a * b, pr) == legendre(a, pr) * legendre(b, pr));
    }
  }
}

TEST_CASE("chi12") {
  CHECK(chi12(Prime(11)) == 1);
  CHECK(chi12(Prime(5)) == -1);
  CHECK(chi12(Prime(13)) == 1);
  CHECK_THROWS_AS(chi12(Prime(2)), std::invalid_argument);
  CHECK_THROWS_AS(chi12(Prime(3)), std::invalid_argument);
  for (std::int64_t p = 5; p <= 1000; ++p) {
    if (!is_prime(p)) continue;
    CHECK(chi12(Prime(p)) == legendre(3, Prime(p)));
  }
}

TEST_CASE("inv_mod") {
  CHECK(inv_mod(1, Prime(7)).value() == 1);
  CHECK(inv_mod(4, Prime(5)).value() == 4);
  CHECK(inv_mod(6, Prime(7)).value() == 6);
  CHECK_THROWS_AS(inv_mod(10, Prime(5)), std::invalid_argument);
  for (const auto p : small_odd_primes(31)) {
    for (std::int64_t a = 1; a < p; ++a) CHECK((inv_mod(a, Prime(p)) * a) == 1);
  }
}

TEST_CASE("quadratic_nonresidue is the least nonresidue") {
  CHECK(quadratic_nonresidue(Prime(5)).value() == 2);
  CHECK(quadratic_nonresidue(Prime(7)).value() == 3);
  CHECK(quadratic_nonresidue(Prime(11)).value() == 2);
  for (const auto p : small_odd_primes(200)) {
    const auto sq = squares(p);
    std::int64_t least = 2;
    while (sq.count(least)) ++least;
    CHECK(quadratic_nonresidue(Prime(p)).value() == least);
  }
}

TEST_CASE("sqrt_mod") {
  for (const auto p : small_odd_primes(100)) {
    const Prime pr(p);
    const auto sq = squares(p);
    for (std::int64_t a = 0; a < p; ++a) {
      const auto r = sqrt_mod(FpElem(a, pr));
      if (a == 0 || sq.count(a)) {
        REQUIRE(r.has_value());
        CHECK((*r * *r) == a);
      } else {
        CHECK_FALSE(r.has_value());
      }
    }
  }
}

TEST_CASE("FpElem arithmetic") {
  const Prime p(13);
  const FpElem a(5, p);
  const FpElem b(-3, p);
  CHECK(b.value() == 10);
  CHECK((a + b) == 2);
  CHECK((a - b) == 8);
  CHECK((a * b) == 11);
  CHECK(((a / b) * b) == a);
  CHECK((-a) == 8);
  CHECK(a.pow(12) == 1);
  CHECK_THROWS_AS(static_cast<void>(FpElem(0, p).inverse()), std::domain_error);
  CHECK_THROWS_AS(a + FpElem(1, Prime(7)), std::invalid_argument);
}

TEST_CASE("poly_powmod") {
  const Prime p(7);
  const PolyFp x = PolyFp::x(p);
  const PolyFp f({1, 2, 0, 1}, p);  // x^3 + 2x + 1
  CHECK(poly_powmod(x, 1, f) == poly_mod(x, f));

  // x^2 - a with a a nonresidue: Frobenius moves the root.
  const std::int64_t a = quadratic_nonresidue(p).value();
  const PolyFp irreducible({-a, 0, 1}, p);
  CHECK_FALSE(poly_powmod(x, Integer(7), irreducible) == x);
  CHECK(poly_powmod(x, Integer(49), irreducible) == x);

  // (x - 1)(x - 3)(x^2 - a): factors of degree <= 2, so x^(p^2) = x.
  const PolyFp split = PolyFp({-1, 1}, p) * PolyFp({-3, 1}, p) * irreducible;
  CHECK(poly_powmod(x, Integer(49), split) == x);
  CHECK_FALSE(poly_powmod(x, Integer(7), split) == x);

  CHECK_THROWS_AS(poly_powmod(x, 3, PolyFp({}, p)), std::invalid_argument);
}

TEST_CASE("poly_powmod agrees with repeated multiplication") {
  const Prime p(11);
  const PolyFp m({3, 0, 5, 1, 0, 2}, p);
  const PolyFp base({7, 1, 4}, p);
  PolyFp acc({1}, p);
  for (int e = 0; e < 40; ++e) {
    CHECK(poly_powmod(base, e, m) == poly_mod(acc, m));
    acc = poly_mod(acc * base, m);
  }
}

TEST_CASE("poly_gcd") {
  const Prime p(5);
  const PolyFp u = PolyFp({1, 1}, p) * PolyFp({2, 0, 1}, p);
  const PolyFp v = PolyFp({1, 1}, p) * PolyFp({3, 1}, p);
  CHECK(poly_gcd(u, v) == PolyFp({1, 1}, p));
}
