#include "bqf/fourier.hpp"
#include "bqf/schemes.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

using namespace bqf;

namespace {

ModForm form(std::int64_t p, std::array<std::int64_t, 5> a) { return make_mod_form(a, Prime(p)); }

std::int64_t n_of(const FourierValue& v) { return static_cast<std::int64_t>(v.n); }

std::vector<ModForm> all_forms(std::int64_t p) {
  std::vector<ModForm> out;
  std::array<std::int64_t, 5> a{};
  for (a[0] = 0; a[0] < p; ++a[0])
    for (a[1] = 0; a[1] < p; ++a[1])
      for (a[2] = 0; a[2] < p; ++a[2])
        for (a[3] = 0; a[3] < p; ++a[3])
          for (a[4] = 0; a[4] < p; ++a[4]) out.push_back(form(p, a));
  return out;
}

ModForm random_form(std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  return form(p, {d(rng), d(rng), d(rng), d(rng), d(rng)});
}

// Direct sum of cos(2 pi [w, f] / 35) over w in V(Z/35) singular modulo 5 and 7.
double crt_character_sum(const IntForm& f) {
  std::vector<std::array<std::int64_t, 5>> s5, s7;
  for (const std::int64_t p : {5, 7}) {
    auto& dst = p == 5 ? s5 : s7;
    std::array<std::int64_t, 5> a{};
    for (a[0] = 0; a[0] < p; ++a[0])
      for (a[1] = 0; a[1] < p; ++a[1])
        for (a[2] = 0; a[2] < p; ++a[2])
          for (a[3] = 0; a[3] < p; ++a[3])
            for (a[4] = 0; a[4] < p; ++a[4])
              if (discriminant(form(p, a)).is_zero()) dst.push_back(a);
  }
  // w = 21 w5 + 15 w7 (mod 35); weights 1, 1/4, 1/6, 1/4, 1 are 1, 9, 6, 9, 1 mod 35.
  const std::array<std::int64_t, 5> weight{1, 9, 6, 9, 1};
  std::array<std::int64_t, 5> fw{};
  for (std::size_t i = 0; i < 5; ++i) fw[i] = mod_reduce(f.a[i], 35) * weight[i] % 35;
  std::array<double, 35> cosines{};
  for (int t = 0; t < 35; ++t) cosines[static_cast<std::size_t>(t)] = std::cos(2 * std::numbers::pi * t / 35.0);
  double sum = 0;
  for (const auto& u : s5) {
    std::int64_t tu = 0;
    for (std::size_t i = 0; i < 5; ++i) tu += 21 * u[i] * fw[i];
    for (const auto& v : s7) {
      std::int64_t t = tu;
      for (std::size_t i = 0; i < 5; ++i) t += 15 * v[i] * fw[i];
      sum += cosines[static_cast<std::size_t>(t % 35)];
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("fourier examples") {
  const std::int64_t p = 5;
  CHECK(n_of(oracle_fourier(zero_mod_form(Prime(p)))) == 725);
  CHECK(n_of(closed_fourier(zero_mod_form(Prime(p)))) == 725);
  CHECK(closed_fourier(zero_mod_form(Prime(p))).value() == Rational(1, 5) + Rational(1, 25) - Rational(1, 125));
  CHECK(n_of(oracle_fourier(form(p, {1, 0, 0, 0, 0}))) == 100);
  CHECK(n_of(closed_fourier(form(p, {1, 0, 0, 0, 0}))) == 100);
  CHECK(n_of(oracle_fourier(form(p, {1, 0, 0, 1, 0}))) == 0);
  CHECK(n_of(closed_fourier(form(p, {1, 0, 0, 1, 0}))) == 0);
  // (x^2 - 2 y^2)^2, 2 a nonresidue mod 5
  REQUIRE(splitting_type(form(p, {1, 0, -4, 0, 4})) == SplittingType::T2sq);
  CHECK(n_of(closed_fourier(form(p, {1, 0, -4, 0, 4}))) == -30);
  // x^4 + y^4: J = 0, -3I = -36 is a square mod 5
  CHECK(n_of(closed_fourier(form(p, {1, 0, 0, 0, 1}))) == 5);
  CHECK(n_of(oracle_fourier(form(p, {1, 0, 0, 0, 1}))) == 5);
  CHECK(closed_fourier(form(p, {1, 0, 0, 0, 0})).str() == "100/5^5");
  CHECK_THROWS_AS(closed_fourier(zero_mod_form(Prime(3))), std::invalid_argument);
  CHECK_THROWS_AS(oracle_fourier(zero_mod_form(Prime(3))), std::invalid_argument);
}

TEST_CASE("oracle equals closed form, exhaustive p = 5") {
  for (const auto& f : all_forms(5)) {
    CAPTURE(format_form(f));
    CHECK(oracle_fourier(f) == closed_fourier(f));
  }
}

TEST_CASE("oracle equals closed form, sampled") {
  std::mt19937_64 rng(2024);
  for (const std::int64_t p : {7, 11, 13}) {
    for (int i = 0; i < 60; ++i) {
      const ModForm f = random_form(p, rng);
      CAPTURE(format_form(f));
      CHECK(oracle_fourier(f) == closed_fourier(f));
    }
  }
}

TEST_CASE("closed form agrees with the scheme decomposition") {
  for (const std::int64_t p : {5, 7}) {
    for (const auto& pt : projective_points<5>(p)) {
      const ModForm f = form(p, pt);
      CAPTURE(format_form(f));
      CHECK(n_of(closed_fourier(f)) ==
            p * (count_X122(f) + count_X22(f) - count_X1212(f) - (p + 1) * (p + 1)));
      CHECK(n_of(closed_fourier(f)) == 1 + p * count_Xf(f) - count_X(Prime(p)));
    }
  }
}

TEST_CASE("closed form is PGL2 invariant") {
  std::mt19937_64 rng(99);
  for (const std::int64_t p : {5, 11, 17}) {
    const Prime prime(p);
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    for (int i = 0; i < 100; ++i) {
      const GL2Elem<FpElem> g{FpElem(d(rng), prime), FpElem(d(rng), prime), FpElem(d(rng), prime),
                              FpElem(d(rng), prime)};
      const FpElem lambda(d(rng), prime);
      if (g.det().is_zero() || lambda.is_zero()) continue;
      const ModForm f = random_form(p, rng);
      CAPTURE(format_form(f));
      CHECK(closed_fourier(act(g, f)) == closed_fourier(f));
      CHECK(closed_fourier(scale(lambda, f)) == closed_fourier(f));
    }
  }
}

TEST_CASE("squarefree moduli") {
  const IntForm zero = make_int_form({0, 0, 0, 0, 0});
  const IntForm quartic = make_int_form({1, 0, 0, 0, 0});
  CHECK(fourier_q(6, zero).value() == 1);
  CHECK(fourier_q(6, make_int_form({3, -1, 4, 1, -5})).value() == 1);
  CHECK(fourier_q(1, zero).value() == 1);
  CHECK(fourier_q(5, zero).value() == Rational(725, 3125));
  CHECK(fourier_q(30, zero).value() == Rational(725, 3125));
  CHECK(fourier_q(35, quartic).value() == Rational(100 * 294, Integer(35) * 35 * 35 * 35 * 35));
  CHECK_THROWS_AS(fourier_q(12, zero), std::invalid_argument);
  CHECK_THROWS_AS(fourier_q(25, zero), std::invalid_argument);
  CHECK_THROWS_AS(fourier_q(0, zero), std::invalid_argument);

  for (const IntForm& f : {quartic, make_int_form({2, -1, 3, 0, 1}), make_int_form({0, 1, 0, 0, 0})}) {
    CAPTURE(format_form(f));
    const FourierValue v = fourier_q(35, f);
    CHECK(v.q == 35);
    CHECK(v.n == closed_fourier(reduce(f, Prime(5))).n * closed_fourier(reduce(f, Prime(7))).n);
    CHECK(crt_character_sum(f) == doctest::Approx(static_cast<double>(v.n)).epsilon(1e-9));
  }
}

TEST_CASE("bound classes") {
  CHECK(bound_class(zero_mod_form(Prime(5))) == BoundClass::Origin);
  CHECK(bound_class(form(5, {0, 0, 1, 0, 0})) == BoundClass::FamilyX);
  CHECK(bound_class(form(5, {0, 1, -1, 0, 0})) == BoundClass::Generic);
  CHECK(to_string(BoundClass::FamilyX) == "family_x");
  for (const std::int64_t p : {5, 7}) {
    for (const auto& f : all_forms(p)) {
      const BoundClass c = bound_class(f);
      const std::int64_t n = n_of(closed_fourier(f));
      CAPTURE(format_form(f));
      CHECK(within_class_bound(c, n, p));
    }
  }
  CHECK(within_class_bound(BoundClass::Generic, 2 * 5 + 4 * 5, 5) == false);
  CHECK(within_class_bound(BoundClass::Generic, -(5 * 4), 5));
}

TEST_CASE("memoized closed form is thread safe") {
  const std::int64_t p = 101;
  const Prime prime(p);
  std::mt19937_64 rng(3);
  std::vector<std::array<std::int64_t, 5>> forms;
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  for (int i = 0; i < 2000; ++i) forms.push_back({d(rng), d(rng), d(rng), d(rng), d(rng)});
  std::vector<std::int64_t> a(forms.size()), b(forms.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < forms.size(); i += 4) a[i] = closed_fourier_numerator(forms[i], prime);
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const Prime q(p);
    const FpElem zero(0, q);
    const auto inv = invariants(make_mod_form(forms[i], q));
    if (!inv.disc.is_zero() && !inv.J.is_zero()) {
      b[i] = p * trace(ModCurve{zero, inv.I * -3, zero, inv.J * inv.J});
    } else {
      b[i] = n_of(closed_fourier(make_mod_form(forms[i], q)));
    }
  }
  CHECK(a == b);
}
