#include "bqf/quartic.hpp"

#include <algorithm>
#include <cctype>

namespace bqf {

ModForm twisted_act(const GL2Elem<FpElem>& g, const ModForm& f) {
  const FpElem det = g.det();
  if (det.is_zero()) throw std::invalid_argument("twisted_act: singular matrix");
  const FpElem inv = det.inverse();
  return scale(inv * inv, act(g, f));
}

FpElem pairing(const ModForm& f, const ModForm& h) {
  require_char_above_3(f.a[0]);
  const Prime p(f.a[0].modulus());
  const FpElem inv4 = inv_mod(4, p);
  const FpElem inv6 = inv_mod(6, p);
  return f.a[0] * h.a[0] + f.a[1] * h.a[1] * inv4 + f.a[2] * h.a[2] * inv6 + f.a[3] * h.a[3] * inv4 +
         f.a[4] * h.a[4];
}

Matrix3<FpElem> catalecticant(const ModForm& f) {
  require_char_above_3(f.a[0]);
  const Prime p(f.a[0].modulus());
  const FpElem m01 = f.a[1] * inv_mod(4, p);
  const FpElem m02 = f.a[2] * inv_mod(6, p);
  const FpElem m12 = f.a[3] * inv_mod(4, p);
  return {{{f.a[0], m01, m02}, {m01, m02, m12}, {m02, m12, f.a[4]}}};
}

Matrix3<FpElem> catalecticant_adjugate(const ModForm& f) {
  require_char_above_3(f.a[0]);
  const auto& [a0, a1, a2, a3, a4] = f.a;
  const FpElem s = inv_mod(144, Prime(a0.modulus()));
  const FpElem c00 = (a2 * a4 * 24 - a3 * a3 * 9) * s;
  const FpElem c01 = (a2 * a3 * 6 - a1 * a4 * 36) * s;
  const FpElem c02 = (a1 * a3 * 9 - a2 * a2 * 4) * s;
  const FpElem c11 = (a0 * a4 * 144 - a2 * a2 * 4) * s;
  const FpElem c12 = (a1 * a2 * 6 - a0 * a3 * 36) * s;
  const FpElem c22 = (a0 * a2 * 24 - a1 * a1 * 9) * s;
  return {{{c00, c01, c02}, {c01, c11, c12}, {c02, c12, c22}}};
}

namespace {

int rank3(Matrix3<FpElem> m) {
  int rank = 0;
  for (std::size_t col = 0; col < 3 && rank < 3; ++col) {
    const auto r = static_cast<std::size_t>(rank);
    std::size_t pivot = r;
    while (pivot < 3 && m[pivot][col].is_zero()) ++pivot;
    if (pivot == 3) continue;
    std::swap(m[pivot], m[r]);
    const FpElem inv = m[r][col].inverse();
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == r || m[i][col].is_zero()) continue;
      const FpElem factor = m[i][col] * inv;
      for (std::size_t j = 0; j < 3; ++j) m[i][j] -= factor * m[r][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int catalecticant_corank(const ModForm& f) {
  if (f.is_zero()) throw std::invalid_argument("catalecticant_corank: zero form");
  return 3 - rank3(catalecticant(f));
}

// --- splitting types ------------------------------------------------------------

std::string_view to_string(SplittingType t) noexcept {
  switch (t) {
    case SplittingType::Zero: return "0";
    case SplittingType::T1111: return "1111";
    case SplittingType::T211: return "211";
    case SplittingType::T31: return "31";
    case SplittingType::T22: return "22";
    case SplittingType::T4: return "4";
    case SplittingType::T1sq11: return "1^2 11";
    case SplittingType::T1sq2: return "1^2 2";
    case SplittingType::T1sq1sq: return "1^2 1^2";
    case SplittingType::T2sq: return "2^2";
    case SplittingType::T1cube1: return "1^3 1";
    case SplittingType::T1four: return "1^4";
  }
  return "?";
}

bool is_degenerate(SplittingType t) noexcept {
  switch (t) {
    case SplittingType::T1111:
    case SplittingType::T211:
    case SplittingType::T31:
    case SplittingType::T22:
    case SplittingType::T4: return false;
    default: return true;
  }
}

bool in_family_X(SplittingType t) noexcept {
  return t == SplittingType::Zero || t == SplittingType::T1four || t == SplittingType::T1cube1 ||
         t == SplittingType::T1sq1sq || t == SplittingType::T2sq;
}

std::optional<std::array<FpElem, 3>> square_root_form(const ModForm& f) {
  const FpElem zero = f.a[0].lift(0);
  const FpElem two = f.a[0].lift(2);
  std::array<FpElem, 3> b{zero, zero, zero};
  if (!f.a[0].is_zero()) {
    const auto r = sqrt_mod(f.a[0]);
    if (!r) return std::nullopt;
    b[0] = *r;
    b[1] = f.a[1] / (two * b[0]);
    b[2] = (f.a[2] - b[1] * b[1]) / (two * b[0]);
  } else if (!f.a[2].is_zero()) {
    const auto r = sqrt_mod(f.a[2]);
    if (!r) return std::nullopt;
    b[1] = *r;
    b[2] = f.a[3] / (two * b[1]);
  } else {
    const auto r = sqrt_mod(f.a[4]);
    if (!r) return std::nullopt;
    b[2] = *r;
  }
  const std::array<FpElem, 5> sq{b[0] * b[0], two * b[0] * b[1], b[1] * b[1] + two * b[0] * b[2], two * b[1] * b[2],
                                 b[2] * b[2]};
  if (sq != f.a) return std::nullopt;
  return b;
}

SplittingType splitting_type(const ModForm& f) {
  if (f.is_zero()) return SplittingType::Zero;
  const std::int64_t p = f.a[0].modulus();

  // g(x) = f(x, 1), high degree first; leading zeros are powers of y.
  std::vector<std::int64_t> g;
  int y_mult = 0;
  for (const auto& c : f.a) {
    if (g.empty() && c.is_zero()) {
      ++y_mult;
      continue;
    }
    g.push_back(c.value());
  }

  std::vector<int> linear;
  if (y_mult > 0) linear.push_back(y_mult);
  const auto eval = [&](std::int64_t r) {
    std::int64_t acc = 0;
    for (const auto c : g) acc = (acc * r + c) % p;
    return acc;
  };
  for (std::int64_t r = 0; r < p && g.size() > 1; ++r) {
    int mult = 0;
    while (g.size() > 1 && eval(r) == 0) {
      std::vector<std::int64_t> q(g.size() - 1);
      std::int64_t carry = 0;
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        carry = (carry * r + g[i]) % p;
        q[i] = carry;
      }
      g = std::move(q);
      ++mult;
    }
    if (mult > 0) linear.push_back(mult);
  }
  std::sort(linear.begin(), linear.end(), std::greater<>());
  const int residual = static_cast<int>(g.size()) - 1;

  switch (residual) {
    case 0:
      if (linear == std::vector<int>{1, 1, 1, 1}) return SplittingType::T1111;
      if (linear == std::vector<int>{2, 1, 1}) return SplittingType::T1sq11;
      if (linear == std::vector<int>{2, 2}) return SplittingType::T1sq1sq;
      if (linear == std::vector<int>{3, 1}) return SplittingType::T1cube1;
      if (linear == std::vector<int>{4}) return SplittingType::T1four;
      break;
    case 2:
      if (linear == std::vector<int>{1, 1}) return SplittingType::T211;
      if (linear == std::vector<int>{2}) return SplittingType::T1sq2;
      break;
    case 3:
      if (linear == std::vector<int>{1}) return SplittingType::T31;
      break;
    case 4: {
      if (square_root_form(scale(f.a[0].inverse(), f))) return SplittingType::T2sq;
      const Prime pr(p);
      const PolyFp h(std::vector<std::int64_t>(g.rbegin(), g.rend()), pr);
      const PolyFp x = PolyFp::x(pr);
      const PolyFp frob2 = poly_powmod(x, Integer(p) * p, h);
      return frob2 == poly_mod(x, h) ? SplittingType::T22 : SplittingType::T4;
    }
    default: break;
  }
  throw InternalInconsistency("splitting_type: impossible factor pattern for " + format_form(f));
}

bool in_family_X(const ModForm& f) { return in_family_X(splitting_type(f)); }

Rational height(const IntForm& f) {
  const Integer I = invariant_I(f);
  const Integer J = invariant_J(f);
  const Integer absI3 = abs(I * I * I);
  const Rational j2 = Rational(J * J, 4);
  const Rational i3(absI3);
  return i3 > j2 ? i3 : j2;
}

// --- construction and serialization ------------------------------------------------

IntForm make_int_form(const std::array<std::int64_t, 5>& coeffs) {
  IntForm f;
  for (std::size_t i = 0; i < 5; ++i) f.a[i] = coeffs[i];
  return f;
}

ModForm make_mod_form(const std::array<std::int64_t, 5>& coeffs, const Prime& p) {
  return {{FpElem(coeffs[0], p), FpElem(coeffs[1], p), FpElem(coeffs[2], p), FpElem(coeffs[3], p),
           FpElem(coeffs[4], p)}};
}

ModForm reduce(const IntForm& f, const Prime& p) {
  return {{FpElem(f.a[0], p), FpElem(f.a[1], p), FpElem(f.a[2], p), FpElem(f.a[3], p), FpElem(f.a[4], p)}};
}

ModForm zero_mod_form(const Prime& p) { return make_mod_form({0, 0, 0, 0, 0}, p); }

std::string format_form(const IntForm& f) {
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += ',';
    out += f.a[i].str();
  }
  return out;
}

std::string format_form(const ModForm& f) {
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += ',';
    out += std::to_string(f.a[i].value());
  }
  return out;
}

IntForm parse_form(std::string_view text) {
  IntForm f;
  std::size_t idx = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    std::string_view digits = field;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("malformed form \"" + std::string(text) + "\": expected a0,a1,a2,a3,a4");
    }
    if (idx >= 5) throw std::invalid_argument("form has more than five coefficients: " + std::string(text));
    std::string s(field);
    if (s.front() == '+') s.erase(0, 1);
    f.a[idx++] = Integer(s);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (idx != 5) throw std::invalid_argument("form needs five coefficients: " + std::string(text));
  return f;
}

}  // namespace bqf
