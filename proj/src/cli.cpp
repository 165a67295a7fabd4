#include "bqf/cli.hpp"

#include "bqf/elliptic.hpp"
#include "bqf/experiments.hpp"
#include "bqf/fourier.hpp"
#include "bqf/schemes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>

namespace bqf::cli {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = std::max<std::int64_t>(lo, 5); n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

ModForm random_form(std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  return make_mod_form({d(rng), d(rng), d(rng), d(rng), d(rng)}, Prime(p));
}

ModForm form_from_index(std::int64_t idx, std::int64_t p) {
  std::array<std::int64_t, 5> c{};
  for (std::size_t i = 5; i-- > 0;) {
    c[i] = idx % p;
    idx /= p;
  }
  return make_mod_form(c, Prime(p));
}

std::string rational_str(const Rational& r) {
  const Integer num = numerator(r);
  const Integer den = denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// --- verify-theorem ------------------------------------------------------------------

struct VerifyOptions {
  std::int64_t exhaustive_pmax = 7;
  std::int64_t sampled_pmax = 23;
  std::int64_t samples = 200;
  std::uint64_t seed = 1;
};

int verify_theorem(const VerifyOptions& o, unsigned threads, std::ostream& out, std::ostream& err) {
  if (o.samples < 0) throw UsageError("--samples must be nonnegative");
  ordered_json primes = ordered_json::array();
  bool ok = true;
  for (const std::int64_t p : primes_between(5, std::max(o.exhaustive_pmax, o.sampled_pmax))) {
    const bool exhaustive = p <= o.exhaustive_pmax;
    std::vector<ModForm> forms;
    if (exhaustive) {
      const std::int64_t total = p * p * p * p * p;
      for (std::int64_t i = 0; i < total; ++i) forms.push_back(form_from_index(i, p));
    } else {
      std::mt19937_64 rng(o.seed ^ static_cast<std::uint64_t>(p) * 0x9E3779B97F4A7C15ULL);
      for (std::int64_t i = 0; i < o.samples; ++i) forms.push_back(random_form(p, rng));
    }
    err << "verify-theorem: p = " << p << ", " << forms.size() << (exhaustive ? " forms (all)" : " sampled forms")
        << '\n';
    const auto n = static_cast<std::int64_t>(forms.size());
    const std::int64_t chunks = std::max<std::int64_t>(1, n / 512);
    std::vector<std::vector<ordered_json>> found(static_cast<std::size_t>(chunks));
    parallel_chunks(n, threads, chunks, [&](std::int64_t k, std::int64_t b, std::int64_t e) {
      for (std::int64_t i = b; i < e; ++i) {
        const ModForm& f = forms[static_cast<std::size_t>(i)];
        const FourierValue oracle = oracle_fourier(f);
        const FourierValue closed = closed_fourier(f);
        if (oracle != closed) {
          found[static_cast<std::size_t>(k)].push_back(
              {{"p", p}, {"form", format_form(f)}, {"oracle", oracle.n.str()}, {"closed", closed.n.str()}});
        }
      }
    });
    ordered_json mismatches = ordered_json::array();
    for (auto& chunk : found)
      for (auto& m : chunk) mismatches.push_back(std::move(m));
    const bool pass = mismatches.empty();
    ok = ok && pass;
    ordered_json entry{{"p", p}, {"mode", exhaustive ? "exhaustive" : "sampled"}, {"forms", n},
                       {"mismatches", mismatches.size()}, {"pass", pass}};
    if (!pass) entry["first_mismatch"] = mismatches.front();
    primes.push_back(std::move(entry));
  }
  emit(out, {{"command", "verify-theorem"}, {"seed", o.seed}, {"primes", primes}, {"pass", ok}});
  return ok ? kOk : kMismatch;
}

// --- single-form queries --------------------------------------------------------------

int fourier_cmd(std::int64_t p_raw, const std::string& form_text, const std::string& method, std::ostream& out) {
  const Prime p(p_raw);
  require_theorem_prime(p);
  const IntForm f = parse_form(form_text);
  const ModForm g = reduce(f, p);
  ordered_json j{{"command", "fourier"}, {"p", p.value()}, {"form", format_form(f)}, {"method", method}};
  if (method == "oracle" || method == "closed") {
    const FourierValue v = method == "oracle" ? oracle_fourier(g) : closed_fourier(g);
    j["n"] = static_cast<std::int64_t>(v.n);
    j["value"] = v.str();
    emit(out, j);
    return kOk;
  }
  const FourierValue a = oracle_fourier(g);
  const FourierValue b = closed_fourier(g);
  j["n"] = static_cast<std::int64_t>(b.n);
  j["value"] = b.str();
  j["oracle"] = static_cast<std::int64_t>(a.n);
  j["closed"] = static_cast<std::int64_t>(b.n);
  j["agree"] = a == b;
  emit(out, j);
  return a == b ? kOk : kMismatch;
}

int schemes_cmd(std::int64_t p_raw, const std::string& form_text, std::ostream& out) {
  const Prime p(p_raw);
  require_theorem_prime(p);
  const IntForm f = parse_form(form_text);
  const ModForm g = reduce(f, p);
  if (g.is_zero()) throw UsageError("schemes: the form must be nonzero mod p");
  const auto row = [](std::int64_t brute, std::int64_t closed) {
    return ordered_json{{"brute", brute}, {"closed", closed}, {"agree", brute == closed}};
  };
  const std::int64_t b122 = count_X122(g), b22 = count_X22(g), b1212 = count_X1212(g);
  const std::int64_t c122 = closed_X122(g), c22 = closed_X22(g), c1212 = closed_X1212(g);
  const std::int64_t q = p.value();
  const std::int64_t assembled = q * (b122 + b22 - b1212 - (q + 1) * (q + 1));
  const std::int64_t n = static_cast<std::int64_t>(closed_fourier(g).n);
  const bool ok = b122 == c122 && b22 == c22 && b1212 == c1212 && assembled == n;
  emit(out, {{"command", "schemes"},
             {"p", q},
             {"form", format_form(f)},
             {"splitting_type", std::string(to_string(splitting_type(g)))},
             {"X122", row(b122, c122)},
             {"X22", row(b22, c22)},
             {"X1212", row(b1212, c1212)},
             {"Xf", count_Xf(g)},
             {"assembled_n", assembled},
             {"closed_n", n},
             {"pass", ok}});
  return ok ? kOk : kMismatch;
}

// --- experiments ----------------------------------------------------------------------

int box_sum_cmd(std::int64_t Q, std::int64_t r, unsigned threads, std::ostream& out) {
  const BoxSum s = box_sum(Q, r, threads);
  emit(out, {{"command", "box-sum"},
             {"Q", s.Q},
             {"r", s.r},
             {"moduli", s.moduli},
             {"forms", s.forms},
             {"S", rational_str(s.total)},
             {"S_float", s.approx},
             {"family_x_part", rational_str(s.family_x_part)},
             {"scale", s.scale},
             {"ratio", s.ratio}});
  return kOk;
}

int singular_count_cmd(std::int64_t rmax, std::int64_t scan_max, std::ostream& out, std::ostream& err) {
  if (rmax < 1) throw UsageError("--rmax must be positive");
  ordered_json rows = ordered_json::array();
  bool ok = true;
  for (std::int64_t r = 1; r <= rmax; ++r) {
    err << "singular-count: r = " << r << '\n';
    const std::int64_t b = singular_lattice_count(r, LatticeMethod::Parametrized);
    ordered_json row{{"r", r}, {"parametrized", b}, {"ratio", static_cast<double>(b) / static_cast<double>(r * r)}};
    if (r <= scan_max) {
      const std::int64_t a = singular_lattice_count(r, LatticeMethod::Scan);
      row["scan"] = a;
      row["agree"] = a == b;
      ok = ok && a == b;
    }
    rows.push_back(std::move(row));
  }
  emit(out, {{"command", "singular-count"}, {"rows", rows}, {"pass", ok}});
  return ok ? kOk : kMismatch;
}

struct CensusFlags {
  std::int64_t coeff_bound = 5;
  std::string height;
  bool require_s = false;
  std::string out_path;
  std::string emit_mode = "passing";
  bool no_irreducible = false;
  bool no_r_soluble = false;
  bool no_squarefree = false;
  int max_omega = 4;
  std::int64_t budget = 1'000'000;
};

int census_cmd(const CensusFlags& c, unsigned threads, std::ostream& out, std::ostream& err) {
  CensusOptions o = CensusOptions::box(c.coeff_bound);
  if (!c.height.empty()) {
    try {
      o.height_bound = Integer(c.height);
    } catch (const std::exception&) {
      throw UsageError("--height must be an integer, got " + c.height);
    }
  }
  o.require_s = c.require_s;
  o.emit = c.emit_mode == "all" ? EmitMode::All : EmitMode::Passing;
  o.filter_irreducible = !c.no_irreducible;
  o.filter_r_soluble = !c.no_r_soluble;
  o.filter_squarefree = !c.no_squarefree;
  o.max_omega = c.max_omega;
  o.factor_budget = c.budget;
  o.threads = threads;
  std::ofstream file(c.out_path);
  if (!file) throw UsageError("cannot open " + c.out_path + " for writing");
  err << "census: coefficient bound " << c.coeff_bound << (c.require_s ? " (S class)" : "") << '\n';
  const CensusReport r = census(o);
  write_census_csv(file, r);
  ordered_json by_omega = ordered_json::object();
  for (const auto& [om, n] : r.by_omega) by_omega[std::to_string(om)] = n;
  emit(out, {{"command", "census"},
             {"coeff_bound", c.coeff_bound},
             {"height", c.height.empty() ? ordered_json(nullptr) : ordered_json(c.height)},
             {"require_s", c.require_s},
             {"emit", c.emit_mode},
             {"scanned", r.scanned},
             {"nonsingular", r.nonsingular},
             {"passing", r.passing},
             {"distinct_IJ_passing", r.distinct_IJ_passing},
             {"in_S", r.in_S},
             {"incomplete", r.incomplete},
             {"by_omega", by_omega},
             {"rows", r.rows.size()},
             {"out", c.out_path}});
  return kOk;
}

int jacobian_check_cmd(std::int64_t pmax, std::int64_t samples, std::uint64_t seed, std::ostream& out,
                       std::ostream& err) {
  if (samples < 1) throw UsageError("--samples must be positive");
  ordered_json primes = ordered_json::array();
  bool ok = true;
  for (const std::int64_t p : primes_between(5, pmax)) {
    err << "jacobian-check: p = " << p << '\n';
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(p) * 0x9E3779B97F4A7C15ULL);
    std::int64_t checked = 0;
    ordered_json first = nullptr;
    while (checked < samples) {
      const ModForm f = random_form(p, rng);
      const auto inv = invariants(f);
      if (inv.J.is_zero() || inv.disc.is_zero()) continue;
      ++checked;
      const std::int64_t x = count_X1212(f);
      const std::int64_t e = point_count(e_prime_of(f));
      const std::int64_t jac = point_count(jacobian_model(two_two_from_quartic(f)));
      if ((x != e || x != jac) && first.is_null()) {
        first = {{"form", format_form(f)}, {"X1212", x}, {"E_prime", e}, {"jacobian", jac}};
      }
    }
    const bool pass = first.is_null();
    ok = ok && pass;
    ordered_json entry{{"p", p}, {"forms", checked}, {"pass", pass}};
    if (!pass) entry["first_mismatch"] = first;
    primes.push_back(std::move(entry));
  }
  emit(out, {{"command", "jacobian-check"}, {"seed", seed}, {"primes", primes}, {"pass", ok}});
  return ok ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier transform of singular binary quartic forms over finite fields"};
  app.require_subcommand(1);
  unsigned threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default: BQF_THREADS or 1)")->check(CLI::PositiveNumber);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-theorem", "brute-force transform against the closed form");
  verify_cmd->add_option("--exhaustive-pmax", verify.exhaustive_pmax, "every form for primes up to this");
  verify_cmd->add_option("--sampled-pmax", verify.sampled_pmax, "random forms for larger primes up to this");
  verify_cmd->add_option("--samples", verify.samples, "random forms per sampled prime");
  verify_cmd->add_option("--seed", verify.seed, "PRNG seed");

  std::int64_t p = 0;
  std::string form;
  std::string method = "closed";
  auto* fourier = app.add_subcommand("fourier", "p^5 times the transform at one form");
  fourier->add_option("--p", p, "prime > 3")->required();
  fourier->add_option("--form", form, "a0,a1,a2,a3,a4")->required();
  fourier->add_option("--method", method, "oracle, closed or both")
      ->check(CLI::IsMember({"oracle", "closed", "both"}));

  auto* schemes = app.add_subcommand("schemes", "scheme point counts, enumerated and closed");
  schemes->add_option("--p", p, "prime > 3")->required();
  schemes->add_option("--form", form, "a0,a1,a2,a3,a4")->required();

  std::int64_t Q = 0;
  std::int64_t r = 0;
  auto* box = app.add_subcommand("box-sum", "S(Q, r) over squarefree q in [Q, 2Q]");
  box->add_option("--q", Q, "Q")->required();
  box->add_option("--r", r, "box half-width")->required();

  std::int64_t rmax = 0;
  std::int64_t scan_max = 6;
  auto* singular = app.add_subcommand("singular-count", "integral points of X in boxes");
  singular->add_option("--rmax", rmax, "largest half-width")->required();
  singular->add_option("--scan-max", scan_max, "also scan every form for r up to this");

  CensusFlags census_flags;
  auto* census_sub = app.add_subcommand("census", "squarefree-discriminant census over a coefficient box");
  census_sub->add_option("--coeff-bound", census_flags.coeff_bound, "|a_i| <= B")->required();
  census_sub->add_option("--height", census_flags.height, "keep forms with height <= X");
  census_sub->add_flag("--require-s", census_flags.require_s, "only forms congruent to f0 mod 110592");
  census_sub->add_option("--out", census_flags.out_path, "CSV path")->required();
  census_sub->add_option("--emit", census_flags.emit_mode, "passing or all")
      ->check(CLI::IsMember({"passing", "all"}));
  census_sub->add_flag("--no-irreducible-filter", census_flags.no_irreducible);
  census_sub->add_flag("--no-r-soluble-filter", census_flags.no_r_soluble);
  census_sub->add_flag("--no-squarefree-filter", census_flags.no_squarefree);
  census_sub->add_option("--max-omega", census_flags.max_omega, "negative disables");
  census_sub->add_option("--factor-budget", census_flags.budget, "trial division limit")
      ->check(CLI::PositiveNumber);

  std::int64_t pmax = 31;
  std::int64_t samples = 50;
  std::uint64_t seed = 1;
  auto* jacobian = app.add_subcommand("jacobian-check", "X1212 counts against E'_f and the Jacobian model");
  jacobian->add_option("--pmax", pmax, "largest prime")->required();
  jacobian->add_option("--samples", samples, "forms with J Disc != 0 per prime")->required();
  jacobian->add_option("--seed", seed, "PRNG seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify_cmd) return verify_theorem(verify, threads, out, err);
    if (*fourier) return fourier_cmd(p, form, method, out);
    if (*schemes) return schemes_cmd(p, form, out);
    if (*box) return box_sum_cmd(Q, r, threads, out);
    if (*singular) return singular_count_cmd(rmax, scan_max, out, err);
    if (*census_sub) return census_cmd(census_flags, threads, out, err);
    if (*jacobian) return jacobian_check_cmd(pmax, samples, seed, out, err);
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace bqf::cli
