// Desk-scale experiments over integral forms: box sums of |Phi_q^|, integral
// points of the family X in boxes, and the squarefree-discriminant census.
#pragma once

#include "bqf/elliptic.hpp"
#include "bqf/quartic.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bqf {

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to `threads`
/// workers (0 means hardware concurrency). Chunk k always covers the same range,
/// so callers that store per-chunk results get deterministic output.
void parallel_chunks(std::int64_t n, unsigned threads, std::int64_t chunks,
                     const std::function<void(std::int64_t chunk, std::int64_t begin, std::int64_t end)>& body);

/// Thread count from the BQF_THREADS environment variable, else 1.
unsigned default_threads();

// --- box sums ---------------------------------------------------------------------

struct BoxSum {
  std::int64_t Q;
  std::int64_t r;
  Rational total;          // sum over squarefree q in [Q, 2Q], nonzero f in rB, of |Phi_q^(f)|
  Rational family_x_part;  // the same sum restricted to f in X(Q)
  std::int64_t moduli;     // number of squarefree q in [Q, 2Q]
  std::int64_t forms;      // (2r + 1)^5 - 1
  double approx;
  double scale;  // r^2 / Q + r^4 / Q^2 + r^5 / Q^(5/2)
  double ratio;  // approx / scale
};

/// Exact S(Q, r). Needs Q > r >= 1.
BoxSum box_sum(std::int64_t Q, std::int64_t r, unsigned threads = 1);

// --- integral points of X ------------------------------------------------------------

enum class LatticeMethod {
  Scan,          // every form in rB tested with in_family_X
  Parametrized,  // l^3 m and t q^2 with l, m, q bounded via Mahler measure, deduplicated
};

/// |V(Z) n rB n X(Q)|, the zero form included once. Needs r >= 1.
std::int64_t singular_lattice_count(std::int64_t r, LatticeMethod method);

// --- factorization -------------------------------------------------------------------

struct OmegaResult {
  int omega = 0;            // prime factors with multiplicity
  bool squarefree = true;
  bool complete = true;     // false when a cofactor could not be classified within the budget
};

/// Omega(|n|) and squarefreeness. Inputs below 2^64 are factored completely by trial
/// division and Pollard rho with a deterministic Miller-Rabin test; larger ones by
/// trial division up to `budget`, with the cofactor classified when budget^3 exceeds
/// it. Throws std::invalid_argument for n = 0.
OmegaResult omega_and_squarefree(const Integer& n, std::int64_t budget = 1'000'000);

/// Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// --- census --------------------------------------------------------------------------

/// f0 = -x^4 - 38 x^3 y - 12 x^2 y^2 - 8 x y^3; the class S is f = f0 (mod kSModulus).
inline constexpr std::array<std::int64_t, 5> kF0{-1, -38, -12, -8, 0};

bool in_S_congruence(const IntForm& f);

enum class EmitMode { Passing, All };

struct CensusOptions {
  std::array<std::int64_t, 5> lo{};  // inclusive coefficient ranges
  std::array<std::int64_t, 5> hi{};
  std::optional<Integer> height_bound;  // keep forms with height <= bound
  bool require_s = false;  // restrict to the S class; Disc' = Disc / 2^20 instead of Disc
  bool filter_irreducible = true;
  bool filter_r_soluble = true;
  bool filter_squarefree = true;
  int max_omega = 4;  // negative disables the Omega filter
  EmitMode emit = EmitMode::Passing;
  std::int64_t factor_budget = 1'000'000;
  unsigned threads = 1;

  static CensusOptions box(std::int64_t bound);
};

struct CensusRow {
  IntForm form;
  Integer I;
  Integer J;
  Integer disc;
  Rational height;
  std::optional<OmegaResult> omega;  // of Disc'; empty when Disc = 0
  bool irreducible;
  bool r_soluble;
  bool in_S;
  bool passes;
};

struct CensusReport {
  std::int64_t scanned = 0;      // forms in the region (after the S restriction and height bound)
  std::int64_t nonsingular = 0;  // Disc != 0
  std::int64_t passing = 0;
  std::int64_t distinct_IJ_passing = 0;
  std::int64_t in_S = 0;
  std::int64_t incomplete = 0;                     // factorizations left unfinished
  std::map<int, std::int64_t> by_omega;            // over nonsingular forms with complete factorization
  std::vector<CensusRow> rows;                     // in region order
};

CensusReport census(const CensusOptions& options);

inline constexpr const char* kCensusHeader =
    "form,a0,a1,a2,a3,a4,I,J,Disc,height,omega,squarefree,irreducible,r_soluble,in_S";

void write_census_csv(std::ostream& out, const CensusReport& report);

}  // namespace bqf
