#pragma once

// Exact verification of log-concavity of Z_N, the four occupation-number
// inequalities and the identities used to derive them.
//
// Every comparison goes through a pluggable comparator (exact_compare by
// default) so the harness itself can be mutation-tested. Verdicts:
//   pass_strict    strict inequality held, or an identity held exactly
//   pass_weak      a non-strict inequality held with equality
//   vacuous        the hypotheses of the claim fail on this instance
//   fail           the claim is violated; lhs/rhs carry the witness
//   indeterminate  never produced on exact instances

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bosecorr/compositions.hpp"
#include "bosecorr/numerics.hpp"
#include "bosecorr/occupancy.hpp"
#include "bosecorr/partition.hpp"
#include "bosecorr/spectrum.hpp"

namespace bosecorr {

enum class Claim {
  Lemma,
  Subadditivity,
  ThmI,
  ThmII,
  ThmIII,
  ThmIV,
  ThmIVPrime,
  CoeffMonotone,
  CoeffSymmetry,
  CoeffTotal,
  CoeffOracle,
  Eq5,
  Eq7,
  Eq11,
  Eq13Product,
  CovRowSum,
  MeanSum,
};
inline constexpr std::size_t kClaimCount = 17;

enum class Verdict { PassStrict, PassWeak, Vacuous, Fail, Indeterminate };
inline constexpr std::size_t kVerdictCount = 5;

std::string_view to_string(Claim claim);
std::string_view to_string(Verdict verdict);
const std::array<Claim, kClaimCount>& all_claims();

struct VerificationReport {
  Claim claim;
  nlohmann::json instance;
  Verdict verdict;
  std::string lhs;
  std::string rhs;
};

nlohmann::json to_json(const VerificationReport& report);

using Comparator = std::function<std::strong_ordering(const Rational&, const Rational&)>;

struct VerifyContext {
  Comparator compare = [](const Rational& a, const Rational& b) { return exact_compare(a, b); };
  Limits limits;
  OrbitLimits orbit_limits;
  /// The pair-moment identity is checked against enumeration only up to
  /// this many occupation vectors.
  double pair_enumeration_max = 2e5;
  /// Describes the instance; per-check indices are added to a copy.
  nlohmann::json instance = nlohmann::json::object();
};

/// Z_m Z_{n+1} <= Z_{m+1} Z_n for 0 <= m < n < nmax, plus Z_{a+b} <= Z_a Z_b
/// for 1 <= a <= b, a + b <= nmax.
std::vector<VerificationReport> verify_lemma(const WeightVector<Rational>& w, long nmax,
                                             const VerifyContext& ctx = {});

std::vector<VerificationReport> verify_increasing_mean(const WeightVector<Rational>& w, long n,
                                                       const VerifyContext& ctx = {});
std::vector<VerificationReport> verify_negative_covariance(const WeightVector<Rational>& w, long n,
                                                           const VerifyContext& ctx = {});
std::vector<VerificationReport> verify_beta_derivative(const LevelSet& levels, long n,
                                                       const VerifyContext& ctx = {});
std::vector<VerificationReport> verify_added_level(const WeightVector<Rational>& w, long n,
                                                   const std::vector<Rational>& extra_weights,
                                                   const VerifyContext& ctx = {});
std::vector<VerificationReport> verify_superset(const WeightVector<Rational>& w, long n,
                                                const WeightVector<Rational>& superset,
                                                const VerifyContext& ctx = {});

struct TheoremOptions {
  std::vector<Rational> extra_weights;
  std::optional<WeightVector<Rational>> superset;
  /// The derivative claim needs energies; without a level set asking for
  /// it throws "energies-required".
  bool beta_derivative = false;
  std::optional<LevelSet> levels;
};

/// All four inequalities plus the superset form at particle number n.
std::vector<VerificationReport> verify_theorem(const WeightVector<Rational>& w, long n,
                                               const TheoremOptions& options, const VerifyContext& ctx = {});
std::vector<VerificationReport> verify_theorem(const LevelSet& levels, long n, TheoremOptions options,
                                               const VerifyContext& ctx = {});

/// Midpoint monotonicity, symmetry, totals and a polynomial-product
/// oracle for the row a(p|0..|p|).
std::vector<VerificationReport> verify_coefficients(const CapVector& p, const VerifyContext& ctx = {});

/// Identity battery: single-level decomposition (both forms) for n <= N,
/// conditional-mean decomposition, pair-moment identity against brute
/// force, product decomposition, covariance row sums, sum of means.
/// Enumeration-backed checks are skipped beyond the context's caps.
std::vector<VerificationReport> verify_identities(const WeightVector<Rational>& w, long n,
                                                  const VerifyContext& ctx = {});

/// Matrix of <N_i N_j>_N by enumerating every occupation vector.
std::vector<std::vector<Rational>> pair_moments_bruteforce(const WeightVector<Rational>& w, long n);

struct CampaignConfig {
  std::uint64_t seed = 42;
  std::size_t instances = 100;
  std::size_t min_levels = 2;
  std::size_t max_levels = 5;
  long min_n = 1;
  long max_n = 10;
  long max_numden = 1L << 16;
  std::size_t extra_weights = 3;
  std::size_t superset_extension = 1;
  long lemma_nmax = 13;
  long max_ladder_energy = 4;
  unsigned threads = 0;  // 0: hardware concurrency
  Limits limits;
  OrbitLimits orbit_limits;
};

void validate(const CampaignConfig& config);

/// One seeded random instance, reproducible from (campaign seed, id).
struct CampaignInstance {
  std::size_t id = 0;
  std::uint64_t seed = 0;
  WeightVector<Rational> weights;
  long n = 0;
  std::vector<Rational> extra_weights;
  WeightVector<Rational> superset;
  LevelSet ladder;  // companion spectrum for the derivative claim

  nlohmann::json describe() const;
};

CampaignInstance make_instance(const CampaignConfig& config, std::size_t id);

std::vector<VerificationReport> verify_instance(const CampaignInstance& instance, const CampaignConfig& config,
                                                const Comparator& compare = {});

struct CampaignSummary {
  std::map<Claim, std::array<std::size_t, kVerdictCount>> counts;
  std::size_t fails() const;
  std::size_t count(Claim claim, Verdict verdict) const;
};

CampaignSummary summarize(const std::vector<VerificationReport>& reports);
std::string summary_csv(const CampaignSummary& summary);

struct CampaignResult {
  std::vector<VerificationReport> reports;  // ordered by instance id
  CampaignSummary summary;
};

CampaignResult run_campaign(const CampaignConfig& config, const Comparator& compare = {});

}  // namespace bosecorr
