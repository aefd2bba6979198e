#include "bosecorr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace bosecorr {

namespace {

constexpr std::array<std::string_view, kClaimCount> kClaimNames = {
    "lemma",         "subadditivity", "thm_i",       "thm_ii",       "thm_iii",     "thm_iv",
    "thm_iv_prime",  "coeff_monotone", "coeff_symmetry", "coeff_total", "coeff_oracle", "eq5",
    "eq7",           "eq11",          "eq13_product", "cov_row_sum",  "mean_sum"};

constexpr std::array<std::string_view, kVerdictCount> kVerdictNames = {"pass_strict", "pass_weak", "vacuous",
                                                                       "fail", "indeterminate"};

nlohmann::json weights_json(const WeightVector<Rational>& w) {
  auto out = nlohmann::json::array();
  for (const auto& x : w) out.push_back(to_string(x));
  return out;
}

/// Builds reports for one instance, sharing the comparator and descriptor.
class Recorder {
 public:
  explicit Recorder(const VerifyContext& ctx) : ctx_(ctx) {}

  /// lhs < rhs required.
  void less(Claim claim, nlohmann::json where, const Rational& lhs, const Rational& rhs) {
    const auto c = ctx_.compare(lhs, rhs);
    add(claim, std::move(where), c < 0 ? Verdict::PassStrict : Verdict::Fail, lhs, rhs);
  }
  /// lhs <= rhs required; equality is a weak pass.
  void less_equal(Claim claim, nlohmann::json where, const Rational& lhs, const Rational& rhs) {
    const auto c = ctx_.compare(lhs, rhs);
    const Verdict v = c < 0 ? Verdict::PassStrict : (c == 0 ? Verdict::PassWeak : Verdict::Fail);
    add(claim, std::move(where), v, lhs, rhs);
  }
  /// lhs == rhs required.
  void equal(Claim claim, nlohmann::json where, const Rational& lhs, const Rational& rhs) {
    const auto c = ctx_.compare(lhs, rhs);
    add(claim, std::move(where), c == 0 ? Verdict::PassStrict : Verdict::Fail, lhs, rhs);
  }
  void vacuous(Claim claim, nlohmann::json where) {
    reports_.push_back({claim, merged(std::move(where)), Verdict::Vacuous, "", ""});
  }

  std::vector<VerificationReport> take() { return std::move(reports_); }

 private:
  nlohmann::json merged(nlohmann::json where) const {
    nlohmann::json out = ctx_.instance;
    for (auto it = where.begin(); it != where.end(); ++it) out[it.key()] = it.value();
    return out;
  }
  void add(Claim claim, nlohmann::json where, Verdict v, const Rational& lhs, const Rational& rhs) {
    reports_.push_back({claim, merged(std::move(where)), v, to_string(lhs), to_string(rhs)});
  }

  const VerifyContext& ctx_;
  std::vector<VerificationReport> reports_;
};

void append(std::vector<VerificationReport>& out, std::vector<VerificationReport> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

/// Naive product of (1 + y + ... + y^p_i), coefficient by coefficient.
std::vector<BigInt> cap_polynomial(const CapVector& p) {
  std::vector<BigInt> poly{BigInt(1)};
  for (long cap : p.caps()) {
    std::vector<BigInt> next(poly.size() + static_cast<std::size_t>(cap), BigInt(0));
    for (std::size_t a = 0; a < poly.size(); ++a) {
      for (long b = 0; b <= cap; ++b) next[a + static_cast<std::size_t>(b)] += poly[a];
    }
    poly = std::move(next);
  }
  return poly;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Claim claim) { return kClaimNames[static_cast<std::size_t>(claim)]; }
std::string_view to_string(Verdict verdict) { return kVerdictNames[static_cast<std::size_t>(verdict)]; }

const std::array<Claim, kClaimCount>& all_claims() {
  static const std::array<Claim, kClaimCount> claims = [] {
    std::array<Claim, kClaimCount> out{};
    for (std::size_t k = 0; k < kClaimCount; ++k) out[k] = static_cast<Claim>(k);
    return out;
  }();
  return claims;
}

nlohmann::json to_json(const VerificationReport& report) {
  return {{"claim", to_string(report.claim)},
          {"instance", report.instance},
          {"verdict", to_string(report.verdict)},
          {"lhs", report.lhs},
          {"rhs", report.rhs}};
}

std::vector<VerificationReport> verify_lemma(const WeightVector<Rational>& w, long nmax, const VerifyContext& ctx) {
  Recorder rec(ctx);
  const auto z = z_powersum(w, nmax, ctx.limits);
  for (long n = 1; n < nmax; ++n) {
    for (long m = 0; m < n; ++m) {
      rec.less_equal(Claim::Lemma, {{"m", m}, {"n", n}}, z.at(m) * z.at(n + 1), z.at(m + 1) * z.at(n));
    }
  }
  for (long a = 1; 2 * a <= nmax; ++a) {
    for (long b = a; a + b <= nmax; ++b) {
      rec.less_equal(Claim::Subadditivity, {{"m", a}, {"n", b}}, z.at(a + b), z.at(a) * z.at(b));
    }
  }
  return rec.take();
}

std::vector<VerificationReport> verify_increasing_mean(const WeightVector<Rational>& w, long n,
                                                       const VerifyContext& ctx) {
  Recorder rec(ctx);
  for (std::size_t i = 0; i < w.size(); ++i) {
    rec.less(Claim::ThmI, {{"N", n}, {"i", i}}, mean_occupation(w, n, i, ctx.limits),
             mean_occupation(w, n + 1, i, ctx.limits));
  }
  return rec.take();
}

std::vector<VerificationReport> verify_negative_covariance(const WeightVector<Rational>& w, long n,
                                                           const VerifyContext& ctx) {
  Recorder rec(ctx);
  if (w.size() < 2 || n < 1) {
    rec.vacuous(Claim::ThmII, {{"N", n}});
    return rec.take();
  }
  const auto stats = covariance_matrix(w, n, ctx.limits);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      rec.less(Claim::ThmII, {{"N", n}, {"i", i}, {"j", j}}, stats.cov[i][j], Rational(0));
    }
  }
  return rec.take();
}

std::vector<VerificationReport> verify_beta_derivative(const LevelSet& levels, long n, const VerifyContext& ctx) {
  Recorder rec(ctx);
  nlohmann::json where = {{"N", n}, {"beta", to_string(levels.beta())}};
  if (!levels.has_gap() || n < 1) {
    rec.vacuous(Claim::ThmIII, std::move(where));
    return rec.take();
  }
  rec.less(Claim::ThmIII, std::move(where), Rational(0), beta_derivative_ground<Rational>(levels, n, ctx.limits));
  return rec.take();
}

std::vector<VerificationReport> verify_added_level(const WeightVector<Rational>& w, long n,
                                                   const std::vector<Rational>& extra_weights,
                                                   const VerifyContext& ctx) {
  Recorder rec(ctx);
  if (n < 1) {
    rec.vacuous(Claim::ThmIV, {{"N", n}});
    return rec.take();
  }
  std::vector<Rational> base;
  for (std::size_t i = 0; i < w.size(); ++i) base.push_back(mean_occupation(w, n, i, ctx.limits));
  for (const auto& x : extra_weights) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto plus = mean_occupation_plus(w, x, n, i, ctx.limits);
      rec.less(Claim::ThmIV, {{"N", n}, {"i", i}, {"x", to_string(x)}}, plus.mean, base[i]);
    }
  }
  return rec.take();
}

std::vector<VerificationReport> verify_superset(const WeightVector<Rational>& w, long n,
                                                const WeightVector<Rational>& superset, const VerifyContext& ctx) {
  Recorder rec(ctx);
  const auto map = superset_embedding(w, superset);
  if (superset.size() == w.size() || n < 1) {
    rec.vacuous(Claim::ThmIVPrime, {{"N", n}});
    return rec.take();
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    rec.less(Claim::ThmIVPrime, {{"N", n}, {"i", i}, {"superset_index", map[i]}},
             mean_occupation(superset, n, map[i], ctx.limits), mean_occupation(w, n, i, ctx.limits));
  }
  return rec.take();
}

std::vector<VerificationReport> verify_theorem(const WeightVector<Rational>& w, long n,
                                               const TheoremOptions& options, const VerifyContext& ctx) {
  if (options.beta_derivative && !options.levels) {
    throw Error("energies-required", "the beta-derivative claim needs a level set, not bare weights");
  }
  std::vector<VerificationReport> out;
  append(out, verify_increasing_mean(w, n, ctx));
  append(out, verify_negative_covariance(w, n, ctx));
  if (options.beta_derivative) append(out, verify_beta_derivative(*options.levels, n, ctx));
  if (!options.extra_weights.empty()) append(out, verify_added_level(w, n, options.extra_weights, ctx));
  if (options.superset) append(out, verify_superset(w, n, *options.superset, ctx));
  return out;
}

std::vector<VerificationReport> verify_theorem(const LevelSet& levels, long n, TheoremOptions options,
                                               const VerifyContext& ctx) {
  options.levels = levels;
  options.beta_derivative = true;
  return verify_theorem(weights_from_spectrum<Rational>(levels), n, options, ctx);
}

std::vector<VerificationReport> verify_coefficients(const CapVector& p, const VerifyContext& ctx) {
  Recorder rec(ctx);
  const nlohmann::json caps = p.to_string();
  const auto row = count_bounded_row(p);
  const long total = p.total();
  auto a = [&](long m) { return Rational(row[static_cast<std::size_t>(m)]); };
  for (long m = 0; 2 * m < total; ++m) {
    rec.less_equal(Claim::CoeffMonotone, {{"caps", caps}, {"m", m}}, a(m), a(m + 1));
  }
  for (long m = 0; m <= total; ++m) {
    rec.equal(Claim::CoeffSymmetry, {{"caps", caps}, {"m", m}}, a(m), a(total - m));
  }
  BigInt row_sum = 0;
  for (const auto& c : row) row_sum += c;
  BigInt box = 1;
  for (long cap : p.caps()) box *= cap + 1;
  rec.equal(Claim::CoeffTotal, {{"caps", caps}}, Rational(row_sum), Rational(box));

  const auto poly = cap_polynomial(p);
  for (long m = 0; m <= total; ++m) {
    rec.equal(Claim::CoeffOracle, {{"caps", caps}, {"m", m}}, a(m), Rational(poly[static_cast<std::size_t>(m)]));
  }
  return rec.take();
}

std::vector<std::vector<Rational>> pair_moments_bruteforce(const WeightVector<Rational>& w, long n) {
  const std::size_t levels = w.size();
  std::vector<std::vector<Rational>> weighted(levels, std::vector<Rational>(levels, Rational(0)));
  Rational z = 0;
  std::vector<long> occ(levels, 0);
  occ[0] = n;
  while (true) {
    Rational term = 1;
    for (std::size_t k = 0; k < levels; ++k) term *= pow(w[k], occ[k]);
    z += term;
    for (std::size_t i = 0; i < levels; ++i) {
      if (occ[i] == 0) continue;
      for (std::size_t j = 0; j < levels; ++j) {
        if (occ[j] != 0) weighted[i][j] += occ[i] * occ[j] * term;
      }
    }
    if (n == 0) break;
    std::size_t k = 0;
    while (occ[k] == 0) ++k;
    if (k + 1 == levels) break;
    const long v = occ[k];
    occ[k] = 0;
    occ[0] = v - 1;
    occ[k + 1] += 1;
  }
  for (auto& row : weighted) {
    for (auto& entry : row) entry /= z;
  }
  return weighted;
}

std::vector<VerificationReport> verify_identities(const WeightVector<Rational>& w, long n, const VerifyContext& ctx) {
  Recorder rec(ctx);
  const std::size_t levels = w.size();

  for (std::size_t i = 0; i < levels; ++i) {
    for (long k = 0; k <= n; ++k) {
      const auto d = decomposition_check(w, i, k, ctx.limits);
      rec.equal(Claim::Eq5, {{"N", k}, {"i", i}, {"form", "sum"}}, d.lhs, d.rhs);
      rec.equal(Claim::Eq5, {{"N", k}, {"i", i}, {"form", "peel"}}, d.peel_lhs, d.peel_rhs);
    }
  }

  const auto stats = covariance_matrix(w, n, ctx.limits);
  BigInt configurations;
  mpz_bin_uiui(configurations.get_mpz_t(), static_cast<unsigned long>(n) + levels - 1, levels - 1);
  const bool enumerate = configurations.get_d() <= ctx.pair_enumeration_max;
  const auto brute = enumerate ? pair_moments_bruteforce(w, n) : std::vector<std::vector<Rational>>{};
  for (std::size_t j = 0; j < levels; ++j) {
    const auto marginal = level_marginal(w, n, j, ctx.limits);
    for (std::size_t i = 0; i < levels; ++i) {
      if (i == j) continue;
      Rational mixture = 0;
      for (long m = 0; m <= n; ++m) {
        mixture += marginal.probs[static_cast<std::size_t>(m)] * restricted_mean(w, n - m, i, j, ctx.limits);
      }
      rec.equal(Claim::Eq7, {{"N", n}, {"i", i}, {"j", j}}, stats.means[i], mixture);
      if (enumerate) rec.equal(Claim::Eq11, {{"N", n}, {"i", i}, {"j", j}}, stats.moments[i][j], brute[i][j]);
    }
  }

  if (levels <= ctx.orbit_limits.max_levels && n <= ctx.orbit_limits.max_n) {
    for (long m = 0; m <= n; ++m) {
      const auto d = product_decomposition_check(w, n, m, ctx.orbit_limits);
      rec.equal(Claim::Eq13Product, {{"N", n}, {"m", m}}, d.lhs, d.rhs);
    }
  }

  Rational mean_total = 0;
  for (std::size_t i = 0; i < levels; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < levels; ++j) row += stats.cov[i][j];
    rec.equal(Claim::CovRowSum, {{"N", n}, {"i", i}}, row, Rational(0));
    mean_total += stats.means[i];
  }
  rec.equal(Claim::MeanSum, {{"N", n}}, mean_total, Rational(n));
  return rec.take();
}

void validate(const CampaignConfig& c) {
  auto fail = [](const std::string& what) { throw Error("invalid-config", what); };
  if (c.instances == 0) fail("instances must be >= 1");
  if (c.min_levels < 1 || c.min_levels > c.max_levels) fail("need 1 <= min_levels <= max_levels");
  if (c.min_n < 0 || c.min_n > c.max_n) fail("need 0 <= min_n <= max_n");
  if (c.max_numden < 1) fail("max_numden must be >= 1");
  if (c.lemma_nmax < 1) fail("lemma_nmax must be >= 1");
  if (c.max_ladder_energy < 1) fail("max_ladder_energy must be >= 1");
  if (c.max_n + 1 > c.limits.exact_max_n || c.lemma_nmax > c.limits.exact_max_n) {
    fail("particle numbers exceed the exact-mode cap");
  }
  if (c.max_levels + c.superset_extension > c.limits.exact_max_levels) fail("levels exceed the exact-mode cap");
}

nlohmann::json CampaignInstance::describe() const {
  auto ladder_json = nlohmann::json::object();
  ladder_json["log_base"] = to_string(*ladder.log_base());
  ladder_json["beta"] = to_string(ladder.beta());
  auto energies = nlohmann::json::array();
  for (const auto& e : ladder.expanded_energies()) energies.push_back(to_string(e));
  ladder_json["energies"] = energies;
  auto extras = nlohmann::json::array();
  for (const auto& x : extra_weights) extras.push_back(to_string(x));
  return {{"id", id},
          {"seed", seed},
          {"weights", weights_json(weights)},
          {"N", n},
          {"extra_weights", extras},
          {"superset", weights_json(superset)},
          {"ladder", ladder_json}};
}

CampaignInstance make_instance(const CampaignConfig& config, std::size_t id) {
  const std::uint64_t seed = splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(id)));
  std::mt19937_64 rng(seed);
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  auto random_weight = [&] {
    Rational q(uniform(1, config.max_numden), uniform(1, config.max_numden));
    q.canonicalize();
    return q;
  };

  const auto levels = static_cast<std::size_t>(
      uniform(static_cast<long>(config.min_levels), static_cast<long>(config.max_levels)));
  const long n = uniform(config.min_n, config.max_n);
  std::vector<Rational> weights;
  for (std::size_t k = 0; k < levels; ++k) weights.push_back(random_weight());

  std::vector<Rational> extras;
  for (std::size_t k = 0; k < config.extra_weights; ++k) extras.push_back(random_weight());

  std::vector<Rational> superset = weights;
  for (std::size_t k = 0; k < config.superset_extension; ++k) {
    const auto at = static_cast<std::size_t>(uniform(0, static_cast<long>(superset.size())));
    superset.insert(superset.begin() + static_cast<std::ptrdiff_t>(at), random_weight());
  }

  // ladder: nondegenerate ground level at 0, other levels on 1..max_energy
  long num = uniform(1, config.max_numden - 1 > 0 ? config.max_numden - 1 : 1);
  long den = uniform(num + 1, std::max(num + 1, config.max_numden));
  Rational base(num, den);
  base.canonicalize();
  std::vector<long> raw{0};
  for (std::size_t k = 1; k < levels; ++k) raw.push_back(uniform(1, config.max_ladder_energy));
  std::sort(raw.begin(), raw.end());
  std::vector<Rational> energies;
  std::vector<int> degeneracies;
  for (long e : raw) {
    if (!energies.empty() && energies.back() == e) {
      ++degeneracies.back();
    } else {
      energies.emplace_back(e);
      degeneracies.push_back(1);
    }
  }

  return CampaignInstance{id,
                          seed,
                          WeightVector<Rational>(std::move(weights)),
                          n,
                          std::move(extras),
                          WeightVector<Rational>(std::move(superset)),
                          LevelSet(std::move(energies), std::move(degeneracies), Rational(1), base)};
}

std::vector<VerificationReport> verify_instance(const CampaignInstance& instance, const CampaignConfig& config,
                                                const Comparator& compare) {
  VerifyContext ctx;
  if (compare) ctx.compare = compare;
  ctx.limits = config.limits;
  ctx.orbit_limits = config.orbit_limits;
  ctx.instance = {{"id", instance.id}, {"seed", instance.seed}, {"weights", weights_json(instance.weights)}};

  const auto& w = instance.weights;
  const long n = instance.n;
  std::vector<VerificationReport> out;
  append(out, verify_lemma(w, config.lemma_nmax, ctx));
  TheoremOptions options;
  options.extra_weights = instance.extra_weights;
  options.superset = instance.superset;
  append(out, verify_theorem(w, n, options, ctx));
  append(out, verify_beta_derivative(instance.ladder, n, ctx));
  append(out, verify_identities(w, n, ctx));
  if (n >= 1) {
    for (const auto& p : enumerate_partitions(n)) append(out, verify_coefficients(p, ctx));
  }
  return out;
}

std::size_t CampaignSummary::count(Claim claim, Verdict verdict) const {
  const auto it = counts.find(claim);
  return it == counts.end() ? 0 : it->second[static_cast<std::size_t>(verdict)];
}

std::size_t CampaignSummary::fails() const {
  std::size_t total = 0;
  for (const auto& [claim, row] : counts) total += row[static_cast<std::size_t>(Verdict::Fail)];
  return total;
}

CampaignSummary summarize(const std::vector<VerificationReport>& reports) {
  CampaignSummary s;
  for (Claim c : all_claims()) s.counts[c] = {};
  for (const auto& r : reports) ++s.counts[r.claim][static_cast<std::size_t>(r.verdict)];
  return s;
}

std::string summary_csv(const CampaignSummary& summary) {
  std::ostringstream out;
  out << "claim";
  for (auto name : kVerdictNames) out << ',' << name;
  out << '\n';
  for (Claim c : all_claims()) {
    out << to_string(c);
    for (std::size_t v = 0; v < kVerdictCount; ++v) out << ',' << summary.count(c, static_cast<Verdict>(v));
    out << '\n';
  }
  return out.str();
}

CampaignResult run_campaign(const CampaignConfig& config, const Comparator& compare) {
  validate(config);
  std::vector<std::vector<VerificationReport>> per_instance(config.instances);
  std::vector<std::exception_ptr> errors(config.instances);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t id = next++; id < config.instances; id = next++) {
      try {
        per_instance[id] = verify_instance(make_instance(config, id), config, compare);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.instances));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CampaignResult result;
  for (auto& reports : per_instance) append(result.reports, std::move(reports));
  result.summary = summarize(result.reports);
  return result;
}

}  // namespace bosecorr
