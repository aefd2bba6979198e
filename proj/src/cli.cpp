#include "bosecorr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bosecorr/compositions.hpp"
#include "bosecorr/io.hpp"
#include "bosecorr/occupancy.hpp"
#include "bosecorr/partition.hpp"
#include "bosecorr/verify.hpp"

namespace bosecorr {

namespace {

struct Options {
  std::string spectrum;
  std::string mode;
  std::string format = "csv";
  std::string output;
  long nmax = -1;
  long n = -1;
  std::vector<std::size_t> remove;
  std::optional<std::size_t> level;
  std::optional<long> m;
  std::string grid;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1;
  std::string caps;
  std::string engine = "powersum";
  std::size_t instances = 100;
  unsigned threads = 0;
};

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

bool json_output(const Options& opt) { return opt.format == "json"; }

void emit_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

/// Spectrum plus the backend it will be evaluated in.
struct Loaded {
  SpectrumInput input;
  Mode mode;
};

Loaded load(const Options& opt) {
  require(!opt.spectrum.empty(), "--spectrum is required");
  Loaded l{load_spectrum(opt.spectrum), Mode::Exact};
  l.mode = opt.mode.empty() ? l.input.mode : parse_mode(opt.mode);
  return l;
}

template <ScalarBackend T>
WeightVector<T> weights_of(const SpectrumInput& in) {
  try {
    return in.weight_vector<T>();
  } catch (const Error& e) {
    if (e.code() == "input-format") throw;
    throw Error("input-format", e.what());
  }
}

const LevelSet& levels_of(const SpectrumInput& in) {
  if (!in.levels) throw Error("input-format", "energies-required: this subcommand needs \"levels\", not bare weights");
  return *in.levels;
}

template <class F>
int dispatch(Mode mode, F&& f) {
  return mode == Mode::Exact ? f.template operator()<Rational>() : f.template operator()<LogFloat>();
}

std::string fraction_csv(const Rational& q) { return to_string(q); }
std::string fraction_csv(const LogFloat& x) { return format_double(x.value()); }
nlohmann::json fraction_json(const Rational& q) { return to_string(q); }
nlohmann::json fraction_json(const LogFloat& x) { return x.value(); }

std::uint64_t resolve_seed(const Options& opt, std::ostream& err) {
  if (opt.seed) return *opt.seed;
  std::random_device device;
  const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "seed: " << seed << '\n';
  return seed;
}

int cmd_zn(const Options& opt, std::ostream& out) {
  require(opt.nmax >= 0, "--nmax is required");
  const Loaded l = load(opt);
  return dispatch(l.mode, [&]<ScalarBackend T>() {
    const auto w = weights_of<T>(l.input);
    PartitionTable<T> table = [&] {
      if (opt.engine == "bruteforce") {
        require(opt.remove.empty(), "--remove is not supported with --engine bruteforce");
        return z_bruteforce(w, opt.nmax);
      }
      if (!opt.remove.empty()) return z_removed_table(w, opt.remove, opt.nmax);
      return z_powersum(w, opt.nmax);
    }();
    if (json_output(opt)) {
      emit_json(out, table_json(table));
    } else {
      out << table_csv(table);
    }
    return int{kExitOk};
  });
}

int cmd_occupancy(const Options& opt, std::ostream& out) {
  require(opt.n >= 0, "--n is required");
  const Loaded l = load(opt);
  return dispatch(l.mode, [&]<ScalarBackend T>() {
    const auto w = weights_of<T>(l.input);
    if (opt.level) {
      const auto marginal = level_marginal(w, opt.n, *opt.level);
      if (json_output(opt)) {
        auto probs = nlohmann::json::array();
        for (const auto& p : marginal.probs) probs.push_back(scalar_json(p));
        emit_json(out, {{"N", opt.n}, {"mode", to_string(l.mode)}, {"level", *opt.level}, {"marginal", probs}});
      } else {
        out << "m,p\n";
        for (std::size_t m = 0; m < marginal.probs.size(); ++m) out << m << ',' << scalar_csv(marginal.probs[m]) << '\n';
      }
      return int{kExitOk};
    }
    std::vector<T> means;
    for (std::size_t i = 0; i < w.size(); ++i) means.push_back(mean_occupation(w, opt.n, i));
    if (json_output(opt)) {
      auto arr = nlohmann::json::array();
      for (const auto& m : means) arr.push_back(scalar_json(m));
      emit_json(out, {{"N", opt.n}, {"mode", to_string(l.mode)}, {"means", arr}});
    } else {
      out << "level,mean\n";
      for (std::size_t i = 0; i < means.size(); ++i) out << i << ',' << scalar_csv(means[i]) << '\n';
    }
    return int{kExitOk};
  });
}

int cmd_covariance(const Options& opt, std::ostream& out) {
  require(opt.n >= 0, "--n is required");
  const Loaded l = load(opt);
  return dispatch(l.mode, [&]<ScalarBackend T>() {
    const auto stats = covariance_matrix(weights_of<T>(l.input), opt.n);
    if (json_output(opt)) {
      emit_json(out, stats_json(stats));
    } else {
      out << "i,j,cov\n";
      for (std::size_t i = 0; i < stats.cov.size(); ++i) {
        for (std::size_t j = 0; j < stats.cov.size(); ++j) out << i << ',' << j << ',' << signed_csv(stats.cov[i][j]) << '\n';
      }
    }
    return int{kExitOk};
  });
}

int cmd_beta_derivative(const Options& opt, std::ostream& out) {
  require(opt.n >= 0, "--n is required");
  const Loaded l = load(opt);
  const LevelSet& levels = levels_of(l.input);
  return dispatch(l.mode, [&]<ScalarBackend T>() {
    SignedScalar<T> value;
    try {
      value = beta_derivative_ground<T>(levels, opt.n);
    } catch (const Error& e) {
      if (e.code() == "exact-weight-unrepresentable") throw Error("input-format", e.what());
      throw;
    }
    if (json_output(opt)) {
      emit_json(out, {{"N", opt.n}, {"mode", to_string(l.mode)}, {"derivative", signed_json(value)}});
    } else {
      out << "N,derivative\n" << opt.n << ',' << signed_csv(value) << '\n';
    }
    return int{kExitOk};
  });
}

int cmd_condensate_curve(const Options& opt, std::ostream& out) {
  require(opt.n >= 1, "--n >= 1 is required");
  require(!opt.grid.empty(), "--grid start:stop:steps is required");
  std::vector<Rational> grid;
  try {
    grid = parse_beta_grid(opt.grid);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Loaded l = load(opt);
  const LevelSet& levels = levels_of(l.input);
  return dispatch(l.mode, [&]<ScalarBackend T>() {
    std::vector<CurvePoint<T>> curve;
    try {
      curve = condensate_curve<T>(levels, opt.n, grid);
    } catch (const Error& e) {
      if (e.code() == "exact-weight-unrepresentable") throw Error("input-format", e.what());
      throw;
    }
    auto beta_text = [&](const Rational& b) {
      return mode_of<T>() == Mode::Exact ? to_string(b) : format_double(b.get_d());
    };
    if (json_output(opt)) {
      auto points = nlohmann::json::array();
      for (const auto& p : curve) {
        points.push_back({{"beta", beta_text(p.beta)}, {"condensate_fraction", fraction_json(p.fraction)}});
      }
      emit_json(out, {{"N", opt.n}, {"mode", to_string(l.mode)}, {"points", points}});
    } else {
      out << "beta,condensate_fraction\n";
      for (const auto& p : curve) out << beta_text(p.beta) << ',' << fraction_csv(p.fraction) << '\n';
    }
    return int{kExitOk};
  });
}

int cmd_sample(const Options& opt, std::ostream& out, std::ostream& err) {
  require(opt.n >= 0, "--n is required");
  require(opt.samples >= 1, "--samples must be >= 1");
  const Loaded l = load(opt);
  const std::uint64_t seed = resolve_seed(opt, err);
  return dispatch(l.mode, [&]<ScalarBackend T>() {
    const auto w = weights_of<T>(l.input);
    ConfigurationSampler<T> sampler(w, opt.n, seed);
    std::vector<std::vector<long>> draws;
    for (std::size_t s = 0; s < opt.samples; ++s) draws.push_back(sampler.next());
    if (json_output(opt)) {
      emit_json(out, {{"seed", seed}, {"rng", kSamplerAlgorithm}, {"N", opt.n}, {"samples", draws}});
    } else {
      out << "# seed=" << seed << " rng=" << kSamplerAlgorithm << '\n';
      out << "sample";
      for (std::size_t i = 0; i < w.size(); ++i) out << ",n_" << i;
      out << '\n';
      for (std::size_t s = 0; s < draws.size(); ++s) {
        out << s;
        for (long v : draws[s]) out << ',' << v;
        out << '\n';
      }
    }
    return int{kExitOk};
  });
}

int cmd_count(const Options& opt, std::ostream& out) {
  require(!opt.caps.empty(), "--caps is required");
  CapVector caps({1});
  try {
    caps = CapVector::parse(opt.caps);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::vector<long> ms;
  if (opt.m) {
    ms.push_back(*opt.m);
  } else {
    for (long m = 0; m <= caps.total(); ++m) ms.push_back(m);
  }
  const auto row = count_bounded_row(caps);
  auto a = [&](long m) { return m < 0 || m > caps.total() ? BigInt(0) : row[static_cast<std::size_t>(m)]; };
  if (json_output(opt)) {
    auto counts = nlohmann::json::array();
    for (long m : ms) counts.push_back({{"m", m}, {"count", a(m).get_str()}});
    emit_json(out, {{"caps", caps.to_string()}, {"counts", counts}});
  } else {
    out << "p,m,count\n";
    for (long m : ms) out << caps.to_string() << ',' << m << ',' << a(m).get_str() << '\n';
  }
  return kExitOk;
}

std::vector<VerificationReport> verify_spectrum(const SpectrumInput& input, const std::string& source, long nmax,
                                                std::uint64_t seed) {
  const auto w = weights_of<Rational>(input);
  VerifyContext ctx;
  auto weights = nlohmann::json::array();
  for (const auto& x : w) weights.push_back(to_string(x));
  ctx.instance = {{"source", source}, {"seed", seed}, {"weights", weights}};

  std::mt19937_64 rng(seed);
  auto random_weight = [&] {
    std::uniform_int_distribution<long> dist(1, 1L << 16);
    Rational q(dist(rng), dist(rng));
    q.canonicalize();
    return q;
  };
  TheoremOptions options;
  for (int k = 0; k < 3; ++k) options.extra_weights.push_back(random_weight());
  std::vector<Rational> superset = w.values();
  const auto at = std::uniform_int_distribution<std::size_t>(0, superset.size())(rng);
  superset.insert(superset.begin() + static_cast<std::ptrdiff_t>(at), random_weight());
  options.superset = WeightVector<Rational>(std::move(superset));
  if (input.levels) {
    options.levels = *input.levels;
    options.beta_derivative = true;
  }

  std::vector<VerificationReport> reports = verify_lemma(w, nmax, ctx);
  auto append = [&](std::vector<VerificationReport> more) {
    reports.insert(reports.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  for (long n = 1; n < nmax; ++n) {
    append(verify_theorem(w, n, options, ctx));
    append(verify_identities(w, n, ctx));
    for (const auto& p : enumerate_partitions(n)) append(verify_coefficients(p, ctx));
  }
  return reports;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(opt, err);
  std::vector<VerificationReport> reports;
  if (!opt.spectrum.empty()) {
    require(opt.nmax >= 1, "--nmax >= 1 is required with --spectrum");
    reports = verify_spectrum(load(opt).input, opt.spectrum, opt.nmax, seed);
  } else {
    CampaignConfig config;
    config.seed = seed;
    config.instances = opt.instances;
    config.threads = opt.threads;
    try {
      validate(config);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    reports = run_campaign(config).reports;
  }
  const auto summary = summarize(reports);
  if (json_output(opt)) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    emit_json(out, arr);
  } else {
    out << summary_csv(summary);
  }
  if (summary.fails() > 0) {
    err << summary.fails() << " verification failure(s)\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_decompose(const Options& opt, std::ostream& out) {
  require(opt.n >= 0, "--n is required");
  const Loaded l = load(opt);
  const auto w = weights_of<Rational>(l.input);
  struct Row {
    std::string claim;
    std::string index_name;
    long index;
    Rational lhs, rhs;
    bool holds;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (opt.level && *opt.level != i) continue;
    const auto d = decomposition_check(w, i, opt.n);
    rows.push_back({"eq5", "i", static_cast<long>(i), d.lhs, d.rhs, d.holds});
    rows.push_back({"eq5_peel", "i", static_cast<long>(i), d.peel_lhs, d.peel_rhs, d.peel_holds});
  }
  require(!opt.level || *opt.level < w.size(), "--level out of range");
  for (long m = 0; m <= opt.n; ++m) {
    if (opt.m && *opt.m != m) continue;
    const auto d = product_decomposition_check(w, opt.n, m);
    rows.push_back({"eq13_product", "m", m, d.lhs, d.rhs, d.holds});
  }
  require(!opt.m || (*opt.m >= 0 && *opt.m <= opt.n), "--m must lie in [0, N]");

  bool all = true;
  if (json_output(opt)) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"claim", r.claim}, {"N", opt.n}, {r.index_name, r.index}, {"lhs", to_string(r.lhs)},
                     {"rhs", to_string(r.rhs)}, {"holds", r.holds}});
      all = all && r.holds;
    }
    emit_json(out, arr);
  } else {
    out << "claim,N,index,lhs,rhs,holds\n";
    for (const auto& r : rows) {
      out << r.claim << ',' << opt.n << ',' << r.index << ',' << to_string(r.lhs) << ',' << to_string(r.rhs) << ','
          << (r.holds ? "true" : "false") << '\n';
      all = all && r.holds;
    }
  }
  return all ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical-ensemble statistics of ideal Bose gases with exact verification", "bosecorr"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_spectrum) {
    auto* s = sub->add_option("--spectrum", opt.spectrum, "Spectrum JSON file (levels or weights)");
    if (needs_spectrum) s->required();
    sub->add_option("--mode", opt.mode, "Override the file's mode")->check(CLI::IsMember({"exact", "logfloat"}));
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", opt.output, "Write data here instead of standard output");
  };

  auto* zn = app.add_subcommand("zn", "Partition functions Z_0..Z_Nmax");
  add_common(zn, true);
  zn->add_option("--nmax", opt.nmax, "Largest particle number")->required()->check(CLI::NonNegativeNumber);
  zn->add_option("--remove", opt.remove, "Level index to remove (repeatable)");
  zn->add_option("--engine", opt.engine, "Computation route")->check(CLI::IsMember({"powersum", "bruteforce"}));

  auto* occupancy = app.add_subcommand("occupancy", "Mean occupations, or one level's marginal with --level");
  add_common(occupancy, true);
  occupancy->add_option("--n", opt.n, "Particle number")->required()->check(CLI::NonNegativeNumber);
  occupancy->add_option("--level", opt.level, "Print the distribution of this level's occupation");

  auto* covariance = app.add_subcommand("covariance", "Means and occupation covariance matrix");
  add_common(covariance, true);
  covariance->add_option("--n", opt.n, "Particle number")->required()->check(CLI::NonNegativeNumber);

  auto* beta = app.add_subcommand("beta-derivative", "Derivative of the ground-level mean in beta");
  add_common(beta, true);
  beta->add_option("--n", opt.n, "Particle number")->required()->check(CLI::NonNegativeNumber);

  auto* curve = app.add_subcommand("condensate-curve", "Condensate fraction over a beta grid");
  add_common(curve, true);
  curve->add_option("--n", opt.n, "Particle number")->required()->check(CLI::PositiveNumber);
  curve->add_option("--grid", opt.grid, "Beta grid start:stop:steps")->required();

  auto* sample = app.add_subcommand("sample", "Exact samples of occupation vectors");
  add_common(sample, true);
  sample->add_option("--n", opt.n, "Particle number")->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--samples", opt.samples, "Number of configurations")->check(CLI::PositiveNumber);
  sample->add_option("--seed", opt.seed, "64-bit seed; omitted means an entropy seed, echoed");

  auto* count = app.add_subcommand("count", "Bounded-composition counts a(p|m)");
  count->add_option("--caps", opt.caps, "Caps as 2+3+7")->required();
  count->add_option("--m", opt.m, "Single m instead of the full row");
  count->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  count->add_option("--output", opt.output, "Write data here instead of standard output");

  auto* verify = app.add_subcommand("verify", "Exact verification of the inequalities and identities");
  add_common(verify, false);
  verify->add_option("--nmax", opt.nmax, "Largest particle number for a spectrum file")->check(CLI::PositiveNumber);
  verify->add_option("--seed", opt.seed, "64-bit seed; omitted means an entropy seed, echoed");
  verify->add_option("--instances", opt.instances, "Random instances when no spectrum is given")
      ->check(CLI::PositiveNumber);
  verify->add_option("--threads", opt.threads, "Worker threads (0: all cores)");

  auto* decompose = app.add_subcommand("decompose", "Single-level and product decomposition identities");
  add_common(decompose, true);
  decompose->add_option("--n", opt.n, "Particle number")->required()->check(CLI::NonNegativeNumber);
  decompose->add_option("--level", opt.level, "Only this level");
  decompose->add_option("--m", opt.m, "Only this split m");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (zn->parsed()) code = cmd_zn(opt, buffer);
    else if (occupancy->parsed()) code = cmd_occupancy(opt, buffer);
    else if (covariance->parsed()) code = cmd_covariance(opt, buffer);
    else if (beta->parsed()) code = cmd_beta_derivative(opt, buffer);
    else if (curve->parsed()) code = cmd_condensate_curve(opt, buffer);
    else if (sample->parsed()) code = cmd_sample(opt, buffer, err);
    else if (count->parsed()) code = cmd_count(opt, buffer);
    else if (verify->parsed()) code = cmd_verify(opt, buffer, err);
    else if (decompose->parsed()) code = cmd_decompose(opt, buffer);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == "input-format" ? kExitInputFormat : kExitUsage;
  }

  if (opt.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << opt.output << '\n';
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace bosecorr
