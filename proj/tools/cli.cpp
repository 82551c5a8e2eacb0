#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "csv.hpp"
#include "vincstat/bounds.hpp"
#include "vincstat/enumeration.hpp"
#include "vincstat/moments.hpp"
#include "vincstat/montecarlo.hpp"
#include "vincstat/oracle.hpp"
#include "vincstat/pattern.hpp"
#include "vincstat/rational.hpp"
#include "vincstat/sampling.hpp"

namespace vincstat::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for flag combinations CLI11 cannot express; reported like a
// parse error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string pattern;
  std::string perm;
  int n = -1;
  int threads = 0;
  std::uint64_t seed = 0;
  bool unsafe = false;

  // count
  bool list = false;
  std::uint64_t limit = 1'000'000;
  // sample
  int count = 1;
  std::string method = "shuffle";
  // depgraph
  std::uint64_t edge_cap = kDefaultEdgeCap;
  // bounds
  std::optional<double> vertices, degree, sigma2, gamma, delta;
  double bound = 1.0;
  int order = 3;
  // clt
  std::uint64_t samples = 100'000;
  std::string format = "json";
  int resamples = 200;
  // rate
  std::string input = "-";
  // oracle
  bool distribution = false;
  bool moments = false;
  std::optional<int> ltv;
};

MomentLimits moment_limits(const Flags& f) {
  MomentLimits limits = MomentLimits::from_environment();
  if (f.unsafe) {
    const MomentLimits wide = MomentLimits::unsafe();
    limits.max_k = std::max(limits.max_k, wide.max_k);
    limits.max_overlap = std::max(limits.max_overlap, wide.max_overlap);
  }
  limits.threads = f.threads;
  return limits;
}

OracleLimits oracle_limits(const Flags& f) {
  OracleLimits limits = OracleLimits::from_environment();
  if (f.unsafe) limits.max_n = std::max(limits.max_n, 10);
  limits.threads = f.threads;
  return limits;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump() << '\n'; }

json rationals(std::span<const Rational> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

void require_n(const Flags& f) {
  if (f.n < 0) throw UsageError("--n is required");
}

// -- commands ---------------------------------------------------------------

void run_count(const Flags& f, std::ostream& out) {
  const auto pattern = parse_pattern(f.pattern);
  if (!f.perm.empty()) {
    if (f.n >= 0 || f.list) throw UsageError("--perm cannot be combined with --n or --list");
    emit(out, json{{"count", count_occurrences(parse_permutation(f.perm), pattern)}});
    return;
  }
  if (f.n < 0) throw UsageError("count needs --perm or --n");
  json doc{{"pattern", format_pattern(pattern)},
           {"n", f.n},
           {"position_count", position_count(f.n, pattern)}};
  if (f.list) {
    json sets = json::array();
    bool truncated = false;
    for (const auto& set : enumerate_position_sets(f.n, pattern)) {
      if (sets.size() == f.limit) {
        truncated = true;
        break;
      }
      sets.push_back(set.positions);
    }
    doc["positions"] = std::move(sets);
    doc["truncated"] = truncated;
  }
  emit(out, doc);
}

void run_sample(const Flags& f, std::ostream& out) {
  require_n(f);
  if (f.count < 0) throw UsageError("--count must be nonnegative");
  const auto method = f.method == "reduction" ? SamplingMethod::Reduction : SamplingMethod::Shuffle;
  json perms = json::array();
  for (int i = 0; i < f.count; ++i) {
    const auto sigma = sample(method, f.n, f.seed, static_cast<std::uint64_t>(i));
    perms.push_back(std::vector<int>(sigma.values().begin(), sigma.values().end()));
  }
  emit(out, json{{"n", f.n},
                 {"seed", f.seed},
                 {"method", f.method},
                 {"permutations", std::move(perms)}});
}

void run_moments(const Flags& f, std::ostream& out) {
  require_n(f);
  const auto pattern = parse_pattern(f.pattern);
  const auto limits = moment_limits(f);
  const int k = pattern.size();
  const int j = pattern.block_count();
  // Small hosts are summed directly; past the interpolation nodes the
  // polynomial is exact and far cheaper.
  const int last_node = std::max(2 * (k - j), k) + 2 * j;
  Rational variance;
  std::string source;
  if (k < 2 || f.n <= last_node) {
    variance = exact_variance_at(pattern, f.n, limits);
    source = "direct";
  } else {
    variance = variance_polynomial(pattern, limits)(f.n);
    source = "polynomial";
  }
  emit(out, json{{"pattern", format_pattern(pattern)},
                 {"n", f.n},
                 {"mean", to_string(expectation(pattern, f.n))},
                 {"variance", to_string(variance)},
                 {"source", source}});
}

void run_var_poly(const Flags& f, std::ostream& out) {
  const auto pattern = parse_pattern(f.pattern);
  const auto poly = variance_polynomial(pattern, moment_limits(f));
  emit(out, json{{"pattern", format_pattern(pattern)},
                 {"coefficients", rationals(poly.coefficients())},
                 {"valid_from", poly.valid_from()},
                 {"degree", poly.degree()},
                 {"leading_coefficient", to_string(leading_coefficient(poly))}});
}

void run_depgraph(const Flags& f, std::ostream& out) {
  require_n(f);
  const auto pattern = parse_pattern(f.pattern);
  const auto g = graph_summary(f.n, pattern, f.edge_cap);
  json doc{{"pattern", format_pattern(pattern)},
           {"n", g.n},
           {"k", g.k},
           {"j", g.j},
           {"N", g.vertices},
           {"D", g.max_degree_plus_one}};
  if (g.edge_count) doc["edge_count"] = *g.edge_count;
  emit(out, doc);
}

void run_bounds(const Flags& f, std::ostream& out) {
  std::optional<double> vertices = f.vertices, degree = f.degree, sigma2 = f.sigma2;
  json doc = json::object();
  if (!f.pattern.empty()) {
    require_n(f);
    const auto pattern = parse_pattern(f.pattern);
    doc["pattern"] = format_pattern(pattern);
    doc["n"] = f.n;
    if (!vertices) vertices = static_cast<double>(position_count(f.n, pattern));
    if (!degree) degree = static_cast<double>(max_degree_plus_one(f.n, pattern));
    if (!sigma2) {
      const auto limits = moment_limits(f);
      if (pattern.size() <= limits.max_k) {
        const auto poly = variance_polynomial(pattern, limits);
        sigma2 = to_double(f.n >= poly.valid_from() ? poly(f.n)
                                                    : exact_variance_at(pattern, f.n, limits));
      }
    }
  }
  if (!vertices || !degree) {
    throw UsageError("bounds needs --pattern with --n, or both --N and --D");
  }
  doc["N"] = *vertices;
  doc["D"] = *degree;
  doc["B"] = f.bound;
  if (sigma2) {
    doc["sigma2"] = *sigma2;
    doc["stein"] = stein_bound(*vertices, *degree, f.bound, *sigma2);
  }
  doc["cumulant"] = json{{"r", f.order},
                         {"bound", cumulant_bound(f.order, *vertices, *degree, f.bound)}};
  if (f.delta) {
    const double gamma = f.gamma.value_or(0.0);
    doc["saulis"] = json{{"gamma", gamma}, {"delta", *f.delta},
                         {"bound", saulis_bound(gamma, *f.delta)}};
  }
  emit(out, doc);
}

void run_clt(const Flags& f, std::ostream& out) {
  require_n(f);
  const auto pattern = parse_pattern(f.pattern);
  ExperimentOptions options;
  options.threads = f.threads;
  options.limits = moment_limits(f);
  options.bootstrap_resamples = f.resamples;
  const auto r = run_experiment(pattern, f.n, f.samples, f.seed, options);
  const auto& c = r.cumulants;
  if (f.format == "csv") {
    std::ostringstream row;
    row.precision(17);
    row << "pattern,n,m,seed,d_K,k1,k2,k3,k4,se3,se4,exact_moments\n"
        << csv_field(r.pattern) << ',' << r.n << ',' << r.samples << ',' << r.seed << ','
        << r.d_k << ',' << c.kappa[0] << ',' << c.kappa[1] << ',' << c.kappa[2] << ','
        << c.kappa[3] << ',' << c.standard_error[2] << ',' << c.standard_error[3] << ','
        << (r.used_exact_moments ? "true" : "false") << '\n';
    out << row.str();
    return;
  }
  emit(out, json{{"pattern", r.pattern},
                 {"n", r.n},
                 {"m", r.samples},
                 {"seed", r.seed},
                 {"d_K", r.d_k},
                 {"noise_floor", kolmogorov_noise_floor(r.samples)},
                 {"cumulants", std::vector<double>(c.kappa.begin(), c.kappa.end())},
                 {"standard_errors",
                  std::vector<double>(c.standard_error.begin(), c.standard_error.end())},
                 {"exact_moments", r.used_exact_moments}});
}

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorKind::MalformedToken,
                std::string("rate: bad ") + what + " value '" + text + "'");
  }
  return value;
}

void run_rate(const Flags& f, std::istream& in, std::ostream& out) {
  std::vector<std::vector<std::string>> records;
  if (f.input == "-") {
    records = read_csv(in);
  } else {
    std::ifstream file(f.input);
    if (!file) throw UsageError("cannot open " + f.input);
    records = read_csv(file);
  }
  // With a header naming n and d_K (as clt --format csv writes) those
  // columns are used; otherwise the first two. Repeated headers, as left by
  // concatenating several clt outputs, are skipped.
  std::size_t n_col = 0, d_col = 1;
  std::vector<std::string> header;
  if (!records.empty()) {
    const auto& first = records.front();
    const auto n_it = std::find(first.begin(), first.end(), "n");
    const auto d_it = std::find(first.begin(), first.end(), "d_K");
    if (n_it != first.end() && d_it != first.end()) {
      n_col = static_cast<std::size_t>(n_it - first.begin());
      d_col = static_cast<std::size_t>(d_it - first.begin());
      header = first;
    }
  }
  std::vector<std::pair<double, double>> points;
  for (const auto& rec : records) {
    if (!header.empty() && rec == header) continue;
    if (rec.size() <= std::max(n_col, d_col)) {
      throw Error(ErrorKind::MalformedToken, "rate: row has too few columns");
    }
    points.emplace_back(parse_number(rec[n_col], "n"), parse_number(rec[d_col], "d_K"));
  }
  const auto fit = fit_rate(points);
  json pts = json::array();
  for (const auto& [n, d] : fit.points) pts.push_back(json::array({n, d}));
  emit(out, json{{"points", std::move(pts)},
                 {"slope", fit.slope},
                 {"intercept", fit.intercept},
                 {"residual", fit.residual}});
}

void run_oracle(const Flags& f, std::ostream& out) {
  require_n(f);
  const auto pattern = parse_pattern(f.pattern);
  const auto limits = oracle_limits(f);
  json doc{{"pattern", format_pattern(pattern)}, {"n", f.n}};
  if (f.distribution) {
    json dist = json::object();
    for (const auto& [value, p] : brute_force_distribution(pattern, f.n, limits)) {
      dist[std::to_string(value)] = to_string(p);
    }
    doc["distribution"] = std::move(dist);
  } else if (f.ltv) {
    const auto d = total_variance_check(pattern, f.n, *f.ltv, limits);
    doc["conditions"] = d.conditions;
    doc["explained"] = rationals(d.explained);
    doc["residual"] = to_string(d.residual);
    doc["total"] = to_string(d.total);
    doc["variance"] = to_string(d.variance);
    doc["matches"] = d.matches;
    doc["all_nonnegative"] = d.all_nonnegative;
  } else {
    const auto m = brute_force_moments(pattern, f.n, limits);
    doc["mean"] = to_string(m.mean);
    doc["variance"] = to_string(m.variance);
  }
  emit(out, doc);
}

void add_threads(CLI::App* cmd, Flags& f) {
  cmd->add_option("--threads", f.threads, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
}

void add_unsafe(CLI::App* cmd, Flags& f) {
  cmd->add_flag("--unsafe-size", f.unsafe, "Raise the exact-enumeration size limits");
}

}  // namespace

int dispatch(std::vector<std::string> args, std::istream& in, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Occurrence statistics of vincular patterns in random permutations", "vincstat"};
  app.require_subcommand(1);
  Flags f;

  auto* count = app.add_subcommand("count", "Count occurrences in a permutation, or list position sets");
  count->add_option("--pattern", f.pattern, "Pattern, e.g. 3|1,2")->required();
  auto* perm_opt = count->add_option("--perm", f.perm, "Host permutation, comma separated");
  auto* n_opt = count->add_option("--n", f.n, "Host size")->check(CLI::NonNegativeNumber);
  perm_opt->excludes(n_opt);
  count->add_flag("--list", f.list, "List the admissible position sets");
  count->add_option("--limit", f.limit, "Largest listing (default 1000000)");

  auto* samp = app.add_subcommand("sample", "Draw uniform random permutations");
  samp->add_option("--n", f.n, "Size")->required()->check(CLI::PositiveNumber);
  samp->add_option("--seed", f.seed, "Seed");
  samp->add_option("--count", f.count, "Number of permutations")->check(CLI::NonNegativeNumber);
  samp->add_option("--method", f.method, "shuffle or reduction")
      ->check(CLI::IsMember({"shuffle", "reduction"}));

  auto* mom = app.add_subcommand("moments", "Exact mean and variance at one n");
  mom->add_option("--pattern", f.pattern, "Pattern")->required();
  mom->add_option("--n", f.n, "Host size")->required()->check(CLI::NonNegativeNumber);
  add_threads(mom, f);
  add_unsafe(mom, f);

  auto* vp = app.add_subcommand("var-poly", "Variance as an exact polynomial in n");
  vp->add_option("--pattern", f.pattern, "Pattern")->required();
  add_threads(vp, f);
  add_unsafe(vp, f);

  auto* dg = app.add_subcommand("depgraph", "Dependency graph size and degree");
  dg->add_option("--pattern", f.pattern, "Pattern")->required();
  dg->add_option("--n", f.n, "Host size")->required()->check(CLI::NonNegativeNumber);
  dg->add_option("--edge-cap", f.edge_cap, "Count edges only up to this many vertices");

  auto* bd = app.add_subcommand("bounds", "Normal approximation bounds");
  bd->add_option("--pattern", f.pattern, "Pattern (computes N, D and sigma^2)");
  bd->add_option("--n", f.n, "Host size")->check(CLI::NonNegativeNumber);
  bd->add_option("--N", f.vertices, "Vertex count");
  bd->add_option("--D", f.degree, "Maximum degree plus one");
  bd->add_option("--B", f.bound, "Bound on each summand");
  bd->add_option("--sigma2", f.sigma2, "Variance of the sum");
  bd->add_option("--r", f.order, "Cumulant order");
  bd->add_option("--gamma", f.gamma, "Cumulant growth exponent");
  bd->add_option("--delta", f.delta, "Cumulant scale");
  add_threads(bd, f);
  add_unsafe(bd, f);

  auto* clt = app.add_subcommand("clt", "Monte Carlo check of the normal limit");
  clt->add_option("--pattern", f.pattern, "Pattern")->required();
  clt->add_option("--n", f.n, "Host size")->required()->check(CLI::NonNegativeNumber);
  clt->add_option("--samples", f.samples, "Number of permutations (default 100000)");
  clt->add_option("--seed", f.seed, "Seed");
  clt->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  clt->add_option("--resamples", f.resamples, "Bootstrap resamples (default 200)");
  add_threads(clt, f);
  add_unsafe(clt, f);

  auto* rate = app.add_subcommand("rate", "Fit log d_K against log n from CSV");
  rate->add_option("--input", f.input, "CSV file, '-' for standard input");

  auto* orc = app.add_subcommand("oracle", "Brute force over all of S_n");
  orc->add_option("--pattern", f.pattern, "Pattern")->required();
  orc->add_option("--n", f.n, "Host size")->required()->check(CLI::NonNegativeNumber);
  auto* o_dist = orc->add_flag("--distribution", f.distribution, "Exact distribution");
  auto* o_mom = orc->add_flag("--moments", f.moments, "Exact mean and variance (default)");
  auto* o_ltv = orc->add_option("--ltv", f.ltv, "Total-variance decomposition with C conditions");
  o_dist->excludes(o_mom)->excludes(o_ltv);
  o_mom->excludes(o_ltv);
  add_threads(orc, f);
  add_unsafe(orc, f);

  if (!args.empty() && !args.front().starts_with("-") &&
      app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "vincstat: UnknownCommand: '" << args.front()
        << "'\nRun with --help for usage.\n";
    return kUsageError;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const bool unknown = app.get_subcommands().empty();
    err << "vincstat: " << (unknown ? "UnknownCommand" : "BadFlag") << ": " << e.what()
        << "\nRun with --help for usage.\n";
    return kUsageError;
  }

  try {
    const auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "count") run_count(f, out);
    else if (name == "sample") run_sample(f, out);
    else if (name == "moments") run_moments(f, out);
    else if (name == "var-poly") run_var_poly(f, out);
    else if (name == "depgraph") run_depgraph(f, out);
    else if (name == "bounds") run_bounds(f, out);
    else if (name == "clt") run_clt(f, out);
    else if (name == "rate") run_rate(f, in, out);
    else if (name == "oracle") run_oracle(f, out);
  } catch (const UsageError& e) {
    err << "vincstat: BadFlag: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    emit(out, json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    return kComputationError;
  }
  return kOk;
}

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  return dispatch(std::move(args), std::cin, out, err);
}

}  // namespace vincstat::cli
