// Batch driver: one subcommand per experiment. Every subcommand reads a JSON
// config, writes its artifacts under --out, and prints a short summary.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sclab/sclab.hpp"

namespace fs = std::filesystem;
using namespace sclab;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::optional<std::size_t> trials;
  std::optional<std::size_t> budget;
  unsigned threads = 1;
};

struct Context {
  Options opts;
  Json cfg;
  fs::path base;  // directory of the config file; relative paths resolve here
};

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw PreconditionError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

// A config value given inline or as a path to a JSON file.
Json resolve(const Context& ctx, const Json& j) {
  if (j.is_string()) return read_json_file(ctx.base / j.get<std::string>());
  return j;
}

void check_keys(const Json& cfg, const std::set<std::string>& allowed) {
  if (!cfg.is_object()) throw PreconditionError("config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (!allowed.contains(key)) throw PreconditionError("unknown config key '" + key + "'");
  }
}

const Json& need(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw PreconditionError(std::string("config is missing '") + key + "'");
  return cfg.at(key);
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw PreconditionError(std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
T value_or(const Json& cfg, const char* key, T fallback) {
  return cfg.contains(key) ? get_as<T>(cfg.at(key), key) : fallback;
}

std::uint64_t seed_of(const Context& ctx) {
  if (ctx.opts.seed) return *ctx.opts.seed;
  if (ctx.cfg.contains("seed")) return get_as<std::uint64_t>(ctx.cfg.at("seed"), "seed");
  throw PreconditionError("this subcommand is randomized and needs a seed (--seed or config 'seed')");
}

std::size_t trials_of(const Context& ctx) {
  if (ctx.opts.trials) return *ctx.opts.trials;
  return get_as<std::size_t>(need(ctx.cfg, "trials"), "trials");
}

// Decimals given as strings stay exact; numbers go through their shortest form.
Rational rational_of(const Json& j, const char* key) {
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  return rational_from_double(get_as<double>(j, key));
}

FiniteClass load_class(const Context& ctx) { return class_from_json(resolve(ctx, need(ctx.cfg, "class"))); }

LossFunction load_loss(const Context& ctx) {
  if (ctx.cfg.contains("loss")) return loss_from_json(ctx.cfg.at("loss"));
  const Json c = resolve(ctx, need(ctx.cfg, "class"));
  return c.contains("loss") ? loss_from_json(c.at("loss")) : LossFunction::zero_one();
}

std::vector<std::size_t> index_list(const Json& j, const char* key) {
  if (j.is_array()) return get_as<std::vector<std::size_t>>(j, key);
  return {get_as<std::size_t>(j, key)};
}

std::vector<double> number_list(const Json& j, const char* key) {
  if (j.is_array()) return get_as<std::vector<double>>(j, key);
  return {get_as<double>(j, key)};
}

void write_file(const Context& ctx, const std::string& name, const std::string& content) {
  const fs::path dir(ctx.opts.out);
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + (dir / name).string() + "'");
  out << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json witness_json(const DimensionResult& r, bool with_labeling) {
  Json w{{"dimension", r.dimension}, {"set", r.witness.set}};
  if (with_labeling) w["labeling"] = r.witness.labeling;
  return w;
}

// --- subcommands -----------------------------------------------------------

int run_dims(const Context& ctx) {
  check_keys(ctx.cfg, {"class"});
  const FiniteClass h = load_class(ctx);
  Json out;
  out["domain_size"] = h.domain_size();
  out["label_count"] = h.label_count();
  out["class_size"] = h.size();
  const auto graph = graph_dimension(h);
  if (h.label_count() == 2) {
    out["vc_dimension"] = witness_json(vc_dimension(h), false);
  } else {
    out["vc_dimension"] = nullptr;
  }
  out["graph_dimension"] = witness_json(graph, true);
  write_file(ctx, "dims.json", dump(out));
  std::cout << "graph_dimension " << graph.dimension << "\n";
  if (h.label_count() == 2) std::cout << "vc_dimension " << out["vc_dimension"]["dimension"].get<std::size_t>() << "\n";
  return 0;
}

int run_compress(const Context& ctx) {
  check_keys(ctx.cfg, {"class", "sample", "d", "seed", "loss", "pool_cap", "retry_cap"});
  const FiniteClass h = load_class(ctx);
  const LossFunction loss = load_loss(ctx);
  require(loss.kind() == LossKind::zero_one, "compress runs the zero/one boosting pipeline");
  const Sample s = sample_from_json(resolve(ctx, need(ctx.cfg, "sample")));
  require_compatible(h, s);
  require(is_realizable(s, h, loss).has_value(), "compress needs a sample realizable by the class");
  const auto d = get_as<std::size_t>(need(ctx.cfg, "d"), "d");
  const std::uint64_t seed = seed_of(ctx);
  BoostOptions bo;
  bo.pool_cap = value_or<std::size_t>(ctx.cfg, "pool_cap", bo.pool_cap);
  bo.retry_cap = ctx.opts.budget.value_or(value_or<std::size_t>(ctx.cfg, "retry_cap", bo.retry_cap));
  const BoostResult r = compress_realizable(erm_learner(h, d, loss), s, seed, bo);
  Json out;
  out["d"] = d;
  out["m"] = s.size();
  out["seed"] = seed;
  out["T"] = r.T;
  out["indices"] = r.output.indices;
  out["side_info"] = to_json(r.output.side_info);
  out["size"] = r.size;
  out["predicted_size"] = r.predicted_size;
  out["margin"] = r.margin;
  out["exact_game"] = r.exact_game;
  out["game_iterations"] = r.game_iterations;
  out["retries"] = r.retries;
  out["pool_size"] = r.pool_size;
  out["empirical_risk"] = s.empty() ? 0.0 : empirical_risk(r.hypothesis, s, loss);
  out["hypothesis"] = r.hypothesis.table();
  write_file(ctx, "compress.json", dump(out));
  std::cout << "size " << r.size << " / predicted " << r.predicted_size << ", margin " << fmt::format("{}", r.margin)
            << ", retries " << r.retries << "\n";
  return 0;
}

Json evaluate_bound(const Json& q) {
  check_keys(q, {"formula", "k", "m", "d", "delta", "eps", "empirical", "c1", "c2"});
  const auto formula = get_as<std::string>(need(q, "formula"), "formula");
  Json r = q;
  auto k = [&] { return get_as<std::size_t>(need(q, "k"), "k"); };
  auto m = [&] { return get_as<std::size_t>(need(q, "m"), "m"); };
  auto d = [&] { return get_as<std::size_t>(need(q, "d"), "d"); };
  auto delta = [&] { return get_as<double>(need(q, "delta"), "delta"); };
  auto empirical = [&] { return get_as<double>(need(q, "empirical"), "empirical"); };
  if (formula == "selection") {
    r["epsilon"] = selection_bound(k(), m(), delta()).epsilon;
  } else if (formula == "selection_deviation") {
    r["threshold"] = selection_deviation_threshold(k(), m(), delta(), empirical());
  } else if (formula == "realizable_learning") {
    r["epsilon"] = realizable_learning_bound(k(), m(), delta()).epsilon;
  } else if (formula == "agnostic_learning") {
    r["epsilon"] = agnostic_learning_bound(k(), m(), delta()).epsilon;
  } else if (formula == "erm_deviation") {
    r["epsilon"] = erm_deviation_bound(m(), delta());
  } else if (formula == "selection_overfit") {
    r["epsilon"] = selection_overfit_bound(k(), m(), delta(), empirical()).epsilon;
  } else if (formula == "uc_rates") {
    const auto b = uc_rate_bounds(d(), get_as<double>(need(q, "eps"), "eps"), delta(),
                                  get_as<double>(need(q, "c1"), "c1"), get_as<double>(need(q, "c2"), "c2"));
    r["lower"] = b.lower;
    r["upper"] = b.upper;
  } else if (formula == "cover_size") {
    r["T"] = cover_size(m());
  } else if (formula == "predicted_compression_size") {
    r["payload"] = predicted_payload_size(d(), m());
    r["size"] = predicted_compression_size(d(), m());
  } else if (formula == "binomial_ball") {
    const auto c = binomial_ball_bound_check(m(), rational_of(need(q, "eps"), "eps"), rational_of(need(q, "delta"), "delta"));
    r["probability"] = c.probability;
    r["confident"] = c.confident;
    r["required_m"] = c.required_m;
    r["holds"] = c.holds;
  } else {
    throw PreconditionError("unknown bound formula '" + formula + "'");
  }
  r["log_base"] = "natural";
  return r;
}

int run_bounds(const Context& ctx) {
  check_keys(ctx.cfg, {"queries"});
  const Json& queries = need(ctx.cfg, "queries");
  require(queries.is_array(), "'queries' must be an array");
  Json results = Json::array();
  for (const auto& q : queries) results.push_back(evaluate_bound(q));
  write_file(ctx, "bounds.json", dump(Json{{"results", results}}));
  std::cout << results.size() << " bound(s) evaluated\n";
  return 0;
}

int run_ucexp(const Context& ctx) {
  check_keys(ctx.cfg, {"class", "distribution", "loss", "m", "eps", "trials", "seed"});
  const FiniteClass h = load_class(ctx);
  const LossFunction loss = load_loss(ctx);
  const FiniteDistribution dist = distribution_from_json(resolve(ctx, need(ctx.cfg, "distribution")));
  for (const auto& z : dist.support()) require(h.admits(z), "distribution support outside the class's universes");
  const auto ms = index_list(need(ctx.cfg, "m"), "m");
  const auto epss = number_list(need(ctx.cfg, "eps"), "eps");
  const std::size_t trials = trials_of(ctx);
  const std::uint64_t seed = seed_of(ctx);
  const std::size_t dg = graph_dimension(h).dimension;
  std::ostringstream csv;
  csv << "experiment,class_size,graph_dimension,m,eps,trials,seed,stream,hits,frequency,ci_low,ci_high\n";
  std::size_t stream = 0;
  for (std::size_t m : ms) {
    for (double eps : epss) {
      const auto r = empirical_uc_violation(h, dist, loss, m, eps, trials, derive_seed(seed, stream), ctx.opts.threads);
      csv << fmt::format("ucexp,{},{},{},{},{},{},{},{},{},{},{}\n", h.size(), dg, m, eps, trials, seed, stream,
                         r.estimate.hits, r.estimate.frequency, r.estimate.ci_low, r.estimate.ci_high);
      ++stream;
    }
  }
  write_file(ctx, "ucexp.csv", csv.str());
  std::cout << stream << " row(s) written\n";
  return 0;
}

int run_sdexp(const Context& ctx) {
  check_keys(ctx.cfg, {"d", "eps", "target", "m_max", "m", "trials", "seed"});
  const auto ds = index_list(need(ctx.cfg, "d"), "d");
  const Json& eps_json = need(ctx.cfg, "eps");
  const Rational eps = rational_of(eps_json, "eps");
  const std::string eps_text = eps_json.is_string() ? eps_json.get<std::string>() : fmt::format("{}", eps_json.get<double>());
  const double target = value_or<double>(ctx.cfg, "target", 0.75);
  const std::size_t m_max = value_or<std::size_t>(ctx.cfg, "m_max", 5000);
  const std::size_t trials = trials_of(ctx);
  const std::uint64_t seed = seed_of(ctx);
  std::ostringstream csv;
  csv << "experiment,d,eps,target,trials,m_max,seed,m_threshold,frequency\n";
  for (std::size_t d : ds) {
    const auto t = sd_threshold(d, eps, trials, target, m_max, derive_seed(seed, d), ctx.opts.threads);
    csv << fmt::format("sdexp,{},{},{},{},{},{},{},{}\n", d, eps_text, target, trials, m_max, seed,
                       t.m ? std::to_string(*t.m) : std::string("none"), t.frequency);
    std::cout << "d=" << d << " m_threshold=" << (t.m ? std::to_string(*t.m) : std::string("none")) << "\n";
  }
  write_file(ctx, "sdexp.csv", csv.str());
  if (ctx.cfg.contains("m")) {
    std::ostringstream grid;
    grid << "experiment,d,m,eps,trials,seed,hits,frequency,ci_low,ci_high,exact\n";
    for (std::size_t d : ds) {
      for (std::size_t m : index_list(ctx.cfg.at("m"), "m")) {
        const auto r = sd_experiment(d, m, eps, trials, derive_seed(derive_seed(seed, d), m), ctx.opts.threads);
        const std::string exact = d == 2 ? fmt::format("{}", binomial_ball_probability(m, eps).probability) : "";
        grid << fmt::format("sdgrid,{},{},{},{},{},{},{},{},{},{}\n", d, m, eps_text, trials, seed, r.estimate.hits,
                            r.estimate.frequency, r.estimate.ci_low, r.estimate.ci_high, exact);
      }
    }
    write_file(ctx, "sdexp_grid.csv", grid.str());
  }
  return 0;
}

int run_regress(const Context& ctx) {
  check_keys(ctx.cfg, {"sample", "generator", "eps", "seed", "max_draws"});
  const double eps = get_as<double>(need(ctx.cfg, "eps"), "eps");
  const std::uint64_t seed = seed_of(ctx);
  RealSample s;
  if (ctx.cfg.contains("sample")) {
    require(!ctx.cfg.contains("generator"), "give either 'sample' or 'generator', not both");
    s = get_as<RealSample>(resolve(ctx, ctx.cfg.at("sample")), "sample");
  } else {
    const Json& g = need(ctx.cfg, "generator");
    check_keys(g, {"kind", "m", "p"});
    const auto kind = value_or<std::string>(g, "kind", "uniform");
    const auto m = get_as<std::size_t>(need(g, "m"), "m");
    Rng rng = make_rng(seed, 0);
    s.resize(m);
    if (kind == "uniform") {
      for (auto& z : s) z = uniform01(rng);
    } else if (kind == "bernoulli") {
      const double p = value_or<double>(g, "p", 0.5);
      require(p >= 0.0 && p <= 1.0, "bernoulli p must lie in [0,1]");
      for (auto& z : s) z = uniform01(rng) < p ? 1.0 : 0.0;
    } else {
      throw PreconditionError("unknown generator kind '" + kind + "'");
    }
  }
  ApproxOptions ao;
  ao.max_draws = ctx.opts.budget.value_or(value_or<std::size_t>(ctx.cfg, "max_draws", ao.max_draws));
  const auto r = approx_compress(s, eps, derive_seed(seed, 1), ao);
  Json out;
  out["eps"] = eps;
  out["m"] = s.size();
  out["seed"] = seed;
  out["slots"] = r.positions.size();
  out["positions"] = r.positions;
  out["indices"] = r.output.indices;
  out["side_info"] = to_json(r.output.side_info);
  out["size"] = observed_size(r.output);
  out["hypothesis"] = r.hypothesis;
  out["loss"] = r.loss;
  out["optimal_loss"] = r.optimal_loss;
  out["gap"] = r.gap;
  out["attempts"] = r.attempts;
  out["exhaustive"] = r.exhaustive;
  write_file(ctx, "regress.json", dump(out));
  std::cout << "loss " << fmt::format("{}", r.loss) << ", L* " << fmt::format("{}", r.optimal_loss) << ", gap "
            << fmt::format("{}", r.gap) << "\n";
  return 0;
}

int run_adversary(const Context& ctx) {
  check_keys(ctx.cfg, {"scheme", "T", "M", "K", "budget", "direct_phase", "structured_phase", "seed"});
  const auto M = get_as<int>(need(ctx.cfg, "M"), "M");
  const auto K = get_as<int>(need(ctx.cfg, "K"), "K");
  const auto u = make_universe({M, K});
  const auto id = get_as<std::string>(need(ctx.cfg, "scheme"), "scheme");
  const auto T = value_or<std::size_t>(ctx.cfg, "T", 1);
  SelectionScheme scheme;
  if (id == "union_of_kept") {
    scheme = union_of_kept_scheme(u, T);
  } else if (id == "superset") {
    scheme = superset_scheme(u, T);
  } else if (id == "hashed") {
    scheme = hashed_scheme(u);
  } else {
    throw PreconditionError("unknown scheme '" + id + "' (union_of_kept, superset, hashed)");
  }
  AdversaryOptions ao;
  ao.budget = ctx.opts.budget.value_or(value_or<std::size_t>(ctx.cfg, "budget", ao.budget));
  ao.direct_phase = value_or<bool>(ctx.cfg, "direct_phase", true);
  ao.structured_phase = value_or<bool>(ctx.cfg, "structured_phase", true);
  const std::uint64_t seed = ctx.opts.seed.value_or(value_or<std::uint64_t>(ctx.cfg, "seed", 0));
  const auto rep = adversary_search(scheme, u, ao, seed);
  Json out;
  out["scheme"] = scheme.name;
  out["M"] = M;
  out["K"] = K;
  out["budget"] = ao.budget;
  out["seed"] = seed;
  out["found"] = rep.found;
  out["evaluations"] = rep.evaluations;
  out["max_size"] = rep.max_size;
  out["max_gap"] = rep.max_gap;
  out["colors"] = rep.color_histogram.size();
  if (rep.found) {
    out["phase"] = rep.phase;
    out["witness"] = rep.witness;
    out["sample"] = to_json(rep.sample);
    out["risk"] = rep.risk;
    out["best_risk"] = rep.best_risk;
    out["gap"] = rep.gap;
  } else {
    out["exhausted_reason"] = rep.exhausted_reason;
  }
  write_file(ctx, "adversary.json", dump(out));
  if (!rep.found) {
    std::cerr << "budget exhausted: " << rep.exhausted_reason << "\n";
    return 4;
  }
  std::cout << "found A=" << format_subset(rep.witness) << " gap " << fmt::format("{}", rep.gap) << " ("
            << rep.phase << ")\n";
  return 0;
}

// PAC learner -> compression -> agnostic compression -> agnostic learner on
// one training sample drawn from the configured distribution.
int run_demo(const Context& ctx) {
  check_keys(ctx.cfg, {"class", "distribution", "d", "m", "delta", "seed"});
  const FiniteClass h = load_class(ctx);
  const LossFunction loss = LossFunction::zero_one();
  const FiniteDistribution dist = distribution_from_json(resolve(ctx, need(ctx.cfg, "distribution")));
  for (const auto& z : dist.support()) require(h.admits(z), "distribution support outside the class's universes");
  const auto d = get_as<std::size_t>(need(ctx.cfg, "d"), "d");
  const auto m = get_as<std::size_t>(need(ctx.cfg, "m"), "m");
  const double delta = value_or<double>(ctx.cfg, "delta", 0.1);
  const std::uint64_t seed = seed_of(ctx);
  require(m >= 1, "demo needs m >= 1");

  Rng rng = make_rng(seed, 0);
  const SupportSampler sampler(dist);
  Sample s(m);
  for (auto& z : s) z = dist.support()[sampler(rng)];

  const WeakLearner learner = erm_learner(h, d, loss);
  const SelectionScheme realizable = boost_scheme(learner);
  const auto app = to_agnostic(realizable, h, loss, s, derive_seed(seed, 1));
  const ErmResult best_s = erm(h, s, loss);
  double best_d = 1.0;
  for (const auto& hyp : h.hypotheses()) best_d = std::min(best_d, true_risk(hyp, dist, loss));
  const std::size_t k = observed_size(app.output);
  const std::size_t agree = static_cast<std::size_t>(std::llround((1.0 - best_s.risk) * static_cast<double>(m)));

  Json out;
  out["seed"] = seed;
  out["m"] = m;
  out["d"] = d;
  out["delta"] = delta;
  out["pac_learner"] = {{"learner", learner.name}, {"d", d}, {"graph_dimension", graph_dimension(h).dimension}};
  out["compression"] = {{"realizable_subsample", agree},
                        {"size", k},
                        {"predicted_size", predicted_compression_size(d, std::max<std::size_t>(1, agree))}};
  out["agnostic_compression"] = {{"empirical_risk", empirical_risk(app.hypothesis, s, loss)},
                                 {"erm_empirical_risk", best_s.risk},
                                 {"dominates", empirical_risk(app.hypothesis, s, loss) <= best_s.risk + kTolerance}};
  Json learner_json{{"true_risk", true_risk(app.hypothesis, dist, loss)}, {"best_true_risk", best_d}};
  learner_json["excess"] = learner_json["true_risk"].get<double>() - best_d;
  if (k >= 1 && 2 * k <= m) {
    learner_json["epsilon"] = agnostic_learning_bound(k, m, delta).epsilon;
  } else {
    learner_json["epsilon"] = nullptr;
    learner_json["note"] = "k outside [1, m/2]; the agnostic learning bound does not apply";
  }
  out["agnostic_learner"] = learner_json;
  write_file(ctx, "demo.json", dump(out));
  std::cout << "1 pac learner: erm on d=" << d << " examples\n"
            << "2 compression: size " << k << " <= " << out["compression"]["predicted_size"].get<std::size_t>()
            << "\n"
            << "3 agnostic compression: L_S " << fmt::format("{}", empirical_risk(app.hypothesis, s, loss))
            << " <= min L_S " << fmt::format("{}", best_s.risk) << "\n"
            << "4 agnostic learner: L_D " << fmt::format("{}", learner_json["true_risk"].get<double>())
            << ", best L_D " << fmt::format("{}", best_d) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sample compression experiments"};
  app.require_subcommand(1);
  Options opts;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t budget = 0;
  bool seed_given = false;
  bool trials_given = false;
  bool budget_given = false;
  const std::vector<std::pair<std::string, int (*)(const Context&)>> commands{
      {"dims", run_dims},       {"compress", run_compress}, {"bounds", run_bounds},
      {"ucexp", run_ucexp},     {"sdexp", run_sdexp},       {"regress", run_regress},
      {"adversary", run_adversary}, {"demo", run_demo}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config, "config JSON path")->required();
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { seed = v, seed_given = true; }, "seed (overrides config 'seed')");
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option_function<std::size_t>(
        "--trials", [&](std::size_t v) { trials = v, trials_given = true; }, "Monte Carlo trials (overrides config)");
    sub->add_option_function<std::size_t>(
        "--budget", [&](std::size_t v) { budget = v, budget_given = true; }, "search budget (overrides config)");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1u, 256u));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (seed_given) opts.seed = seed;
  if (trials_given) opts.trials = trials;
  if (budget_given) opts.budget = budget;
  try {
    Context ctx{opts, read_json_file(opts.config), fs::path(opts.config).parent_path()};
    for (const auto& [name, fn] : commands) {
      if (app.got_subcommand(name)) return fn(ctx);
    }
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 4;
  } catch (const Json::exception& e) {
    std::cerr << "precondition: malformed config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
