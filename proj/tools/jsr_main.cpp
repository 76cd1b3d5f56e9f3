#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsr/bounds.hpp"
#include "jsr/certificates.hpp"
#include "jsr/families.hpp"
#include "jsr/limit_semigroup.hpp"
#include "jsr/records.hpp"
#include "jsr/setfile.hpp"
#include "jsr/stability.hpp"

namespace {

using jsr::Word;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRefused = 1;  // analysis refusal (budget, numeric failure)
constexpr int kExitInput = 2;    // malformed input or usage

std::string hfmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string word_str(const Word& w) { return w.empty() ? "-" : w.display(); }

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int default_threads() {
  if (const char* env = std::getenv("JSR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // auto
}

jsr::NormKind parse_norm_or_throw(const std::string& s) {
  jsr::NormKind k;
  if (!jsr::parse_norm_kind(s, k))
    throw CLI::ValidationError("--norm", "must be one of one|inf|two");
  return k;
}

std::ofstream open_records(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write records file '" + path + "'");
  return out;
}

// ---- family parameter handling ---------------------------------------------

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> m;
  for (const std::string& kv : kvs) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    m[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return m;
}


// ---- switching specs --------------------------------------------------------

jsr::SwitchingSequence parse_switching(const std::string& spec, const jsr::MatrixSet& set) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--switching expects periodic:WORD | random:SEED | sturmian:GAMMA,DELTA");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "periodic") return jsr::SwitchingSequence::periodic(Word::parse(arg, set.size()));
  if (kind == "random")
    return jsr::SwitchingSequence::random(static_cast<std::uint64_t>(std::stoull(arg)));
  if (kind == "sturmian") {
    const std::size_t comma = arg.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("sturmian spec needs GAMMA,DELTA");
    return jsr::SwitchingSequence::sturmian(std::stod(arg.substr(0, comma)),
                                            std::stod(arg.substr(comma + 1)));
  }
  throw std::invalid_argument("unknown switching kind '" + kind + "'");
}

// ---- subcommand bodies ------------------------------------------------------

void print_bounds_table(const jsr::BoundsTable& t) {
  std::printf("%4s %16s %-14s %16s %-14s %16s %16s\n", "n", "lo_n", "lo_word", "hi_n", "hi_word",
              "best_lo", "best_hi");
  for (const jsr::DepthEntry& e : t.rows) {
    std::printf("%4d %16s %-14s %16s %-14s %16s %16s\n", e.n, hfmt(e.lo).c_str(),
                word_str(e.lo_word).c_str(), hfmt(e.hi).c_str(), word_str(e.hi_word).c_str(),
                hfmt(e.best_lo).c_str(), hfmt(e.best_hi).c_str());
  }
}

int run_bounds(const std::string& input, int depth, const std::string& norm_s, bool prune,
               std::uint64_t budget, const std::string& records, int threads) {
  Timer timer;
  const jsr::NormKind norm = parse_norm_or_throw(norm_s);
  const jsr::MatrixSet set = jsr::load_set_file(input);
  jsr::SearchLimits lim;
  lim.threads = threads;

  json params = {{"input", input}, {"depth", depth}, {"norm", norm_s}, {"prune", prune}};
  jsr::BoundsTable table;
  if (prune) {
    const jsr::RefineOutcome out = jsr::refine_bounds(set, budget, norm, depth);
    table = out.table;
    params["budget"] = budget;
    print_bounds_table(table);
    std::printf("deepest complete depth: %d   nodes visited: %llu%s\n", out.deepest_complete,
                static_cast<unsigned long long>(out.nodes_visited),
                out.budget_exhausted ? "   (node budget exhausted)" : "");
  } else {
    table = jsr::bounds_table(set, depth, norm, lim);
    print_bounds_table(table);
    std::printf("products evaluated: %llu\n",
                static_cast<unsigned long long>(table.products_evaluated));
  }
  std::printf("best_lo = %s   best_hi = %s\n", hfmt(table.best_lo()).c_str(),
              hfmt(table.best_hi()).c_str());
  if (!records.empty()) {
    auto out = open_records(records);
    jsr::write_bounds_records(out, "bounds", params, table);
  }
  std::printf("# wall clock: %.3f s\n", timer.seconds());
  return kExitOk;
}

int run_certify(const std::string& input, const std::string& words_path, double kappa_min,
                double tol, const std::string& records) {
  Timer timer;
  const jsr::MatrixSet set = jsr::load_set_file(input);
  const std::vector<Word> words = jsr::load_words_file(words_path, set.size());
  const jsr::Certificate cert = jsr::certify_finiteness(set, words, kappa_min, tol);

  std::printf("%6s %16s %16s %16s %16s\n", "n", "value", "kappa", "det_root", "gap_low");
  for (const jsr::PeripheralReport& r : cert.reports)
    std::printf("%6d %16s %16s %16s %16s\n", r.word.length(), hfmt(r.value).c_str(),
                hfmt(r.kappa).c_str(), hfmt(r.det_root).c_str(), hfmt(r.gap_low).c_str());
  if (cert.status == jsr::Certificate::Status::Certified) {
    std::printf("certified: rho(S) = sup_k rho(S_k) = %s  (kappa floor %s, tol %s)\n",
                hfmt(cert.certified_value).c_str(), hfmt(cert.kappa_floor).c_str(),
                hfmt(cert.tol).c_str());
  } else {
    std::printf("rejected: %s\n", cert.rejection_reason.c_str());
    std::printf("note: rejection does not assert failure of the finiteness property\n");
  }
  std::printf("note: limit clause judged at the %s surrogate\n",
              jsr::Certificate::kLimitSurrogate);
  if (!records.empty()) {
    auto out = open_records(records);
    jsr::write_certificate_records(
        out, "certify",
        {{"input", input}, {"words", words_path}, {"kappa_min", kappa_min}, {"tol", tol}}, cert);
  }
  std::printf("# wall clock: %.3f s\n", timer.seconds());
  return kExitOk;
}

int run_stability(const std::string& input, int max_depth, const std::string& norm_s,
                  const std::string& records, int threads) {
  Timer timer;
  const jsr::NormKind norm = parse_norm_or_throw(norm_s);
  const jsr::MatrixSet set = jsr::load_set_file(input);
  jsr::SearchLimits lim;
  lim.threads = threads;
  const jsr::Decision d = jsr::decide_stability(set, max_depth, norm, lim);
  switch (d.outcome) {
    case jsr::Decision::Outcome::Stable:
      std::printf("stable at depth %d: rho_hat_%d^(1/%d) = %s < 1 (%s-norm certificate)\n",
                  d.witness_depth, d.witness_depth, d.witness_depth,
                  hfmt(d.certificate_value).c_str(), to_string(d.norm));
      break;
    case jsr::Decision::Outcome::Unstable:
      std::printf("unstable at depth %d: rho(S_(%s))^(1/%d) = %s > 1\n", d.witness_depth,
                  word_str(*d.witness).c_str(), d.witness_depth,
                  hfmt(d.certificate_value).c_str());
      break;
    case jsr::Decision::Outcome::Unknown:
      std::printf("unknown after depth %d (boundary case rho ~ 1, or deeper search needed)\n",
                  d.witness_depth);
      break;
  }
  if (!records.empty()) {
    auto out = open_records(records);
    jsr::write_decision_records(
        out, "stability", {{"input", input}, {"max_depth", max_depth}, {"norm", norm_s}}, d);
  }
  std::printf("# wall clock: %.3f s\n", timer.seconds());
  return kExitOk;
}

int run_simulate(const std::string& input, const std::string& switching, std::int64_t steps,
                 const std::string& records) {
  Timer timer;
  const jsr::MatrixSet set = jsr::load_set_file(input);
  const jsr::SwitchingSequence seq = parse_switching(switching, set);
  std::vector<jsr::cx> x0(set.dim(), jsr::cx(0.0, 0.0));
  x0[0] = 1.0;  // e1
  const auto series = jsr::simulate_trajectory(set, seq, x0, steps, jsr::NormKind::Two);
  const double exponent = jsr::growth_exponent(series);

  const std::int64_t stride = std::max<std::int64_t>(1, steps / 20);
  std::printf("%12s %20s\n", "t", "log||x_t||");
  for (const jsr::TrajectoryPoint& p : series)
    if (p.t % stride == 0 || p.t == steps) std::printf("%12lld %20s\n",
                                                       static_cast<long long>(p.t),
                                                       hfmt(p.log_norm).c_str());
  std::printf("growth exponent (LS slope over last half): %s\n", hfmt(exponent).c_str());
  if (!records.empty()) {
    auto out = open_records(records);
    jsr::write_trajectory_records(
        out, "simulate", {{"input", input}, {"switching", seq.describe()}, {"steps", steps}},
        series, exponent);
  }
  std::printf("# wall clock: %.3f s\n", timer.seconds());
  return kExitOk;
}

int run_limits(const std::string& input, int samples, int max_len, std::uint64_t seed,
               std::optional<double> rho_est, const std::string& records, int threads) {
  Timer timer;
  const jsr::MatrixSet set = jsr::load_set_file(input);
  jsr::SearchLimits lim;
  lim.threads = threads;
  double rho = 0.0;
  if (rho_est) {
    rho = *rho_est;
  } else {
    const jsr::BoundsTable t = jsr::bounds_table(set, std::min(8, max_len), jsr::NormKind::Inf, lim);
    rho = t.best_lo();
    if (!(rho > 0.0))
      throw jsr::BudgetExceeded("cannot derive a positive rho estimate (best_lo = 0); pass --rho-est",
                                0);
    std::printf("rho estimate from depth-%d bounds: %s\n", std::min(8, max_len), hfmt(rho).c_str());
  }
  const jsr::LimitPointSet lps = jsr::sample_limit_points(set, rho, samples, max_len, seed);
  const jsr::LimitCertificate cert = jsr::nonsingular_limit_certificate(set, lps, 1e-6);

  std::printf("%6s %8s %16s %6s %14s %6s\n", "id", "len", "|det|", "rank", "radius", "mult");
  int id = 0;
  for (const jsr::LimitPoint& p : lps.points)
    std::printf("%6d %8d %16s %6d %14s %6d\n", id++, p.word_length, hfmt(p.abs_det).c_str(),
                p.rank, hfmt(p.cluster_radius).c_str(), p.multiplicity);
  std::printf("%s\n", cert.message.c_str());
  if (!records.empty()) {
    auto out = open_records(records);
    jsr::write_limit_records(out, "limits",
                             {{"input", input},
                              {"samples", samples},
                              {"max_len", max_len},
                              {"seed", seed},
                              {"rho_est", rho}},
                             lps, cert);
  }
  std::printf("# wall clock: %.3f s\n", timer.seconds());
  return kExitOk;
}

int run_family(const std::string& name, const std::vector<std::string>& params,
               const std::string& emit) {
  const jsr::MatrixSet set = jsr::FamilySpec{name, parse_params(params)}.build();
  jsr::save_set_file(set, emit);
  std::printf("wrote %s (%s, d=%d, k=%d) to %s\n", name.c_str(), to_string(set.field()),
              set.dim(), set.size(), emit.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint/generalized spectral radius bounds, finiteness certificates, and "
               "switched-stability decisions for small matrix sets"};
  app.set_version_flag("--version", jsr::kToolVersion);
  app.require_subcommand(1);

  int threads = default_threads();
  app.add_option("--threads", threads, "worker cap (0 = available parallelism)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "per-depth lower/upper bounds on rho(S)");
  std::string b_input, b_norm = "inf", b_records;
  int b_depth = 8;
  bool b_prune = false;
  std::uint64_t b_budget = 20'000'000;
  bounds->add_option("--input", b_input, "matrix set file")->required();
  bounds->add_option("--depth", b_depth, "max product length")->required();
  bounds->add_option("--norm", b_norm, "one|inf|two");
  auto* prune_flag =
      bounds->add_flag("--prune", b_prune, "branch-and-bound instead of exhaustive enumeration");
  bounds->add_option("--budget", b_budget, "node budget for --prune")->needs(prune_flag);
  bounds->add_option("--records", b_records, "write JSONL records here");

  // certify
  auto* certify = app.add_subcommand("certify", "finiteness certificate from a word sequence");
  std::string c_input, c_words, c_records;
  double c_kappa = 0.0, c_tol = 1e-6;
  certify->add_option("--input", c_input, "matrix set file")->required();
  certify->add_option("--words", c_words, "words file (one word per line, comma-separated)")
      ->required();
  certify->add_option("--kappa-min", c_kappa, "uniform sub-peripherality floor in (0,1)")
      ->required();
  certify->add_option("--tol", c_tol, "relative tolerance for the limit clause");
  certify->add_option("--records", c_records, "write JSONL records here");

  // stability
  auto* stability = app.add_subcommand("stability", "periodically switched stability decision");
  std::string s_input, s_norm = "inf", s_records;
  int s_depth = 8;
  stability->add_option("--input", s_input, "matrix set file")->required();
  stability->add_option("--max-depth", s_depth, "depth cap for the interleaved scan")->required();
  stability->add_option("--norm", s_norm, "one|inf|two");
  stability->add_option("--records", s_records, "write JSONL records here");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "trajectory under a switching sequence");
  std::string m_input, m_switching, m_records;
  std::int64_t m_steps = 0;
  simulate->add_option("--input", m_input, "matrix set file")->required();
  simulate
      ->add_option("--switching", m_switching,
                   "periodic:WORD | random:SEED | sturmian:GAMMA,DELTA")
      ->required();
  simulate->add_option("--steps", m_steps, "number of steps")->required();
  simulate->add_option("--records", m_records, "write JSONL records here");

  // limits
  auto* limits = app.add_subcommand("limits", "normalized long products and their cluster points");
  std::string l_input, l_records;
  int l_samples = 64, l_maxlen = 40;
  std::uint64_t l_seed = 1;
  double l_rho = 0.0;
  bool l_rho_set = false;
  limits->add_option("--input", l_input, "matrix set file")->required();
  limits->add_option("--samples", l_samples, "number of sampled words")->required();
  limits->add_option("--max-len", l_maxlen, "max word length")->required();
  limits->add_option("--seed", l_seed, "sampling seed")->required();
  limits->add_option("--rho-est", l_rho, "normalization value (default: best_lo from bounds)")
      ->each([&](const std::string&) { l_rho_set = true; });
  limits->add_option("--records", l_records, "write JSONL records here");

  // family
  auto* family = app.add_subcommand("family", "emit a named matrix family as a set file");
  std::string f_name, f_emit;
  std::vector<std::string> f_params;
  family->add_option("name", f_name, "hare|morris|scaled_rotation|triangular|random|sign_pair")
      ->required();
  family->add_option("--param", f_params, "family parameter key=value (repeatable)");
  family->add_option("--emit", f_emit, "output set file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage text
    return kExitInput;
  }

  try {
    if (bounds->parsed())
      return run_bounds(b_input, b_depth, b_norm, b_prune, b_budget, b_records, threads);
    if (certify->parsed()) return run_certify(c_input, c_words, c_kappa, c_tol, c_records);
    if (stability->parsed()) return run_stability(s_input, s_depth, s_norm, s_records, threads);
    if (simulate->parsed()) return run_simulate(m_input, m_switching, m_steps, m_records);
    if (limits->parsed())
      return run_limits(l_input, l_samples, l_maxlen, l_seed,
                        l_rho_set ? std::optional<double>(l_rho) : std::nullopt, l_records,
                        threads);
    if (family->parsed()) return run_family(f_name, f_params, f_emit);
  } catch (const jsr::BudgetExceeded& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitRefused;
  } catch (const jsr::NumericFailure& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitRefused;
  } catch (const jsr::ParseError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
