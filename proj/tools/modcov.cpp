// modcov: command-line front end.
//
//   modcov act --p 3 --v 2 --op sigma "x[1,1]"
//   modcov beta --p 3 --v 3 --w 2 --mode both
//   modcov sweep --p 2,3 --max-blocks 2 --max-block-size 3 --w 1,2,3 --out r.json
//   modcov decompose --p 3 --v 3 --w 2 --j 1 --file h.txt
//
// Exit codes: 0 success, 1 formula/computation mismatch, 2 usage or input error.

#include "modcov/covariant.hpp"
#include "modcov/formulas.hpp"
#include "modcov/gens.hpp"
#include "modcov/poly_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
using namespace modcov;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Formula, Compute, Both };

struct CaseResult {
  std::uint32_t p = 0;
  std::vector<int> v;
  std::vector<int> w;  // empty: the invariant ring
  std::string case_label;
  std::optional<int> beta_formula;
  std::optional<int> beta_computed;
  std::vector<int> generator_degrees;
  std::optional<int> cap_used;
  std::string cap_certificate;
  std::optional<bool> conclusive;
  std::optional<bool> agree;
  double elapsed_ms = 0;
  std::string status = "ok";
};

std::string join(const std::vector<int>& xs, char sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? std::string(1, sep) : "") + std::to_string(xs[k]);
  return out;
}

template <typename T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

json to_json(const CaseResult& r) {
  json j;
  j["p"] = r.p;
  j["v_blocks"] = r.v;
  j["w_blocks"] = r.w;
  j["target"] = r.w.empty() ? "algebra" : "covariant-module";
  j["case_label"] = r.case_label;
  j["beta_formula"] = optional_json(r.beta_formula);
  j["beta_computed"] = optional_json(r.beta_computed);
  j["generator_degrees"] = r.generator_degrees;
  j["cap_used"] = optional_json(r.cap_used);
  j["cap_certificate"] = r.cap_certificate;
  j["conclusive"] = optional_json(r.conclusive);
  j["agree"] = optional_json(r.agree);
  j["elapsed_ms"] = r.elapsed_ms;
  j["status"] = r.status;
  return j;
}

const char* kCsvHeader =
    "p,v_blocks,w_blocks,target,case_label,beta_formula,beta_computed,generator_degrees,"
    "cap_used,cap_certificate,conclusive,agree,elapsed_ms,status";

std::string to_csv(const CaseResult& r) {
  auto opt = [](const auto& x) -> std::string {
    if (!x) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*x)>, bool>) return *x ? "true" : "false";
    else return std::to_string(*x);
  };
  std::ostringstream out;
  out << r.p << ',' << join(r.v, ' ') << ',' << join(r.w, ' ') << ','
      << (r.w.empty() ? "algebra" : "covariant-module") << ',' << r.case_label << ','
      << opt(r.beta_formula) << ',' << opt(r.beta_computed) << ',' << join(r.generator_degrees, ' ')
      << ',' << opt(r.cap_used) << ",\"" << r.cap_certificate << "\"," << opt(r.conclusive) << ','
      << opt(r.agree) << ',' << r.elapsed_ms << ',' << r.status;
  return out.str();
}

Budget make_budget(std::int64_t budget_ms, std::int64_t max_dim) {
  Budget b;
  if (budget_ms > 0) b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);
  b.max_piece_dim = max_dim;
  return b;
}

// One (V, W) case. W empty means beta(k[V]^G); decomposable W is the max over
// its summands, each computed on the shared engine.
CaseResult evaluate(GeneratorEngine* engine, const ModuleSpec& v, const std::vector<int>& w_blocks,
                    Mode mode, std::optional<int> cap, std::int64_t budget_ms, std::int64_t max_dim) {
  const auto start = std::chrono::steady_clock::now();
  CaseResult r;
  r.p = v.p();
  r.v = v.blocks();
  r.w = w_blocks;
  if (mode != Mode::Compute) {
    const FormulaValue f = w_blocks.empty()
                               ? beta_invariants_formula(reduce_V(v).v)
                               : beta_covariants_formula(v, ModuleSpec(v.field(), w_blocks));
    r.beta_formula = f.value;
    r.case_label = to_string(f.label);
  }
  if (mode != Mode::Formula) {
    engine->set_budget(make_budget(budget_ms, max_dim));
    try {
      std::vector<BetaReport> reports;
      if (w_blocks.empty()) {
        reports.push_back(algebra_beta(*engine, cap));
      } else {
        for (int n : w_blocks) reports.push_back(covariant_beta(*engine, ModuleSpec(v.field(), {n}), cap));
      }
      int beta = 0;
      int cap_used = 0;
      bool conclusive = true;
      for (const auto& rep : reports) {
        beta = std::max(beta, rep.beta);
        cap_used = std::max(cap_used, rep.cap_used);
        conclusive = conclusive && rep.conclusive;
        const auto degs = rep.generator_degrees();
        r.generator_degrees.insert(r.generator_degrees.end(), degs.begin(), degs.end());
      }
      std::sort(r.generator_degrees.begin(), r.generator_degrees.end());
      r.beta_computed = beta;
      r.cap_used = cap_used;
      r.cap_certificate = reports.front().cap_certificate;
      r.conclusive = conclusive;
    } catch (const BudgetExceeded&) {
      r.status = "skipped: budget";
    }
  }
  if (r.beta_formula && r.beta_computed) r.agree = *r.beta_formula == *r.beta_computed;
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::int64_t default_budget_ms() {
  const char* env = std::getenv("MODCOV_BUDGET_MS");
  if (!env || !*env) return 0;
  try {
    return std::stoll(env);
  } catch (const std::exception&) {
    throw UsageError(std::string("MODCOV_BUDGET_MS is not an integer: ") + env);
  }
}

void report_parse_error(const ParseError& e, const std::string& text) {
  std::cerr << "error: parse error " << e.what() << '\n'
            << "  " << text << '\n'
            << "  " << std::string(e.position(), ' ') << "^\n";
}

// --- act ---------------------------------------------------------------------

struct ActArgs {
  std::uint32_t p = 0;
  std::vector<int> v;
  std::string op;
  std::string expr;
};

int run_act(const ActArgs& a) {
  const RingPtr ring = make_ring(ModuleSpec(PrimeField(a.p), a.v));
  std::istringstream words(a.op);
  std::string name;
  words >> name;
  std::optional<int> arg;
  if (int x; words >> x) arg = x;
  std::string extra;
  if (words >> extra) throw UsageError("unrecognised operator '" + a.op + "'");

  unsigned power = 1;
  if (const auto caret = name.find('^'); caret != std::string::npos) {
    try {
      power = static_cast<unsigned>(std::stoul(name.substr(caret + 1)));
    } catch (const std::exception&) {
      throw UsageError("bad exponent in operator '" + a.op + "'");
    }
    name = name.substr(0, caret);
  }
  if (name == "norm") {
    if (!arg) throw UsageError("norm needs a block index: --op \"norm j\"");
    std::cout << to_string(norm(ring, *arg)) << '\n';
    return kOk;
  }

  Polynomial f(ring);
  try {
    f = parse_polynomial(ring, a.expr);
  } catch (const ParseError& e) {
    report_parse_error(e, a.expr);
    return kUsage;
  }
  if (name == "sigma") {
    std::cout << to_string(apply_sigma_power(f, power)) << '\n';
  } else if (name == "delta") {
    std::cout << to_string(delta_power(f, power)) << '\n';
  } else if (name == "transfer") {
    std::cout << to_string(transfer(f)) << '\n';
  } else if (name == "weight") {
    std::cout << weight(f) << '\n';
  } else if (name == "divide") {
    if (!arg) throw UsageError("divide needs a block index: --op \"divide j\"");
    const NormDivision qr = divide_by_norm(f, *arg);
    std::cout << "q = " << to_string(qr.quotient) << "\nr = " << to_string(qr.remainder) << '\n';
  } else {
    throw UsageError("unknown operator '" + a.op +
                     "' (sigma, sigma^k, delta, delta^k, transfer, weight, norm j, divide j)");
  }
  return kOk;
}

// --- beta --------------------------------------------------------------------

struct BetaArgs {
  std::uint32_t p = 0;
  std::vector<int> v;
  std::vector<int> w;
  Mode mode = Mode::Both;
  std::optional<int> cap;
  std::int64_t budget_ms = 0;
  std::int64_t max_dim = 0;
};

int run_beta(const BetaArgs& a) {
  const ModuleSpec v(PrimeField(a.p), a.v);
  if (!a.w.empty()) ModuleSpec(v.field(), a.w);
  std::unique_ptr<GeneratorEngine> engine;
  if (a.mode != Mode::Formula) engine = std::make_unique<GeneratorEngine>(v);
  const CaseResult r = evaluate(engine.get(), v, a.w, a.mode, a.cap, a.budget_ms, a.max_dim);
  std::cout << to_json(r).dump(2) << '\n';
  return r.agree == std::optional<bool>(false) ? kMismatch : kOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::uint32_t> p;
  int max_blocks = 2;
  int max_block_size = 3;
  std::vector<int> w{1, 2, 3};
  std::string out;
  std::string csv;
  int jobs = 1;
  std::int64_t budget_ms = 0;
  std::int64_t max_dim = 0;
};

struct SweepGroup {
  ModuleSpec v;
  std::vector<int> w_sizes;
  std::vector<CaseResult> results;
};

std::vector<SweepGroup> enumerate_groups(const SweepArgs& a) {
  std::vector<SweepGroup> groups;
  for (const std::uint32_t p : a.p) {
    const PrimeField field(p);
    std::vector<int> w_sizes;
    for (int n : a.w)
      if (n >= 1 && n <= static_cast<int>(p)) w_sizes.push_back(n);
    const int top = std::min(a.max_block_size, static_cast<int>(p));
    std::vector<int> blocks;
    // Non-increasing block lists, i.e. each V once up to isomorphism.
    auto rec = [&](auto&& self, int bound) -> void {
      if (!blocks.empty()) groups.push_back({ModuleSpec(field, blocks), w_sizes, {}});
      if (static_cast<int>(blocks.size()) == a.max_blocks) return;
      for (int n = 2; n <= bound; ++n) {
        blocks.push_back(n);
        self(self, n);
        blocks.pop_back();
      }
    };
    rec(rec, top);
  }
  return groups;
}

int run_sweep(const SweepArgs& a) {
  if (a.jobs < 1) throw UsageError("--jobs must be positive");
  if (a.budget_ms < 0 || a.max_dim < 0) throw UsageError("budgets must be non-negative");
  std::ofstream out(a.out);
  if (!out) throw UsageError("cannot write " + a.out);
  std::ofstream csv;
  if (!a.csv.empty()) {
    csv.open(a.csv);
    if (!csv) throw UsageError("cannot write " + a.csv);
  }

  std::vector<SweepGroup> groups = enumerate_groups(a);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t g = next++; g < groups.size(); g = next++) {
      SweepGroup& group = groups[g];
      GeneratorEngine engine(group.v);
      for (int n : group.w_sizes) {
        group.results.push_back(
            evaluate(&engine, group.v, {n}, Mode::Both, std::nullopt, a.budget_ms, a.max_dim));
        if (n > 1 && n < static_cast<int>(group.v.p())) engine.release(n);
      }
      std::lock_guard lock(log_mutex);
      std::cerr << "p=" << group.v.p() << ' ' << group.v.label() << ": " << group.results.size()
                << " cases\n";
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(a.jobs, static_cast<int>(groups.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json cases = json::array();
  int agree = 0, mismatch = 0, skipped = 0;
  if (csv) csv << kCsvHeader << '\n';
  for (const auto& group : groups)
    for (const auto& r : group.results) {
      cases.push_back(to_json(r));
      if (csv) csv << to_csv(r) << '\n';
      if (r.status != "ok") ++skipped;
      else if (r.agree == std::optional<bool>(true)) ++agree;
      else ++mismatch;
    }
  json report;
  report["cases"] = std::move(cases);
  report["summary"] = {{"total", agree + mismatch + skipped},
                       {"agree", agree},
                       {"mismatch", mismatch},
                       {"skipped", skipped}};
  out << report.dump(2) << '\n';
  std::cout << "cases " << agree + mismatch + skipped << ", agree " << agree << ", mismatch "
            << mismatch << ", skipped " << skipped << '\n';
  return mismatch > 0 ? kMismatch : kOk;
}

// --- decompose ---------------------------------------------------------------

struct DecomposeArgs {
  std::uint32_t p = 0;
  std::vector<int> v;
  int w = 0;
  int j = 0;
  std::string file;
};

void print_covariant(const std::string& name, const Covariant& h) {
  std::cout << name << ":\n";
  for (int i = 1; i <= h.n(); ++i) std::cout << "  f_" << i << " = " << to_string(h.component(i)) << '\n';
}

int run_decompose(const DecomposeArgs& a) {
  const RingPtr ring = make_ring(ModuleSpec(PrimeField(a.p), a.v));
  const ModuleSpec w(ring->field(), {a.w});
  std::ifstream in(a.file);
  if (!in) throw UsageError("cannot read " + a.file);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string::npos) lines.pop_back();
  std::vector<Polynomial> comps;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    try {
      comps.push_back(parse_polynomial(ring, lines[k]));
    } catch (const ParseError& e) {
      std::cerr << a.file << ':' << k + 1 << ": ";
      report_parse_error(e, lines[k]);
      return kUsage;
    }
  }
  const Covariant h(ring, w, std::move(comps));
  const NormSplit s = split_off_norm(h, a.j);
  print_covariant("h1", s.h1);
  print_covariant("h2", s.h2);
  std::cout << "witness: " << to_string(s.witness) << '\n';
  const bool rebuilt = norm(ring, a.j) * s.h1 + s.h2 == h;
  const bool chained = s.h2.is_zero() || make_transfer_covariant(s.witness, w, s.h2.support()) == s.h2;
  std::cout << "check: h = N_" << a.j << "*h1 + h2 " << (rebuilt ? "holds" : "FAILS")
            << "; h2 is the transfer chain of the witness " << (chained ? "holds" : "FAILS") << '\n';
  return rebuilt && chained ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generators and Noether numbers of modular invariants and covariants of Z/p"};
  app.require_subcommand(1);

  ActArgs act;
  auto* act_cmd = app.add_subcommand("act", "apply an operator to a polynomial");
  act_cmd->add_option("--p", act.p, "characteristic")->required();
  act_cmd->add_option("--v", act.v, "Jordan block sizes of V, e.g. 3,2")->required()->delimiter(',');
  act_cmd->add_option("--op", act.op,
                      "sigma | sigma^k | delta | delta^k | transfer | weight | norm j | divide j")
      ->required();
  act_cmd->add_option("expr", act.expr, "polynomial, e.g. \"x[1,1]^2*x[2,1] + 2*x[2,2]\"");

  BetaArgs beta;
  std::string beta_mode = "both";
  auto* beta_cmd = app.add_subcommand("beta", "Noether number: closed form, computation or both");
  beta_cmd->add_option("--p", beta.p, "characteristic")->required();
  beta_cmd->add_option("--v", beta.v, "Jordan block sizes of V")->required()->delimiter(',');
  beta_cmd->add_option("--w", beta.w, "Jordan block sizes of W (omit for the invariant ring)")
      ->delimiter(',');
  beta_cmd->add_option("--mode", beta_mode, "formula | compute | both")
      ->check(CLI::IsMember({"formula", "compute", "both"}));
  beta_cmd->add_option("--cap", beta.cap, "search degrees up to this cap instead of the certified one");
  beta_cmd->add_option("--budget-ms", beta.budget_ms, "wall-clock budget, 0 = none (env MODCOV_BUDGET_MS)");
  beta_cmd->add_option("--max-dim", beta.max_dim, "largest graded piece allowed, 0 = none");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "formula against computation over many cases");
  sweep_cmd->add_option("--p", sweep.p, "primes, e.g. 2,3,5")->required()->delimiter(',');
  sweep_cmd->add_option("--max-blocks", sweep.max_blocks, "largest number of summands of V");
  sweep_cmd->add_option("--max-block-size", sweep.max_block_size, "largest summand of V (capped at p)");
  sweep_cmd->add_option("--w", sweep.w, "sizes n of W = V_n (those above p are skipped)")->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "JSON report")->required();
  sweep_cmd->add_option("--csv", sweep.csv, "optional CSV copy of the report");
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads");
  sweep_cmd->add_option("--budget-ms", sweep.budget_ms, "per-case wall-clock budget, 0 = none");
  sweep_cmd->add_option("--max-dim", sweep.max_dim, "largest graded piece allowed, 0 = none");

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "split a covariant as N_j h1 + transfer covariant");
  dec_cmd->add_option("--p", dec.p, "characteristic")->required();
  dec_cmd->add_option("--v", dec.v, "Jordan block sizes of V")->required()->delimiter(',');
  dec_cmd->add_option("--w", dec.w, "dimension n of W = V_n")->required();
  dec_cmd->add_option("--j", dec.j, "block index of the norm (1-based)")->required();
  dec_cmd->add_option("--file", dec.file, "covariant, one component per line")->required();

  try {
    const std::int64_t env_budget = default_budget_ms();
    beta.budget_ms = sweep.budget_ms = env_budget;
    app.parse(argc, argv);
    if (*act_cmd) return run_act(act);
    if (*beta_cmd) {
      beta.mode = beta_mode == "formula" ? Mode::Formula : beta_mode == "compute" ? Mode::Compute : Mode::Both;
      return run_beta(beta);
    }
    if (*sweep_cmd) return run_sweep(sweep);
    if (*dec_cmd) return run_decompose(dec);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const DecompositionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
