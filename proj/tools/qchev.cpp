// Command-line driver: generate trace functions, check and decompose them,
// and run the acceptance suites.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "qchev/serialize.hpp"
#include "qchev/suites.hpp"

namespace fs = std::filesystem;
using namespace qchev;

namespace {

enum Exit { kOk = 0, kConditionFail = 1, kUsage = 2, kInternal = 3 };

struct JobConfig {
  std::string type = "A1";
  std::string mu;
  std::optional<int> mu_max;
  std::string v;
  std::optional<int> depth;
  std::optional<std::string> q;
  std::uint64_t seed = 0;
  std::string out;
  int jobs = 1;
};

// Values from a JSON config file; command-line flags given explicitly win.
void merge_config_file(const std::string& path, JobConfig& c, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = parse_json(ss.str());
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  auto given = [&](const char* flag) { return sub.count(flag) > 0; };
  auto str = [&](const json& x) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_number_integer()) return std::to_string(x.get<long>());
    if (x.is_array()) {
      std::string s;
      for (const json& e : x) s += (s.empty() ? "" : ",") + std::to_string(e.get<int>());
      return s;
    }
    throw ConfigError("unsupported config value " + x.dump());
  };
  try {
    if (j.contains("type") && !given("--type")) c.type = j["type"].get<std::string>();
    if (j.contains("mu") && !given("--mu")) c.mu = str(j["mu"]);
    if (j.contains("mu_max") && !given("--mu-max")) c.mu_max = j["mu_max"].get<int>();
    if (j.contains("v") && !given("--v")) c.v = str(j["v"]);
    if (j.contains("depth") && !given("--depth")) c.depth = j["depth"].get<int>();
    if (j.contains("q") && !given("--q")) c.q = str(j["q"]);
    if (j.contains("seed") && !given("--seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out") && !given("--out")) c.out = j["out"].get<std::string>();
    if (j.contains("jobs") && !given("--jobs")) c.jobs = j["jobs"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::string tok;
  std::stringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](char ch) { return ch == ' ' || ch == '(' || ch == ')'; }),
              tok.end());
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad integer '" + tok + "' in '" + s + "'");
    }
  }
  return out;
}

Weight parse_weight(const std::string& s, const CartanDatum& dat) {
  Weight w(parse_ints(s));
  if (w.rank() != dat.rank()) throw ConfigError("weight '" + s + "' does not have rank " + std::to_string(dat.rank()));
  return w;
}

// "adjoint", or highest weights separated by ';' ("2;4", "1,1").
VSpec parse_v(const std::string& s, const CartanDatum& dat) {
  if (s.empty()) throw ConfigError("--v is required");
  VSpec spec{dat.name(), {}};
  if (s == "adjoint") {
    Weight top = dat.positive_roots().front();
    for (const Weight& r : dat.positive_roots())
      if (dat.height(r) > dat.height(top)) top = r;
    spec.highest_weights.push_back(top);
    return spec;
  }
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    Weight w = parse_weight(part, dat);
    if (!w.is_dominant()) throw ConfigError("highest weight " + w.to_string() + " is not dominant");
    spec.highest_weights.push_back(w);
  }
  return spec;
}

std::vector<Weight> dominant_up_to(int rank, int k) {
  std::vector<Weight> out;
  if (k < 0) return out;
  Weight cur = Weight::zero(rank);
  for (;;) {
    out.push_back(cur);
    int j = rank - 1;
    while (j >= 0 && cur[j] == k) cur.c[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++cur.c[static_cast<std::size_t>(j)];
  }
  return out;
}

// "--mu 3", "--mu 1..4" (rank one), "--mu 1,0;0,1", or --mu-max k.
std::vector<Weight> parse_mu(const JobConfig& c, const CartanDatum& dat) {
  if (c.mu_max && !c.mu.empty()) throw ConfigError("give either --mu or --mu-max");
  if (c.mu_max) return dominant_up_to(dat.rank(), *c.mu_max);
  if (c.mu.empty()) throw ConfigError("--mu or --mu-max is required");
  std::vector<Weight> out;
  const auto dots = c.mu.find("..");
  if (dots != std::string::npos) {
    if (dat.rank() != 1) throw ConfigError("ranges a..b are for rank one; use --mu-max");
    const int a = parse_ints(c.mu.substr(0, dots)).at(0), b = parse_ints(c.mu.substr(dots + 2)).at(0);
    for (int m = a; m <= b; ++m) out.push_back(Weight{m});
  } else {
    std::stringstream ss(c.mu);
    std::string part;
    while (std::getline(ss, part, ';')) out.push_back(parse_weight(part, dat));
  }
  for (const Weight& w : out)
    if (!w.is_dominant()) throw ConfigError("mu " + w.to_string() + " is not dominant");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string weight_tag(const Weight& w) {
  std::string s;
  for (int x : w.c) s += (s.empty() ? "" : "_") + std::to_string(x);
  return s;
}

json evaluated_terms(const TorusFunction& f, const Rational& q) {
  json terms = json::array();
  for (const auto& [w, v] : f.terms()) {
    json coeffs = json::array();
    for (const Scalar& x : v) coeffs.push_back(evaluate(x, q).get_str());
    terms.push_back({{"weight", weight_to_json(w)}, {"coeffs", coeffs}});
  }
  return terms;
}

Rational parse_q(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    if (r == 0) throw ConfigError("q must be nonzero");
    return r;
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad rational q '" + s + "'");
  }
}

int cmd_generate(const JobConfig& c) {
  const CartanDatum dat = CartanDatum::from_name(c.type);
  const VSpec spec = parse_v(c.v, dat);
  const std::vector<Weight> mus = parse_mu(c, dat);
  const std::optional<Rational> q = c.q ? std::optional<Rational>(parse_q(*c.q)) : std::nullopt;
  TraceFactory tf(build_module(spec));

  std::vector<std::vector<GeneratedTrace>> results(mus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < mus.size();) {
      try {
        results[k] = generate_traces(tf, mus[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, c.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  std::size_t written = 0;
  for (const auto& per_mu : results)
    for (std::size_t k = 0; k < per_mu.size(); ++k) {
      const GeneratedTrace& t = per_mu[k];
      json j = torus_to_json(t.f, spec);
      j["mu"] = weight_to_json(t.mu);
      j["expectation"] = vector_to_json(t.v);
      if (q) j["evaluated"] = {{"q", q->get_str()}, {"terms", evaluated_terms(t.f, *q)}};
      const std::string name = "trace_" + dat.name() + "_mu" + weight_tag(t.mu) + "_" + std::to_string(k + 1) + ".json";
      fs::create_directories(dir);
      write_output((dir / name).string(), j);
      ++written;
    }
  std::cerr << "wrote " << written << " trace function file(s) to " << dir.string() << "\n";
  return kOk;
}

int cmd_check(const std::string& input, const JobConfig& c) {
  const TorusFile tf = torus_from_json(parse_json(read_file(input)));
  const ConditionReport r = check_conditions(tf.f);
  write_output(c.out, report_to_json(r));
  if (!r.all_pass()) std::cerr << "fails " << r.first_failure() << "\n";
  return r.all_pass() ? kOk : kConditionFail;
}

int cmd_decompose(const std::string& input, const JobConfig& c) {
  const TorusFile tf = torus_from_json(parse_json(read_file(input)));
  try {
    const Decomposition d = decompose(tf.f);
    write_output(c.out, decomposition_to_json(d));
    return kOk;
  } catch (const ConditionFailure& e) {
    std::cerr << e.what() << "\n";
    write_output(c.out, {{"error", e.what()}, {"report", report_to_json(e.report)}});
    return kConditionFail;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

int cmd_verify_suite(const JobConfig& c, const std::string& criteria, int trials) {
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.jobs = c.jobs;
  opt.trials = trials;
  if (c.depth) opt.verma_depth = *c.depth;
  const std::vector<int> ids = criteria.empty() ? std::vector<int>{} : parse_ints(criteria);
  for (int id : ids) criterion_title(id);
  const auto results = run_suite(ids, opt);

  json j = json::array();
  std::string csv = "suite,case,pass,runtime_ms\n";
  bool ok = true;
  for (const auto& r : results) {
    std::cout << summary_line(r) << "\n";
    ok = ok && r.pass();
    json cases = json::array();
    const std::string suite = std::to_string(r.id) + " " + r.title;
    for (const auto& cs : r.cases) {
      cases.push_back({{"case", cs.name}, {"pass", cs.pass}, {"skipped", cs.skipped}, {"detail", cs.detail}});
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", cs.ms);
      csv += csv_field(suite) + "," + csv_field(cs.name) + "," + (cs.skipped ? "skip" : cs.pass ? "pass" : "fail") + "," +
             ms + "\n";
    }
    j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"cases", cases}});
  }
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  write_output((dir / "suite.json").string(), {{"seed", c.seed}, {"criteria", j}});
  std::ofstream((dir / "suite.csv").string(), std::ios::binary) << csv;
  return ok ? kOk : kConditionFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace functions of quantum group intertwiners and the conditions characterizing them"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string config_path, input, criteria;
  int trials = 100;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", config_path, "JSON file with default values for the flags");
    s->add_option("--out", cfg.out, "Output file or directory");
  };
  CLI::App* gen = app.add_subcommand("generate", "Write one trace-function file per (mu, basis intertwiner)");
  common(gen);
  gen->add_option("--type", cfg.type, "Cartan type, e.g. A1, A2, B2, G2");
  gen->add_option("--mu", cfg.mu, "Dominant weight(s): 3, 1..4, or 1,0;0,1");
  gen->add_option("--mu-max", cfg.mu_max, "All dominant weights with coordinates up to this bound");
  gen->add_option("--v", cfg.v, "Highest weight(s) of V separated by ';', or 'adjoint'");
  gen->add_option("--q", cfg.q, "Also write coefficients evaluated at this rational q");
  gen->add_option("--jobs", cfg.jobs, "Worker threads");
  gen->add_option("--depth", cfg.depth, "Unused by generate; accepted for config compatibility");
  gen->add_option("--seed", cfg.seed, "Unused by generate; accepted for config compatibility");

  CLI::App* chk = app.add_subcommand("check", "Check the three conditions on a trace-function file");
  common(chk);
  chk->add_option("input", input, "Torus function JSON")->required();

  CLI::App* dec = app.add_subcommand("decompose", "Decompose a torus function into trace functions");
  common(dec);
  dec->add_option("input", input, "Torus function JSON")->required();

  CLI::App* ver = app.add_subcommand("verify-suite", "Run the acceptance suites; writes suite.json and suite.csv");
  common(ver);
  ver->add_option("--seed", cfg.seed, "Seed for randomized suites");
  ver->add_option("--jobs", cfg.jobs, "Criteria run in parallel");
  ver->add_option("--depth", cfg.depth, "Truncation depth of the Verma trace identity");
  ver->add_option("--criteria", criteria, "Comma-separated criterion numbers (default all)");
  ver->add_option("--trials", trials, "Random combinations per configuration in the round-trip suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) merge_config_file(config_path, cfg, *sub);
    if (cfg.jobs < 1) throw ConfigError("--jobs must be positive");
    if (sub == gen) return cmd_generate(cfg);
    if (sub == chk) return cmd_check(input, cfg);
    if (sub == dec) return cmd_decompose(input, cfg);
    return cmd_verify_suite(cfg, criteria, trials);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TheoremViolation& e) {
    std::cerr << "internal assertion failed: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
