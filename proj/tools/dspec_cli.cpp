// dspec: command-line front end for the distance-spectral-radius toolkit.
//
// Exit codes: 0 ok, 1 I/O, 2 bad input or unmet hypothesis, 3 no convergence,
// 4 verification verdict is a violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dspec/dspec.hpp"
#include "dspec/report_json.hpp"

namespace {

using json = nlohmann::ordered_json;
constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kIo = 1, kContract = 2, kConvergence = 3, kViolation = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string file, g6, h0;
  std::string format = "json";
  std::string csv;
  double tol = dspec::kDefaultTolerance;
  double tie = 1e-9;
  double cap = 1e8;
  int depth = 20;
  int threads = 0;
  unsigned long long seed = 0;
};

json config_json(const RunConfig& c, const json& extra) {
  json j = {{"command", c.command}, {"format", c.format}, {"tol", c.tol},   {"tie", c.tie},
            {"cap", c.cap},         {"depth", c.depth},   {"threads", c.threads}, {"seed", c.seed}};
  if (!c.file.empty()) j["file"] = c.file;
  if (!c.g6.empty()) j["g6"] = c.g6;
  if (!c.h0.empty()) j["h0"] = c.h0;
  if (!c.csv.empty()) j["csv"] = c.csv;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const RunConfig& c, const json& extra, const json& body, double seconds) {
  if (c.format == "json") {
    json doc;
    doc["schema"] = 1;
    doc["header"] = {{"config", config_json(c, extra)},
                     {"version", kVersion},
                     {"timestamp", utc_timestamp()},
                     {"wall_time", seconds}};
    doc["body"] = body;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(body, "", rows);
  if (c.format == "csv") {
    std::cout << "key,value\n";
    for (const auto& [k, v] : rows) std::cout << csv_field(k) << "," << csv_field(v) << "\n";
  } else {
    for (const auto& [k, v] : rows) std::cout << k << ": " << v << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buf.str();
}

/// The graph named by --file, --g6 or --h0 (a complement configuration).
dspec::Graph input_graph(const RunConfig& c) {
  if (!c.file.empty()) return dspec::parse_graph(read_file(c.file));
  if (!c.g6.empty()) return dspec::parse_graph6(c.g6);
  if (!c.h0.empty()) return dspec::complement(dspec::config_graph(dspec::ComplementConfig::parse(c.h0)));
  throw dspec::ContractError("no graph given (use --file, --g6 or --h0)");
}

/// Secular rho of g: requires diam(g) <= 2 and a cycle/path complement.
dspec::SpectralResult secular_of(const dspec::Graph& g, double tol) {
  const dspec::Graph h0 = dspec::complement(g);
  dspec::distance_matrix_via_complement(h0);
  const auto config = dspec::config_from_graph(h0);
  if (!config) throw dspec::ContractError("secular route needs the complement to be a union of cycles and paths");
  return dspec::rho_via_secular(*config, tol);
}

json spectral_json(const dspec::SpectralResult& r) {
  return {{"value", r.value}, {"method", to_string(r.method)}, {"residual", r.residual}, {"iterations", r.iterations}};
}

void add_graph_input(CLI::App* cmd, RunConfig& c, bool h0_is_config = true) {
  auto* f = cmd->add_option("--file", c.file, "graph file (edge list or graph6, sniffed by first byte)");
  auto* g = cmd->add_option("--g6", c.g6, "graph6 string");
  if (h0_is_config) {
    auto* h = cmd->add_option("--h0", c.h0, "complement configuration such as C3+P4+P4");
    f->excludes(g, h);
    g->excludes(h);
  } else {
    f->excludes(g);
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Distance spectral radius toolkit: two solver routes, closed-form Phi/Psi functions, extremal "
               "constructions and verification searches."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.footer(
      "Environment overrides: DSPEC_TOL, DSPEC_TIE, DSPEC_CAP, DSPEC_DEPTH, DSPEC_THREADS, DSPEC_SEED, DSPEC_FORMAT.\n"
      "Exit codes: 0 ok, 1 I/O error, 2 invalid input or unmet hypothesis, 3 no convergence, 4 verdict violation.");

  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->envname("DSPEC_FORMAT")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "eigensolver / secular tolerance")->envname("DSPEC_TOL")->capture_default_str();
  app.add_option("--tie", cfg.tie, "rho window treated as a tie")->envname("DSPEC_TIE")->capture_default_str();
  app.add_option("--cap", cfg.cap, "maximum candidates for labeled searches")
      ->envname("DSPEC_CAP")
      ->capture_default_str();
  app.add_option("--depth", cfg.depth, "walk truncation depth")
      ->check(CLI::NonNegativeNumber)
      ->envname("DSPEC_DEPTH")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->envname("DSPEC_THREADS")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed recorded in the run header")->envname("DSPEC_SEED")->capture_default_str();

  // rho
  std::string method = "eigen";
  auto* rho = app.add_subcommand("rho", "distance spectral radius of a graph");
  add_graph_input(rho, cfg);
  rho->add_option("--method", method, "solver route")
      ->check(CLI::IsMember({"eigen", "secular", "both"}))
      ->capture_default_str();

  // phi
  std::string kind = "path";
  int order = 0;
  double lambda = 0.0;
  bool increment = false;
  auto* phi = app.add_subcommand("phi", "closed-form Phi of a path or cycle");
  phi->add_option("--kind", kind)->check(CLI::IsMember({"path", "cycle"}))->capture_default_str();
  phi->add_option("--k", order, "path order or cycle length")->required();
  phi->add_option("--lambda", lambda)->required();
  phi->add_flag("--increment", increment, "also report Phi(P_{k+1}) - Phi(P_k)");

  // psi
  auto* psi = app.add_subcommand("psi", "Psi of a graph's complement at lambda");
  add_graph_input(psi, cfg);
  psi->add_option("--lambda", lambda)->required();
  bool neumann = false;
  psi->add_flag("--neumann", neumann, "also report the truncated walk series to --depth");

  // extremal
  long long m = 0;
  int n = 0, s = -1;
  auto* extremal = app.add_subcommand("extremal", "conjectured minimizer for m edges");
  auto* ext_m = extremal->add_option("--m", m, "edge count");
  auto* ext_n = extremal->add_option("--n", n);
  auto* ext_s = extremal->add_option("--s", s);
  ext_m->excludes(ext_n, ext_s);
  ext_n->needs(ext_s);
  ext_s->needs(ext_n);

  // verify
  std::string mode = "structured";
  auto* verify = app.add_subcommand("verify", "run a verification search");
  verify->add_option("--mode", mode)
      ->check(CLI::IsMember({"structured", "exhaustive", "large-s"}))
      ->capture_default_str();
  auto* ver_m = verify->add_option("--m", m, "edge count (exhaustive mode)");
  auto* ver_n = verify->add_option("--n", n);
  auto* ver_s = verify->add_option("--s", s);
  ver_m->excludes(ver_n, ver_s);
  ver_n->needs(ver_s);
  ver_s->needs(ver_n);
  verify->add_option("--csv", cfg.csv, "audit file of config,rho,method,residual rows");

  // walks
  auto* walks = app.add_subcommand("walks", "walk counts of a graph taken as h0");
  add_graph_input(walks, cfg, false);
  auto* walk_n = walks->add_option("--n", n, "with --s: run the walk-dominance check");
  auto* walk_s = walks->add_option("--s", s);
  walk_n->needs(walk_s);
  walk_s->needs(walk_n);
  std::optional<double> walk_lambda;
  walks->add_option("--lambda", walk_lambda, "also evaluate the truncated Psi series");

  // compare
  std::string cfg_a, cfg_b;
  auto* compare = app.add_subcommand("compare", "order rho of two complement configurations");
  compare->add_option("--a", cfg_a)->required();
  compare->add_option("--b", cfg_b)->required();

  auto* counter = app.add_subcommand("counterexample", "the n=11 single edge-switch values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kContract;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  try {
    json extra = json::object();
    json body;
    int code = kOk;

    if (*rho) {
      cfg.command = "rho";
      extra["method"] = method;
      const dspec::Graph g = input_graph(cfg);
      body["graph"] = g.order() <= 62 ? dspec::to_graph6(g) : "";
      std::optional<dspec::SpectralResult> eig, sec;
      if (method != "secular") eig = dspec::distance_spectral_radius(g, cfg.tol);
      if (method != "eigen") sec = secular_of(g, cfg.tol);
      if (eig) body["eigensolver"] = spectral_json(*eig);
      if (sec) body["secular"] = spectral_json(*sec);
      body["rho"] = eig ? eig->value : sec->value;
      if (eig && sec) body["delta"] = std::abs(eig->value - sec->value);
    } else if (*phi) {
      cfg.command = "phi";
      extra["kind"] = kind;
      extra["k"] = order;
      extra["lambda"] = lambda;
      body["value"] = kind == "path" ? dspec::phi_path(order, lambda) : dspec::phi_cycle(order, lambda);
      if (increment) {
        if (kind != "path") throw dspec::ContractError("--increment applies to paths only");
        body["increment"] = dspec::phi_path_increment(order, lambda);
      }
    } else if (*psi) {
      cfg.command = "psi";
      extra["lambda"] = lambda;
      const dspec::Graph h0 = dspec::complement(input_graph(cfg));
      const dspec::GeneralPsi p = dspec::psi(h0, lambda);
      body["h0"] = h0.order() <= 62 ? dspec::to_graph6(h0) : "";
      body["signature"] = dspec::shape_signature(dspec::components(h0));
      body["value"] = p.value;
      body["closed_form_only"] = p.closed_form_only;
      if (neumann) body["neumann"] = dspec::to_json(dspec::psi_via_neumann(h0, lambda, cfg.depth));
    } else if (*extremal) {
      cfg.command = "extremal";
      const dspec::ExtremalSpec spec = *ext_m ? dspec::params_from_m(m) : dspec::spec_from_ns(n, s);
      extra["m"] = spec.m;
      const dspec::Graph g = dspec::build_extremal_graph(spec);
      body = {{"m", spec.m},
              {"n", spec.n},
              {"s", spec.s},
              {"c", spec.c},
              {"q", spec.q},
              {"r", spec.r},
              {"parts", spec.parts},
              {"order", g.order()},
              {"edges", g.size()},
              {"rho", dspec::distance_spectral_radius(g, cfg.tol).value},
              {"graph6", g.order() <= 62 ? dspec::to_graph6(g) : ""}};
    } else if (*verify) {
      cfg.command = "verify";
      extra["mode"] = mode;
      dspec::VerifyOptions opt;
      opt.tol = cfg.tol;
      opt.tie = cfg.tie;
      opt.cap = cfg.cap;
      opt.threads = cfg.threads;
      opt.walk_depth = cfg.depth;
      std::ofstream audit;
      if (!cfg.csv.empty()) {
        audit.open(cfg.csv);
        if (!audit) throw IoError("cannot write " + cfg.csv);
        audit << "config,rho,method,residual\n" << std::setprecision(17);
        opt.audit = [&](std::string_view config, double value, dspec::Method how, double residual) {
          audit << csv_field(std::string(config)) << "," << value << "," << to_string(how) << "," << residual
                << "\n";
        };
      }
      dspec::VerificationReport rep;
      if (mode == "exhaustive") {
        if (!*ver_m && !*ver_n) throw dspec::ContractError("exhaustive mode needs --m or --n/--s");
        const long long edges = *ver_m ? m : dspec::binom2(n - 1) + s;
        if (*ver_n && (s < 1 || s > n - 1)) throw dspec::ContractError("exhaustive mode needs 1 <= s <= n-1");
        extra["m"] = edges;
        rep = dspec::verify_exhaustive(edges, opt);
      } else {
        if (*ver_m) {
          const auto spec = dspec::params_from_m(m);
          n = spec.n;
          s = spec.s;
        } else if (!*ver_n) {
          throw dspec::ContractError(mode + " mode needs --n/--s or --m");
        }
        extra["n"] = n;
        extra["s"] = s;
        rep = mode == "structured" ? dspec::verify_structured(n, s, opt) : dspec::verify_large_s(n, s, opt);
      }
      if (audit.is_open() && !audit.flush()) throw IoError("cannot write " + cfg.csv);
      body = dspec::to_json(rep);
      if (rep.verdict != dspec::Verdict::UniqueBalancedPaths) code = kViolation;
    } else if (*walks) {
      cfg.command = "walks";
      const dspec::Graph h0 = input_graph(cfg);
      body["profile"] = dspec::to_json(dspec::walk_counts(h0, cfg.depth));
      if (*walk_n) {
        extra["n"] = n;
        extra["s"] = s;
        const auto dom = dspec::walk_dominance_check(h0, n, s, cfg.depth);
        body["dominance"] = dspec::to_json(dom);
        if (dom.verdict == dspec::DominanceVerdict::Violation) code = kViolation;
      }
      if (walk_lambda) {
        extra["lambda"] = *walk_lambda;
        body["neumann"] = dspec::to_json(dspec::psi_via_neumann(h0, *walk_lambda, cfg.depth));
      }
    } else if (*compare) {
      cfg.command = "compare";
      const auto a = dspec::ComplementConfig::parse(cfg_a), b = dspec::ComplementConfig::parse(cfg_b);
      extra["a"] = a.to_string();
      extra["b"] = b.to_string();
      const auto r = dspec::compare_rho(a, b, {cfg.tol, cfg.tie});
      body = {{"a", a.to_string()},
              {"b", b.to_string()},
              {"order", to_string(r.order)},
              {"route", to_string(r.route)},
              {"certificate", r.certificate},
              {"rho_a", r.rho_a ? json(*r.rho_a) : json()},
              {"rho_b", r.rho_b}};
    } else if (*counter) {
      cfg.command = "counterexample";
      const auto r = dspec::edge_switch_counterexample(cfg.tol);
      body = dspec::to_json(r);
      if (!r.ordered) code = kViolation;
    }
    emit(cfg, extra, body, elapsed());
    return code;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const dspec::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kConvergence;
  } catch (const dspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  }
}
