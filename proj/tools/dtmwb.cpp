#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dtmwb/certificate_io.hpp"
#include "dtmwb/classify.hpp"
#include "dtmwb/cover.hpp"
#include "dtmwb/decompositions.hpp"
#include "dtmwb/instances.hpp"
#include "dtmwb/report.hpp"
#include "dtmwb/sampling.hpp"
#include "dtmwb/suites.hpp"
#include "dtmwb/transforms.hpp"

using namespace dtmwb;

namespace {

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kBudget = 3 };

struct ConfigError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpacePtr load_model(const std::string& spec) {
  if (spec.starts_with("grid:")) {
    int k = 0;
    try {
      k = std::stoi(spec.substr(5));
    } catch (const std::exception&) {
      throw ConfigError("bad grid resolution in '" + spec + "'");
    }
    return make_grid_space(k);
  }
  std::string text = read_file(spec);
  std::string label = std::filesystem::path(spec).stem().string();
  if (text.find("grid") != std::string::npos && text.find("points") == std::string::npos) {
    DyadicGrid g = DyadicGrid::parse(text);
    return make_grid_space(g.resolution(), g.marked());
  }
  FiniteLattice lat = FiniteLattice::parse(text);
  validate_lattice(lat);
  return make_lattice_space(std::move(lat), label);
}

// "lebesgue:uniform 1" arrives as two shell words; a bare number rejoins the
// previous instance name.
std::vector<std::string> join_instances(const std::vector<std::string>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) {
    bool number = !w.empty() && w.find_first_not_of("0123456789/-") == std::string::npos;
    if (number && !out.empty()) {
      out.back() += " " + w;
    } else {
      out.push_back(w);
    }
  }
  return out;
}

uint64_t default_budget() {
  if (const char* env = std::getenv("DTMWB_BUDGET")) {
    try {
      uint64_t b = std::stoull(env);
      if (b > 0) return b;
    } catch (const std::exception&) {
    }
    throw ConfigError("DTMWB_BUDGET must be a positive integer");
  }
  return SearchOptions{}.budget;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Common {
  std::string model;
  std::vector<std::string> instances;
  uint64_t budget = 0;
  uint64_t seed = 1;
  size_t samples = 2000;

  DecomposeOptions options() const {
    DecomposeOptions o;
    o.search.budget = budget;
    o.search.seed = seed;
    o.seed = seed;
    o.budget = samples;
    return o;
  }
  std::string instance() const {
    auto all = join_instances(instances);
    if (all.size() != 1) throw ConfigError("expected exactly one --instance");
    return all.front();
  }
};

void add_common(CLI::App* cmd, Common& c, bool instance) {
  cmd->add_option("--model", c.model, "lattice file or grid:k")->required();
  if (instance) cmd->add_option("--instance", c.instances, "registry name or set-function file")->required();
  cmd->add_option("--budget", c.budget, "search node budget (default from DTMWB_BUDGET)");
  cmd->add_option("--seed", c.seed, "seed for sampled checks");
  cmd->add_option("--samples", c.samples, "regions visited by sampled checks on large grids");
}

int cmd_validate(const Common& c) {
  SpacePtr sp = load_model(c.model);
  ValidationReport r = validate_space(*sp, c.samples * 50, c.seed);
  std::cout << "model " << sp->label() << "\n";
  if (!sp->is_grid()) {
    std::cout << "lattice_closed " << yes_no(r.lattice_closed) << "\n"
              << "connected " << yes_no(r.connected) << "\n"
              << "normal " << yes_no(r.normal) << "\n";
  } else {
    std::cout << "splitting " << yes_no(r.splitting) << "\n"
              << "interpolating " << yes_no(r.interpolating) << "\n";
  }
  std::cout << "exhaustive " << yes_no(r.exhaustive) << "\nchecked " << r.checked << "\n";
  for (const auto& w : r.counterexamples) std::cout << "counterexample " << w << "\n";
  return kOk;
}

int cmd_classify(const Common& c) {
  SpacePtr sp = load_model(c.model);
  Instance in = make_instance(sp, c.instance());
  ClassificationReport r = classify(in.fn, {c.samples * 10, c.seed});
  std::cout << "instance " << in.fn.name() << "\n"
            << "measure_restriction " << yes_no(r.is_measure_restriction) << "\n"
            << "radon " << yes_no(r.is_radon_surrogate) << "\n"
            << "tm " << yes_no(r.is_tm) << "\n"
            << "dtm " << yes_no(r.is_dtm) << "\n"
            << "stm " << yes_no(r.is_stm) << "\n"
            << "sdtm " << yes_no(r.is_sdtm) << "\n"
            << "compact_finite " << yes_no(r.compact_finite) << "\n"
            << "singleton_finite " << yes_no(r.singleton_finite) << "\n"
            << "locally_finite " << yes_no(r.locally_finite) << "\n"
            << "simple " << yes_no(r.simple) << "\n"
            << "finite " << yes_no(r.finite) << "\n"
            << "norm " << r.norm << (r.norm_exact ? "" : " (bound)") << "\n";
  if (r.is_measure_restriction) {
    std::cout << "weights";
    for (const auto& w : r.weights) std::cout << " " << to_string(w);
    std::cout << "\n";
  }
  std::cout << "exhaustive " << yes_no(r.exhaustive) << "\nchecked " << r.checked << "\n";
  for (const auto& v : r.witnesses) {
    std::cout << "violation " << v.axiom;
    for (const auto& [f, reg] : v.regions) std::cout << " " << to_string(f) << ":" << sp->format(reg);
    if (!v.detail.empty()) std::cout << " -- " << v.detail;
    std::cout << "\n";
  }
  return kOk;
}

struct TransformArgs {
  std::string op = "tilde";
  bool bounds = false;
  bool all = false;
  std::string certificates;
};

int cmd_transform(const Common& c, const TransformArgs& t) {
  SpacePtr sp = load_model(c.model);
  Instance in = make_instance(sp, c.instance());
  SearchOptions so{c.budget, c.seed};
  const Region x = sp->universe();
  std::vector<StoredCertificate> certs;
  int code = kOk;

  auto report_bounds = [&](const std::string& label, const ExtValue& lo, const ExtValue& hi, bool exact) {
    if (exact) {
      std::cout << label << " = " << lo << "\n";
    } else if (t.bounds) {
      std::cout << label << " in [" << lo << ", " << hi << "]\n";
      code = kBudget;
    } else {
      throw SearchBudgetExceeded(label + " not settled", lo, hi);
    }
  };

  if (t.op == "tilde") {
    TildeSolver solver(in.fn, so);
    std::vector<Region> targets = t.all && sp->enumerable() ? sp->compacts() : std::vector<Region>{x};
    for (const auto& k : targets) {
      CoverCertificate cert = solver.solve(k);
      if (sp->is_grid() && cert.optimal) cert = simplify_cover(in.fn, cert);
      report_bounds(in.fn.name() + "~(" + sp->format(k) + ")", cert.optimal ? cert.total : cert.lower, cert.total,
                    cert.optimal);
      certs.push_back({sp->label(), in.fn.name(), cert});
    }
  } else if (t.op == "abs") {
    PackingSolver solver(in.fn, so);
    std::vector<Region> targets = t.all && sp->enumerable() ? sp->opens() : std::vector<Region>{x};
    for (const auto& u : targets) {
      PackingCertificate cert = solver.solve(u);
      report_bounds("|" + in.fn.name() + "|(" + sp->format(u) + ")", cert.total, cert.upper, cert.optimal);
      certs.push_back({sp->label(), in.fn.name(), cert});
    }
  } else if (t.op == "plus" || t.op == "minus" || t.op == "radon") {
    try {
      SetFunction f;
      if (t.op == "plus") f = positive_variation(in.fn, {c.samples * 10, c.seed}).fn;
      if (t.op == "minus") f = negative_variation(in.fn, {c.samples * 10, c.seed}).fn;
      if (t.op == "radon") f = radon_part(in.fn, so, c.samples, c.seed).m;
      std::vector<Region> targets = t.all && sp->enumerable() ? sp->opens() : std::vector<Region>{x};
      for (const auto& u : targets) std::cout << f.name() << "(" << sp->format(u) << ") = " << f.open(u) << "\n";
    } catch (const SearchBudgetExceeded& e) {
      report_bounds(t.op + "(X)", e.lower(), e.upper(), false);
    }
  } else {
    throw ConfigError("unknown --op '" + t.op + "'");
  }

  if (!t.certificates.empty()) {
    std::ostringstream out;
    for (const auto& s : certs) write_certificate(out, s);
    if (t.certificates == "-") {
      std::cout << out.str();
    } else {
      std::ofstream f(t.certificates, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + t.certificates + "'");
      f << out.str();
    }
  }
  return code;
}

int cmd_decompose(const Common& c) {
  SpacePtr sp = load_model(c.model);
  Instance in = make_instance(sp, c.instance());
  DecomposeOptions opt = c.options();
  Decomposition d = in.presentation ? decompose_signed(*in.presentation, opt) : decompose_proper(in.fn, opt);
  const Region x = sp->universe();
  std::cout << "instance " << in.fn.name() << "\n"
            << "radon " << d.radon.name() << "\n"
            << "m(X) = " << d.radon.open(x) << "\n"
            << "proper " << d.proper.name() << "\n"
            << "proper(X) = " << d.proper.open(x) << "\n";
  if (!d.uniqueness_route.empty()) std::cout << "uniqueness " << d.uniqueness_route << "\n";
  if (d.proper_verdict) {
    std::cout << "proper_part_is_proper " << yes_no(d.proper_verdict->proper) << " (" << d.proper_verdict->route
              << ")\n";
  }
  std::vector<ReportRow> rows;
  for (const auto& ch : d.certificates) rows.push_back({"decompose", ch.statement, in.name, ch.verdict, ch.witness, 0});
  write_csv(std::cout, rows);
  return exit_code(rows);
}

struct CheckArgs {
  std::vector<std::string> suites;
  unsigned threads = 1;
  bool timing = false;
  std::string output;
};

int cmd_check(const Common& c, const CheckArgs& a) {
  SuiteConfig cfg;
  cfg.space = load_model(c.model);
  cfg.instances = join_instances(c.instances);
  cfg.suites = a.suites.empty() || (a.suites.size() == 1 && a.suites[0] == "all") ? suite_names() : a.suites;
  for (const auto& s : cfg.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  cfg.options = c.options();
  cfg.threads = std::max(1u, a.threads);
  cfg.timing = a.timing;
  std::vector<ReportRow> rows = run_suites(cfg);
  if (a.output.empty() || a.output == "-") {
    write_csv(std::cout, rows, a.timing);
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + a.output + "'");
    write_csv(f, rows, a.timing);
  }
  return exit_code(rows);
}

int cmd_enumerate(const Common& c, const std::string& grid, size_t max_closeds) {
  SpacePtr sp = load_model(c.model);
  if (sp->is_grid()) throw ConfigError("enumerate needs a lattice model");
  std::vector<Rational> g;
  std::stringstream ss(grid);
  for (std::string item; std::getline(ss, item, ',');) g.push_back(parse_rational(item));
  auto found = enumerate_dtms(sp, g, max_closeds, c.budget);
  std::cout << "count " << found.size() << "\n";
  for (const auto& e : found) {
    std::cout << e.fn.name() << " measure=" << yes_no(e.measure) << " tm=" << yes_no(e.tm) << "\n";
  }
  return kOk;
}

int cmd_convergence(const Common& c, int kmin, int kmax) {
  if (kmin < 1 || kmax > DyadicGrid::kMaxResolution || kmin > kmax) throw ConfigError("bad k range");
  std::string family = c.instance();
  std::vector<ReportRow> rows;
  std::cout << "k,m(X),tilde(X),proper\n";
  int code = kOk;
  for (int k = kmin; k <= kmax; ++k) {
    SpacePtr sp = make_grid_space(k);
    Instance in = make_instance(sp, family);
    DecomposeOptions opt = c.options();
    opt.seed = derive_seed(c.seed, "convergence", std::to_string(k));
    const Region x = sp->universe();
    CoverCertificate cert = tilde(in.fn, x, opt.search);
    std::string tx = cert.optimal ? cert.total.str() : "[" + cert.lower.str() + "," + cert.total.str() + "]";
    std::string mx;
    try {
      mx = tilde_function(in.fn, opt.search).open(x).str();
    } catch (const SearchBudgetExceeded& e) {
      mx = "[" + e.lower().str() + "," + e.upper().str() + "]";
      code = kBudget;
    }
    std::string pr;
    try {
      pr = yes_no(is_proper(in.fn, opt).proper);
    } catch (const SearchBudgetExceeded&) {
      pr = "bound-only";
      code = kBudget;
    }
    if (!cert.optimal) code = kBudget;
    std::cout << k << "," << mx << "," << tx << "," << pr << "\n";
  }
  return code;
}

int cmd_check_certificate(const Common& c, const std::string& file) {
  SpacePtr sp = load_model(c.model);
  auto certs = parse_certificates(read_file(file));
  std::optional<Instance> given;
  if (!c.instances.empty()) given = make_instance(sp, c.instance());
  int code = kOk;
  SearchOptions so{c.budget, c.seed};
  for (size_t i = 0; i < certs.size(); ++i) {
    const auto& s = certs[i];
    Instance in = given ? *given : make_instance(sp, s.function);
    std::string why;
    bool ok = std::visit(
        [&](const auto& cert) {
          if constexpr (std::is_same_v<std::decay_t<decltype(cert)>, CoverCertificate>) {
            return validate_cover(in.fn, cert, &why, so);
          } else {
            return validate_packing(in.fn, cert, &why, so);
          }
        },
        s.cert);
    std::cout << "certificate " << i << " " << (ok ? "valid" : "invalid");
    if (!ok) std::cout << ": " << why;
    std::cout << "\n";
    if (!ok) code = kFail;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dtmwb: exact workbench for deficient topological measures on finite models"};
  app.require_subcommand(1);
  Common common;
  TransformArgs targs;
  CheckArgs cargs;
  std::string enum_grid = "0,1/2,1";
  size_t max_closeds = 12;
  int kmin = 2, kmax = 3;
  std::string cert_file;

  auto* validate = app.add_subcommand("validate", "structural checks of a model");
  add_common(validate, common, false);
  auto* classify_cmd = app.add_subcommand("classify", "classify an instance");
  add_common(classify_cmd, common, true);
  auto* transform = app.add_subcommand("transform", "variation and cover transforms");
  add_common(transform, common, true);
  transform->add_option("--op", targs.op)->check(CLI::IsMember({"plus", "minus", "abs", "tilde", "radon"}));
  auto* exact = transform->add_flag("--exact", "fail with exit 3 unless values are settled");
  transform->add_flag("--bounds", targs.bounds, "print bound pairs for unsettled values")->excludes(exact);
  transform->add_flag("--all", targs.all, "every region of an enumerable model, not only X");
  transform->add_option("--certificates", targs.certificates, "write certificates to a file ('-' for stdout)");
  auto* decompose = app.add_subcommand("decompose", "Radon and proper parts");
  add_common(decompose, common, true);
  auto* check = app.add_subcommand("check", "run statement suites, CSV report");
  add_common(check, common, true);
  check->add_option("--suite", cargs.suites, "suite names or 'all'");
  check->add_option("--threads", cargs.threads);
  check->add_flag("--timing", cargs.timing, "add a wall_ms column (not reproducible)");
  check->add_option("--output", cargs.output);
  auto* enumerate = app.add_subcommand("enumerate", "enumerate DTM tables on a lattice");
  add_common(enumerate, common, false);
  enumerate->add_option("--values", enum_grid, "comma separated value grid");
  enumerate->add_option("--max-closeds", max_closeds);
  auto* convergence = app.add_subcommand("convergence", "m(X), tilde(X) and properness across k");
  convergence->add_option("--instance", common.instances)->required();
  convergence->add_option("--kmin", kmin);
  convergence->add_option("--kmax", kmax);
  convergence->add_option("--budget", common.budget);
  convergence->add_option("--seed", common.seed);
  convergence->add_option("--samples", common.samples);
  auto* check_cert = app.add_subcommand("check-certificate", "re-validate certificate blocks");
  add_common(check_cert, common, false);
  check_cert->add_option("--instance", common.instances, "function (default: the name stored in each block)");
  check_cert->add_option("--file", cert_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (common.budget == 0) common.budget = default_budget();
    if (*validate) return cmd_validate(common);
    if (*classify_cmd) return cmd_classify(common);
    if (*transform) return cmd_transform(common, targs);
    if (*decompose) return cmd_decompose(common);
    if (*check) return cmd_check(common, cargs);
    if (*enumerate) return cmd_enumerate(common, enum_grid, max_closeds);
    if (*convergence) return cmd_convergence(common, kmin, kmax);
    if (*check_cert) return cmd_check_certificate(common, cert_file);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kConfig;
  } catch (const MalformedLattice& e) {
    std::cerr << "malformed lattice: " << e.what() << "\n";
    return kConfig;
  } catch (const BadMarkedCells& e) {
    std::cerr << "bad marked cells: " << e.what() << "\n";
    return kConfig;
  } catch (const NegativeWeight& e) {
    std::cerr << "negative weight: " << e.what() << "\n";
    return kConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kOk;
}
