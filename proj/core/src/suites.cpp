#include "dtmwb/suites.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "dtmwb/sampling.hpp"
#include "dtmwb/transforms.hpp"

namespace dtmwb {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"nutil", "propdec", "proper", "order", "modularity", "structure"};
  return names;
}

namespace {

struct Ctx {
  const std::string& suite;
  const std::string& instance;
  std::vector<ReportRow>& rows;

  void add(const std::string& statement, Verdict v, std::string witness = {}) {
    rows.push_back({suite, statement, instance, v, std::move(witness), 0});
  }
  void add(const Check& c, const std::string& prefix = {}) { add(prefix + c.statement, c.verdict, c.witness); }
  void add_all(const std::vector<Check>& cs, const std::string& prefix = {}) {
    for (const auto& c : cs) add(c, prefix);
  }
};

bool finite_everywhere(const SetFunction& f, const DecomposeOptions& opt) {
  auto fam = evaluation_family(f.space(), opt.budget, opt.seed, "finite:" + f.name());
  for (const auto& k : fam.compacts) {
    if (!f.closed(k).is_finite()) return false;
  }
  return true;
}

bool singleton_finite(const SetFunction& f) {
  for (int x = 0; x < f.space()->point_count(); ++x) {
    if (!singleton_value(f, x).is_finite()) return false;
  }
  return true;
}

void suite_nutil(Ctx& c, const Instance& in, const DecomposeOptions& opt) {
  if (in.presentation) {
    c.add("tilde-properties", Verdict::skipped, "needs a nonnegative input");
    return;
  }
  c.add_all(tilde_properties_suite(in.fn, opt.budget, opt.seed, opt.search), "tilde-");
}

void suite_propdec(Ctx& c, const Instance& in, const DecomposeOptions& opt) {
  Decomposition d = in.presentation ? decompose_signed(*in.presentation, opt) : decompose_proper(in.fn, opt);
  c.add_all(d.certificates);
}

void suite_proper(Ctx& c, const Instance& in, const DecomposeOptions& opt) {
  ProperVerdict v = in.presentation ? is_proper(*in.presentation, opt) : is_proper(in.fn, opt);
  c.add("properness", Verdict::pass, v.proper ? "proper (" + v.route + ")" : "not proper: " + v.witness);
  if (v.open_cover_form) {
    bool agree = *v.open_cover_form == v.proper;
    c.add("compact-and-open-criteria-agree", agree ? Verdict::pass : Verdict::fail,
          agree ? "" : "zero open cover of X: " + std::string(*v.open_cover_form ? "yes" : "no"));
  }
}

void suite_order(Ctx& c, const SpacePtr& sp, const std::string& name, const Instance& in,
                 const DecomposeOptions& opt) {
  if (in.presentation) {
    c.add("order", Verdict::skipped, "needs a nonnegative input");
    return;
  }
  auto pos = name.find("<=");
  if (name.starts_with("pair:") && pos != std::string::npos) {
    Instance mu = make_instance(sp, name.substr(5, pos - 5));
    Instance nu = make_instance(sp, name.substr(pos + 2));
    c.add_all(order_preservation_suite(mu.fn, nu.fn, opt));
    return;
  }
  c.add_all(order_preservation_suite(scale(Rational(1, 2), in.fn), in.fn, opt), "half-below:");
  c.add_all(order_preservation_suite(in.fn, in.fn, opt), "equal:");
}

void suite_modularity(Ctx& c, const Instance& in, const DecomposeOptions& opt) {
  SignedPresentation p = in.presentation ? *in.presentation : SignedPresentation{in.fn, SetFunction::zero(in.fn.space())};
  bool hyp = (singleton_finite(p.pos) && finite_everywhere(p.neg, opt)) ||
             (singleton_finite(p.neg) && finite_everywhere(p.pos, opt));
  if (!hyp) {
    c.add("modular-iff-proper-part-zero", Verdict::skipped, "needs one singleton-finite part and one finite part");
    return;
  }
  ModularityReport r = modularity_radon_check(p, opt);
  c.add("modularity-search", Verdict::pass,
        r.modular ? "no violation in " + std::to_string(r.pairs_checked) + " pairs" : r.witness);
  c.add("modular-iff-proper-part-zero", r.equivalence ? Verdict::pass : Verdict::fail,
        r.equivalence ? "" : std::string("modular=") + (r.modular ? "yes" : "no") +
                                 " proper-part-zero=" + (r.proper_part_zero ? "yes" : "no"));
  if (r.modular_proper_is_zero) c.add(*r.modular_proper_is_zero);
}

void suite_structure(Ctx& c, const Instance& in, const DecomposeOptions& opt) {
  if (in.presentation) {
    c.add("structure", Verdict::skipped, "needs a nonnegative input");
    return;
  }
  c.add_all(structure_lemmas_suite(in.fn, opt));
}

}  // namespace

std::vector<ReportRow> run_suite(const SpacePtr& space, const std::string& suite, const std::string& instance,
                                 const DecomposeOptions& base) {
  std::vector<ReportRow> rows;
  Ctx c{suite, instance, rows};
  DecomposeOptions opt = base;
  opt.seed = derive_seed(base.seed, suite, instance);
  opt.search.seed = opt.seed;
  try {
    std::string name = instance;
    Instance in;
    if (name.starts_with("pair:")) {
      auto pos = name.find("<=");
      if (pos == std::string::npos) throw ParseError("pair instances look like pair:MU<=NU");
      in = make_instance(space, name.substr(pos + 2));
    } else {
      in = make_instance(space, name);
    }
    if (suite == "nutil") {
      suite_nutil(c, in, opt);
    } else if (suite == "propdec") {
      suite_propdec(c, in, opt);
    } else if (suite == "proper") {
      suite_proper(c, in, opt);
    } else if (suite == "order") {
      suite_order(c, space, name, in, opt);
    } else if (suite == "modularity") {
      suite_modularity(c, in, opt);
    } else if (suite == "structure") {
      suite_structure(c, in, opt);
    } else {
      throw ParseError("unknown suite '" + suite + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const BadMarkedCells&) {
    throw;
  } catch (const NegativeWeight&) {
    throw;
  } catch (const BudgetExceeded& e) {
    c.add("budget", Verdict::bound_only, e.what());
  } catch (const HypothesisViolated& e) {
    c.add("hypotheses", Verdict::skipped, e.what());
  } catch (const UndefinedSubtraction& e) {
    c.add("hypotheses", Verdict::skipped, e.what());
  } catch (const InfiniteValue& e) {
    c.add("hypotheses", Verdict::skipped, e.what());
  } catch (const NormInfinite& e) {
    c.add("hypotheses", Verdict::skipped, e.what());
  } catch (const Error& e) {
    c.add("error", Verdict::fail, e.what());
  }
  return rows;
}

std::vector<ReportRow> run_suites(const SuiteConfig& config) {
  struct Task {
    const std::string* instance;
    const std::string* suite;
  };
  std::vector<Task> tasks;
  for (const auto& i : config.instances) {
    for (const auto& s : config.suites) tasks.push_back({&i, &s});
  }
  std::vector<std::vector<ReportRow>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      auto start = std::chrono::steady_clock::now();
      try {
        results[t] = run_suite(config.space, *tasks[t].suite, *tasks[t].instance, config.options);
      } catch (...) {
        errors[t] = std::current_exception();
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (config.timing) {
        for (auto& r : results[t]) r.wall_ms = ms;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  // Configuration errors surface in task order, not completion order.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<ReportRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

}  // namespace dtmwb
