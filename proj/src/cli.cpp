#include "occam/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "occam/domain.hpp"
#include "occam/learners.hpp"
#include "occam/occam.hpp"
#include "occam/rng.hpp"
#include "occam/vc.hpp"
#include "occam/verify.hpp"

namespace occam::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kVerifyTargets = {"sauer", "lemma1", "lemma3", "lemma4",
                                                 "eq1",   "eq4",    "exlist", "approx"};

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (*end != '\0' || parsed == 0) throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return parsed;
}

struct Options {
  unsigned n = 2;
  std::uint64_t s_max = 4;
  unsigned width_max = 1;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned jobs = 1;
  unsigned k = 2;
  std::uint64_t a_k_scan_limit = kDefaultAkScanLimit;
  std::string learner = "greedy-dl";
  std::string out;
  std::string out_dir = ".";
  std::vector<std::uint64_t> m;

  // verify
  std::string target;
  std::string log_base = "2";
  unsigned l = 2;
  std::uint64_t random_classes = 0;
  std::size_t class_size = 64;
  double epsilon = 0.5;
  std::vector<double> epsilons;
  std::vector<unsigned> grid_n;
  std::vector<std::uint64_t> grid_x;
  std::uint64_t target_index = 0;
  unsigned n_max = 8;
  std::string mode = "sampled";

  // occamize
  bool trend = false;

  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t work_cap = vc::kDefaultWorkCap;

  ConceptClassDescriptor desc() const { return {n, s_max, width_max}; }
  ConceptClassDescriptor desc(unsigned n_override) const { return {n_override, s_max, width_max}; }
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t content_hash(const std::string& text) {
  return fnv1a({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

/// Explicit --out, or <prefix>-<hash of text><ext> in --out-dir.
fs::path output_path(const Options& o, const std::string& prefix, const std::string& text,
                     const std::string& ext) {
  if (!o.out.empty()) return o.out;
  return fs::path(o.out_dir) / (prefix + "-" + hex64(content_hash(text)) + ext);
}

void write_bundle(const Options& o, const std::string& prefix,
                  const std::vector<BoundReport>& reports, std::ostream& out) {
  const std::string json = reports_to_json(reports);
  const fs::path json_path = output_path(o, prefix, json, ".json");
  fs::path csv_path = json_path;
  csv_path.replace_extension(".csv");
  if (csv_path == json_path) csv_path += ".csv";
  write_file(json_path, json);
  write_file(csv_path, reports_to_csv(reports));
  for (const auto& r : reports) {
    out << (r.pass ? "pass " : "FAIL ") << r.lemma << " observed=" << format_number(r.observed)
        << " bound=" << format_number(r.bound) << " mode=" << r.mode << '\n';
  }
  out << "wrote " << json_path.string() << " and " << csv_path.string() << '\n';
}

vc::LogBase parse_log_base(const std::string& s) {
  if (s == "e") return vc::LogBase::natural();
  std::size_t used = 0;
  const double b = std::stod(s, &used);
  if (used != s.size() || !(b > 1.0)) throw std::invalid_argument("log base must be > 1 or 'e'");
  return {b};
}

std::vector<std::uint64_t> or_default(const std::vector<std::uint64_t>& v,
                                      std::vector<std::uint64_t> fallback) {
  return v.empty() ? fallback : v;
}

std::uint64_t trials_or(const Options& o, std::uint64_t fallback) {
  return o.trials == 0 ? fallback : o.trials;
}

vc::FiniteClass enumerated_class(const Options& o) {
  const auto concepts = enumerate_concepts(o.desc(), o.enumeration_cap);
  return vc::FiniteClass::from_concepts(o.n, concepts);
}

std::vector<vc::FiniteClass> random_classes(const Options& o) {
  const std::uint32_t domain = DomainSpec(o.n).size();
  std::size_t max_size = o.class_size;
  if (domain < 6) max_size = std::min<std::size_t>(max_size, std::size_t{1} << domain);
  if (max_size == 0) throw std::invalid_argument("--class-size must be positive");
  std::vector<vc::FiniteClass> out;
  for (std::uint64_t i = 0; i < o.random_classes; ++i) {
    SplitMix64 gen(derive_seed(o.seed, i));
    const std::size_t size = 1 + uniform_below(gen, max_size);
    out.push_back(vc::random_class(o.n, size, gen()));
  }
  return out;
}

int cmd_vcdim(const Options& o, std::ostream& out) {
  const vc::FiniteClass cls = enumerated_class(o);
  const vc::VcReport r = vc::vc_dimension(cls, o.work_cap);
  const DomainSpec spec(o.n);
  nlohmann::ordered_json j;
  j["n"] = o.n;
  j["s_max"] = o.s_max;
  j["width_max"] = o.width_max;
  j["class_size"] = cls.size();
  j["d"] = r.d;
  j["witness"] = nlohmann::json::array();
  for (Point x : r.witness) j["witness"].push_back(spec.format(x));
  j["certificate_no_larger"] = r.certificate_no_larger;
  j["shatter_checks"] = r.shatter_checks;
  const std::string text = j.dump(2) + "\n";
  const fs::path path = output_path(o, "vcdim", text, ".json");
  write_file(path, text);
  out << "d=" << r.d << " class_size=" << cls.size()
      << (r.certificate_no_larger ? "" : " (search stopped at the work cap)") << '\n'
      << "wrote " << path.string() << '\n';
  return r.certificate_no_larger ? 0 : 1;
}

std::vector<BoundReport> verify_reports(const Options& o) {
  const std::string& t = o.target;
  std::vector<BoundReport> reports;
  if (t == "sauer") {
    const auto ms = or_default(o.m, {1, 2, 3, 4});
    return vc::check_sauer(enumerated_class(o), ms, o.work_cap);
  }
  if (t == "lemma1") {
    const vc::LogBase base = parse_log_base(o.log_base);
    reports.push_back(vc::check_vc_log_bound(enumerated_class(o), base));
    for (const auto& cls : random_classes(o)) reports.push_back(vc::check_vc_log_bound(cls, base));
    return reports;
  }
  if (t == "lemma4") {
    const vc::LogBase base = parse_log_base(o.log_base);
    std::vector<vc::FiniteClass> classes{enumerated_class(o)};
    for (auto& cls : random_classes(o)) classes.push_back(std::move(cls));
    for (const auto& cls : classes) {
      for (unsigned l = 0; l <= o.l; ++l) {
        reports.push_back(vc::check_exception_dim_bound(cls, l, base, o.enumeration_cap));
      }
    }
    return reports;
  }
  if (t == "lemma3") {
    const auto targets = verify::distinct_targets(o.desc(), o.enumeration_cap);
    if (o.target_index >= targets.size()) {
      throw std::invalid_argument("--target-index must be below " + std::to_string(targets.size()));
    }
    const Distribution uniform = Distribution::uniform(o.n);
    const auto ms = or_default(o.m, {4, 8, 16});
    for (std::size_t i = 0; i < ms.size(); ++i) {
      reports.push_back(verify::check_lemma3(o.desc(), targets[o.target_index], uniform, ms[i],
                                             o.epsilon, trials_or(o, 10000), derive_seed(o.seed, i),
                                             o.jobs));
    }
    return reports;
  }
  if (t == "eq1") {
    const LearnerSpec learner = make_learner(o.learner, o.width_max);
    const std::vector<unsigned> ns = o.grid_n.empty() ? std::vector<unsigned>{o.n} : o.grid_n;
    const std::vector<std::uint64_t> xs = o.grid_x.empty() ? std::vector<std::uint64_t>{2} : o.grid_x;
    const std::vector<double> eps = o.epsilons.empty() ? std::vector<double>{o.epsilon} : o.epsilons;
    std::vector<verify::LearnerGridPoint> grid;
    for (unsigned n : ns) {
      for (auto x : xs) {
        for (double e : eps) grid.push_back({n, x, e});
      }
    }
    return verify::check_eq1_k(learner, o.k, grid, o.desc(), trials_or(o, 200), o.seed, o.jobs);
  }
  if (t == "eq4") {
    const LearnerSpec learner = make_learner(o.learner, o.width_max);
    const OccamParams params = make_occam_params(o.k, o.a_k_scan_limit);
    const verify::Procedure proc = verify::occam_procedure(learner, o.k);
    const std::vector<unsigned> ns = o.grid_n.empty() ? std::vector<unsigned>{2, 3} : o.grid_n;
    const auto ms = or_default(o.m, {4, 8, 16, 32});
    const verify::SpaceMode mode =
        o.mode == "exhaustive" ? verify::SpaceMode::exhaustive : verify::SpaceMode::sampled;
    std::uint64_t cell = 0;
    for (unsigned n : ns) {
      for (auto m : ms) {
        const auto space = verify::effective_space(proc, o.desc(n), m, mode, trials_or(o, 200),
                                                   derive_seed(o.seed, cell++), o.jobs,
                                                   o.enumeration_cap);
        for (auto& r : verify::check_eq4_chain(space, params)) reports.push_back(std::move(r));
      }
    }
    return reports;
  }
  if (t == "exlist") {
    return verify::check_exlist(o.n_max, trials_or(o, 1000), o.seed);
  }
  if (t == "approx") {
    const LearnerSpec learner = make_learner(o.learner, o.width_max);
    const auto ms = or_default(o.m, {16, 64});
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::uint64_t seed = derive_seed(o.seed, i);
      reports.push_back(verify::check_exception_budget(learner, o.desc(), ms[i], o.k,
                                                       trials_or(o, 200), seed, o.jobs));
      for (auto& r : verify::check_approx_occam(learner, o.desc(), ms[i], o.k, trials_or(o, 200),
                                                seed, o.jobs)) {
        reports.push_back(std::move(r));
      }
    }
    return reports;
  }
  throw std::invalid_argument("unknown verify target '" + t + "'");
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto reports = verify_reports(o);
  write_bundle(o, "verify-" + o.target, reports, out);
  return all_pass(reports) ? 0 : 1;
}

int cmd_occamize(const Options& o, std::ostream& out) {
  const LearnerSpec learner = make_learner(o.learner, o.width_max);
  if (o.trend) {
    const OccamParams params = make_occam_params(o.k, o.a_k_scan_limit);
    const auto ms = or_default(o.m, {8, 16, 32, 64});
    const auto reports = verify::sublinearity_trend(verify::occam_procedure(learner, o.k), o.desc(),
                                                    ms, params, trials_or(o, 200), o.seed, o.jobs);
    write_bundle(o, "occamize-trend", reports, out);
    return all_pass(reports) ? 0 : 1;
  }
  const auto ms = or_default(o.m, {32});
  if (ms.size() != 1) throw std::invalid_argument("occamize takes one --m unless --trend is set");
  const auto records = verify::run_occam_trials(learner, o.desc(), ms.front(), o.k,
                                                trials_or(o, 100), o.seed, o.jobs);
  const std::string csv = verify::trials_to_csv(records);
  const fs::path path = output_path(o, "occamize", csv, ".csv");
  write_file(path, csv);
  const auto consistent = std::count_if(records.begin(), records.end(),
                                        [](const verify::TrialRecord& r) { return r.consistent; });
  out << consistent << "/" << records.size() << " trials consistent\n"
      << "wrote " << path.string() << '\n';
  return consistent == static_cast<std::ptrdiff_t>(records.size()) ? 0 : 1;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--s-max", o.s_max, "Largest concept size in the class")->capture_default_str();
  sub->add_option("--width-max", o.width_max, "Largest term width")->capture_default_str();
  sub->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  sub->add_option("--out", o.out, "Output file (JSON; a .csv sibling for bundles)");
  sub->add_option("--out-dir", o.out_dir, "Directory for content-addressed output")->capture_default_str();
}

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--trials", o.trials, "Trials (0 selects the per-command default)");
  sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--k", o.k, "Occam exponent parameter k")->capture_default_str()->check(CLI::Range(1u, kMaxOccamK));
  sub->add_option("--a-k-scan-limit", o.a_k_scan_limit, "Scan limit for a_k")->capture_default_str();
  sub->add_option("--learner", o.learner, "Learner name")
      ->capture_default_str()
      ->check(CLI::IsMember(learner_names()));
  sub->add_option("--m", o.m, "Sample size(s), comma separated")->delimiter(',');
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Occam algorithms from PAC learners: VC dimension and bound checks", "occamlab");
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; use a [vcdim], [verify] or [occamize] section");
  app.allow_config_extras(CLI::config_extras_mode::error);

  auto* vcdim = app.add_subcommand("vcdim", "Exact VC dimension of an enumerated class");
  vcdim->fallthrough();
  vcdim->add_option("--n", o.n, "Number of variables")->required();
  add_common(vcdim, o);
  vcdim->add_option("--work-cap", o.work_cap, "Shattering work cap")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check a bound");
  verify_cmd->fallthrough();
  verify_cmd->add_option("target", o.target, "Which bound")->required()->check(CLI::IsMember(kVerifyTargets));
  verify_cmd->add_option("--n", o.n, "Number of variables")->capture_default_str();
  add_common(verify_cmd, o);
  add_run_options(verify_cmd, o);
  verify_cmd->add_option("--log-base", o.log_base, "Logarithm base for lemma1/lemma4 (number or e)")->capture_default_str();
  verify_cmd->add_option("--l", o.l, "Largest exception count for lemma4")->capture_default_str();
  verify_cmd->add_option("--random", o.random_classes, "Extra random classes for lemma1/lemma4")->capture_default_str();
  verify_cmd->add_option("--class-size", o.class_size, "Largest random class size")->capture_default_str();
  verify_cmd->add_option("--epsilon", o.epsilons, "Accuracy (lemma3: first value; eq1: grid)")->delimiter(',');
  verify_cmd->add_option("--grid-n", o.grid_n, "Dimensions for eq1/eq4")->delimiter(',');
  verify_cmd->add_option("--x", o.grid_x, "x values for eq1")->delimiter(',');
  verify_cmd->add_option("--target-index", o.target_index, "Target for lemma3 among distinct concepts")->capture_default_str();
  verify_cmd->add_option("--n-max", o.n_max, "Largest dimension for exlist")->capture_default_str();
  verify_cmd->add_option("--mode", o.mode, "Effective space mode for eq4")
      ->capture_default_str()
      ->check(CLI::IsMember({"sampled", "exhaustive"}));
  verify_cmd->add_option("--work-cap", o.work_cap, "Shattering work cap")->capture_default_str();

  auto* occamize_cmd = app.add_subcommand("occamize", "Seeded Occam runs");
  occamize_cmd->fallthrough();
  occamize_cmd->add_option("--n", o.n, "Number of variables (default 3)");
  add_common(occamize_cmd, o);
  add_run_options(occamize_cmd, o);
  occamize_cmd->add_flag("--trend", o.trend, "Sublinearity trend over --m instead of trial rows");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    o.enumeration_cap = env_cap("OCCAMLAB_ENUMERATION_CAP", o.enumeration_cap);
    if (!o.epsilons.empty()) o.epsilon = o.epsilons.front();
    if (occamize_cmd->parsed()) {
      if (occamize_cmd->count("--n") == 0) o.n = 3;
      if (occamize_cmd->count("--width-max") == 0) o.width_max = 2;
    }
    if (vcdim->count("--work-cap") == 0 && verify_cmd->count("--work-cap") == 0) {
      o.work_cap = env_cap("OCCAMLAB_WORK_CAP", o.work_cap);
    }
    DomainSpec{o.n};
    if (vcdim->parsed()) return cmd_vcdim(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    return cmd_occamize(o, out);
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return 1;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace occam::cli
