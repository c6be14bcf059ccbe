#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ceor/complex_text.hpp"
#include "ceor/decoding.hpp"
#include "ceor/parallel.hpp"
#include "ceor/reports.hpp"
#include "ceor/rh_search.hpp"
#include "ceor/strip_sweep.hpp"
#include "ceor/zero_locator.hpp"
#include "ceor/zeta.hpp"

namespace {

// Applies --config file values as defaults: a flat JSON object mapping long
// option names to values, used only where the flag was not given on the
// command line.
class ConfigBinder {
 public:
  template <class T>
  CLI::Option* option(CLI::App* sub, const std::string& name, T& var,
                      const std::string& desc) {
    CLI::Option* opt = sub->add_option(name, var, desc);
    entries_.push_back(
        {sub, opt, [&var](const nlohmann::json& v) { var = v.get<T>(); }});
    return opt;
  }

  CLI::Option* flag(CLI::App* sub, const std::string& name, bool& var,
                    const std::string& desc) {
    CLI::Option* opt = sub->add_flag(name, var, desc);
    entries_.push_back(
        {sub, opt, [&var](const nlohmann::json& v) { var = v.get<bool>(); }});
    return opt;
  }

  // Required here means "flag or config", so CLI11's own required() (which
  // rejects during parse, before config values land) cannot be used.
  template <class T>
  CLI::Option* required(CLI::App* sub, const std::string& name, T& var,
                        const std::string& desc) {
    CLI::Option* opt = option(sub, name, var, desc);
    required_.push_back({sub, opt});
    return opt;
  }

  // Name of the first required option still unset after apply(), or "".
  std::string missing_required(const nlohmann::json& cfg,
                               const CLI::App* active) const {
    for (const Required& r : required_) {
      if (r.owner != active || r.opt->count() > 0) continue;
      bool in_cfg = false;
      for (const std::string& lname : r.opt->get_lnames())
        if (cfg.contains(lname)) {
          in_cfg = true;
          break;
        }
      if (!in_cfg) return r.opt->get_name();
    }
    return "";
  }

  void apply(const nlohmann::json& cfg, const CLI::App* active) const {
    for (const Entry& e : entries_) {
      if (e.owner != active || e.opt->count() > 0) continue;
      for (const std::string& lname : e.opt->get_lnames()) {
        const auto it = cfg.find(lname);
        if (it != cfg.end()) {
          e.set(*it);
          break;
        }
      }
    }
  }

 private:
  struct Entry {
    const CLI::App* owner;
    CLI::Option* opt;
    std::function<void(const nlohmann::json&)> set;
  };
  struct Required {
    const CLI::App* owner;
    const CLI::Option* opt;
  };
  std::vector<Entry> entries_;
  std::vector<Required> required_;
};

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ceor::DomainError("cannot open output file: " + path);
  out << text;
}

void write_json_file(const std::string& path, const ceor::Json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

std::string complex_out(const ceor::Complex& z) {
  if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real())))
    return ceor::format_double(z.real());
  return ceor::format_complex(z);
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

struct ZetaArgs {
  std::string s;
  int series_terms = 64;
  double abs_tol = 1e-12;
};

struct RangeArgs {
  double from = 0.0;
  double to = 0.0;
  std::string out;
};

struct CeorArgs {
  double sigma_min = 0.0;
  double sigma_max = 1.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t samples = 2000;
  double rho = 0.01;
  double v = 10.0;
  double c = 0.7;
  int l = 5;
  int max_rounds = 50;
  std::uint64_t seed = 0;
  double jitter = 0.0;
  double eps_zero = 1e-6;
  double eps_line = 0.02;
  double refine_radius = 0.1;
  bool inject = false;
  std::string out;
  std::string trace;
};

struct SweepArgs {
  CeorArgs ce;  // shares the CE/tolerance knobs; sigma/t fields unused
  double from = 0.0;
  double to = 0.0;
  std::string extend;
  int tiles = 1;
  std::string csv;
};

struct DecodeArgs {
  std::string model;
  std::string start;
  double p = 1.0;
  int k = 1;
  int max_len = 8;
  std::string end_token;
};

ceor::CeParams ce_params(const CeorArgs& a) {
  ceor::CeParams params;
  params.M = a.samples;
  params.rho = a.rho;
  params.v = a.v;
  params.c = a.c;
  params.l = a.l;
  params.max_rounds = a.max_rounds;
  params.seed = a.seed;
  return params;
}

ceor::Tolerances ce_tolerances(const CeorArgs& a) {
  return ceor::Tolerances{a.eps_zero, a.eps_line, a.refine_radius};
}

ceor::RhSearchOptions ce_options(const CeorArgs& a) {
  return ceor::RhSearchOptions{a.jitter, a.inject};
}

int run_zeta(const ZetaArgs& args) {
  const ceor::Complex s = ceor::parse_complex(args.s);
  const ceor::ZetaEvalConfig cfg{args.series_terms, args.abs_tol};
  std::cout << complex_out(ceor::zeta(s, cfg)) << '\n';
  return 0;
}

int run_zeros(const RangeArgs& args) {
  const std::vector<ceor::ZeroRecord> zeros =
      ceor::find_zeros_online(args.from, args.to);
  std::cout << zeros.size() << '\n';
  for (const ceor::ZeroRecord& z : zeros)
    std::cout << ceor::format_double(z.t) << '\n';
  if (!args.out.empty()) {
    std::ofstream csv(args.out);
    if (!csv) throw ceor::DomainError("cannot open output file: " + args.out);
    ceor::write_zeros_csv(csv, zeros);
  }
  return 0;
}

int run_count(const RangeArgs& args) {
  const ceor::RegionCount rc = ceor::count_zeros_region(args.from, args.to);
  std::cout << "n_online " << rc.n_online << '\n'
            << "n_formula " << rc.n_formula << '\n'
            << "consistent " << (rc.consistent ? "true" : "false") << '\n';
  if (!args.out.empty()) {
    ceor::Json j;
    j["t_lo"] = rc.t_lo;
    j["t_hi"] = rc.t_hi;
    j["n_online"] = rc.n_online;
    j["n_formula"] = rc.n_formula;
    j["consistent"] = rc.consistent;
    write_json_file(args.out, j);
  }
  return 0;
}

int run_ceor_cmd(const CeorArgs& args) {
  const ceor::StripRegion region{args.sigma_min, args.sigma_max, args.t_min,
                                 args.t_max};
  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!args.trace.empty()) {
    trace_file.open(args.trace);
    if (!trace_file)
      throw ceor::DomainError("cannot open trace file: " + args.trace);
    trace = &trace_file;
  }

  const ceor::CeorReport report = ceor::run_ceor(
      region, ce_params(args), ce_tolerances(args), ce_options(args), trace);

  std::cout << "rounds " << report.rounds.size() << '\n'
            << "stop_reason " << ceor::stop_reason_name(report.stop_reason)
            << '\n'
            << "zeros " << report.zeros.size() << '\n';
  for (const ceor::ZeroRecord& z : report.zeros)
    std::cout << ceor::format_double(z.t) << '\n';
  std::cout << "counterexamples " << report.counterexamples.size() << '\n'
            << "frequency " << report.tracker.mu << '/' << report.tracker.n
            << '\n';
  if (!args.out.empty()) write_json_file(args.out, ceor::to_json(report));
  return report.stop_reason == ceor::StopReason::NegativeSum ? 3 : 0;
}

int run_sweep(const SweepArgs& args, bool have_range) {
  ceor::SweepReport report;
  if (!args.extend.empty()) {
    std::ifstream in(args.extend);
    if (!in)
      throw ceor::DomainError("cannot open sweep report: " + args.extend);
    nlohmann::json prior;
    in >> prior;
    report = ceor::extend_sweep(ceor::sweep_report_from_json(prior),
                                args.tiles, ce_params(args.ce),
                                ce_tolerances(args.ce), ce_options(args.ce));
  } else {
    if (!have_range) {
      std::cerr << "sweep: requires --from and --to (or --extend)\n";
      return 1;
    }
    report = ceor::sweep_region(args.from, args.to, ce_params(args.ce),
                                ce_tolerances(args.ce), ce_options(args.ce));
  }

  std::cout << "tiles " << report.tiles.size() << '\n'
            << "total_online " << report.total_online << '\n'
            << "total_formula " << report.total_formula << '\n'
            << "consistent " << (report.consistent ? "true" : "false") << '\n';
  if (!args.ce.out.empty())
    write_json_file(args.ce.out, ceor::to_json(report));
  if (!args.csv.empty()) {
    std::ofstream csv(args.csv);
    if (!csv) throw ceor::DomainError("cannot open output file: " + args.csv);
    ceor::write_sweep_csv(csv, report);
  }
  return 0;
}

int run_decode(const DecodeArgs& args) {
  const ceor::MarkovModel model = ceor::MarkovModel::load(args.model);
  ceor::DecodeParams params;
  params.p = args.p;
  params.k = args.k;
  params.max_len = args.max_len;
  if (!args.end_token.empty()) params.end_token = model.token_id(args.end_token);

  std::vector<int> start;
  for (const std::string& name : split_csv_list(args.start))
    start.push_back(model.token_id(name));

  for (const ceor::Path& path : ceor::beam_decode(model, start, params)) {
    std::cout << ceor::format_double(std::exp(path.log_path_prob));
    for (int token : path.tokens) std::cout << ' ' << model.token_name(token);
    std::cout << '\n';
  }
  return 0;
}

void add_ce_knobs(ConfigBinder& binder, CLI::App* sub, CeorArgs& args) {
  binder.option(sub, "--samples", args.samples, "samples per round (M)");
  binder.option(sub, "--rho", args.rho, "elite quantile");
  binder.option(sub, "--v", args.v, "favorability factor");
  binder.option(sub, "--c", args.c, "smoothing constant");
  binder.option(sub, "--l", args.l, "stability window");
  binder.option(sub, "--max-rounds", args.max_rounds, "round cap");
  binder.option(sub, "--seed", args.seed, "RNG seed (falls back to CEOR_SEED)");
  binder.option(sub, "--jitter", args.jitter,
                "elite resample perturbation half-width");
  binder.option(sub, "--eps-zero", args.eps_zero, "zero-magnitude threshold");
  binder.option(sub, "--eps-line", args.eps_line, "critical-line band");
  binder.option(sub, "--refine-radius", args.refine_radius,
                "bisection bracket radius");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-entropy search of the Riemann zeta critical strip"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 0;
  ConfigBinder binder;

  ZetaArgs zeta_args;
  CLI::App* zeta_cmd = app.add_subcommand("zeta", "evaluate zeta(s)");
  binder.required(zeta_cmd, "--s", zeta_args.s, "point, text form a+bi");
  binder.option(zeta_cmd, "--series-terms", zeta_args.series_terms,
                "series term floor");
  binder.option(zeta_cmd, "--abs-tol", zeta_args.abs_tol,
                "target absolute error");

  RangeArgs zeros_args;
  CLI::App* zeros_cmd =
      app.add_subcommand("zeros", "scan critical-line zeros on (from, to]");
  binder.required(zeros_cmd, "--from", zeros_args.from, "lower ordinate");
  binder.required(zeros_cmd, "--to", zeros_args.to, "upper ordinate");
  binder.option(zeros_cmd, "--out", zeros_args.out, "CSV output path");

  RangeArgs count_args;
  CLI::App* count_cmd =
      app.add_subcommand("count", "scan vs formula zero counts");
  binder.required(count_cmd, "--from", count_args.from, "lower ordinate");
  binder.required(count_cmd, "--to", count_args.to, "upper ordinate");
  binder.option(count_cmd, "--out", count_args.out, "JSON output path");

  CeorArgs ceor_args;
  CLI::App* ceor_cmd =
      app.add_subcommand("ceor", "cross-entropy zero search over a region");
  binder.option(ceor_cmd, "--sigma-min", ceor_args.sigma_min,
                "strip lower sigma");
  binder.option(ceor_cmd, "--sigma-max", ceor_args.sigma_max,
                "strip upper sigma");
  binder.required(ceor_cmd, "--t-min", ceor_args.t_min, "region t lower bound");
  binder.required(ceor_cmd, "--t-max", ceor_args.t_max, "region t upper bound");
  add_ce_knobs(binder, ceor_cmd, ceor_args);
  binder.flag(ceor_cmd, "--inject-counterexample", ceor_args.inject,
              "testing hook: force one round-1 sample to score -inf");
  binder.option(ceor_cmd, "--out", ceor_args.out, "JSON report path");
  binder.option(ceor_cmd, "--trace", ceor_args.trace, "per-sample CSV trace");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "unit-tile sweep with per-tile CEOR");
  CLI::Option* sweep_from =
      binder.option(sweep_cmd, "--from", sweep_args.from, "span lower bound");
  CLI::Option* sweep_to =
      binder.option(sweep_cmd, "--to", sweep_args.to, "span upper bound");
  binder.option(sweep_cmd, "--extend", sweep_args.extend,
                "prior sweep JSON to extend");
  binder.option(sweep_cmd, "--tiles", sweep_args.tiles,
                "tiles to append with --extend");
  add_ce_knobs(binder, sweep_cmd, sweep_args.ce);
  binder.option(sweep_cmd, "--out", sweep_args.ce.out, "JSON report path");
  binder.option(sweep_cmd, "--csv", sweep_args.csv, "per-tile CSV path");

  DecodeArgs decode_args;
  CLI::App* decode_cmd =
      app.add_subcommand("decode", "top-p + beam search over a toy model");
  binder.required(decode_cmd, "--model", decode_args.model, "model JSON path");
  binder.option(decode_cmd, "--start", decode_args.start,
                "comma-separated start tokens");
  binder.option(decode_cmd, "--p", decode_args.p, "nucleus mass");
  binder.option(decode_cmd, "--k", decode_args.k, "beam width");
  binder.option(decode_cmd, "--max-len", decode_args.max_len,
                "total token cap");
  binder.option(decode_cmd, "--end-token", decode_args.end_token,
                "token name that finishes a path");

  for (CLI::App* sub : {zeta_cmd, zeros_cmd, count_cmd, ceor_cmd, sweep_cmd,
                        decode_cmd}) {
    sub->add_option("--config", config_path,
                    "JSON file of long-option defaults");
    sub->add_option("--threads", threads, "worker thread cap (0 = hardware)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  CLI::App* active = app.get_subcommands().front();

  try {
    nlohmann::json cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config file: " << config_path << '\n';
        return 1;
      }
      try {
        in >> cfg;
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad config file: " << e.what() << '\n';
        return 1;
      }
      if (!cfg.is_object()) {
        std::cerr << "bad config file: expected a JSON object\n";
        return 1;
      }
      binder.apply(cfg, active);
    }

    const std::string missing = binder.missing_required(cfg, active);
    if (!missing.empty()) {
      std::cerr << missing << " is required\n";
      return 1;
    }

    // Seed resolution: flag > config > CEOR_SEED > 0.
    const bool seed_given =
        active->get_option_no_throw("--seed") != nullptr &&
        (active->get_option_no_throw("--seed")->count() > 0 ||
         cfg.contains("seed"));
    if (!seed_given) {
      if (const char* env = std::getenv("CEOR_SEED")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
          throw ceor::TextParseError("CEOR_SEED is not an unsigned integer");
        ceor_args.seed = value;
        sweep_args.ce.seed = value;
      }
    }

    ceor::set_max_threads(threads < 0 ? 0 : static_cast<unsigned>(threads));

    if (active == zeta_cmd) return run_zeta(zeta_args);
    if (active == zeros_cmd) return run_zeros(zeros_args);
    if (active == count_cmd) return run_count(count_args);
    if (active == ceor_cmd) return run_ceor_cmd(ceor_args);
    if (active == sweep_cmd) {
      const bool have_range =
          (sweep_from->count() > 0 || cfg.contains("from")) &&
          (sweep_to->count() > 0 || cfg.contains("to"));
      return run_sweep(sweep_args, have_range);
    }
    if (active == decode_cmd) return run_decode(decode_args);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const ceor::TextParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const ceor::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
