#pragma once

// Command-line front end. slicecalc::cli::run parses flags, runs one command and writes a
// JSON or CSV report. Exit codes: 0 all checks pass, 1 some check fails, 2 usage or config error.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "cli/commands.hpp"

namespace slicecalc::cli {

namespace detail {

inline std::string number(const json& x) {
  if (x.is_null()) return "";
  if (x.is_boolean()) return x.get<bool>() ? "true" : "false";
  if (x.is_string()) return x.get<std::string>();
  if (x.is_number_integer()) return std::to_string(x.get<long long>());
  std::ostringstream os;
  os << std::setprecision(17) << x.get<double>();
  return os.str();
}

inline void row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

inline void spread(std::vector<std::string>& cells, const json& values, int width) {
  for (int i = 0; i < width; ++i) cells.push_back(values.is_null() ? "" : number(values[i]));
}

}  // namespace detail

// CSV carries the per-report table; orders and boundedness appear only in JSON.
inline void write_csv(std::ostream& os, const RunConfig& cfg, const json& doc) {
  using detail::number;
  if (cfg.command == Command::kernel_dump) {
    std::vector<std::string> head{"line", "singular"};
    const int p = cfg.m + 1, b = 1 << cfg.m;
    for (const char* name : {"q", "x"})
      for (int i = 0; i < p; ++i) head.push_back(std::string(name) + "_" + std::to_string(i));
    for (const char* name : {"s_inv", "k", "k_e0"})
      for (int i = 0; i < b; ++i) head.push_back(std::string(name) + "_" + std::to_string(i));
    detail::row(os, head);
    for (const auto& r : doc["rows"]) {
      std::vector<std::string> cells{number(r["line"]), number(r["singular"])};
      detail::spread(cells, r["q"], p);
      detail::spread(cells, r["x"], p);
      for (const char* name : {"s_inv", "k", "k_e0"}) detail::spread(cells, r[name], b);
      detail::row(os, cells);
    }
    return;
  }
  if (cfg.command == Command::hodge) {
    detail::row(os, {"function", "resolution", "degree", "gram_condition", "max_orthogonality", "complementarity",
                     "q_trace", "p_trace", "pass"});
    for (const auto& r : doc["reports"])
      detail::row(os, {r["function"], number(r["resolution"]), number(r["degree"]), number(r["gram_condition"]),
                       number(r["max_orthogonality"]), number(r["complementarity"]), number(r["q_trace"]),
                       number(r["p_trace"]), number(r["pass"])});
    return;
  }
  detail::row(os, {"identity", "function", "resolution", "max_residual", "tolerance", "pass"});
  for (const auto& r : doc["reports"])
    detail::row(os, {r["identity"], r["function"], number(r["resolution"]), number(r["max_residual"]),
                     number(r["tolerance"]), number(r["pass"])});
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  std::string command, format = "json";
  std::vector<std::string> functions;
  CLI::App app{"slice Clifford analysis verification tool"};
  app.add_option("--command", command, "verify | converge | hodge | kernel-dump")
      ->required()
      ->check(CLI::IsMember({"verify", "converge", "hodge", "kernel-dump"}));
  app.add_option("--m", cfg.m, "algebra dimension (1..6)")->capture_default_str();
  app.add_option("--profile", cfg.profile_spec, "kind=disk,u0=..,v0=..,R=.. | kind=rectangle,u_min,u_max,v_min,v_max | kind=annulus,u0,v0,r1,r2,t1,t2")
      ->capture_default_str();
  app.add_option("--resolutions", cfg.resolutions, "strictly increasing profile resolutions")->delimiter(',');
  app.add_option("--sphere-order", cfg.sphere_order, "sphere quadrature order")->capture_default_str();
  app.add_option("--functions", functions, "one, identity, conjugate, square, cube, exp, inv_shift(c)")->delimiter(',');
  app.add_option("--p", cfg.p, "exponent of the boundedness probe")->capture_default_str();
  app.add_option("--trials", cfg.trials, "random stems in the boundedness probe")->capture_default_str();
  app.add_option("--degree", cfg.degree, "basis degree for hodge")->capture_default_str();
  app.add_option("--probes", cfg.probes, "probe points per identity")->capture_default_str();
  app.add_option("--seed", cfg.seed, "probe and trial seed")->capture_default_str();
  app.add_option("--points", cfg.points, "kernel-dump input file");
  app.add_option("--out", cfg.out, "report path (default stdout)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    cfg.command = command == "verify"     ? Command::verify
                  : command == "converge" ? Command::converge
                  : command == "hodge"    ? Command::hodge
                                          : Command::kernel_dump;
    cfg.format = format == "csv" ? Format::csv : Format::json;
    if (app.count("--functions")) {
      cfg.functions.clear();
      for (auto& f : functions)
        if (!f.empty()) cfg.functions.push_back(f);
    }
    validate(cfg);

    Outcome o;
    if (cfg.command == Command::kernel_dump) {
      std::ifstream in(cfg.points);
      if (!in) throw UsageError("cannot read points file '" + cfg.points + "'");
      o = run_kernel_dump(cfg, in);
    } else if (cfg.command == Command::verify) {
      o = run_verify(cfg);
    } else if (cfg.command == Command::converge) {
      o = run_converge(cfg);
    } else {
      o = run_hodge(cfg);
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) throw UsageError("cannot write '" + cfg.out + "'");
    }
    std::ostream& sink = cfg.out.empty() ? out : file;
    if (cfg.format == Format::csv) write_csv(sink, cfg, o.document);
    else sink << o.document.dump(2) << "\n";
    if (!o.pass) err << to_string(cfg.command) << ": some checks failed\n";
    return o.pass ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace slicecalc::cli
