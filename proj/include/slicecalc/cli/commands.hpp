#pragma once

#include <cmath>
#include <istream>
#include <json.hpp>

#include "../hodge.hpp"
#include "../kernels.hpp"
#include "../verify.hpp"
#include "config.hpp"

namespace slicecalc::cli {

using nlohmann::json;

inline constexpr const char* kSchema = "slicecalc/1";

// ---- serialization ---------------------------------------------------------

inline json to_json(const Multivector& a) { return a.to_vector(); }

inline json to_json(const Paravector& q) {
  std::vector<double> x{q.scalar()};
  for (int i = 0; i < q.dim(); ++i) x.push_back(q.vector(i));
  return x;
}

inline json profile_json(const ProfileRegion& p) {
  json j{{"kind", to_string(p.kind)}};
  switch (p.kind) {
    case ProfileKind::disk: j.update({{"u0", p.u0}, {"v0", p.v0}, {"radius", p.radius}}); break;
    case ProfileKind::rectangle:
      j.update({{"u_min", p.u_min}, {"u_max", p.u_max}, {"v_min", p.v_min}, {"v_max", p.v_max}});
      break;
    case ProfileKind::annulus_sector:
      j.update({{"u0", p.u0}, {"v0", p.v0}, {"r_inner", p.r_inner}, {"r_outer", p.r_outer},
                {"theta_min", p.theta_min}, {"theta_max", p.theta_max}});
      break;
  }
  return j;
}

inline json config_json(const RunConfig& c) {
  json j{{"command", to_string(c.command)}, {"m", c.m}, {"profile", profile_json(c.profile)},
         {"resolutions", c.resolutions}, {"sphere_order", c.sphere_order}, {"seed", c.seed},
         {"format", c.format == Format::json ? "json" : "csv"}};
  if (c.command == Command::kernel_dump) {
    j["points"] = c.points;
  } else {
    j["functions"] = c.functions;
    j["probes"] = c.probes;
  }
  if (c.command == Command::converge) j.update({{"p", c.p}, {"trials", c.trials}});
  if (c.command == Command::hodge) j["degree"] = c.degree;
  return j;
}

inline json report_json(const ResidualReport& r, const std::string& function, double tolerance) {
  json probes = json::array();
  for (const auto& q : r.probes) probes.push_back(to_json(q));
  return {{"identity", r.identity},     {"function", function},         {"resolution", r.resolution},
          {"tolerance", tolerance},     {"max_residual", r.max_residual}, {"pass", r.max_residual <= tolerance},
          {"residuals", r.residuals},   {"probes", probes},             {"flags", r.flags},
          {"runtime_ms", r.runtime_ms}};
}

// Orders as numbers, with "roundoff" for pairs that both sit below the floor.
inline json orders_json(const OrderEstimate& e) {
  json o = json::array();
  for (double x : e.orders) o.push_back(std::isinf(x) ? json("roundoff") : json(x));
  return o;
}

// Each step either shrinks or both ends are at roundoff.
inline bool decaying(const std::vector<double>& r, double floor = tol::kOrderFloor) {
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] < r[i - 1] || (r[i] <= floor && r[i - 1] <= floor))) return false;
  return true;
}

struct Outcome {
  json document;
  bool pass = true;
};

// ---- identity batteries ----------------------------------------------------

struct Battery {
  std::vector<json> reports;
  std::map<std::string, std::vector<double>> series;  // "identity/function" -> max residual per resolution
  bool pass = true;

  void add(const ResidualReport& r, const std::string& function, double tolerance) {
    json j = report_json(r, function, tolerance);
    pass = pass && j["pass"].get<bool>();
    series[r.identity + "/" + function].push_back(r.max_residual);
    reports.push_back(std::move(j));
  }
};

inline SliceFunction named_function(const RunConfig& cfg, const std::string& name) {
  try {
    return make_named(cfg.m, name);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

inline bool monogenic(const SliceFunction& f, const ProfileRegion& p) {
  const Point2 c = p.center();
  const double r = 0.5 * p.inradius();
  return is_slice_monogenic(f, {{c.u, c.v}, {c.u + r, c.v}, {c.u, c.v + r}}).monogenic;
}

// Everything that is checked at a single resolution. Extension is included only in verify.
inline void run_battery(const RunConfig& cfg, int n, bool with_extension, Battery& b) {
  const AxialDomain d = build_domain(cfg.profile_at(n), cfg.m, cfg.sphere_order);
  const std::size_t count = static_cast<std::size_t>(cfg.probes);
  const auto inner = interior_probes(d, count, cfg.seed);
  const auto outer = exterior_probes(d, count, cfg.seed + 1);
  const auto edge = boundary_probes(d, count, cfg.seed + 2);
  for (const auto& name : cfg.functions) {
    const SliceFunction f = named_function(cfg, name);
    const bool holo = monogenic(f, cfg.profile);
    if (holo) b.add(cauchy_reproduction_residual(f, d, inner), name, tol::kCauchy);
    b.add(borel_pompeiu_residual(f, d, inner), name, tol::kBorelPompeiu);
    const RightInverseReport ri = right_inverse_residual(f, d, inner);
    b.add(ri.full, name, tol::kRightInverse);
    b.add(ri.slice_form, name, tol::kRightInverse);
    b.add(exterior_monogenicity_check(tabulate(f, d), d, outer), name, tol::kExterior);
    const PlemeljReport pl = plemelj_jump_check(f, d, edge);
    b.add(pl.interior, name, tol::kPlemelj);
    b.add(pl.exterior, name, tol::kPlemelj);
    b.add(pl.jump, name, tol::kPlemelj);
    if (with_extension) {
      // A monogenic trace must pass the interior criterion; any other trace must fail it
      // by the control factor.
      const ExtensionCheck ext = extension_criterion_check(tabulate(f, d), d, tol::kExtension, 2 * count, cfg.seed + 3);
      json j = report_json(ext.interior, name, tol::kExtension);
      const bool ok = holo ? ext.interior_extendable
                           : ext.interior.max_residual >= tol::kControlFactor * tol::kExtension;
      j["expect_extendable"] = holo;
      j["pass"] = ok;
      j["exterior_max_residual"] = ext.exterior.max_residual;
      b.pass = b.pass && ok;
      b.reports.push_back(std::move(j));
    }
  }
}

inline Outcome envelope(const RunConfig& cfg) {
  Outcome o;
  o.document = {{"schema", kSchema}, {"command", to_string(cfg.command)}, {"config", config_json(cfg)}};
  return o;
}

inline void finish(Outcome& o, detail::Clock::time_point start) {
  o.document["pass"] = o.pass;
  o.document["runtime_ms"] = detail::elapsed_ms(start);
}

// ---- commands --------------------------------------------------------------

inline Outcome run_verify(const RunConfig& cfg) {
  const auto start = detail::Clock::now();
  Outcome o = envelope(cfg);
  Battery b;
  run_battery(cfg, cfg.finest(), true, b);
  o.document["reports"] = b.reports;
  o.pass = b.pass;
  finish(o, start);
  return o;
}

inline json boundedness_json(const RunConfig& cfg, bool& pass) {
  json levels = json::array();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n : cfg.resolutions) {
    const AxialDomain d = build_domain(cfg.profile_at(n), cfg.m, cfg.sphere_order);
    const BoundednessResult r = boundedness_probe(d, cfg.p, cfg.trials, cfg.seed);
    lo = std::min(lo, r.max_ratio);
    hi = std::max(hi, r.max_ratio);
    levels.push_back({{"resolution", n}, {"max_ratio", r.max_ratio}, {"ratios", r.ratios}, {"runtime_ms", r.runtime_ms}});
  }
  const double spread = (hi - lo) / hi;
  pass = spread < tol::kBoundedness;
  return {{"p", cfg.p}, {"trials", cfg.trials}, {"levels", levels}, {"spread", spread},
          {"tolerance", tol::kBoundedness}, {"pass", pass}};
}

inline Outcome run_converge(const RunConfig& cfg) {
  const auto start = detail::Clock::now();
  Outcome o = envelope(cfg);
  Battery b;
  for (int n : cfg.resolutions) run_battery(cfg, n, false, b);
  // The two reproduction identities need an empirical order, the right inverse must decay,
  // and everything else is held to its tolerance at every resolution.
  json orders = json::array();
  bool pass = b.pass;
  for (const auto& [key, r] : b.series) {
    const std::string identity = key.substr(0, key.find('/'));
    const OrderEstimate e = empirical_orders(cfg.resolutions, r, tol::kOrderFloor);
    const bool ordered = identity == "cauchy_reproduction" || identity == "borel_pompeiu";
    const bool decays = identity.starts_with("right_inverse");
    const bool ok = ordered ? e.min_order >= tol::kMinOrder : (!decays || decaying(r));
    pass = pass && ok;
    orders.push_back({{"identity", identity}, {"function", key.substr(key.find('/') + 1)},
                      {"resolutions", cfg.resolutions}, {"max_residuals", r}, {"orders", orders_json(e)},
                      {"min_order", std::isinf(e.min_order) ? json("roundoff") : json(e.min_order)},
                      {"required", ordered ? json(tol::kMinOrder) : decays ? json("decaying") : json(nullptr)}, {"pass", ok}});
  }
  bool bounded = true;
  o.document["reports"] = b.reports;
  o.document["orders"] = orders;
  o.document["boundedness"] = boundedness_json(cfg, bounded);
  o.pass = pass && bounded;
  finish(o, start);
  return o;
}

inline Outcome run_hodge(const RunConfig& cfg) {
  const auto start = detail::Clock::now();
  Outcome o = envelope(cfg);
  json reports = json::array(), summary = json::array();
  const std::size_t count = static_cast<std::size_t>(cfg.probes);
  for (const auto& name : cfg.functions) {
    const SliceFunction f = named_function(cfg, name);
    std::vector<double> q_series;
    double last_p = 0.0;
    bool split_ok = true;
    for (int n : cfg.resolutions) {
      const AxialDomain d = build_domain(cfg.profile_at(n), cfg.m, cfg.sphere_order);
      const BergmanBasis basis = build_basis(d, cfg.degree);
      const HodgeSplit s = project_P(f, basis, d);
      const SliceQuadrature rule = regular_rule(d);
      double complement = 0.0;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        const StemValue fk = f.stem_at(rule.nodes[k].u, rule.nodes[k].v);
        complement = std::max(complement, (s.p_part[k] + s.q_part[k] - fk).norm() / (1.0 + fk.norm()));
      }
      const QImageTrace t = q_image_trace_check(f, basis, d, count, cfg.seed + 2);
      const bool ok = s.max_orthogonality <= tol::kHodgeOrthogonality &&
                      complement <= 4.0 * std::numeric_limits<double>::epsilon();
      split_ok = split_ok && ok;
      q_series.push_back(t.q_trace.max_residual);
      last_p = t.p_trace.max_residual;
      reports.push_back({{"function", name},
                         {"resolution", n},
                         {"degree", cfg.degree},
                         {"basis_size", basis.size()},
                         {"gram_condition", basis.condition},
                         {"coefficients", s.coefficients},
                         {"max_orthogonality", s.max_orthogonality},
                         {"complementarity", complement},
                         {"q_trace", t.q_trace.max_residual},
                         {"p_trace", t.p_trace.max_residual},
                         {"q_trace_residuals", t.q_trace.residuals},
                         {"pass", ok}});
    }
    const bool decays = decaying(q_series);
    const bool control = last_p >= tol::kControlFactor * q_series.back();
    const OrderEstimate e = empirical_orders(cfg.resolutions, q_series, tol::kOrderFloor);
    summary.push_back({{"function", name},
                       {"q_trace", q_series},
                       {"q_trace_orders", orders_json(e)},
                       {"q_trace_decaying", decays},
                       {"control_ratio", q_series.back() > 0.0 ? json(last_p / q_series.back()) : json(nullptr)},
                       {"split_pass", split_ok},
                       {"pass", split_ok && decays && control}});
    o.pass = o.pass && split_ok && decays && control;
  }
  o.document["reports"] = reports;
  o.document["summary"] = summary;
  finish(o, start);
  return o;
}

// ---- kernel dump -----------------------------------------------------------

struct KernelRow {
  int line = 0;
  Paravector q, x;
  std::optional<Multivector> s_inv, k, k_e0;
  bool singular() const { return !s_inv || !k || !k_e0; }
};

// Rows of 2(m+1) reals (q then x); '#' starts a comment; blank lines are skipped.
inline std::vector<KernelRow> parse_points(std::istream& in, int m) {
  std::vector<KernelRow> rows;
  std::string line;
  const std::size_t width = 2 * static_cast<std::size_t>(m + 1);
  for (int number = 1; std::getline(in, line); ++number) {
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    std::vector<double> x;
    std::string token;
    while (ss >> token) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != token.size())
        throw UsageError("points line " + std::to_string(number) + ": '" + token + "' is not a number");
      x.push_back(value);
    }
    if (x.empty()) continue;
    if (x.size() != width)
      throw UsageError("points line " + std::to_string(number) + ": expected " + std::to_string(width) +
                       " values, got " + std::to_string(x.size()));
    KernelRow r;
    r.line = number;
    r.q = Paravector(m, x[0], std::span<const double>(x.data() + 1, m));
    r.x = Paravector(m, x[m + 1], std::span<const double>(x.data() + m + 2, m));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void evaluate(KernelRow& r) {
  const int m = r.q.dim();
  try {
    r.s_inv = cauchy_kernel(r.q, r.x);
  } catch (const SingularInput&) {
  }
  try {
    r.k = global_kernel(r.q, r.x);
  } catch (const SingularInput&) {
  }
  try {
    r.k_e0 = derivative_kernel(r.q, r.x, unit_index(m, 0));
  } catch (const SingularInput&) {
  }
}

inline Outcome run_kernel_dump(const RunConfig& cfg, std::istream& points) {
  const auto start = detail::Clock::now();
  Outcome o = envelope(cfg);
  auto rows = parse_points(points, cfg.m);
  parallel_for(rows.size(), [&](std::size_t i) { evaluate(rows[i]); });
  json out = json::array();
  auto opt = [](const std::optional<Multivector>& a) { return a ? to_json(*a) : json(nullptr); };
  for (const auto& r : rows)
    out.push_back({{"line", r.line}, {"q", to_json(r.q)}, {"x", to_json(r.x)}, {"singular", r.singular()},
                   {"s_inv", opt(r.s_inv)}, {"k", opt(r.k)}, {"k_e0", opt(r.k_e0)}});
  o.document["rows"] = out;
  finish(o, start);
  return o;
}

}  // namespace slicecalc::cli
