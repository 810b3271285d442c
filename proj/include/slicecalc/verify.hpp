#pragma once

// Residual verifiers for the integral identities, probe placement, empirical
// convergence orders and the L^p boundedness probe.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "operators.hpp"
#include "parallel.hpp"
#include "tolerances.hpp"

namespace slicecalc {

struct ResidualReport {
  std::string identity;
  std::vector<Paravector> probes;
  std::vector<double> residuals;  // Clifford norm, one per probe
  double max_residual = 0.0;
  int resolution = 0;
  double runtime_ms = 0.0;
  std::vector<std::string> flags;  // skipped or suspicious probes
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline std::vector<UnitSliceVector> probe_directions(int m, std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<UnitSliceVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> c(static_cast<std::size_t>(m));
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& x : c) {
        x = g(rng);
        n2 += x * x;
      }
    } while (n2 < 1e-6);
    out.push_back(UnitSliceVector::normalized(m, c));
  }
  return out;
}

// A point well inside the profile.
inline Point2 interior_anchor(const ProfileRegion& p) {
  if (p.kind != ProfileKind::annulus_sector) return p.center();
  const double r = 0.5 * (p.r_inner + p.r_outer), t = 0.5 * (p.theta_min + p.theta_max);
  return {p.u0 + r * std::cos(t), p.v0 + r * std::sin(t)};
}

inline std::size_t node_index(const AxialDomain& d, std::size_t i, std::size_t count) {
  return i * d.boundary_quad.size() / count;
}

struct ProbeOutcome {
  std::optional<double> residual;
  std::string flag;
};

inline ResidualReport assemble(std::string identity, const AxialDomain& d, const std::vector<Paravector>& probes,
                               const std::vector<ProbeOutcome>& out, Clock::time_point start) {
  ResidualReport r;
  r.identity = std::move(identity);
  r.resolution = d.profile.resolution;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!out[i].flag.empty()) r.flags.push_back("probe " + std::to_string(i) + ": " + out[i].flag);
    if (!out[i].residual) continue;
    r.probes.push_back(probes[i]);
    r.residuals.push_back(*out[i].residual);
    r.max_residual = std::max(r.max_residual, *out[i].residual);
  }
  if (r.probes.empty()) throw ArgumentError(r.identity + ": every probe was skipped");
  r.runtime_ms = elapsed_ms(start);
  return r;
}

// Runs `eval` over the probes concurrently and assembles the report.
template <class Eval>
ResidualReport run_probes(std::string identity, const AxialDomain& d, const std::vector<Paravector>& probes,
                          Eval&& eval) {
  const auto start = Clock::now();
  if (probes.empty()) throw ArgumentError(identity + ": no probes");
  std::vector<ProbeOutcome> out(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { out[i] = eval(probes[i]); });
  return assemble(std::move(identity), d, probes, out, start);
}

// Fourth-order central differences of a stem-valued map in u and v.
template <class Phi>
std::pair<StemValue, StemValue> stem_gradient(Phi&& phi, Point2 w, double h) {
  auto d1 = [&](Point2 e) {
    const StemValue p1 = phi(w + h * e), m1 = phi(w - h * e);
    const StemValue p2 = phi(w + 2.0 * h * e), m2 = phi(w - 2.0 * h * e);
    return ((p1 - m1) * 8.0 - (p2 - m2)) * (1.0 / (12.0 * h));
  };
  return {d1({1.0, 0.0}), d1({0.0, 1.0})};
}

// Probe as a point of the profile half-plane, or nullopt on the real axis.
inline std::optional<SlicePoint> probe_point(const Paravector& q) {
  const SliceCoordinates s = slice_coordinates(q);
  if (!s.I) return std::nullopt;
  return SlicePoint{s.u, s.v, *s.I};
}

}  // namespace detail

// ---- Probe placement -----------------------------------------------------

// Interior probes: boundary nodes at evenly spaced indices moved half an inradius
// inward along the normal, pulled toward an interior anchor until at least 20% of the
// inradius from the boundary. Slice directions are drawn from `seed`.
inline std::vector<Paravector> interior_probes(const AxialDomain& d, std::size_t count = 8, unsigned seed = 7) {
  const double inr = d.profile.inradius();
  const Point2 anchor = detail::interior_anchor(d.profile);
  const auto dirs = detail::probe_directions(d.dim, count, seed);
  std::vector<Paravector> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = detail::node_index(d, i, count);
    Point2 p = d.boundary_quad.nodes[k] - 0.5 * inr * d.boundary_quad.normals[k];
    for (int it = 0; it < 30 && (!d.profile.contains(p) || d.profile.distance_to_boundary(p) < 0.2 * inr); ++it)
      p = anchor + 0.5 * (p - anchor);
    out.push_back(Paravector::from_slice(p.u, p.v, dirs[i]));
  }
  return out;
}

// Exterior probes: boundary nodes moved outward along the normal until at least half
// an inradius outside and off the real axis. Nodes that cannot be moved are dropped.
inline std::vector<Paravector> exterior_probes(const AxialDomain& d, std::size_t count = 8, unsigned seed = 7) {
  const double inr = d.profile.inradius();
  const auto dirs = detail::probe_directions(d.dim, count, seed + 1);
  std::vector<Paravector> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = detail::node_index(d, i, count);
    for (double t : {0.5, 0.75, 1.0, 1.5, 2.0}) {
      const Point2 p = d.boundary_quad.nodes[k] + t * inr * d.boundary_quad.normals[k];
      if (p.v > 0.25 * inr && !d.profile.contains(p) && d.profile.distance_to_boundary(p) >= 0.5 * inr) {
        out.push_back(Paravector::from_slice(p.u, p.v, dirs[i]));
        break;
      }
    }
  }
  return out;
}

// Boundary probes placed on boundary nodes at evenly spaced indices.
inline std::vector<Paravector> boundary_probes(const AxialDomain& d, std::size_t count = 8, unsigned seed = 7) {
  const auto dirs = detail::probe_directions(d.dim, count, seed + 2);
  std::vector<Paravector> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Point2 z = d.boundary_quad.nodes[detail::node_index(d, i, count)];
    out.push_back(Paravector::from_slice(z.u, z.v, dirs[i]));
  }
  return out;
}

// ---- Identities ----------------------------------------------------------

// |F f - f| for slice monogenic f (Cauchy formula).
inline ResidualReport cauchy_reproduction_residual(const SliceFunction& f, const AxialDomain& d,
                                                   const std::vector<Paravector>& probes) {
  return detail::run_probes("cauchy_reproduction", d, probes, [&](const Paravector& q) -> detail::ProbeOutcome {
    return {(cauchy_boundary(f, d, q) - f(q)).norm(), {}};
  });
}

// |F f + T(G f) - f|.
inline ResidualReport borel_pompeiu_residual(const SliceFunction& f, const AxialDomain& d,
                                             const std::vector<Paravector>& probes) {
  const SliceFunction gf = g_image(f);
  return detail::run_probes("borel_pompeiu", d, probes, [&](const Paravector& q) -> detail::ProbeOutcome {
    return {(cauchy_boundary(f, d, q) + teodorescu(gf, d, q) - f(q)).norm(), {}};
  });
}

struct RightInverseReport {
  ResidualReport full;        // |G T f - f|
  ResidualReport slice_form;  // max over sphere nodes of |G T_I f - (alpha f(q_I) + beta f(q_-I))|
};

// G of q -> T f(q) by fourth-order differences in the probe's slice coordinates with
// step h = spacing / 4. Probes whose stencil reaches the boundary are skipped.
inline RightInverseReport right_inverse_residual(const SliceFunction& f, const AxialDomain& d,
                                                 const std::vector<Paravector>& probes) {
  const auto start = detail::Clock::now();
  if (probes.empty()) throw ArgumentError("right_inverse: no probes");
  const double h = 0.25 * d.spacing();
  std::vector<detail::ProbeOutcome> full(probes.size()), slice(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    const Paravector& q = probes[i];
    const auto p = detail::probe_point(q);
    if (!p) {
      full[i].flag = "on the real axis, skipped";
      return;
    }
    const Point2 w{p->u, p->v};
    if (!d.profile.contains(w) || d.profile.distance_to_boundary(w) <= 2.0 * h) {
      full[i].flag = "finite-difference stencil leaves the profile, skipped";
      return;
    }
    const auto [du, dv] = detail::stem_gradient([&](Point2 z) { return teodorescu_stem(f, d, z); }, w, h);
    const Multivector Iq = p->I.to_multivector();
    const Multivector g = sphere_combine(du, p->I, d.sphere_quad) + Iq * sphere_combine(dv, p->I, d.sphere_quad);
    full[i].residual = (g - f(q)).norm();
    double worst = 0.0;
    for (const auto& I : d.sphere_quad.nodes) {
      const Multivector gi = slice_combine(du, p->I, I) + Iq * slice_combine(dv, p->I, I);
      const Multivector target = representation_combine(f(Paravector::from_slice(p->u, p->v, I)),
                                                        f(Paravector::from_slice(p->u, -p->v, I)), I, p->I);
      worst = std::max(worst, (gi - target).norm());
    }
    slice[i].residual = worst;
  });
  return {detail::assemble("right_inverse", d, probes, full, start),
          detail::assemble("right_inverse_slice_form", d, probes, slice, start)};
}

// |G T f| at probes outside the closure; probes on the real axis or inside are skipped.
inline ResidualReport exterior_monogenicity_check(const FieldSample& f, const AxialDomain& d,
                                                  const std::vector<Paravector>& probes) {
  const double h = 0.25 * d.spacing();
  return detail::run_probes("exterior_monogenicity", d, probes, [&](const Paravector& q) -> detail::ProbeOutcome {
    const auto p = detail::probe_point(q);
    if (!p) return {std::nullopt, "on the real axis, skipped"};
    const Point2 w{p->u, p->v};
    if (d.profile.contains(w) || d.profile.distance_to_boundary(w) <= 2.0 * h || p->v <= 2.0 * h)
      return {std::nullopt, "not strictly outside the closure, skipped"};
    const auto [du, dv] = detail::stem_gradient([&](Point2 z) { return teodorescu_stem(f, d, z); }, w, h);
    const Multivector g =
        sphere_combine(du, p->I, d.sphere_quad) + p->I.to_multivector() * sphere_combine(dv, p->I, d.sphere_quad);
    return {g.norm(), {}};
  });
}

// ---- Plemelj limits ------------------------------------------------------

struct OneSidedLimit {
  Multivector value;
  bool converged = true;
};

// Neville extrapolation of vals(t) to t = 0. The ratio test requires the last
// correction to be no larger than the previous one, or below 1e-6 relative.
inline OneSidedLimit extrapolate_to_zero(const std::vector<double>& t, const std::vector<Multivector>& vals) {
  if (t.size() != vals.size() || t.size() < 2) throw ArgumentError("extrapolation needs at least two samples");
  std::vector<Multivector> estimates;
  for (std::size_t n = 1; n <= t.size(); ++n) {
    std::vector<Multivector> p(vals.begin(), vals.begin() + static_cast<long>(n));
    for (std::size_t l = 1; l < n; ++l)
      for (std::size_t i = 0; i + l < n; ++i)
        p[i] = (p[i + 1] * t[i] - p[i] * t[i + l]) * (1.0 / (t[i] - t[i + l]));
    estimates.push_back(p[0]);
  }
  const std::size_t n = estimates.size();
  OneSidedLimit out{estimates.back(), true};
  if (n >= 3) {
    const double last = (estimates[n - 1] - estimates[n - 2]).norm();
    const double prev = (estimates[n - 2] - estimates[n - 3]).norm();
    out.converged = last <= prev || last <= 1e-6 * (1.0 + out.value.norm());
  }
  return out;
}

struct PlemeljReport {
  ResidualReport interior;  // |F+ f - (f/2 + S f)|
  ResidualReport exterior;  // |F- f - (-f/2 + S f)|
  ResidualReport jump;      // |F+ f - F- f - f|
};

// One-sided limits of F f at boundary-node probes from q -/+ t n with t = t0 / 2^k,
// k = 0..5, t0 = 0.8 * inradius (kept below half the height of q). Levels closer than
// two boundary spacings are dropped while at least three remain.
inline PlemeljReport plemelj_jump_check(const SliceFunction& f, const AxialDomain& d,
                                        const std::vector<Paravector>& probes) {
  struct Limits {
    Multivector inside, outside, sf, fq;
    std::string flag;
  };
  const auto start = detail::Clock::now();
  if (probes.empty()) throw ArgumentError("plemelj_jump: no probes");
  const auto& b = d.boundary_quad;
  const double hit = 1e-10 * detail::point_scale(d);
  std::vector<std::optional<Limits>> lim(probes.size());
  std::vector<std::string> skip(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    const auto p = detail::probe_point(probes[i]);
    if (!p) {
      skip[i] = "on the real axis, skipped";
      return;
    }
    const Point2 w{p->u, p->v};
    std::optional<std::size_t> node;
    for (std::size_t k = 0; k < b.size(); ++k)
      if ((b.nodes[k] - w).norm() < hit) node = k;
    if (!node) {
      skip[i] = "not on a boundary node, skipped";
      return;
    }
    const Point2 n = b.normals[*node];
    const double t0 = std::min(0.8 * d.profile.inradius(), 0.5 * w.v);
    std::vector<double> ts;
    for (int k = 0; k <= 5; ++k) ts.push_back(t0 / std::pow(2.0, k));
    while (ts.size() > 3 && ts.back() < 2.0 * d.boundary_spacing()) ts.pop_back();
    std::vector<Multivector> in, out;
    for (double t : ts) {
      in.push_back(sphere_combine(cauchy_boundary_stem(f, d, w - t * n), p->I, d.sphere_quad));
      out.push_back(sphere_combine(cauchy_boundary_stem(f, d, w + t * n), p->I, d.sphere_quad));
    }
    const OneSidedLimit li = extrapolate_to_zero(ts, in), lo = extrapolate_to_zero(ts, out);
    Limits L{li.value, lo.value, plemelj_singular(f, d, probes[i]), f(probes[i]), {}};
    if (!li.converged || !lo.converged) L.flag = "extrapolation ratio test failed";
    lim[i] = L;
  });

  PlemeljReport r;
  r.interior.identity = "plemelj_interior";
  r.exterior.identity = "plemelj_exterior";
  r.jump.identity = "plemelj_jump";
  for (auto* rep : {&r.interior, &r.exterior, &r.jump}) rep->resolution = d.profile.resolution;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!lim[i]) {
      for (auto* rep : {&r.interior, &r.exterior, &r.jump}) rep->flags.push_back("probe " + std::to_string(i) + ": " + skip[i]);
      continue;
    }
    const Limits& L = *lim[i];
    const double ri = (L.inside - (L.fq * 0.5 + L.sf)).norm();
    const double ro = (L.outside - (L.sf - L.fq * 0.5)).norm();
    const double rj = (L.inside - L.outside - L.fq).norm();
    for (auto [rep, res] : {std::pair{&r.interior, ri}, std::pair{&r.exterior, ro}, std::pair{&r.jump, rj}}) {
      rep->probes.push_back(probes[i]);
      rep->residuals.push_back(res);
      rep->max_residual = std::max(rep->max_residual, res);
      if (!L.flag.empty()) rep->flags.push_back("probe " + std::to_string(i) + ": " + L.flag);
    }
  }
  if (r.jump.probes.empty()) throw ArgumentError("plemelj_jump: every probe was skipped");
  const double ms = detail::elapsed_ms(start);
  for (auto* rep : {&r.interior, &r.exterior, &r.jump}) rep->runtime_ms = ms;
  return r;
}

// ---- Extension criterion -------------------------------------------------

struct ExtensionCheck {
  bool interior_extendable = false;  // max |S g - g/2| <= tol
  bool exterior_extendable = false;  // max |S g + g/2| <= tol
  ResidualReport interior;
  ResidualReport exterior;
};

// Evaluates S g at `count` boundary-node probes for a boundary trace g.
inline ExtensionCheck extension_criterion_check(const FieldSample& g, const AxialDomain& d,
                                                double tol = tol::kExtension, std::size_t count = 16,
                                                unsigned seed = 7) {
  if (!g.has_boundary()) throw ArgumentError("extension check needs boundary values");
  const auto probes = boundary_probes(d, count, seed);
  std::vector<std::pair<double, double>> res(probes.size());
  auto eval = [&](std::size_t i) {
    const Paravector& q = probes[i];
    const auto p = detail::probe_point(q);
    const Multivector sg = plemelj_singular(g, d, q);
    const std::size_t k = detail::node_index(d, i, count);
    const Multivector gq = g.is_function() ? g.function()(q) : lift(g.boundary()[k], p->I);
    res[i] = {(sg - gq * 0.5).norm(), (sg + gq * 0.5).norm()};
  };
  const auto start = detail::Clock::now();
  parallel_for(probes.size(), eval);
  ExtensionCheck out;
  out.interior.identity = "extension_interior";
  out.exterior.identity = "extension_exterior";
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (auto [rep, v] : {std::pair{&out.interior, res[i].first}, std::pair{&out.exterior, res[i].second}}) {
      rep->probes.push_back(probes[i]);
      rep->residuals.push_back(v);
      rep->max_residual = std::max(rep->max_residual, v);
    }
  }
  const double ms = detail::elapsed_ms(start);
  for (auto* rep : {&out.interior, &out.exterior}) {
    rep->resolution = d.profile.resolution;
    rep->runtime_ms = ms;
  }
  out.interior_extendable = out.interior.max_residual <= tol;
  out.exterior_extendable = out.exterior.max_residual <= tol;
  return out;
}

// ---- Convergence ---------------------------------------------------------

struct OrderEstimate {
  std::vector<double> orders;  // per consecutive pair; +inf when both residuals are at roundoff
  double min_order = std::numeric_limits<double>::infinity();
  bool at_roundoff = false;    // some pair was treated as converged at roundoff
};

// Orders with respect to the resolution n (h ~ 1/n): log(r_i / r_{i+1}) / log(n_{i+1} / n_i).
inline OrderEstimate empirical_orders(const std::vector<int>& resolutions, const std::vector<double>& residuals,
                                      double floor = tol::kOrderFloor) {
  if (resolutions.size() != residuals.size() || resolutions.size() < 2)
    throw ArgumentError("orders need at least two resolutions with one residual each");
  OrderEstimate e;
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
    double o;
    if (residuals[i] <= floor && residuals[i + 1] <= floor) {
      o = std::numeric_limits<double>::infinity();
      e.at_roundoff = true;
    } else {
      o = std::log(std::max(residuals[i], 1e-300) / std::max(residuals[i + 1], 1e-300)) /
          std::log(static_cast<double>(resolutions[i + 1]) / resolutions[i]);
    }
    e.orders.push_back(o);
    e.min_order = std::min(e.min_order, o);
  }
  return e;
}

// ---- Boundedness ---------------------------------------------------------

struct BoundednessResult {
  double max_ratio = 0.0;
  std::vector<double> ratios;  // trial 0 is f = 1
  int resolution = 0;
  double runtime_ms = 0.0;
};

namespace detail {

// sum over regular nodes and the full sphere of v^(m-1) |lift(F)|^p.
inline double stem_lp_sum(const std::vector<StemValue>& F, const SliceQuadrature& rule, const SphereQuadrature& s,
                          int m, double p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Multivector Fi = s.nodes[j].to_multivector() * F[k].F2;
      acc += s.weights[j] * (std::pow((F[k].F1 + Fi).norm(), p) + std::pow((F[k].F1 - Fi).norm(), p));
    }
    sum += rule.weights[k] * std::pow(rule.nodes[k].v, m - 1) * acc;
  }
  return sum;
}

}  // namespace detail

// Max of ||T f||_p / ||f||_p over seeded random polynomial stems
//   F = sum_{a+b<=5} u~^a v~^b C_ab  (F1 for even b, F2 for odd b),
// with u~, v~ the profile coordinates scaled to unit size and C_ab random Clifford
// coefficients. Trial 0 is f = 1. T f is evaluated at every regular node with a
// singular patch whose ray count is capped at 2n.
inline BoundednessResult boundedness_probe(const AxialDomain& d, double p, int trials, unsigned seed) {
  const int m = d.dim;
  if (!(p > std::max(m, 2)))
    throw HypothesisViolation("boundedness needs p > max{m, 2}; got p = " + std::to_string(p) + ", m = " +
                              std::to_string(m));
  if (trials < 1) throw ArgumentError("boundedness probe needs at least one trial");
  const auto start = detail::Clock::now();
  constexpr int kDeg = 5;
  std::vector<std::pair<int, int>> mono;
  for (int a = 0; a <= kDeg; ++a)
    for (int b = 0; a + b <= kDeg; ++b) mono.emplace_back(a, b);
  const std::size_t K = mono.size();

  double umin = 1e300, umax = -1e300, vmax = 0.0;
  for (const auto& z : d.boundary_quad.nodes) {
    umin = std::min(umin, z.u);
    umax = std::max(umax, z.u);
    vmax = std::max(vmax, z.v);
  }
  const double uc = 0.5 * (umin + umax), us = std::max(0.5 * (umax - umin), 1e-12);
  auto powers = [&](double u, double v, double* pu, double* pv) {
    pu[0] = pv[0] = 1.0;
    for (int i = 1; i <= kDeg; ++i) {
      pu[i] = pu[i - 1] * (u - uc) / us;
      pv[i] = pv[i - 1] * v / vmax;
    }
  };

  const SliceQuadrature rule = regular_rule(d);
  const std::size_t N = rule.size();
  std::vector<double> X1(N * K, 0.0), X2(N * K, 0.0), S(N * K, 0.0);
  const bool patchable = d.profile.kind != ProfileKind::annulus_sector;
  parallel_for(N, [&](std::size_t k) {
    const Point2 w = rule.nodes[k];
    const Complex wc(w.u, w.v);
    const double rho = default_patch_radius(d, w);
    SliceQuadrature local;
    const SliceQuadrature* r = &rule;
    if (patchable && rho > 1e-14 * detail::point_scale(d)) {
      local = detail::polar_rule(d.profile, w, rho, 2 * d.profile.resolution);
      r = &local;
    }
    double pu[kDeg + 1], pv[kDeg + 1];
    double* x1 = &X1[k * K];
    double* x2 = &X2[k * K];
    for (std::size_t j = 0; j < r->size(); ++j) {
      const Complex z(r->nodes[j].u, r->nodes[j].v);
      if (z == wc) continue;
      const Complex k1 = r->weights[j] / (z - wc), k2 = r->weights[j] / (std::conj(z) - wc);
      const double a = k1.real(), b = k1.imag(), c = k2.real(), dd = k2.imag();
      powers(z.real(), z.imag(), pu, pv);
      for (std::size_t i = 0; i < K; ++i) {
        const double s = pu[mono[i].first] * pv[mono[i].second];
        if (mono[i].second % 2 == 0) {
          x1[i] += (a + c) * s;
          x2[i] += (b + dd) * s;
        } else {
          x1[i] += (dd - b) * s;
          x2[i] += (a - c) * s;
        }
      }
    }
    powers(w.u, w.v, pu, pv);
    for (std::size_t i = 0; i < K; ++i) S[k * K + i] = pu[mono[i].first] * pv[mono[i].second];
  });

  BoundednessResult out;
  out.resolution = d.profile.resolution;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const double scale = -0.5 / std::numbers::pi;
  for (int t = 0; t < trials; ++t) {
    std::vector<Multivector> coef(K, Multivector(m));
    if (t == 0) {
      coef[0][0] = 1.0;
    } else {
      for (auto& c : coef)
        for (int i = 0; i < c.size(); ++i) c[i] = g(rng);
    }
    std::vector<StemValue> F(N, StemValue(m)), TF(N, StemValue(m));
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t i = 0; i < K; ++i) {
        (mono[i].second % 2 == 0 ? F[k].F1 : F[k].F2).add_scaled(coef[i], S[k * K + i]);
        TF[k].F1.add_scaled(coef[i], scale * X1[k * K + i]);
        TF[k].F2.add_scaled(coef[i], scale * X2[k * K + i]);
      }
    const double nf = detail::stem_lp_sum(F, rule, d.sphere_quad, m, p);
    const double nt = detail::stem_lp_sum(TF, rule, d.sphere_quad, m, p);
    const double ratio = std::pow(nt / nf, 1.0 / p);
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  out.runtime_ms = detail::elapsed_ms(start);
  return out;
}

}  // namespace slicecalc
