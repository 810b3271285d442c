#pragma once

// Integral operators on axially symmetric domains: the Teodorescu transform T,
// the boundary Cauchy operator F, the principal-value operator S and the
// derivative Cauchy formula.
//
// T, F and S are evaluated through complex "stem moments" on the profile
// half-plane. For a slice point q = u + I_q v with w = u + i v,
//
//   A(w) = sum_D+ [ F(z)/(z - w) + conj_i F(z)/(conj z - w) ] dA,
//
// and the slice-form value at a sphere node I is alpha lift_I(A) + beta lift_I(conj_i A)
// with alpha, beta from alpha_beta(I_q, I). The volume and boundary forms average this
// over the half-sphere rule with weights scaled by 2/omega.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "clifford.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "slicefn.hpp"

namespace slicecalc {

// Operator input: a slice function, or stem values tabulated on one domain.
// Tabulated interior values follow the regular slice rule of the domain (the rule
// without singular patches); boundary values follow the boundary rule.
class FieldSample {
 public:
  enum class Kind { function, tabulated };

  FieldSample(SliceFunction f) : dim_(f.dim()), fn_(std::move(f)) {}  // NOLINT: implicit on purpose

  static FieldSample tabulated(int dim, std::vector<StemValue> interior, std::vector<StemValue> boundary = {}) {
    detail::check_dim(dim);
    if (interior.empty() && boundary.empty()) throw ArgumentError("tabulated field has no values");
    for (const auto* set : {&interior, &boundary})
      for (const auto& s : *set)
        if (s.dim() != dim) throw DimensionMismatch("tabulated value has the wrong dimension");
    FieldSample out(dim);
    out.interior_ = std::move(interior);
    out.boundary_ = std::move(boundary);
    return out;
  }

  Kind kind() const { return fn_ ? Kind::function : Kind::tabulated; }
  bool is_function() const { return fn_.has_value(); }
  const SliceFunction& function() const {
    if (!fn_) throw ArgumentError("field is tabulated, not a slice function");
    return *fn_;
  }
  int dim() const { return dim_; }
  const std::vector<StemValue>& interior() const { return interior_; }
  const std::vector<StemValue>& boundary() const { return boundary_; }
  bool has_interior() const { return fn_ || !interior_.empty(); }
  bool has_boundary() const { return fn_ || !boundary_.empty(); }

 private:
  explicit FieldSample(int dim) : dim_(dim) {}
  int dim_ = 0;
  std::optional<SliceFunction> fn_;
  std::vector<StemValue> interior_;
  std::vector<StemValue> boundary_;
};

// Flags attached to a single operator evaluation.
struct EvalDiagnostics {
  bool patched = false;                 // a singular patch resolved the interior singularity
  bool unresolved_singularity = false;  // the point projects inside the profile but no patch was used
  bool near_boundary = false;           // boundary integral evaluated within 2 node spacings of the boundary
  bool finite_difference = false;       // stem derivatives came from finite differences
};

struct VolumeOptions {
  bool patch = true;        // use a singular patch when the point projects inside the profile
  int max_angular = 4096;   // ray cap for the patch rule near the boundary of a disk
};

// The regular slice rule of a domain (its own rule unless that one carries a patch).
inline SliceQuadrature regular_rule(const AxialDomain& d) {
  return d.slice_quad.singular_patches.empty() ? d.slice_quad : regular_slice_rule(d.profile);
}

// Stem values of f at the regular slice nodes and boundary nodes of d.
inline FieldSample tabulate(const SliceFunction& f, const AxialDomain& d) {
  const SliceQuadrature rule = regular_rule(d);
  std::vector<StemValue> in, bd;
  in.reserve(rule.size());
  for (const auto& z : rule.nodes) in.push_back(f.stem_at(z.u, z.v));
  for (const auto& z : d.boundary_quad.nodes) bd.push_back(f.stem_at(z.u, z.v));
  return FieldSample::tabulated(f.dim(), std::move(in), std::move(bd));
}

namespace detail {

// A += k1 F + k2 conj_i(F).
inline void accumulate_moment(StemValue& A, const StemValue& F, Complex k1, Complex k2) {
  const double a = k1.real(), b = k1.imag(), c = k2.real(), d = k2.imag();
  A.F1.add_scaled(F.F1, a + c).add_scaled(F.F2, d - b);
  A.F2.add_scaled(F.F1, b + d).add_scaled(F.F2, a - c);
}

struct SlicePoint {
  double u = 0.0;
  double v = 0.0;
  UnitSliceVector I;
};

inline SlicePoint off_axis(const Paravector& q, int dim, const char* what) {
  if (q.dim() != dim) throw DimensionMismatch("point and field live in different algebras");
  const SliceCoordinates s = slice_coordinates(q);
  if (!s.I) throw SingularInput(std::string(what) + " is undefined on the real axis");
  return {s.u, s.v, *s.I};
}

inline void check_field(const FieldSample& f, const AxialDomain& d) {
  if (f.dim() != d.dim) throw DimensionMismatch("field and domain live in different algebras");
}

inline double point_scale(const AxialDomain& d) {
  const Point2 c = d.profile.center();
  return 1.0 + std::abs(c.u) + std::abs(c.v) + d.profile.perimeter();
}

inline StemValue volume_moment(const FieldSample& f, const AxialDomain& d, Point2 w, const VolumeOptions& opt,
                               EvalDiagnostics* diag) {
  check_field(f, d);
  if (!f.has_interior()) throw ArgumentError("field has no interior values");
  const Complex wc(w.u, w.v);
  StemValue A(d.dim);
  const bool inside = d.profile.contains(w);
  const double dist = inside ? d.profile.distance_to_boundary(w) : 0.0;

  if (f.is_function()) {
    const bool patchable = d.profile.kind != ProfileKind::annulus_sector;
    const double rho = inside ? default_patch_radius(d, w) : 0.0;
    const bool patch = opt.patch && inside && patchable && rho > 1e-14 * point_scale(d) && dist > 0.0;
    SliceQuadrature local;
    const SliceQuadrature* rule = &d.slice_quad;
    if (patch) {
      local = polar_rule(d.profile, w, rho, opt.max_angular);
      rule = &local;
    } else if (!d.slice_quad.singular_patches.empty()) {
      local = regular_slice_rule(d.profile);
      rule = &local;
    }
    if (diag) {
      diag->patched = patch;
      diag->unresolved_singularity = inside && !patch;
      diag->finite_difference = false;
    }
    const SliceFunction& fn = f.function();
    for (std::size_t k = 0; k < rule->size(); ++k) {
      const Complex z(rule->nodes[k].u, rule->nodes[k].v);
      if (z == wc) continue;  // measure-zero node on the singularity
      const double wt = rule->weights[k];
      accumulate_moment(A, fn.stem_at(z.real(), z.imag()), wt / (z - wc), wt / (std::conj(z) - wc));
    }
    return A;
  }

  const SliceQuadrature rule = regular_rule(d);
  if (f.interior().size() != rule.size())
    throw ArgumentError("tabulated interior values do not match the regular slice rule");
  if (diag) {
    diag->patched = false;
    diag->unresolved_singularity = inside;
  }
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Complex z(rule.nodes[k].u, rule.nodes[k].v);
    if (z == wc) continue;
    const double wt = rule.weights[k];
    accumulate_moment(A, f.interior()[k], wt / (z - wc), wt / (std::conj(z) - wc));
  }
  return A;
}

inline const StemValue& boundary_value(const FieldSample& f, const AxialDomain& d, std::size_t k,
                                       StemValue& scratch) {
  if (f.is_function()) {
    scratch = f.function().stem_at(d.boundary_quad.nodes[k].u, d.boundary_quad.nodes[k].v);
    return scratch;
  }
  return f.boundary()[k];
}

inline void check_boundary_values(const FieldSample& f, const AxialDomain& d) {
  check_field(f, d);
  if (!f.is_function() && f.boundary().size() != d.boundary_quad.size())
    throw ArgumentError("tabulated boundary values do not match the boundary rule");
}

// Outward normal as the complex number n_u + i n_v.
inline Complex normal_c(const BoundaryQuadrature& b, std::size_t k) { return {b.normals[k].u, b.normals[k].v}; }

inline StemValue boundary_moment(const FieldSample& f, const AxialDomain& d, Point2 w) {
  check_boundary_values(f, d);
  const Complex wc(w.u, w.v);
  const auto& b = d.boundary_quad;
  StemValue A(d.dim), scratch;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Complex z(b.nodes[k].u, b.nodes[k].v), nu = normal_c(b, k);
    const double ds = b.weights[k];
    accumulate_moment(A, boundary_value(f, d, k, scratch), ds * nu / (z - wc), ds * std::conj(nu) / (std::conj(z) - wc));
  }
  return A;
}

// dF/ds along the counterclockwise boundary at node j, for sampled traces.
// Closed pieces use a periodic sixth-order stencil; open pieces a second-order one.
inline StemValue sampled_arc_derivative(const FieldSample& f, const AxialDomain& d, std::size_t j) {
  const auto& b = d.boundary_quad;
  const int piece = b.piece[j];
  std::size_t first = j, last = j;
  while (first > 0 && b.piece[first - 1] == piece) --first;
  while (last + 1 < b.size() && b.piece[last + 1] == piece) ++last;
  const long n = static_cast<long>(last - first + 1), i = static_cast<long>(j - first);
  const double h = b.weights[j];
  const auto& F = f.boundary();
  auto at = [&](long k) -> const StemValue& { return F[first + static_cast<std::size_t>(k)]; };
  if (b.piece_closed[static_cast<std::size_t>(piece)] && n >= 7) {
    auto p = [&](long k) -> const StemValue& { return at(((i + k) % n + n) % n); };
    StemValue r = (p(3) - p(-3)) + (p(-2) - p(2)) * 9.0 + (p(1) - p(-1)) * 45.0;
    return r * (1.0 / (60.0 * h));
  }
  if (n < 2) return StemValue(d.dim);
  if (i == 0) return (at(1) - at(0)) * (1.0 / h);
  if (i == n - 1) return (at(n - 1) - at(n - 2)) * (1.0 / h);
  return (at(i + 1) - at(i - 1)) * (0.5 / h);
}

// Principal-value moment at a boundary point w by singularity subtraction:
//   pv sum nu F/(z - w) = sum nu (F - F(w))/(z - w) + pi F(w)   (smooth boundary point).
// At a node coinciding with w the subtracted integrand tends to -i dF/ds.
inline StemValue boundary_moment_pv(const FieldSample& f, const AxialDomain& d, Point2 w, EvalDiagnostics* diag) {
  check_boundary_values(f, d);
  const auto& b = d.boundary_quad;
  const Complex wc(w.u, w.v);
  const double hit = 1e-10 * point_scale(d);

  std::optional<std::size_t> node;
  for (std::size_t k = 0; k < b.size(); ++k)
    if (std::abs(Complex(b.nodes[k].u, b.nodes[k].v) - wc) < hit) node = k;

  StemValue Fw;
  if (f.is_function()) {
    Fw = f.function().stem_at(w.u, w.v);
  } else {
    if (!node) throw ArgumentError("sampled traces need the boundary point to be a boundary node");
    Fw = f.boundary()[*node];
  }

  StemValue A(d.dim), scratch;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Complex z(b.nodes[k].u, b.nodes[k].v), nu = normal_c(b, k);
    const double ds = b.weights[k];
    const StemValue& F = boundary_value(f, d, k, scratch);
    if (node && k == *node) {
      StemValue dFds;
      if (f.is_function()) {
        const StemPartials p = f.function().stem().partials(w.u, w.v);
        if (diag && !p.analytic) diag->finite_difference = true;
        dFds = p.du * b.tangents[k].u + p.dv * b.tangents[k].v;
      } else {
        if (diag) diag->finite_difference = true;
        dFds = sampled_arc_derivative(f, d, k);
      }
      A.add_scaled(dFds, Complex(0.0, -ds));
      A.add_scaled(conj_i(F), ds * std::conj(nu) / (std::conj(z) - wc));
      continue;
    }
    accumulate_moment(A, F - Fw, ds * nu / (z - wc), 0.0);
    A.add_scaled(conj_i(F), ds * std::conj(nu) / (std::conj(z) - wc));
  }
  A.add_scaled(Fw, std::numbers::pi);
  return A;
}

}  // namespace detail

// alpha lift_I(A) + beta lift_I(conj_i A): the slice-I value generated by a stem moment.
inline Multivector slice_combine(const StemValue& A, const UnitSliceVector& Iq, const UnitSliceVector& I) {
  const AlphaBeta ab = alpha_beta(Iq, I);
  const Multivector Im = I.to_multivector();
  return ab.alpha * lift(A, Im) + ab.beta * lift(conj_i(A), Im);
}

// (2/omega) sum over half-sphere nodes of slice_combine.
inline Multivector sphere_combine(const StemValue& A, const UnitSliceVector& Iq, const SphereQuadrature& s) {
  Multivector r(A.dim());
  for (std::size_t j = 0; j < s.size(); ++j) r.add_scaled(slice_combine(A, Iq, s.nodes[j]), s.weights[j]);
  return r * (2.0 / sphere_area(s.dim));
}

// ---- Teodorescu transform ------------------------------------------------

// Stem of T f at w = u + i v (T f is itself a slice function).
inline StemValue teodorescu_stem(const FieldSample& f, const AxialDomain& d, Point2 w, const VolumeOptions& opt = {},
                                 EvalDiagnostics* diag = nullptr) {
  if (!(w.v > 0.0)) throw SingularInput("Teodorescu transform is undefined on the real axis");
  return detail::volume_moment(f, d, w, opt, diag) * (-0.5 / std::numbers::pi);
}

// T_{Omega_I} f(q): the slice transform over the full slice Omega_I.
inline Multivector teodorescu_slice(const FieldSample& f, const AxialDomain& d, const UnitSliceVector& I,
                                    const Paravector& q, const VolumeOptions& opt = {},
                                    EvalDiagnostics* diag = nullptr) {
  const auto p = detail::off_axis(q, d.dim, "Teodorescu transform");
  if (I.components().size() != static_cast<std::size_t>(d.dim)) throw DimensionMismatch("slice direction dimension");
  return slice_combine(teodorescu_stem(f, d, {p.u, p.v}, opt, diag), p.I, I);
}

// T_{Omega_D} f(q).
inline Multivector teodorescu(const FieldSample& f, const AxialDomain& d, const Paravector& q,
                              const VolumeOptions& opt = {}, EvalDiagnostics* diag = nullptr) {
  const auto p = detail::off_axis(q, d.dim, "Teodorescu transform");
  return sphere_combine(teodorescu_stem(f, d, {p.u, p.v}, opt, diag), p.I, d.sphere_quad);
}

// ---- Boundary operators --------------------------------------------------

inline StemValue cauchy_boundary_stem(const FieldSample& f, const AxialDomain& d, Point2 w,
                                      EvalDiagnostics* diag = nullptr) {
  if (!(w.v > 0.0)) throw SingularInput("Cauchy boundary operator is undefined on the real axis");
  const double dist = d.profile.distance_to_boundary(w);
  if (dist < 1e-12 * detail::point_scale(d))
    throw SingularInput("point lies on the boundary; use plemelj_singular");
  if (diag) diag->near_boundary = dist < 2.0 * d.boundary_spacing();
  return detail::boundary_moment(f, d, w) * (0.5 / std::numbers::pi);
}

// F_{dOmega_D} f(q) for q strictly inside or outside the domain.
inline Multivector cauchy_boundary(const FieldSample& f, const AxialDomain& d, const Paravector& q,
                                   EvalDiagnostics* diag = nullptr) {
  const auto p = detail::off_axis(q, d.dim, "Cauchy boundary operator");
  return sphere_combine(cauchy_boundary_stem(f, d, {p.u, p.v}, diag), p.I, d.sphere_quad);
}

inline StemValue plemelj_singular_stem(const FieldSample& f, const AxialDomain& d, Point2 w,
                                       EvalDiagnostics* diag = nullptr) {
  if (!(w.v > 0.0)) throw SingularInput("principal-value operator is undefined on the real axis");
  if (d.profile.distance_to_boundary(w) > 1e-10 * detail::point_scale(d))
    throw ArgumentError("principal-value operator needs a point on the boundary");
  return detail::boundary_moment_pv(f, d, w, diag) * (0.5 / std::numbers::pi);
}

// S_{dOmega_D} f(q) for q on the boundary (away from corners of the profile).
inline Multivector plemelj_singular(const FieldSample& f, const AxialDomain& d, const Paravector& q,
                                    EvalDiagnostics* diag = nullptr) {
  const auto p = detail::off_axis(q, d.dim, "principal-value operator");
  return sphere_combine(plemelj_singular_stem(f, d, {p.u, p.v}, diag), p.I, d.sphere_quad);
}

// l-th derivative of a slice monogenic f at an interior q through the derivative
// Cauchy formula, summed directly in Clifford form over both halves of each slice.
inline Multivector derivative_cauchy(const FieldSample& f, const AxialDomain& d, const Paravector& q,
                                     const MultiIndex& l, EvalDiagnostics* diag = nullptr) {
  detail::check_boundary_values(f, d);
  const auto p = detail::off_axis(q, d.dim, "derivative Cauchy formula");
  detail::check_multi_index(l, d.dim);
  const Point2 w{p.u, p.v};
  const double dist = d.profile.distance_to_boundary(w);
  if (!d.profile.contains(w) || dist < 1e-12 * detail::point_scale(d))
    throw DomainError("derivative Cauchy formula needs an interior point");
  if (diag) diag->near_boundary = dist < 2.0 * d.boundary_spacing();
  const auto& b = d.boundary_quad;
  std::vector<StemValue> values(b.size());
  StemValue scratch;
  for (std::size_t k = 0; k < b.size(); ++k) values[k] = detail::boundary_value(f, d, k, scratch);

  Multivector total(d.dim);
  for (std::size_t j = 0; j < d.sphere_quad.size(); ++j) {
    const UnitSliceVector& I = d.sphere_quad.nodes[j];
    const Multivector Im = I.to_multivector();
    Multivector slice(d.dim);
    for (std::size_t k = 0; k < b.size(); ++k) {
      const auto [u, v] = b.nodes[k];
      const auto [nu, nv] = b.normals[k];
      for (int side : {1, -1}) {
        const Paravector x = Paravector::from_slice(u, side * v, I);
        const Paravector n = Paravector::from_slice(nu, side * nv, I);
        const Multivector fx = lift(side > 0 ? values[k] : conj_i(values[k]), Im);
        slice.add_scaled(cauchy_kernel_derivative(q, x, l) * (n.to_multivector() * fx), b.weights[k]);
      }
    }
    total.add_scaled(slice, d.sphere_quad.weights[j]);
  }
  return total * (1.0 / (std::numbers::pi * sphere_area(d.dim)));
}

// ---- Norms ---------------------------------------------------------------

// (integral over Omega_D of |f|^p dV)^(1/p) on the regular slice rule.
inline double lp_norm(const FieldSample& f, const AxialDomain& d, double p) {
  detail::check_field(f, d);
  if (!(p >= 1.0)) throw ArgumentError("lp_norm needs p >= 1");
  const SliceQuadrature rule = regular_rule(d);
  if (!f.is_function() && f.interior().size() != rule.size())
    throw ArgumentError("tabulated interior values do not match the regular slice rule");
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto [u, v] = rule.nodes[k];
    const StemValue F = f.is_function() ? f.function().stem_at(u, v) : f.interior()[k];
    double s = 0.0;
    for (std::size_t j = 0; j < d.sphere_quad.size(); ++j) {
      const Multivector I = d.sphere_quad.nodes[j].to_multivector();
      const Multivector Fi = I * F.F2;
      s += d.sphere_quad.weights[j] * (std::pow((F.F1 + Fi).norm(), p) + std::pow((F.F1 - Fi).norm(), p));
    }
    sum += rule.weights[k] * std::pow(v, d.dim - 1) * s;
  }
  return std::pow(sum, 1.0 / p);
}

// ---- Derived slice functions ---------------------------------------------

// G f as a slice function; its stem is the Cauchy-Riemann combination of f's stem partials.
inline SliceFunction g_image(const SliceFunction& f) {
  const SliceFunction src = f;
  StemFunction stem(
      f.dim(), [src](double u, double v) { return cauchy_riemann_stem(src.stem().partials(u, v)); }, {},
      f.stem().support(), "G(" + f.label() + ")");
  return SliceFunction(std::move(stem));
}

}  // namespace slicecalc
