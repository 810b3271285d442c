#pragma once

// Axially symmetric domains Omega_D, stored through the upper-half profile D+.
// dV = v^{m-1} dA dS(I): a slice rule on D+, a boundary rule on dD+, and a rule on the
// half sphere S+ = {I : I_m > 0}.

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "slicecalc/clifford.hpp"
#include "slicecalc/quadrature.hpp"

namespace slicecalc {

struct Point2 {
  double u = 0.0;
  double v = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.u + b.u, a.v + b.v}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.u - b.u, a.v - b.v}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.u, s * a.v}; }
  double norm() const { return std::hypot(u, v); }
  double dot(Point2 o) const { return u * o.u + v * o.v; }
};

// Area of the unit sphere S^{m-1} in R^m: 2 pi^{m/2} / Gamma(m/2).
inline double sphere_area(int m) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

enum class ProfileKind { rectangle, disk, annulus_sector };

inline std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::rectangle: return "rectangle";
    case ProfileKind::disk: return "disk";
    case ProfileKind::annulus_sector: return "annulus-sector";
  }
  return "?";
}

// Piece of a profile boundary: a segment from a to b, or an arc about center from angle t0 to t1
// (t1 < t0 traverses clockwise). Pieces are listed counterclockwise around the region.
struct BoundaryPiece {
  bool arc = false;
  Point2 a, b;
  Point2 center;
  double radius = 0.0, t0 = 0.0, t1 = 0.0;

  double length() const { return arc ? radius * std::abs(t1 - t0) : (b - a).norm(); }
  Point2 at(double s) const {  // s in [0, 1]
    if (!arc) return a + s * (b - a);
    const double t = t0 + s * (t1 - t0);
    return center + radius * Point2{std::cos(t), std::sin(t)};
  }
  Point2 tangent(double s) const {  // unit, direction of traversal
    if (!arc) return (1.0 / length()) * (b - a);
    const double t = t0 + s * (t1 - t0), dir = t1 > t0 ? 1.0 : -1.0;
    return dir * Point2{-std::sin(t), std::cos(t)};
  }
  double distance(Point2 p) const {
    if (!arc) {
      const Point2 d = b - a;
      const double s = std::clamp((p - a).dot(d) / d.dot(d), 0.0, 1.0);
      return (p - (a + s * d)).norm();
    }
    const Point2 r = p - center;
    double ang = std::atan2(r.v, r.u);
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    while (ang < lo) ang += 2.0 * std::numbers::pi;
    while (ang > lo + 2.0 * std::numbers::pi) ang -= 2.0 * std::numbers::pi;
    if (ang <= hi) return std::abs(r.norm() - radius);
    return std::min((p - at(0.0)).norm(), (p - at(1.0)).norm());
  }
};

struct ProfileRegion {
  ProfileKind kind = ProfileKind::disk;
  // rectangle
  double u_min = 0.0, u_max = 0.0, v_min = 0.0, v_max = 0.0;
  // disk and annulus sector
  double u0 = 0.0, v0 = 0.0, radius = 0.0;
  double r_inner = 0.0, r_outer = 0.0, theta_min = 0.0, theta_max = 0.0;
  int resolution = 32;

  static ProfileRegion rectangle(double a, double b, double vmin, double vmax, int n) {
    ProfileRegion p;
    p.kind = ProfileKind::rectangle;
    p.u_min = a;
    p.u_max = b;
    p.v_min = vmin;
    p.v_max = vmax;
    p.resolution = n;
    return p;
  }
  static ProfileRegion disk(double u0, double v0, double R, int n) {
    ProfileRegion p;
    p.kind = ProfileKind::disk;
    p.u0 = u0;
    p.v0 = v0;
    p.radius = R;
    p.resolution = n;
    return p;
  }
  static ProfileRegion annulus_sector(double u0, double v0, double r1, double r2, double t1, double t2, int n) {
    ProfileRegion p;
    p.kind = ProfileKind::annulus_sector;
    p.u0 = u0;
    p.v0 = v0;
    p.r_inner = r1;
    p.r_outer = r2;
    p.theta_min = t1;
    p.theta_max = t2;
    p.resolution = n;
    return p;
  }

  ProfileRegion with_resolution(int n) const {
    ProfileRegion p = *this;
    p.resolution = n;
    return p;
  }

  Point2 center() const { return kind == ProfileKind::rectangle ? Point2{0.5 * (u_min + u_max), 0.5 * (v_min + v_max)} : Point2{u0, v0}; }

  // Throws unless the closed region lies in the open upper half-plane.
  void validate() const {
    if (resolution < 1) throw ArgumentError("profile resolution must be positive");
    switch (kind) {
      case ProfileKind::rectangle:
        if (!(u_max > u_min && v_max > v_min)) throw ArgumentError("rectangle needs u_max > u_min and v_max > v_min");
        break;
      case ProfileKind::disk:
        if (!(radius > 0.0)) throw ArgumentError("disk radius must be positive");
        break;
      case ProfileKind::annulus_sector:
        if (!(r_outer > r_inner && r_inner > 0.0)) throw ArgumentError("annulus sector needs 0 < r_inner < r_outer");
        if (!(theta_max > theta_min) || theta_max - theta_min >= 2.0 * std::numbers::pi)
          throw ArgumentError("annulus sector needs 0 < theta_max - theta_min < 2 pi");
        break;
    }
    if (lowest_v() <= 0.0)
      throw DomainError("profile reaches v = " + std::to_string(lowest_v()) +
                        "; axially symmetric domains must avoid the real axis (v > 0)");
  }

  double lowest_v() const {
    switch (kind) {
      case ProfileKind::rectangle: return v_min;
      case ProfileKind::disk: return v0 - radius;
      case ProfileKind::annulus_sector: {
        double lo = std::numeric_limits<double>::infinity();
        // The arcs dip to v0 - r when the direction -pi/2 lies in the angular range.
        const double two_pi = 2.0 * std::numbers::pi;
        const double down = theta_min + std::fmod(std::fmod(-0.5 * std::numbers::pi - theta_min, two_pi) + two_pi, two_pi);
        for (double r : {r_inner, r_outer}) {
          for (double t : {theta_min, theta_max}) lo = std::min(lo, v0 + r * std::sin(t));
          if (down <= theta_max) lo = std::min(lo, v0 - r);
        }
        return lo;
      }
    }
    return 0.0;
  }

  std::vector<BoundaryPiece> pieces() const {
    std::vector<BoundaryPiece> out;
    auto seg = [&](Point2 a, Point2 b) {
      BoundaryPiece p;
      p.a = a;
      p.b = b;
      out.push_back(p);
    };
    auto arc = [&](double r, double t0, double t1) {
      BoundaryPiece p;
      p.arc = true;
      p.center = {u0, v0};
      p.radius = r;
      p.t0 = t0;
      p.t1 = t1;
      out.push_back(p);
    };
    switch (kind) {
      case ProfileKind::rectangle:
        seg({u_min, v_min}, {u_max, v_min});
        seg({u_max, v_min}, {u_max, v_max});
        seg({u_max, v_max}, {u_min, v_max});
        seg({u_min, v_max}, {u_min, v_min});
        break;
      case ProfileKind::disk:
        arc(radius, 0.0, 2.0 * std::numbers::pi);
        break;
      case ProfileKind::annulus_sector: {
        const Point2 c{u0, v0};
        auto polar = [&](double r, double t) { return c + r * Point2{std::cos(t), std::sin(t)}; };
        arc(r_outer, theta_min, theta_max);
        seg(polar(r_outer, theta_max), polar(r_inner, theta_max));
        arc(r_inner, theta_max, theta_min);
        seg(polar(r_inner, theta_min), polar(r_outer, theta_min));
        break;
      }
    }
    return out;
  }

  bool contains(Point2 p) const {
    switch (kind) {
      case ProfileKind::rectangle: return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
      case ProfileKind::disk: return (p - Point2{u0, v0}).norm() <= radius;
      case ProfileKind::annulus_sector: {
        const Point2 r = p - Point2{u0, v0};
        const double rho = r.norm();
        if (rho < r_inner || rho > r_outer) return false;
        double ang = std::atan2(r.v, r.u);
        while (ang < theta_min) ang += 2.0 * std::numbers::pi;
        return ang <= theta_max;
      }
    }
    return false;
  }

  double distance_to_boundary(Point2 p) const {
    if (kind == ProfileKind::disk) return std::abs((p - Point2{u0, v0}).norm() - radius);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces()) d = std::min(d, piece.distance(p));
    return d;
  }

  double area() const {
    switch (kind) {
      case ProfileKind::rectangle: return (u_max - u_min) * (v_max - v_min);
      case ProfileKind::disk: return std::numbers::pi * radius * radius;
      case ProfileKind::annulus_sector:
        return 0.5 * (theta_max - theta_min) * (r_outer * r_outer - r_inner * r_inner);
    }
    return 0.0;
  }

  double perimeter() const {
    double s = 0.0;
    for (const auto& piece : pieces()) s += piece.length();
    return s;
  }

  double inradius() const {
    switch (kind) {
      case ProfileKind::rectangle: return 0.5 * std::min(u_max - u_min, v_max - v_min);
      case ProfileKind::disk: return radius;
      case ProfileKind::annulus_sector: {
        const double half = 0.5 * std::min(theta_max - theta_min, std::numbers::pi);
        return std::min(0.5 * (r_outer - r_inner), 0.5 * (r_inner + r_outer) * std::sin(half));
      }
    }
    return 0.0;
  }
};

struct SingularPatch {
  Point2 center;
  double radius = 0.0;
};

struct SliceQuadrature {
  std::vector<Point2> nodes;
  std::vector<double> weights;
  std::vector<SingularPatch> singular_patches;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

struct BoundaryQuadrature {
  std::vector<Point2> nodes;
  std::vector<Point2> tangents;  // counterclockwise around D+
  std::vector<Point2> normals;   // outward
  std::vector<double> weights;   // arclength
  std::vector<int> piece;        // index of the boundary piece each node lies on
  std::vector<bool> piece_closed;  // piece is a full closed curve (nodes periodic)

  std::size_t size() const { return nodes.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

struct SphereQuadrature {
  int dim = 0;
  std::vector<UnitSliceVector> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

struct AxialDomain {
  ProfileRegion profile;
  SliceQuadrature slice_quad;
  BoundaryQuadrature boundary_quad;
  SphereQuadrature sphere_quad;
  int dim = 0;

  // Typical regular cell diameter, sqrt(area / node count).
  double spacing() const { return std::sqrt(profile.area() / static_cast<double>(regular_node_count)); }
  double boundary_spacing() const { return profile.perimeter() / static_cast<double>(boundary_quad.size()); }
  std::size_t regular_node_count = 1;

  // omega_{m-1} * integral over D+ of v^{m-1}.
  double volume() const {
    double s = 0.0;
    for (std::size_t k = 0; k < slice_quad.size(); ++k)
      s += slice_quad.weights[k] * std::pow(slice_quad.nodes[k].v, dim - 1);
    return sphere_area(dim) * s;
  }
};

// ---- rules ---------------------------------------------------------------

namespace detail {

struct PolarNode {
  double c, s, w;  // cos(theta), sin(theta), weight
};

// Rule for the measure sin^p(theta) dtheta on [0, pi/2] (half) or [0, pi] (full).
// Odd p becomes the polynomial weight (1 - t^2)^{(p-1)/2} dt under t = cos(theta), which
// Gauss-Legendre integrates exactly; otherwise Gauss in theta.
inline std::vector<PolarNode> polar_angle_rule(int p, bool half, int n) {
  std::vector<PolarNode> out;
  if (p % 2 == 1) {
    const Rule1D g = gauss_legendre(n, half ? 0.0 : -1.0, 1.0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double t = g.nodes[i], s = std::sqrt(1.0 - t * t);
      out.push_back({t, s, g.weights[i] * std::pow(s, p - 1)});
    }
  } else {
    // The sin^p factor (p > 0) and the full range both call for extra nodes.
    const int nodes = (half && p == 0) ? n : 2 * n;
    const Rule1D g = gauss_legendre(nodes, 0.0, half ? 0.5 * std::numbers::pi : std::numbers::pi);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double s = std::sin(g.nodes[i]);
      out.push_back({std::cos(g.nodes[i]), s, g.weights[i] * std::pow(s, p)});
    }
  }
  return out;
}

// Rule on the full sphere S^k in R^{k+1}, k >= 0.
inline void full_sphere_rule(int k, int order, std::vector<std::vector<double>>& pts, std::vector<double>& w) {
  pts.clear();
  w.clear();
  if (k == 0) {
    pts = {{1.0}, {-1.0}};
    w = {1.0, 1.0};
    return;
  }
  if (k == 1) {
    for (int j = 0; j < order; ++j) {
      const double t = 2.0 * std::numbers::pi * (j + 0.5) / order;
      pts.push_back({std::cos(t), std::sin(t)});
      w.push_back(2.0 * std::numbers::pi / order);
    }
    return;
  }
  // Polar angle from the last axis, measure sin^{k-1} theta dtheta dS^{k-1}.
  std::vector<std::vector<double>> sub;
  std::vector<double> subw;
  full_sphere_rule(k - 1, order, sub, subw);
  for (const auto& a : polar_angle_rule(k - 1, false, std::max(1, order / 2))) {
    for (std::size_t j = 0; j < sub.size(); ++j) {
      std::vector<double> p(sub[j].size() + 1);
      for (std::size_t i = 0; i < sub[j].size(); ++i) p[i] = a.s * sub[j][i];
      p.back() = a.c;
      pts.push_back(std::move(p));
      w.push_back(a.w * subw[j]);
    }
  }
}

}  // namespace detail

// Half sphere {I in S^{m-1} : I_m > 0}; weights sum to omega_{m-1}/2.
inline SphereQuadrature build_sphere_quadrature(int m, int order) {
  detail::check_dim(m);
  if (order < 2) throw ArgumentError("sphere order must be at least 2");
  SphereQuadrature q;
  q.dim = m;
  if (m == 1) {
    q.nodes.push_back(UnitSliceVector::basis(1, 1));
    q.weights.push_back(1.0);
    return q;
  }
  std::vector<std::vector<double>> sub;
  std::vector<double> subw;
  detail::full_sphere_rule(m - 2, order, sub, subw);
  for (const auto& a : detail::polar_angle_rule(m - 2, true, std::max(1, order / 2))) {
    for (std::size_t j = 0; j < sub.size(); ++j) {
      std::array<double, kMaxDim> p{};
      for (std::size_t i = 0; i < sub[j].size(); ++i) p[i] = a.s * sub[j][i];
      p[m - 1] = a.c;
      q.nodes.push_back(UnitSliceVector::normalized(m, std::span<const double>(p.data(), m)));
      q.weights.push_back(a.w * subw[j]);
    }
  }
  return q;
}

inline SliceQuadrature regular_slice_rule(const ProfileRegion& p) {
  SliceQuadrature q;
  const int n = p.resolution;
  switch (p.kind) {
    case ProfileKind::rectangle: {
      const Rule1D gu = gauss_legendre(n, p.u_min, p.u_max), gv = gauss_legendre(n, p.v_min, p.v_max);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          q.nodes.push_back({gu.nodes[i], gv.nodes[j]});
          q.weights.push_back(gu.weights[i] * gv.weights[j]);
        }
      break;
    }
    case ProfileKind::disk: {
      const Rule1D gr = gauss_legendre(n, 0.0, p.radius);
      const int nt = 2 * n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < nt; ++j) {
          const double t = 2.0 * std::numbers::pi * j / nt, r = gr.nodes[i];
          q.nodes.push_back({p.u0 + r * std::cos(t), p.v0 + r * std::sin(t)});
          q.weights.push_back(gr.weights[i] * r * 2.0 * std::numbers::pi / nt);
        }
      break;
    }
    case ProfileKind::annulus_sector: {
      const Rule1D gr = gauss_legendre(n, p.r_inner, p.r_outer), gt = gauss_legendre(n, p.theta_min, p.theta_max);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double r = gr.nodes[i], t = gt.nodes[j];
          q.nodes.push_back({p.u0 + r * std::cos(t), p.v0 + r * std::sin(t)});
          q.weights.push_back(gr.weights[i] * gt.weights[j] * r);
        }
      break;
    }
  }
  return q;
}

// Composite midpoint rule, 8n nodes spread over the pieces in proportion to length.
inline BoundaryQuadrature boundary_rule(const ProfileRegion& p) {
  BoundaryQuadrature b;
  const auto pieces = p.pieces();
  const double perimeter = p.perimeter();
  const int total = 8 * p.resolution;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& piece = pieces[k];
    const int cnt = std::max(2, static_cast<int>(std::lround(total * piece.length() / perimeter)));
    const bool closed = piece.arc && std::abs(std::abs(piece.t1 - piece.t0) - 2.0 * std::numbers::pi) < 1e-14;
    b.piece_closed.push_back(closed);
    for (int j = 0; j < cnt; ++j) {
      const double s = (j + 0.5) / cnt;
      const Point2 t = piece.tangent(s);
      b.nodes.push_back(piece.at(s));
      b.tangents.push_back(t);
      b.normals.push_back({t.v, -t.u});  // tangent rotated clockwise: outward for ccw traversal
      b.weights.push_back(piece.length() / cnt);
      b.piece.push_back(static_cast<int>(k));
    }
  }
  return b;
}

inline AxialDomain build_domain(const ProfileRegion& profile, int m, int sphere_order = 16) {
  detail::check_dim(m);
  profile.validate();
  AxialDomain d;
  d.profile = profile;
  d.dim = m;
  d.slice_quad = regular_slice_rule(profile);
  d.regular_node_count = d.slice_quad.size();
  d.boundary_quad = boundary_rule(profile);
  d.sphere_quad = build_sphere_quadrature(m, sphere_order);
  return d;
}

// ---- singular patches ----------------------------------------------------

namespace detail {

// Polar rule about c covering the whole profile: graded inner disk of radius rho, then
// Gauss in r out to the boundary along each ray.
inline SliceQuadrature polar_rule(const ProfileRegion& p, Point2 c, double rho, int max_angular) {
  SliceQuadrature q;
  const int n = p.resolution;
  constexpr int kInner = 16;
  const Rule1D gs = gauss_legendre(kInner, 0.0, 1.0);
  for (int j = 0; j < kInner; ++j) {
    const double t = 2.0 * std::numbers::pi * (j + 0.5) / kInner;
    for (int i = 0; i < kInner; ++i) {
      const double s = gs.nodes[i], r = rho * s * s;
      q.nodes.push_back(c + r * Point2{std::cos(t), std::sin(t)});
      q.weights.push_back(gs.weights[i] * 2.0 * rho * s * r * 2.0 * std::numbers::pi / kInner);
    }
  }
  const Rule1D gr = gauss_legendre(n, 0.0, 1.0);
  auto ray = [&](double t, double wt, double reach) {
    const Point2 e{std::cos(t), std::sin(t)};
    const double len = reach - rho;
    for (int i = 0; i < n; ++i) {
      const double r = rho + len * gr.nodes[i];
      q.nodes.push_back(c + r * e);
      q.weights.push_back(wt * gr.weights[i] * len * r);
    }
  };
  if (p.kind == ProfileKind::disk) {
    const Point2 d = c - Point2{p.u0, p.v0};
    const double gap = p.radius - d.norm();
    // The reach varies on an angular scale ~ sqrt(gap / R); refine near the boundary.
    const int nt = std::min(std::max(2 * n, max_angular), std::max(2 * n, static_cast<int>(std::ceil(40.0 / std::sqrt(gap / p.radius)))));
    for (int j = 0; j < nt; ++j) {
      const double t = 2.0 * std::numbers::pi * (j + 0.5) / nt;
      const Point2 e{std::cos(t), std::sin(t)};
      const double de = d.dot(e);
      const double reach = -de + std::sqrt(de * de - d.dot(d) + p.radius * p.radius);
      ray(t, 2.0 * std::numbers::pi / nt, reach);
    }
  } else {
    // Rectangle: one angular sector per side, split at the corner directions.
    const Point2 corners[4] = {{p.u_max, p.v_min}, {p.u_max, p.v_max}, {p.u_min, p.v_max}, {p.u_min, p.v_min}};
    double ang[4];
    for (int k = 0; k < 4; ++k) ang[k] = std::atan2(corners[k].v - c.v, corners[k].u - c.u);
    // Sides in ccw order starting from the right side: between corner k and k+1.
    const double offsets[4] = {p.u_max - c.u, p.v_max - c.v, c.u - p.u_min, c.v - p.v_min};
    const Point2 normals[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int k = 0; k < 4; ++k) {
      double a0 = ang[k], a1 = ang[(k + 1) % 4];
      while (a1 <= a0) a1 += 2.0 * std::numbers::pi;
      const Rule1D gt = gauss_legendre(n, a0, a1);
      for (int j = 0; j < n; ++j) {
        const double t = gt.nodes[j];
        const double reach = offsets[k] / Point2{std::cos(t), std::sin(t)}.dot(normals[k]);
        ray(t, gt.weights[j], reach);
      }
    }
  }
  return q;
}

}  // namespace detail

// Default patch radius: three regular cells, at most half the distance to the boundary.
inline double default_patch_radius(const AxialDomain& d, Point2 c) {
  return std::min(3.0 * d.spacing(), 0.5 * d.profile.distance_to_boundary(c));
}

// Replaces the slice rule by a polar rule centered at `center`; total weight is preserved
// to quadrature accuracy and integrands with a 1/|x - center| singularity are resolved.
// max_angular caps the ray count used near the boundary of a disk profile.
inline AxialDomain with_singular_patch(const AxialDomain& d, Point2 center, double radius, int max_angular = 4096) {
  if (d.profile.kind == ProfileKind::annulus_sector)
    throw GeometryError("singular patches need a disk or rectangle profile");
  if (!(radius > 0.0)) throw GeometryError("singular patch radius must be positive");
  if (!d.profile.contains(center) || d.profile.distance_to_boundary(center) < radius)
    throw GeometryError("singular patch escapes the profile");
  AxialDomain out = d;
  out.slice_quad = detail::polar_rule(d.profile, center, radius, max_angular);
  out.slice_quad.singular_patches.push_back({center, radius});
  return out;
}

// ---- Gauss theorem self-test ---------------------------------------------

// Clifford-valued field on a slice C_I with its partials in (u, v).
struct SliceField {
  std::function<Multivector(double, double)> value;
  std::function<std::pair<Multivector, Multivector>(double, double)> partials;
};

// |integral over D+ of (f d)g + f(d g)  -  boundary integral of f (n-bar / 2) g|,
// with d = (d_u - I d_v)/2 and n-bar = n_u - I n_v.
inline double gauss_residual(const AxialDomain& d, const SliceField& f, const SliceField& g,
                             const UnitSliceVector& I) {
  const Multivector Im = I.to_multivector();
  Multivector vol(d.dim), bnd(d.dim);
  for (std::size_t k = 0; k < d.slice_quad.size(); ++k) {
    const auto [u, v] = d.slice_quad.nodes[k];
    const auto [fu, fv] = f.partials(u, v);
    const auto [gu, gv] = g.partials(u, v);
    const Multivector fd = (fu - fv * Im) * 0.5;
    const Multivector dg = (gu - Im * gv) * 0.5;
    vol.add_scaled(fd * g.value(u, v) + f.value(u, v) * dg, d.slice_quad.weights[k]);
  }
  const auto& b = d.boundary_quad;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto [u, v] = b.nodes[k];
    Multivector nbar = Multivector::scalar(d.dim, b.normals[k].u) - Im * b.normals[k].v;
    bnd.add_scaled(f.value(u, v) * nbar * g.value(u, v), 0.5 * b.weights[k]);
  }
  return (vol - bnd).norm();
}

}  // namespace slicecalc
