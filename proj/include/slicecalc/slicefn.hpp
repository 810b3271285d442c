#pragma once

// Stem functions F = F1 + i F2 : C -> Cl_m (x) C and the slice functions they induce,
// f(u + I v) = F1(u, v) + I F2(u, v).

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "slicecalc/clifford.hpp"

namespace slicecalc {

using Complex = std::complex<double>;

// Value of a stem function, F1 + i F2 with Clifford-valued components.
struct StemValue {
  Multivector F1;
  Multivector F2;

  StemValue() = default;
  explicit StemValue(int dim) : F1(dim), F2(dim) {}
  StemValue(Multivector f1, Multivector f2) : F1(std::move(f1)), F2(std::move(f2)) {}

  int dim() const { return F1.dim(); }

  StemValue& operator+=(const StemValue& o) {
    F1 += o.F1;
    F2 += o.F2;
    return *this;
  }
  StemValue& operator-=(const StemValue& o) {
    F1 -= o.F1;
    F2 -= o.F2;
    return *this;
  }
  StemValue& operator*=(double s) {
    F1 *= s;
    F2 *= s;
    return *this;
  }
  // this += k * o for a complex scalar k.
  StemValue& add_scaled(const StemValue& o, Complex k) {
    F1.add_scaled(o.F1, k.real()).add_scaled(o.F2, -k.imag());
    F2.add_scaled(o.F2, k.real()).add_scaled(o.F1, k.imag());
    return *this;
  }
  // this += k * c for a complex scalar k and constant Clifford number c.
  StemValue& add_scaled(const Multivector& c, Complex k) {
    F1.add_scaled(c, k.real());
    F2.add_scaled(c, k.imag());
    return *this;
  }

  friend StemValue operator+(StemValue a, const StemValue& b) { return a += b; }
  friend StemValue operator-(StemValue a, const StemValue& b) { return a -= b; }
  friend StemValue operator*(StemValue a, double s) { return a *= s; }
  friend StemValue operator*(double s, StemValue a) { return a *= s; }
  friend StemValue operator*(Complex k, const StemValue& a) {
    StemValue r(a.dim());
    return r.add_scaled(a, k);
  }
  // Right multiplication by a constant.
  friend StemValue operator*(const StemValue& a, const Multivector& c) { return {a.F1 * c, a.F2 * c}; }

  double norm() const { return std::sqrt(F1.norm_sq() + F2.norm_sq()); }
};

// Complex conjugation in the C factor: F1 - i F2. Mirrors the stem across the real axis.
inline StemValue conj_i(const StemValue& a) { return {a.F1, -a.F2}; }

// Complex scalar times constant Clifford number as a stem value.
inline StemValue stem_constant(const Multivector& c, Complex k) {
  StemValue r(c.dim());
  return r.add_scaled(c, k);
}

// F1 + I F2 on the slice C_I.
inline Multivector lift(const StemValue& a, const Multivector& I) { return a.F1 + I * a.F2; }
inline Multivector lift(const StemValue& a, const UnitSliceVector& I) { return lift(a, I.to_multivector()); }

struct StemPartials {
  StemValue du;
  StemValue dv;
  bool analytic = true;
};

// Closed rectangle u in [u_min, u_max], |v| <= v_max where the stem may be evaluated.
struct StemSupport {
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();
  double v_max = std::numeric_limits<double>::infinity();

  bool contains(double u, double v) const { return u >= u_min && u <= u_max && std::abs(v) <= v_max; }
};

using StemMap = std::function<StemValue(double, double)>;
using StemPartialsMap = std::function<StemPartials(double, double)>;

// User-supplied callables must be re-entrant: evaluation happens concurrently.
class StemFunction {
 public:
  StemFunction() = default;
  StemFunction(int dim, StemMap map, StemPartialsMap partials = {}, StemSupport support = {},
               std::string label = {})
      : dim_(dim), map_(std::move(map)), partials_(std::move(partials)), support_(support),
        label_(std::move(label)) {
    detail::check_dim(dim);
    if (!map_) throw ArgumentError("stem function needs an evaluation map");
  }

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const StemSupport& support() const { return support_; }
  bool has_analytic_partials() const { return static_cast<bool>(partials_); }

  StemValue operator()(double u, double v) const {
    if (!support_.contains(u, v))
      throw DomainError("stem evaluated outside its support at (" + std::to_string(u) + ", " +
                        std::to_string(v) + ")");
    return map_(u, v);
  }

  // Analytic partials when attached, otherwise central differences with h = 1e-5 max(1,|u|,|v|).
  StemPartials partials(double u, double v) const {
    if (partials_) return partials_(u, v);
    return fd_partials(u, v, 1e-5 * std::max({1.0, std::abs(u), std::abs(v)}));
  }

  StemPartials fd_partials(double u, double v, double h) const {
    StemPartials p;
    p.du = ((*this)(u + h, v) - (*this)(u - h, v)) * (0.5 / h);
    p.dv = ((*this)(u, v + h) - (*this)(u, v - h)) * (0.5 / h);
    p.analytic = false;
    return p;
  }

  // Largest |F1(u,-v) - F1(u,v)| + |F2(u,-v) + F2(u,v)| over sampled mirrored pairs.
  double even_odd_defect(int samples = 64, unsigned seed = 1) const {
    std::mt19937_64 rng(seed);
    const double ulo = std::max(support_.u_min, -4.0), uhi = std::min(support_.u_max, 4.0);
    const double vhi = std::min(support_.v_max, 4.0);
    std::uniform_real_distribution<double> du(ulo, uhi), dv(0.0, vhi);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double u = du(rng), v = dv(rng);
      const StemValue a = (*this)(u, v), b = (*this)(u, -v);
      worst = std::max(worst, (a.F1 - b.F1).norm() + (a.F2 + b.F2).norm());
    }
    return worst;
  }

 private:
  int dim_ = 0;
  StemMap map_;
  StemPartialsMap partials_;
  StemSupport support_;
  std::string label_;
};

class SliceFunction {
 public:
  SliceFunction() = default;
  explicit SliceFunction(StemFunction stem) : stem_(std::make_shared<StemFunction>(std::move(stem))) {}

  // Rejects stems that break the even-odd conditions at sampled points.
  static SliceFunction checked(StemFunction stem, double tol = 1e-10) {
    const double defect = stem.even_odd_defect();
    if (defect > tol)
      throw ArgumentError("stem violates the even-odd conditions (defect " + std::to_string(defect) + ")");
    return SliceFunction(std::move(stem));
  }

  const StemFunction& stem() const { return *stem_; }
  int dim() const { return stem_->dim(); }
  const std::string& label() const { return stem_->label(); }
  StemValue stem_at(double u, double v) const { return (*stem_)(u, v); }

  Multivector operator()(const Paravector& q) const;

 private:
  std::shared_ptr<const StemFunction> stem_;
};

inline Multivector evaluate(const SliceFunction& f, const Paravector& q) {
  if (q.dim() != f.dim()) throw DimensionMismatch("point and function live in different algebras");
  const SliceCoordinates s = slice_coordinates(q);
  const StemValue F = f.stem_at(s.u, s.v);
  if (!s.I) return F.F1;
  return lift(F, *s.I);
}

inline Multivector SliceFunction::operator()(const Paravector& q) const { return evaluate(*this, q); }

// alpha = (1 - Iq I)/2, beta = (1 + Iq I)/2.
struct AlphaBeta {
  Multivector alpha;
  Multivector beta;
};

inline AlphaBeta alpha_beta(const UnitSliceVector& Iq, const UnitSliceVector& I) {
  if (Iq.dim() != I.dim()) throw DimensionMismatch("slice directions from different algebras");
  const int m = I.dim();
  const Multivector p = Iq.to_multivector() * I.to_multivector();
  const Multivector one = Multivector::scalar(m, 1.0);
  return {(one - p) * 0.5, (one + p) * 0.5};
}

inline Multivector representation_combine(const Multivector& fI, const Multivector& fmI,
                                          const UnitSliceVector& I, const UnitSliceVector& Iq) {
  const AlphaBeta ab = alpha_beta(Iq, I);
  return ab.alpha * fI + ab.beta * fmI;
}

struct GConfig {
  enum class Mode { analytic, finite_difference };
  Mode mode = Mode::analytic;
  double fd_step = 1e-5;
};

// Stem-coordinate form of G: (dF1/du - dF2/dv) + I (dF1/dv + dF2/du).
inline StemValue cauchy_riemann_stem(const StemPartials& p) {
  return {p.du.F1 - p.dv.F2, p.dv.F1 + p.du.F2};
}

inline Multivector apply_G(const SliceFunction& f, const Paravector& q, const GConfig& cfg = {}) {
  if (q.dim() != f.dim()) throw DimensionMismatch("point and function live in different algebras");
  const SliceCoordinates s = slice_coordinates(q);
  if (!s.I) throw SingularInput("G is undefined on the real axis");
  if (cfg.fd_step <= 0.0) throw ArgumentError("fd_step must be positive");
  const StemPartials p = cfg.mode == GConfig::Mode::analytic
                             ? f.stem().partials(s.u, s.v)
                             : f.stem().fd_partials(s.u, s.v, cfg.fd_step);
  return lift(cauchy_riemann_stem(p), *s.I);
}

struct MonogenicityCheck {
  bool monogenic = false;
  double max_residual = 0.0;
};

inline MonogenicityCheck is_slice_monogenic(const SliceFunction& f,
                                            const std::vector<std::pair<double, double>>& probes,
                                            double tol = 1e-8) {
  if (probes.empty()) throw ArgumentError("monogenicity check needs at least one probe");
  MonogenicityCheck r;
  for (const auto& [u, v] : probes) {
    if (v <= 0.0) throw ArgumentError("monogenicity probes need v > 0");
    const StemValue cr = cauchy_riemann_stem(f.stem().partials(u, v));
    r.max_residual = std::max(r.max_residual, cr.F1.norm() + cr.F2.norm());
  }
  r.monogenic = r.max_residual <= tol;
  return r;
}

// ---- constructors -------------------------------------------------------

namespace detail {

inline StemValue holomorphic_dv(const StemValue& du) { return {-du.F2, du.F1}; }  // i * F'

}  // namespace detail

// F(z) = sum_n z^n a_n; slice monogenic since every z^n is holomorphic.
inline SliceFunction make_polynomial(int dim, std::vector<Multivector> coeffs, std::string label = "polynomial") {
  detail::check_dim(dim);
  for (const auto& c : coeffs)
    if (c.dim() != dim) throw DimensionMismatch("polynomial coefficient from a different algebra");
  auto shared = std::make_shared<const std::vector<Multivector>>(std::move(coeffs));
  auto map = [dim, shared](double u, double v) {
    StemValue r(dim);
    Complex zn(1.0, 0.0);
    const Complex z(u, v);
    for (const auto& a : *shared) {
      r.add_scaled(a, zn);
      zn *= z;
    }
    return r;
  };
  auto partials = [dim, shared](double u, double v) {
    StemPartials p{StemValue(dim), StemValue(dim), true};
    Complex zn(1.0, 0.0);
    const Complex z(u, v);
    for (std::size_t n = 1; n < shared->size(); ++n) {
      p.du.add_scaled((*shared)[n], static_cast<double>(n) * zn);
      zn *= z;
    }
    p.dv = detail::holomorphic_dv(p.du);
    return p;
  };
  return SliceFunction(StemFunction(dim, map, partials, {}, std::move(label)));
}

inline SliceFunction make_polynomial(std::vector<Multivector> coeffs) {
  if (coeffs.empty()) throw ArgumentError("polynomial needs at least one coefficient");
  const int dim = coeffs.front().dim();
  return make_polynomial(dim, std::move(coeffs));
}

// Stem built from a complex function g with derivative dg, times the unit.
inline SliceFunction make_scalar_holomorphic(int dim, std::function<Complex(Complex)> g,
                                             std::function<Complex(Complex)> dg, std::string label) {
  const Multivector one = Multivector::scalar(dim, 1.0);
  auto map = [one, g](double u, double v) { return stem_constant(one, g(Complex(u, v))); };
  auto partials = [one, dg](double u, double v) {
    StemPartials p;
    p.du = stem_constant(one, dg(Complex(u, v)));
    p.dv = detail::holomorphic_dv(p.du);
    return p;
  };
  return SliceFunction(StemFunction(dim, map, partials, {}, std::move(label)));
}

// Stem 1/(z - c) for real c; the only pole sits on the real axis.
inline SliceFunction make_inv_shift(int dim, double c) {
  auto g = [c](Complex z) {
    if (z == Complex(c, 0.0)) throw DomainError("inv_shift evaluated at its pole");
    return 1.0 / (z - c);
  };
  auto dg = [c](Complex z) {
    if (z == Complex(c, 0.0)) throw DomainError("inv_shift evaluated at its pole");
    return -1.0 / ((z - c) * (z - c));
  };
  return make_scalar_holomorphic(dim, g, dg, "inv_shift(" + std::to_string(c) + ")");
}

// The anti-holomorphic stem z-bar: F1 = u, F2 = -v, so G f = 2.
inline SliceFunction make_conjugate(int dim) {
  const Multivector one = Multivector::scalar(dim, 1.0);
  auto map = [one](double u, double v) { return StemValue(one * u, one * (-v)); };
  auto partials = [one, dim](double, double) {
    StemPartials p{StemValue(dim), StemValue(dim), true};
    p.du.F1 = one;
    p.dv.F2 = -one;
    return p;
  };
  return SliceFunction(StemFunction(dim, map, partials, {}, "conjugate"));
}

// Names: one, identity, conjugate, square, cube, exp, inv_shift(c).
inline SliceFunction make_named(int dim, std::string_view name) {
  const Multivector one = Multivector::scalar(dim, 1.0);
  const Multivector zero(dim);
  if (name == "one") return make_polynomial(dim, {one}, "one");
  if (name == "identity") return make_polynomial(dim, {zero, one}, "identity");
  if (name == "square") return make_polynomial(dim, {zero, zero, one}, "square");
  if (name == "cube") return make_polynomial(dim, {zero, zero, zero, one}, "cube");
  if (name == "conjugate") return make_conjugate(dim);
  if (name == "exp") {
    auto e = [](Complex z) { return std::exp(z); };
    return make_scalar_holomorphic(dim, e, e, "exp");
  }
  if (name.starts_with("inv_shift(") && name.ends_with(")")) {
    const std::string arg(name.substr(10, name.size() - 11));
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw ArgumentError("inv_shift needs a real shift, got '" + arg + "'");
    return make_inv_shift(dim, c);
  }
  throw ArgumentError("unknown function name '" + std::string(name) + "'");
}

// ---- combinators --------------------------------------------------------

namespace detail {

inline StemPartialsMap combine_partials(const SliceFunction& a, const SliceFunction& b, double sb) {
  if (!a.stem().has_analytic_partials() || !b.stem().has_analytic_partials()) return {};
  return [a, b, sb](double u, double v) {
    StemPartials pa = a.stem().partials(u, v), pb = b.stem().partials(u, v);
    pa.du += pb.du * sb;
    pa.dv += pb.dv * sb;
    return pa;
  };
}

inline StemSupport intersect(const StemSupport& a, const StemSupport& b) {
  return {std::max(a.u_min, b.u_min), std::min(a.u_max, b.u_max), std::min(a.v_max, b.v_max)};
}

}  // namespace detail

inline SliceFunction operator+(const SliceFunction& a, const SliceFunction& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("sum of functions from different algebras");
  auto map = [a, b](double u, double v) { return a.stem_at(u, v) + b.stem_at(u, v); };
  return SliceFunction(StemFunction(a.dim(), map, detail::combine_partials(a, b, 1.0),
                                    detail::intersect(a.stem().support(), b.stem().support()),
                                    a.label() + "+" + b.label()));
}

inline SliceFunction operator-(const SliceFunction& a, const SliceFunction& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("difference of functions from different algebras");
  auto map = [a, b](double u, double v) { return a.stem_at(u, v) - b.stem_at(u, v); };
  return SliceFunction(StemFunction(a.dim(), map, detail::combine_partials(a, b, -1.0),
                                    detail::intersect(a.stem().support(), b.stem().support()),
                                    a.label() + "-" + b.label()));
}

// x -> f(x) c, realized by scaling the stem on the right.
inline SliceFunction operator*(const SliceFunction& f, const Multivector& c) {
  auto map = [f, c](double u, double v) { return f.stem_at(u, v) * c; };
  StemPartialsMap partials;
  if (f.stem().has_analytic_partials())
    partials = [f, c](double u, double v) {
      StemPartials p = f.stem().partials(u, v);
      p.du = p.du * c;
      p.dv = p.dv * c;
      return p;
    };
  return SliceFunction(StemFunction(f.dim(), map, partials, f.stem().support(), f.label()));
}

}  // namespace slicecalc
