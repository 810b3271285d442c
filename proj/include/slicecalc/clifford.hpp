#pragma once

// Dense arithmetic in the real Clifford algebra Cl_m (generators square to -1).
//
// Coefficients are stored in canonical blade order: subsets of {1..m} sorted by
// grade, then lexicographically. For m = 2 this is 1, e1, e2, e12.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slicecalc/errors.hpp"

namespace slicecalc {

inline constexpr int kMaxDim = 6;
inline constexpr int kMaxBlades = 1 << kMaxDim;

namespace detail {

struct BladeTables {
  int dim = 0;
  int size = 1;
  std::array<unsigned, kMaxBlades> mask{};   // canonical index -> bitmask
  std::array<int, kMaxBlades> index{};       // bitmask -> canonical index
  std::array<int, kMaxBlades> grade{};       // canonical index -> grade
  std::vector<std::int8_t> sign;             // size*size, sign of e_i e_j
  std::vector<std::uint8_t> product;         // size*size, canonical index of e_i e_j
};

// Sign of e_A e_B for bitmasks A, B with e_i^2 = -1.
inline int blade_product_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned s = a >> 1; s != 0; s >>= 1) swaps += std::popcount(s & b);
  swaps += std::popcount(a & b);  // each shared generator contributes e_i^2 = -1
  return (swaps % 2 == 0) ? 1 : -1;
}

inline BladeTables build_tables(int m) {
  BladeTables t;
  t.dim = m;
  t.size = 1 << m;
  std::vector<unsigned> masks(t.size);
  for (int i = 0; i < t.size; ++i) masks[i] = static_cast<unsigned>(i);
  // Graded-lexicographic: compare grade, then the sorted index tuples.
  auto less = [](unsigned a, unsigned b) {
    int ga = std::popcount(a), gb = std::popcount(b);
    if (ga != gb) return ga < gb;
    while (a != 0 && b != 0) {
      int la = std::countr_zero(a), lb = std::countr_zero(b);
      if (la != lb) return la < lb;
      a &= a - 1;
      b &= b - 1;
    }
    return false;
  };
  for (int i = 1; i < t.size; ++i)
    for (int j = i; j > 0 && less(masks[j], masks[j - 1]); --j) std::swap(masks[j], masks[j - 1]);
  for (int i = 0; i < t.size; ++i) {
    t.mask[i] = masks[i];
    t.index[masks[i]] = i;
    t.grade[i] = std::popcount(masks[i]);
  }
  t.sign.resize(static_cast<std::size_t>(t.size) * t.size);
  t.product.resize(static_cast<std::size_t>(t.size) * t.size);
  for (int i = 0; i < t.size; ++i)
    for (int j = 0; j < t.size; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * t.size + j;
      t.sign[k] = static_cast<std::int8_t>(blade_product_sign(t.mask[i], t.mask[j]));
      t.product[k] = static_cast<std::uint8_t>(t.index[t.mask[i] ^ t.mask[j]]);
    }
  return t;
}

inline const BladeTables& tables(int m) {
  static const std::array<BladeTables, kMaxDim + 1> all = [] {
    std::array<BladeTables, kMaxDim + 1> a;
    for (int k = 0; k <= kMaxDim; ++k) a[k] = build_tables(k);
    return a;
  }();
  return all[m];
}

inline void check_dim(int m) {
  if (m < 1 || m > kMaxDim)
    throw ArgumentError("Clifford dimension must be in [1, " + std::to_string(kMaxDim) +
                        "], got " + std::to_string(m));
}

inline int blade_count(int m) {
  check_dim(m);
  return 1 << m;
}

}  // namespace detail

class Multivector {
 public:
  // Dimension 0 marks a placeholder; arithmetic against it fails with DimensionMismatch.
  Multivector() : dim_(0), size_(1) { c_[0] = 0.0; }

  explicit Multivector(int dim) : dim_(dim), size_(detail::blade_count(dim)) {
    std::fill_n(c_.begin(), std::min<std::size_t>(size_, c_.size()), 0.0);  // min() silences a GCC false positive
  }

  Multivector(int dim, std::span<const double> coeffs) : Multivector(dim) {
    if (static_cast<int>(coeffs.size()) != size_)
      throw DimensionMismatch("expected " + std::to_string(size_) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    std::copy(coeffs.begin(), coeffs.end(), c_.begin());
  }

  Multivector(int dim, std::initializer_list<double> coeffs)
      : Multivector(dim, std::span<const double>(coeffs.begin(), coeffs.size())) {}

  Multivector(const Multivector& o) : dim_(o.dim_), size_(o.size_) {
    std::copy_n(o.c_.begin(), size_, c_.begin());
  }
  Multivector& operator=(const Multivector& o) {
    dim_ = o.dim_;
    size_ = o.size_;
    std::copy_n(o.c_.begin(), size_, c_.begin());
    return *this;
  }

  static Multivector scalar(int dim, double s) {
    Multivector r(dim);
    r.c_[0] = s;
    return r;
  }
  // Generator e_i, 1-based.
  static Multivector generator(int dim, int i) {
    if (i < 1 || i > dim) throw ArgumentError("generator index out of range");
    Multivector r(dim);
    r.c_[i] = 1.0;  // grade-1 blades occupy canonical slots 1..m in generator order
    return r;
  }
  // Blade e_A for a set of 1-based generator indices (any order, no repeats).
  static Multivector blade(int dim, std::initializer_list<int> generators) {
    unsigned mask = 0;
    for (int g : generators) {
      if (g < 1 || g > dim) throw ArgumentError("generator index out of range");
      if (mask & (1u << (g - 1))) throw ArgumentError("repeated generator in blade");
      mask |= 1u << (g - 1);
    }
    Multivector prod = scalar(dim, 1.0);
    for (int g : generators) prod = prod * generator(dim, g);
    return prod;
  }
  static Multivector basis_blade(int dim, int canonical_index) {
    Multivector r(dim);
    if (canonical_index < 0 || canonical_index >= r.size_) throw ArgumentError("blade index out of range");
    r.c_[canonical_index] = 1.0;
    return r;
  }

  int dim() const { return dim_; }
  int size() const { return size_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  std::span<const double> coeffs() const { return {c_.data(), static_cast<std::size_t>(size_)}; }
  std::span<double> coeffs() { return {c_.data(), static_cast<std::size_t>(size_)}; }
  std::vector<double> to_vector() const { return {c_.begin(), c_.begin() + size_}; }

  double scalar_part() const { return c_[0]; }

  Multivector grade_part(int k) const {
    Multivector r(*this);
    const auto& t = detail::tables(dim_);
    for (int i = 0; i < size_; ++i)
      if (t.grade[i] != k) r.c_[i] = 0.0;
    return r;
  }

  double norm_sq() const {
    double s = 0.0;
    for (int i = 0; i < size_; ++i) s += c_[i] * c_[i];
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }
  bool is_zero() const {
    for (int i = 0; i < size_; ++i)
      if (c_[i] != 0.0) return false;
    return true;
  }

  Multivector conjugate() const {
    Multivector r(*this);
    const auto& t = detail::tables(dim_);
    for (int i = 0; i < size_; ++i) {
      const int k = t.grade[i];
      if (((k * (k + 1)) / 2) % 2 == 1) r.c_[i] = -r.c_[i];
    }
    return r;
  }

  Multivector& operator+=(const Multivector& o) {
    same_dim(o);
    for (int i = 0; i < size_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    same_dim(o);
    for (int i = 0; i < size_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(double s) {
    for (int i = 0; i < size_; ++i) c_[i] *= s;
    return *this;
  }
  Multivector& operator/=(double s) { return *this *= (1.0 / s); }
  // this += s * o, the inner-loop workhorse of every quadrature.
  Multivector& add_scaled(const Multivector& o, double s) {
    same_dim(o);
    for (int i = 0; i < size_; ++i) c_[i] += s * o.c_[i];
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a /= s; }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.same_dim(b);
    const auto& t = detail::tables(a.dim_);
    Multivector r(a.dim_);
    const int n = a.size_;
    for (int i = 0; i < n; ++i) {
      const double ai = a.c_[i];
      if (ai == 0.0) continue;
      const std::size_t row = static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        const double bj = b.c_[j];
        if (bj == 0.0) continue;
        r.c_[t.product[row + j]] += t.sign[row + j] * ai * bj;
      }
    }
    return r;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.size_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  void same_dim(const Multivector& o) const {
    if (o.dim_ != dim_)
      throw DimensionMismatch("incompatible Clifford algebras: Cl_" + std::to_string(dim_) +
                              " vs Cl_" + std::to_string(o.dim_));
  }

  int dim_;
  int size_;
  std::array<double, kMaxBlades> c_;
};

inline Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }
inline Multivector clifford_conjugate(const Multivector& a) { return a.conjugate(); }
inline double norm(const Multivector& a) { return a.norm(); }

// Human-readable blade label in canonical order, e.g. "e12" or "1".
inline std::string blade_label(int dim, int canonical_index) {
  const unsigned mask = detail::tables(dim).mask[canonical_index];
  if (mask == 0) return "1";
  std::string s = "e";
  for (int g = 0; g < dim; ++g)
    if (mask & (1u << g)) s += std::to_string(g + 1);
  return s;
}

// Unit 1-vector I with I^2 = -1; the imaginary unit of the slice C_I.
class UnitSliceVector {
 public:
  UnitSliceVector() = default;

  UnitSliceVector(int dim, std::span<const double> components) : dim_(dim) {
    detail::check_dim(dim);
    if (static_cast<int>(components.size()) != dim)
      throw DimensionMismatch("unit slice vector needs " + std::to_string(dim) + " components");
    double n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      v_[i] = components[i];
      n2 += v_[i] * v_[i];
    }
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
      throw ArgumentError("slice direction is not a unit vector (|I| = " + std::to_string(std::sqrt(n2)) + ")");
  }

  static UnitSliceVector normalized(int dim, std::span<const double> components) {
    double n2 = 0.0;
    for (double c : components) n2 += c * c;
    if (n2 == 0.0) throw SingularInput("cannot normalize the zero vector");
    std::array<double, kMaxDim> tmp{};
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < components.size(); ++i) tmp[i] = components[i] * inv;
    return UnitSliceVector(dim, std::span<const double>(tmp.data(), components.size()));
  }
  static UnitSliceVector normalized(int dim, std::initializer_list<double> components) {
    return normalized(dim, std::span<const double>(components.begin(), components.size()));
  }
  static UnitSliceVector basis(int dim, int i) {
    std::array<double, kMaxDim> tmp{};
    tmp[i - 1] = 1.0;
    return UnitSliceVector(dim, std::span<const double>(tmp.data(), static_cast<std::size_t>(dim)));
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return v_[i]; }
  std::span<const double> components() const { return {v_.data(), static_cast<std::size_t>(dim_)}; }
  UnitSliceVector operator-() const {
    UnitSliceVector r = *this;
    for (int i = 0; i < dim_; ++i) r.v_[i] = -r.v_[i];
    return r;
  }
  double dot(const UnitSliceVector& o) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += v_[i] * o.v_[i];
    return s;
  }
  Multivector to_multivector() const {
    Multivector r(dim_);
    for (int i = 0; i < dim_; ++i) r[i + 1] = v_[i];
    return r;
  }

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> v_{};
};

struct SliceCoordinates;

// Scalar plus 1-vector: a point x0 + x1 e1 + ... + xm em of R^{m+1}.
class Paravector {
 public:
  Paravector() = default;
  explicit Paravector(int dim) : dim_(dim) { detail::check_dim(dim); }
  Paravector(int dim, double scalar, std::span<const double> vector) : Paravector(dim) {
    if (static_cast<int>(vector.size()) != dim)
      throw DimensionMismatch("paravector needs " + std::to_string(dim) + " vector components");
    x0_ = scalar;
    std::copy(vector.begin(), vector.end(), x_.begin());
  }
  Paravector(int dim, double scalar, std::initializer_list<double> vector)
      : Paravector(dim, scalar, std::span<const double>(vector.begin(), vector.size())) {}

  // u + I v on the slice C_I.
  static Paravector from_slice(double u, double v, const UnitSliceVector& I) {
    Paravector p(I.dim());
    p.x0_ = u;
    for (int i = 0; i < I.dim(); ++i) p.x_[i] = v * I[i];
    return p;
  }
  // Lossless only when the argument has grades 0 and 1 alone.
  static Paravector from_multivector(const Multivector& a) {
    Paravector p(a.dim());
    const auto& t = detail::tables(a.dim());
    for (int i = a.dim() + 1; i < a.size(); ++i)
      if (a[i] != 0.0 && t.grade[i] > 1) throw ArgumentError("multivector has components of grade >= 2");
    p.x0_ = a[0];
    for (int i = 0; i < a.dim(); ++i) p.x_[i] = a[i + 1];
    return p;
  }

  int dim() const { return dim_; }
  double scalar() const { return x0_; }
  double& scalar() { return x0_; }
  double vector(int i) const { return x_[i]; }  // 0-based: component of e_{i+1}
  double& vector(int i) { return x_[i]; }
  std::span<const double> vector() const { return {x_.data(), static_cast<std::size_t>(dim_)}; }

  double vector_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += x_[i] * x_[i];
    return std::sqrt(s);
  }
  double norm_sq() const {
    double s = x0_ * x0_;
    for (int i = 0; i < dim_; ++i) s += x_[i] * x_[i];
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  Paravector conjugate() const {
    Paravector r = *this;
    for (int i = 0; i < dim_; ++i) r.x_[i] = -r.x_[i];
    return r;
  }

  Multivector to_multivector() const {
    Multivector r(dim_);
    r[0] = x0_;
    for (int i = 0; i < dim_; ++i) r[i + 1] = x_[i];
    return r;
  }

  friend Paravector operator+(Paravector a, const Paravector& b) {
    a.same_dim(b);
    a.x0_ += b.x0_;
    for (int i = 0; i < a.dim_; ++i) a.x_[i] += b.x_[i];
    return a;
  }
  friend Paravector operator-(Paravector a, const Paravector& b) {
    a.same_dim(b);
    a.x0_ -= b.x0_;
    for (int i = 0; i < a.dim_; ++i) a.x_[i] -= b.x_[i];
    return a;
  }
  friend Paravector operator*(Paravector a, double s) {
    a.x0_ *= s;
    for (int i = 0; i < a.dim_; ++i) a.x_[i] *= s;
    return a;
  }
  friend Paravector operator*(double s, Paravector a) { return a * s; }

 private:
  void same_dim(const Paravector& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch("paravectors from different algebras");
  }

  int dim_ = 0;
  double x0_ = 0.0;
  std::array<double, kMaxDim> x_{};
};

// x = u + I v with v = |x_vec| >= 0; I is absent on the real axis.
struct SliceCoordinates {
  double u = 0.0;
  double v = 0.0;
  std::optional<UnitSliceVector> I;
};

inline SliceCoordinates slice_coordinates(const Paravector& p) {
  SliceCoordinates s;
  s.u = p.scalar();
  s.v = p.vector_norm();
  if (s.v > 0.0) s.I = UnitSliceVector::normalized(p.dim(), p.vector());
  return s;
}

inline Paravector paravector_inverse(const Paravector& p) {
  const double n2 = p.norm_sq();
  if (n2 == 0.0) throw SingularInput("inverse of the zero paravector");
  return p.conjugate() * (1.0 / n2);
}

inline Multivector operator*(const Paravector& a, const Paravector& b) {
  return a.to_multivector() * b.to_multivector();
}

}  // namespace slicecalc
