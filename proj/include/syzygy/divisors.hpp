#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syzygy/error.hpp"
#include "syzygy/fan.hpp"
#include "syzygy/rational.hpp"

namespace syzygy {

/// Integral divisor: one coefficient per generator of the ambient surface
/// (prime torus-invariant divisors, or the labels of an abstract surface).
class TDivisor {
 public:
  TDivisor() = default;
  explicit TDivisor(std::size_t n) : coeffs_(n, 0) {}
  explicit TDivisor(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {}
  TDivisor(std::initializer_list<Integer> coeffs) : coeffs_(coeffs) {}

  static TDivisor unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return coeffs_.size(); }
  Integer operator[](std::size_t i) const { return coeffs_[i]; }
  Integer& operator[](std::size_t i) { return coeffs_[i]; }
  std::span<const Integer> coeffs() const noexcept { return coeffs_; }
  bool is_zero() const;

  TDivisor& operator+=(const TDivisor& other);
  TDivisor& operator-=(const TDivisor& other);
  friend TDivisor operator+(TDivisor a, const TDivisor& b) { return a += b; }
  friend TDivisor operator-(TDivisor a, const TDivisor& b) { return a -= b; }
  friend TDivisor operator-(TDivisor a);
  friend TDivisor operator*(Integer k, TDivisor a);

  friend bool operator==(const TDivisor&, const TDivisor&) = default;

 private:
  std::vector<Integer> coeffs_;
};

/// Rational divisor, used for polarizations such as D - tE and A + eps E.
class QDivisor {
 public:
  QDivisor() = default;
  explicit QDivisor(std::size_t n) : coeffs_(n) {}
  explicit QDivisor(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
  QDivisor(const TDivisor& d);  // NOLINT(google-explicit-constructor)

  std::size_t size() const noexcept { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  /// Smallest positive integral multiple with coprime coefficients.
  TDivisor primitive_integral() const;

  QDivisor& operator+=(const QDivisor& other);
  QDivisor& operator-=(const QDivisor& other);
  friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
  friend QDivisor operator-(QDivisor a, const QDivisor& b) { return a -= b; }
  friend QDivisor operator*(const Rational& k, QDivisor a);

  friend bool operator==(const QDivisor&, const QDivisor&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Square rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

std::size_t matrix_rank(const RationalMatrix& m);

/// A surface seen through its intersection theory: either a smooth complete
/// toric surface, or abstract intersection data on a set of labelled curve
/// classes (for example the 27 lines of a cubic surface).
class SurfaceModel {
 public:
  static SurfaceModel toric(Fan fan);
  /// Throws InvalidInput on an asymmetric or mis-sized pairing, a canonical
  /// class of the wrong length, or an out-of-range generator index.
  static SurfaceModel abstract(std::vector<std::string> labels, RationalMatrix pairing,
                               TDivisor canonical, std::vector<std::size_t> effective_generators);

  bool is_toric() const noexcept { return fan_.has_value(); }
  /// Throws NotToric in abstract mode.
  const Fan& fan() const;

  std::size_t generator_count() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Rational& pairing(std::size_t i, std::size_t j) const { return pairing_(i, j); }
  const RationalMatrix& pairing_matrix() const noexcept { return pairing_; }
  const TDivisor& canonical() const noexcept { return canonical_; }
  std::span<const std::size_t> effective_generators() const noexcept { return effective_; }
  TDivisor generator(std::size_t i) const { return TDivisor::unit(generator_count(), i); }

  /// Integer pairing entries, present when every entry is integral.
  const std::optional<IntMatrix>& integer_pairing() const noexcept { return int_pairing_; }

  /// Rank of the lattice spanned by the generators modulo numerical equivalence.
  std::size_t picard_rank() const noexcept { return picard_rank_; }

 private:
  SurfaceModel() = default;

  std::optional<Fan> fan_;
  std::vector<std::string> labels_;
  RationalMatrix pairing_;
  std::optional<IntMatrix> int_pairing_;
  TDivisor canonical_;
  std::vector<std::size_t> effective_;
  std::size_t picard_rank_ = 0;
};

// Intersection theory.

Rational intersect(const SurfaceModel& X, const QDivisor& a, const QDivisor& b);
Rational intersect(const SurfaceModel& X, const TDivisor& a, const TDivisor& b);

/// Toric mode only: D1 - D2 is the divisor of a character.
bool linearly_equivalent(const SurfaceModel& X, const TDivisor& a, const TDivisor& b);

/// Nef/ample against the effective-cone generators (every prime divisor in
/// toric mode).
bool is_nef(const SurfaceModel& X, const QDivisor& d);
bool is_ample(const SurfaceModel& X, const QDivisor& d);
bool is_nef(const SurfaceModel& X, const TDivisor& d);
bool is_ample(const SurfaceModel& X, const TDivisor& d);

// Section polytopes and h0.

struct Point2 {
  Rational x;
  Rational y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// { m : nx*m.x + ny*m.y >= bound }
struct HalfPlane {
  Integer nx = 0;
  Integer ny = 0;
  Rational bound;
};

struct Polytope {
  std::vector<HalfPlane> halfplanes;
  std::vector<Point2> vertices;  // counterclockwise, empty if infeasible

  bool empty() const noexcept { return vertices.empty(); }
  bool contains(const Rational& x, const Rational& y) const;
};

/// Builds the polygon from its half-planes by exact pairwise intersection of
/// the boundary lines. Requires the half-planes to cut out a bounded region.
Polytope make_polytope(std::vector<HalfPlane> halfplanes);

/// P_D = { m : <m, u_i> >= -a_i }.
Polytope polytope_of(const SurfaceModel& X, const TDivisor& d);

/// Lattice points of a bounded polygon, scanned column by column over the
/// vertex bounding box.
Integer lattice_point_count(const Polytope& p);
std::vector<std::pair<Integer, Integer>> lattice_points(const Polytope& p);

/// Exact h0 by lattice-point count (toric mode).
Integer h0(const SurfaceModel& X, const TDivisor& d);

/// 1 + (D^2 - D.K)/2
Rational chi_rr(const SurfaceModel& X, const QDivisor& d);
Rational chi_rr(const SurfaceModel& X, const TDivisor& d);

/// Toric mode: h0 > 0.
bool is_effective(const SurfaceModel& X, const TDivisor& d);

/// t = min over generators C with E.C > 0 of (D.C)/(E.C): the largest t with
/// D - tE nef. Throws NotNef if D is not nef, Unbounded if no generator
/// meets E positively.
Rational nef_threshold(const SurfaceModel& X, const QDivisor& d, const TDivisor& e);

struct HypothesisReport {
  bool ok = false;
  std::size_t picard_rank = 0;
  std::vector<std::string> diagnostics;
};

/// For abstract surfaces: at least three generators, Picard rank >= 3,
/// E_i.E_j in {0, 1} for i != j and E_i^2 < 0. Every violation is listed.
HypothesisReport check_hypotheses(const SurfaceModel& X);

/// Effective-cone generators with negative self-intersection.
std::vector<std::size_t> negative_generators(const SurfaceModel& X);

}  // namespace syzygy
