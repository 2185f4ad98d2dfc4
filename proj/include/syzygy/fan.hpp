#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "syzygy/rational.hpp"

namespace syzygy {

/// Primitive vector in the rank-2 lattice N.
struct Ray {
  Integer x = 0;
  Integer y = 0;

  friend bool operator==(const Ray&, const Ray&) = default;
};

inline Integer det(const Ray& a, const Ray& b) { return a.x * b.y - a.y * b.x; }

/// Dense square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  Integer operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> data_;
};

/// Smooth complete fan in the plane. Rays are stored in counterclockwise
/// order, rotated so that the first input ray stays at position 0; an input
/// that is already counterclockwise keeps its order.
class Fan {
 public:
  std::size_t size() const noexcept { return rays_.size(); }
  const Ray& ray(std::size_t i) const { return rays_[i]; }
  std::span<const Ray> rays() const noexcept { return rays_; }

  /// Position of ray i in the list handed to validate_fan.
  std::size_t input_index(std::size_t i) const { return input_index_[i]; }
  /// Ray position for the given input position.
  std::size_t fan_index(std::size_t input_position) const;

  std::size_t next(std::size_t i) const { return (i + 1) % size(); }
  std::size_t prev(std::size_t i) const { return (i + size() - 1) % size(); }

  friend Fan validate_fan(std::span<const Ray>);

 private:
  std::vector<Ray> rays_;
  std::vector<std::size_t> input_index_;
};

/// Checks primitivity, distinctness, completeness and smoothness, and sorts
/// the rays counterclockwise using exact quadrant/cross-product comparisons.
/// Error indices refer to the input order.
Fan validate_fan(std::span<const Ray> rays);

/// The integers c_i of the wall relations u_{i-1} + u_{i+1} = c_i u_i.
struct SelfIntersectionVector {
  std::vector<Integer> c;

  /// D_i . D_i
  Integer self_intersection(std::size_t i) const { return -c[i]; }
  std::size_t size() const noexcept { return c.size(); }
};

SelfIntersectionVector self_intersections(const Fan& fan);

/// D_i . D_j on the prime torus-invariant divisors.
IntMatrix intersection_matrix(const Fan& fan);

/// Coefficients of K = -sum D_i.
std::vector<Integer> canonical_coefficients(const Fan& fan);

struct SurfaceType {
  enum class Kind { ProjectivePlane, Hirzebruch, Other };

  Kind kind = Kind::Other;
  Integer ell = 0;          // Hirzebruch only; 0 means P1 x P1
  Integer picard_rank = 0;  // n - 2

  friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
};

std::string to_string(const SurfaceType& type);

SurfaceType recognize(const Fan& fan);

/// For a Hirzebruch fan: position of the negative section S (c = ell) and of
/// a fiber F adjacent to it. For ell = 0 the section is ray 0.
struct HirzebruchFrame {
  Integer ell = 0;
  std::size_t section = 0;
  std::size_t fiber = 1;
};

HirzebruchFrame hirzebruch_frame(const Fan& fan);

/// Removes ray i, which must be a (-1)-curve.
Fan blow_down(const Fan& fan, std::size_t i);

struct BlowDownStep {
  std::size_t removed = 0;  // index in the fan before the step
  Ray ray;
};

/// Blows down (-1)-curves (lowest index first) until at most four rays remain.
/// `minimal` receives the final fan.
std::vector<BlowDownStep> blow_down_to_minimal(const Fan& fan, Fan* minimal = nullptr);

}  // namespace syzygy
