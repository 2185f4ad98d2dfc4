#include "syzygy/fan.hpp"

#include <algorithm>
#include <numeric>

#include "syzygy/error.hpp"

namespace syzygy {

namespace {

// 0 for angles in [0, pi), 1 for [pi, 2 pi).
int half(const Ray& r) { return (r.y > 0 || (r.y == 0 && r.x > 0)) ? 0 : 1; }

bool angle_less(const Ray& a, const Ray& b) {
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

std::string describe(const Ray& r) {
  return "(" + std::to_string(r.x) + "," + std::to_string(r.y) + ")";
}

}  // namespace

std::size_t Fan::fan_index(std::size_t input_position) const {
  for (std::size_t i = 0; i < input_index_.size(); ++i) {
    if (input_index_[i] == input_position) return i;
  }
  throw Error(ErrorKind::InvalidInput, "no ray with input position " + std::to_string(input_position));
}

Fan validate_fan(std::span<const Ray> rays) {
  if (rays.size() < 3) {
    throw Error(ErrorKind::NotComplete, "a complete fan needs at least 3 rays, got " +
                                            std::to_string(rays.size()));
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Ray& r = rays[i];
    if (std::gcd(r.x, r.y) != 1) {
      throw Error(ErrorKind::NonPrimitiveRay, "ray " + std::to_string(i) + " " + describe(r) +
                                                  " is not primitive", i);
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (rays[j] == r) {
        throw Error(ErrorKind::RepeatedRay, "ray " + std::to_string(i) + " " + describe(r) +
                                                " repeats ray " + std::to_string(j), i);
      }
    }
  }

  std::vector<std::size_t> order(rays.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return angle_less(rays[a], rays[b]); });
  const auto first = std::find(order.begin(), order.end(), std::size_t{0});
  std::rotate(order.begin(), first, order.end());

  Fan fan;
  fan.input_index_ = order;
  fan.rays_.reserve(order.size());
  for (std::size_t idx : order) fan.rays_.push_back(rays[idx]);

  const std::size_t n = fan.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Ray& a = fan.rays_[i];
    const Ray& b = fan.rays_[fan.next(i)];
    const Integer d = det(a, b);
    const std::size_t at = fan.input_index_[i];
    if (d <= 0) {
      throw Error(ErrorKind::NotComplete, "rays " + describe(a) + " and " + describe(b) +
                                              " leave a gap of at least pi", at);
    }
    if (d != 1) {
      throw Error(ErrorKind::NotSmooth, "cone spanned by " + describe(a) + " and " + describe(b) +
                                            " has determinant " + std::to_string(d), at);
    }
  }
  return fan;
}

SelfIntersectionVector self_intersections(const Fan& fan) {
  SelfIntersectionVector out;
  out.c.resize(fan.size());
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const Ray& u = fan.ray(i);
    const Ray& p = fan.ray(fan.prev(i));
    const Ray& q = fan.ray(fan.next(i));
    const Ray w{p.x + q.x, p.y + q.y};
    const Integer c = u.x != 0 ? w.x / u.x : w.y / u.y;
    if (w.x != c * u.x || w.y != c * u.y) {
      throw Error(ErrorKind::Internal, "wall relation fails at ray " + std::to_string(i), i);
    }
    out.c[i] = c;
  }
  return out;
}

IntMatrix intersection_matrix(const Fan& fan) {
  const std::size_t n = fan.size();
  const auto c = self_intersections(fan);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = -c.c[i];
    m(i, fan.next(i)) = 1;
    m(fan.next(i), i) = 1;
  }
  return m;
}

std::vector<Integer> canonical_coefficients(const Fan& fan) {
  return std::vector<Integer>(fan.size(), -1);
}

std::string to_string(const SurfaceType& type) {
  switch (type.kind) {
    case SurfaceType::Kind::ProjectivePlane: return "ProjectivePlane";
    case SurfaceType::Kind::Hirzebruch: return "Hirzebruch(" + std::to_string(type.ell) + ")";
    case SurfaceType::Kind::Other: return "Other(" + std::to_string(type.picard_rank) + ")";
  }
  return "Other";
}

SurfaceType recognize(const Fan& fan) {
  const auto n = static_cast<Integer>(fan.size());
  if (n == 3) return {SurfaceType::Kind::ProjectivePlane, 0, 1};
  if (n == 4) return {SurfaceType::Kind::Hirzebruch, hirzebruch_frame(fan).ell, 2};
  return {SurfaceType::Kind::Other, 0, n - 2};
}

HirzebruchFrame hirzebruch_frame(const Fan& fan) {
  if (fan.size() != 4) {
    throw Error(ErrorKind::PreconditionFailed,
                "Hirzebruch frame needs 4 rays, got " + std::to_string(fan.size()));
  }
  const auto c = self_intersections(fan).c;
  const auto top = std::max_element(c.begin(), c.end());
  HirzebruchFrame frame;
  frame.ell = *top;
  frame.section = static_cast<std::size_t>(top - c.begin());
  frame.fiber = fan.next(frame.section);
  // Up to rotation c = (l, 0, -l, 0) starting at the section.
  const std::size_t s = frame.section;
  if (c[fan.next(s)] != 0 || c[fan.prev(s)] != 0 || c[fan.next(fan.next(s))] != -frame.ell) {
    throw Error(ErrorKind::Internal, "4-ray fan with unexpected wall relations");
  }
  return frame;
}

Fan blow_down(const Fan& fan, std::size_t i) {
  if (i >= fan.size()) {
    throw Error(ErrorKind::InvalidInput, "ray index " + std::to_string(i) + " out of range", i);
  }
  const auto c = self_intersections(fan);
  if (c.c[i] != 1) {
    throw Error(ErrorKind::NotMinusOneCurve,
                "ray " + std::to_string(i) + " has self-intersection " +
                    std::to_string(c.self_intersection(i)), i);
  }
  std::vector<Ray> rest;
  rest.reserve(fan.size() - 1);
  for (std::size_t j = 0; j < fan.size(); ++j) {
    if (j != i) rest.push_back(fan.ray(j));
  }
  return validate_fan(rest);
}

std::vector<BlowDownStep> blow_down_to_minimal(const Fan& fan, Fan* minimal) {
  std::vector<BlowDownStep> steps;
  Fan current = fan;
  while (current.size() > 4) {
    const auto c = self_intersections(current).c;
    const auto it = std::find(c.begin(), c.end(), Integer{1});
    if (it == c.end()) {
      throw Error(ErrorKind::Internal, "fan with " + std::to_string(current.size()) +
                                           " rays has no (-1)-curve");
    }
    const auto i = static_cast<std::size_t>(it - c.begin());
    steps.push_back({i, current.ray(i)});
    current = blow_down(current, i);
  }
  if (minimal != nullptr) *minimal = current;
  return steps;
}

}  // namespace syzygy
