#include "syzygy/divisors.hpp"

#include <algorithm>
#include <numeric>

namespace syzygy {

namespace mp = boost::multiprecision;

namespace {

void require_same_size(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + std::to_string(a) +
                                                  " coefficients vs " + std::to_string(b));
  }
}

void require_toric(const SurfaceModel& X, std::string_view what) {
  if (!X.is_toric()) throw Error(ErrorKind::NotToric, std::string(what) + " needs a toric surface");
}

Integer floor_div(Integer a, Integer b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer ceil_div(Integer a, Integer b) { return -floor_div(-a, b); }

}  // namespace

// --- TDivisor / QDivisor -------------------------------------------------

TDivisor TDivisor::unit(std::size_t n, std::size_t i) {
  TDivisor d(n);
  d.coeffs_.at(i) = 1;
  return d;
}

bool TDivisor::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Integer c) { return c == 0; });
}

TDivisor& TDivisor::operator+=(const TDivisor& other) {
  require_same_size(size(), other.size(), "divisor sum");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TDivisor& TDivisor::operator-=(const TDivisor& other) {
  require_same_size(size(), other.size(), "divisor difference");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TDivisor operator-(TDivisor a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

TDivisor operator*(Integer k, TDivisor a) {
  for (auto& c : a.coeffs_) c *= k;
  return a;
}

QDivisor::QDivisor(const TDivisor& d) : coeffs_(d.size()) {
  for (std::size_t i = 0; i < d.size(); ++i) coeffs_[i] = Rational(d[i]);
}

TDivisor QDivisor::primitive_integral() const {
  BigInt lcm = 1;
  for (const auto& c : coeffs_) lcm = mp::lcm(lcm, mp::denominator(c));
  std::vector<BigInt> scaled;
  scaled.reserve(size());
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    BigInt v = mp::numerator(c) * (lcm / mp::denominator(c));
    g = mp::gcd(g, mp::abs(v));
    scaled.push_back(std::move(v));
  }
  TDivisor out(size());
  if (g == 0) return out;
  for (std::size_t i = 0; i < size(); ++i) out[i] = to_integer(scaled[i] / g);
  return out;
}

QDivisor& QDivisor::operator+=(const QDivisor& other) {
  require_same_size(size(), other.size(), "divisor sum");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

QDivisor& QDivisor::operator-=(const QDivisor& other) {
  require_same_size(size(), other.size(), "divisor difference");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

QDivisor operator*(const Rational& k, QDivisor a) {
  for (auto& c : a.coeffs_) c *= k;
  return a;
}

std::size_t matrix_rank(const RationalMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && rows[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

// --- SurfaceModel ---------------------------------------------------------

SurfaceModel SurfaceModel::toric(Fan fan) {
  SurfaceModel X;
  const std::size_t n = fan.size();
  const IntMatrix m = intersection_matrix(fan);
  X.labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) X.labels_.push_back("D" + std::to_string(i));
  X.pairing_ = RationalMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) X.pairing_(i, j) = Rational(m(i, j));
  X.int_pairing_ = m;
  X.canonical_ = TDivisor(canonical_coefficients(fan));
  X.effective_.resize(n);
  std::iota(X.effective_.begin(), X.effective_.end(), std::size_t{0});
  X.picard_rank_ = n - 2;
  X.fan_ = std::move(fan);
  return X;
}

SurfaceModel SurfaceModel::abstract(std::vector<std::string> labels, RationalMatrix pairing,
                                    TDivisor canonical,
                                    std::vector<std::size_t> effective_generators) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "abstract surface without labels");
  if (pairing.size() != n) {
    throw Error(ErrorKind::InvalidInput, "pairing is " + std::to_string(pairing.size()) + "x" +
                                             std::to_string(pairing.size()) + " but there are " +
                                             std::to_string(n) + " labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pairing(i, j) != pairing(j, i)) {
        throw Error(ErrorKind::InvalidInput, "pairing not symmetric at (" + std::to_string(i) +
                                                 "," + std::to_string(j) + ")", i);
      }
    }
  }
  if (canonical.size() != n) {
    throw Error(ErrorKind::InvalidInput, "canonical class has " + std::to_string(canonical.size()) +
                                             " coefficients, expected " + std::to_string(n));
  }
  if (effective_generators.empty()) {
    throw Error(ErrorKind::InvalidInput, "no effective-cone generators given");
  }
  for (std::size_t g : effective_generators) {
    if (g >= n) {
      throw Error(ErrorKind::InvalidInput, "effective generator index " + std::to_string(g) +
                                               " out of range", g);
    }
  }

  SurfaceModel X;
  X.labels_ = std::move(labels);
  bool integral = true;
  for (std::size_t i = 0; i < n && integral; ++i)
    for (std::size_t j = 0; j < n && integral; ++j)
      integral = mp::denominator(pairing(i, j)) == 1;
  if (integral) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = to_integer(mp::numerator(pairing(i, j)));
    X.int_pairing_ = std::move(m);
  }
  X.picard_rank_ = matrix_rank(pairing);
  X.pairing_ = std::move(pairing);
  X.canonical_ = std::move(canonical);
  X.effective_ = std::move(effective_generators);
  return X;
}

const Fan& SurfaceModel::fan() const {
  if (!fan_) throw Error(ErrorKind::NotToric, "abstract surface has no fan");
  return *fan_;
}

// --- intersection theory --------------------------------------------------

Rational intersect(const SurfaceModel& X, const QDivisor& a, const QDivisor& b) {
  const std::size_t n = X.generator_count();
  require_same_size(a.size(), n, "intersect");
  require_same_size(b.size(), n, "intersect");
  Rational sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] != 0 && X.pairing(i, j) != 0) row += X.pairing(i, j) * b[j];
    }
    sum += a[i] * row;
  }
  return sum;
}

Rational intersect(const SurfaceModel& X, const TDivisor& a, const TDivisor& b) {
  const std::size_t n = X.generator_count();
  require_same_size(a.size(), n, "intersect");
  require_same_size(b.size(), n, "intersect");
  if (const auto& m = X.integer_pairing()) {
    BigInt sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      Integer row = 0;
      for (std::size_t j = 0; j < n; ++j) row += (*m)(i, j) * b[j];
      sum += BigInt(a[i]) * row;
    }
    return Rational(sum);
  }
  return intersect(X, QDivisor(a), QDivisor(b));
}

bool linearly_equivalent(const SurfaceModel& X, const TDivisor& a, const TDivisor& b) {
  require_toric(X, "linear equivalence");
  const TDivisor v = a - b;
  require_same_size(v.size(), X.generator_count(), "linear equivalence");
  const Fan& fan = X.fan();
  const Ray& u0 = fan.ray(0);
  const Ray& u1 = fan.ray(1);
  // det(u0, u1) = 1, so the character is determined by the first two entries.
  const Integer mx = u1.y * v[0] - u0.y * v[1];
  const Integer my = -u1.x * v[0] + u0.x * v[1];
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (mx * fan.ray(i).x + my * fan.ray(i).y != v[i]) return false;
  }
  return true;
}

namespace {

// D.C for the generator C = E_g.
Rational pair_with_generator(const SurfaceModel& X, const QDivisor& d, std::size_t g) {
  Rational sum = 0;
  for (std::size_t j = 0; j < X.generator_count(); ++j) {
    if (d[j] != 0) sum += d[j] * X.pairing(j, g);
  }
  return sum;
}

}  // namespace

bool is_nef(const SurfaceModel& X, const QDivisor& d) {
  require_same_size(d.size(), X.generator_count(), "is_nef");
  return std::all_of(X.effective_generators().begin(), X.effective_generators().end(),
                     [&](std::size_t g) { return pair_with_generator(X, d, g) >= 0; });
}

bool is_ample(const SurfaceModel& X, const QDivisor& d) {
  require_same_size(d.size(), X.generator_count(), "is_ample");
  return std::all_of(X.effective_generators().begin(), X.effective_generators().end(),
                     [&](std::size_t g) { return pair_with_generator(X, d, g) > 0; });
}

namespace {

// Sign pattern of D.C over the generators, using the integer pairing when
// there is one. Returns {all >= 0, all > 0}.
std::pair<bool, bool> generator_signs(const SurfaceModel& X, const TDivisor& d) {
  require_same_size(d.size(), X.generator_count(), "nef test");
  const auto& m = X.integer_pairing();
  if (!m) {
    const QDivisor q(d);
    return {is_nef(X, q), is_ample(X, q)};
  }
  bool nef = true, ample = true;
  for (std::size_t g : X.effective_generators()) {
    Integer v = 0;
    for (std::size_t j = 0; j < d.size(); ++j) v += d[j] * (*m)(j, g);
    nef = nef && v >= 0;
    ample = ample && v > 0;
  }
  return {nef, ample};
}

}  // namespace

bool is_nef(const SurfaceModel& X, const TDivisor& d) { return generator_signs(X, d).first; }

bool is_ample(const SurfaceModel& X, const TDivisor& d) { return generator_signs(X, d).second; }

// --- polytopes --------------------------------------------------------------

bool Polytope::contains(const Rational& x, const Rational& y) const {
  return std::all_of(halfplanes.begin(), halfplanes.end(), [&](const HalfPlane& h) {
    return h.nx * x + h.ny * y >= h.bound;
  });
}

namespace {

// Same vertex enumeration with 64-bit arithmetic, for integral bounds.
void integral_vertices(Polytope& p) {
  const auto& hs = p.halfplanes;
  std::vector<Integer> b;
  for (const auto& h : hs) b.push_back(to_integer(mp::numerator(h.bound)));
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      Integer dd = hs[i].nx * hs[j].ny - hs[i].ny * hs[j].nx;
      if (dd == 0) continue;
      Integer px = b[i] * hs[j].ny - b[j] * hs[i].ny;
      Integer py = hs[i].nx * b[j] - hs[j].nx * b[i];
      if (dd < 0) {
        dd = -dd;
        px = -px;
        py = -py;
      }
      bool feasible = true;
      for (std::size_t k = 0; k < hs.size() && feasible; ++k) {
        feasible = hs[k].nx * px + hs[k].ny * py >= b[k] * dd;
      }
      if (!feasible) continue;
      Point2 v{Rational(BigInt(px), BigInt(dd)), Rational(BigInt(py), BigInt(dd))};
      if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end()) {
        p.vertices.push_back(std::move(v));
      }
    }
  }
}

}  // namespace

Polytope make_polytope(std::vector<HalfPlane> halfplanes) {
  Polytope p;
  p.halfplanes = std::move(halfplanes);
  const auto& hs = p.halfplanes;
  const bool integral = std::all_of(hs.begin(), hs.end(), [](const HalfPlane& h) {
    return mp::denominator(h.bound) == 1;
  });
  if (integral) integral_vertices(p);
  for (std::size_t i = 0; i < hs.size() && !integral; ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Integer dd = hs[i].nx * hs[j].ny - hs[i].ny * hs[j].nx;
      if (dd == 0) continue;
      Point2 v{(hs[i].bound * hs[j].ny - hs[j].bound * hs[i].ny) / dd,
               (hs[i].nx * hs[j].bound - hs[j].nx * hs[i].bound) / dd};
      if (!p.contains(v.x, v.y)) continue;
      if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end()) {
        p.vertices.push_back(std::move(v));
      }
    }
  }
  if (p.vertices.size() > 2) {
    Rational cx = 0, cy = 0;
    for (const auto& v : p.vertices) {
      cx += v.x;
      cy += v.y;
    }
    cx /= p.vertices.size();
    cy /= p.vertices.size();
    auto half = [&](const Point2& v) {
      const Rational dy = v.y - cy;
      return (dy > 0 || (dy == 0 && v.x > cx)) ? 0 : 1;
    };
    std::sort(p.vertices.begin(), p.vertices.end(), [&](const Point2& a, const Point2& b) {
      const int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return (a.x - cx) * (b.y - cy) - (a.y - cy) * (b.x - cx) > 0;
    });
  }
  return p;
}

Polytope polytope_of(const SurfaceModel& X, const TDivisor& d) {
  require_toric(X, "section polytope");
  require_same_size(d.size(), X.generator_count(), "section polytope");
  const Fan& fan = X.fan();
  std::vector<HalfPlane> hs;
  hs.reserve(fan.size());
  for (std::size_t i = 0; i < fan.size(); ++i) {
    hs.push_back({fan.ray(i).x, fan.ray(i).y, Rational(-d[i])});
  }
  return make_polytope(std::move(hs));
}

namespace {

struct ColumnRange {
  Integer lo;
  Integer hi;
};

// Visits every integer column of the bounding box that meets the polygon,
// with its integer y-range.
template <class Visit>
void scan_columns(const Polytope& p, Visit&& visit) {
  if (p.empty()) return;
  Rational xmin = p.vertices.front().x, xmax = xmin;
  Rational ymin = p.vertices.front().y, ymax = ymin;
  for (const auto& v : p.vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const Integer x0 = to_integer(ceil(xmin));
  const Integer x1 = to_integer(floor(xmax));
  const Integer y0 = to_integer(ceil(ymin));
  const Integer y1 = to_integer(floor(ymax));

  const bool integral = std::all_of(p.halfplanes.begin(), p.halfplanes.end(), [](const HalfPlane& h) {
    return mp::denominator(h.bound) == 1;
  });
  std::vector<Integer> ibound;
  if (integral) {
    for (const auto& h : p.halfplanes) ibound.push_back(to_integer(mp::numerator(h.bound)));
  }

  for (Integer x = x0; x <= x1; ++x) {
    Integer lo = y0, hi = y1;
    bool feasible = true;
    for (std::size_t k = 0; k < p.halfplanes.size() && feasible; ++k) {
      const HalfPlane& h = p.halfplanes[k];
      if (integral) {
        const Integer rhs = ibound[k] - h.nx * x;  // ny * y >= rhs
        if (h.ny > 0) {
          lo = std::max(lo, ceil_div(rhs, h.ny));
        } else if (h.ny < 0) {
          hi = std::min(hi, floor_div(rhs, h.ny));
        } else {
          feasible = rhs <= 0;
        }
      } else {
        const Rational rhs = h.bound - Rational(h.nx * x);
        if (h.ny > 0) {
          lo = std::max(lo, to_integer(ceil(rhs / h.ny)));
        } else if (h.ny < 0) {
          hi = std::min(hi, to_integer(floor(rhs / h.ny)));
        } else {
          feasible = rhs <= 0;
        }
      }
    }
    if (feasible && lo <= hi) visit(x, ColumnRange{lo, hi});
  }
}

}  // namespace

Integer lattice_point_count(const Polytope& p) {
  Integer count = 0;
  scan_columns(p, [&](Integer, ColumnRange r) { count += r.hi - r.lo + 1; });
  return count;
}

std::vector<std::pair<Integer, Integer>> lattice_points(const Polytope& p) {
  std::vector<std::pair<Integer, Integer>> pts;
  scan_columns(p, [&](Integer x, ColumnRange r) {
    for (Integer y = r.lo; y <= r.hi; ++y) pts.emplace_back(x, y);
  });
  return pts;
}

namespace {

// Lattice count of { m : <m, u_i> >= -a_i } in 64-bit arithmetic. The
// bounding box comes from the feasible pairwise intersections of the
// boundary lines, without materializing rational vertices.
Integer integral_count(const Fan& fan, const TDivisor& d) {
  const std::size_t n = fan.size();
  bool any = false;
  Integer x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Ray& ui = fan.ray(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Ray& uj = fan.ray(j);
      Integer dd = ui.x * uj.y - ui.y * uj.x;
      if (dd == 0) continue;
      Integer px = -d[i] * uj.y + d[j] * ui.y;
      Integer py = -ui.x * d[j] + uj.x * d[i];
      if (dd < 0) {
        dd = -dd;
        px = -px;
        py = -py;
      }
      bool feasible = true;
      for (std::size_t k = 0; k < n && feasible; ++k) {
        feasible = fan.ray(k).x * px + fan.ray(k).y * py >= -d[k] * dd;
      }
      if (!feasible) continue;
      const Integer cx = ceil_div(px, dd), fx = floor_div(px, dd);
      const Integer cy = ceil_div(py, dd), fy = floor_div(py, dd);
      if (!any) {
        x0 = cx, x1 = fx, y0 = cy, y1 = fy;
        any = true;
      } else {
        x0 = std::min(x0, cx), x1 = std::max(x1, fx);
        y0 = std::min(y0, cy), y1 = std::max(y1, fy);
      }
    }
  }
  if (!any) return 0;
  Integer count = 0;
  for (Integer x = x0; x <= x1; ++x) {
    Integer lo = y0, hi = y1;
    bool feasible = true;
    for (std::size_t k = 0; k < n && feasible; ++k) {
      const Ray& u = fan.ray(k);
      const Integer rhs = -d[k] - u.x * x;
      if (u.y > 0) {
        lo = std::max(lo, ceil_div(rhs, u.y));
      } else if (u.y < 0) {
        hi = std::min(hi, floor_div(rhs, u.y));
      } else {
        feasible = rhs <= 0;
      }
    }
    if (feasible && lo <= hi) count += hi - lo + 1;
  }
  return count;
}

}  // namespace

Integer h0(const SurfaceModel& X, const TDivisor& d) {
  require_toric(X, "lattice-point h0");
  require_same_size(d.size(), X.generator_count(), "section polytope");
  return integral_count(X.fan(), d);
}

Rational chi_rr(const SurfaceModel& X, const QDivisor& d) {
  const QDivisor k(X.canonical());
  return 1 + (intersect(X, d, d) - intersect(X, d, k)) / 2;
}

Rational chi_rr(const SurfaceModel& X, const TDivisor& d) {
  return 1 + (intersect(X, d, d) - intersect(X, d, X.canonical())) / 2;
}

bool is_effective(const SurfaceModel& X, const TDivisor& d) { return h0(X, d) > 0; }

Rational nef_threshold(const SurfaceModel& X, const QDivisor& d, const TDivisor& e) {
  require_same_size(e.size(), X.generator_count(), "nef threshold");
  if (!is_nef(X, d)) throw Error(ErrorKind::NotNef, "nef threshold of a non-nef divisor");
  const QDivisor eq(e);
  std::optional<Rational> best;
  for (std::size_t g : X.effective_generators()) {
    const Rational ec = pair_with_generator(X, eq, g);
    if (ec <= 0) continue;
    const Rational r = pair_with_generator(X, d, g) / ec;
    if (!best || r < *best) best = r;
  }
  if (!best) {
    throw Error(ErrorKind::Unbounded, "no effective generator meets E positively");
  }
  return *best;
}

std::vector<std::size_t> negative_generators(const SurfaceModel& X) {
  std::vector<std::size_t> out;
  for (std::size_t g : X.effective_generators()) {
    if (X.pairing(g, g) < 0) out.push_back(g);
  }
  return out;
}

HypothesisReport check_hypotheses(const SurfaceModel& X) {
  HypothesisReport report;
  report.picard_rank = X.picard_rank();
  std::vector<std::size_t> gens;
  for (std::size_t g : X.effective_generators()) {
    const std::string& name = X.labels()[g];
    if (X.pairing(g, g) < 0) {
      gens.push_back(g);
    } else if (X.is_toric()) {
      // Prime divisors with D^2 >= 0 are not extremal once the rank is >= 3;
      // they are dropped from the generator list, not treated as violations.
      report.diagnostics.push_back("excluded " + name + ": self-intersection " +
                                   to_string(X.pairing(g, g)) + " >= 0");
    } else {
      report.diagnostics.push_back("generator " + name + " has self-intersection " +
                                   to_string(X.pairing(g, g)) + " >= 0");
    }
  }
  bool ok = X.is_toric() || gens.size() == X.effective_generators().size();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const Rational& v = X.pairing(gens[a], gens[b]);
      if (v != 0 && v != 1) {
        ok = false;
        report.diagnostics.push_back("generators " + X.labels()[gens[a]] + " and " +
                                     X.labels()[gens[b]] + " meet with multiplicity " +
                                     to_string(v));
      }
    }
  }
  if (gens.size() < 3) {
    ok = false;
    report.diagnostics.push_back("only " + std::to_string(gens.size()) +
                                 " negative generators, need at least 3");
  }
  if (report.picard_rank < 3) {
    ok = false;
    report.diagnostics.push_back("Picard rank " + std::to_string(report.picard_rank) +
                                 " is below 3");
  }
  report.ok = ok;
  return report;
}

}  // namespace syzygy
