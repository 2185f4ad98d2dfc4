#include "syzygy/stability.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace syzygy {

namespace mp = boost::multiprecision;

std::string_view to_string(AsymptoticKind kind) {
  switch (kind) {
    case AsymptoticKind::UnstableEventually: return "UnstableEventually";
    case AsymptoticKind::UnstableBoundary: return "UnstableBoundary";
    case AsymptoticKind::StablePossible: return "StablePossible";
  }
  return "StablePossible";
}

std::string_view to_string(RegionVerdict verdict) {
  return verdict == RegionVerdict::UnstableForLargeD ? "UnstableForLargeD" : "NotCovered";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::NotSemistable: return "NotSemistable";
    case Verdict::NotStable: return "NotStable";
    case Verdict::NoDestabilizerFound: return "NoDestabilizerFound";
  }
  return "NoDestabilizerFound";
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::NotSemistable, Verdict::NotStable, Verdict::NoDestabilizerFound}) {
    if (text == to_string(v)) return v;
  }
  throw Error(ErrorKind::InvalidInput, "unknown verdict '" + std::string(text) + "'");
}

// --- slopes ---------------------------------------------------------------

AlphaBeta alpha_beta(const SurfaceModel& X, const QDivisor& d, const QDivisor& s,
                     const QDivisor& a) {
  const QDivisor k(X.canonical());
  const Rational da = intersect(X, d, a);
  const Rational ds = intersect(X, d, s);
  const Rational sa = intersect(X, s, a);
  const Rational dd = intersect(X, d, d);
  const Rational ss = intersect(X, s, s);
  const Rational sk = intersect(X, s, k);
  const Rational dk = intersect(X, d, k);
  return {2 * da * ds - sa * dd, -da * (ss + sk) + sa * dk};
}

AsymptoticVerdict asymptotic_condition(const SurfaceModel& X, const TDivisor& d,
                                       const TDivisor& s, const QDivisor& a) {
  AsymptoticVerdict v;
  v.witness = alpha_beta(X, d, s, a);
  if (v.witness.alpha < 0) {
    v.kind = AsymptoticKind::UnstableEventually;
  } else if (v.witness.alpha == 0 && v.witness.beta <= 0) {
    v.kind = AsymptoticKind::UnstableBoundary;
  } else {
    v.kind = AsymptoticKind::StablePossible;
  }
  return v;
}

Rational slope_h0(const SurfaceModel& X, const TDivisor& d) {
  if (X.is_toric()) return Rational(h0(X, d));
  return chi_rr(X, d);
}

Rational syzygy_slope(const SurfaceModel& X, const TDivisor& d, const QDivisor& a) {
  if (!is_nef(X, d)) throw Error(ErrorKind::NotNef, "syzygy bundle of a non-nef divisor");
  if (!is_ample(X, a)) throw Error(ErrorKind::NotAmple, "polarization is not ample");
  const Rational h = slope_h0(X, d);
  if (h <= 1) {
    throw Error(ErrorKind::DegenerateBundle, "h0 = " + to_string(h) + ", syzygy bundle has rank 0");
  }
  return -intersect(X, QDivisor(d), a) / (h - 1);
}

namespace {

std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Smallest m >= 1 with mD - S nef, if any. Requires D nef.
std::optional<Integer> nef_start(const SurfaceModel& X, const TDivisor& d, const TDivisor& s) {
  Integer start = 1;
  for (std::size_t g : X.effective_generators()) {
    const Rational dg = intersect(X, d, X.generator(g));
    const Rational sg = intersect(X, s, X.generator(g));
    if (dg > 0) {
      start = std::max(start, to_integer(ceil(sg / dg)));
    } else if (sg > 0) {
      return std::nullopt;
    }
  }
  return start;
}

bool has_sections(const SurfaceModel& X, const TDivisor& d) { return slope_h0(X, d) > 1; }

}  // namespace

std::strong_ordering slope_compare(const SurfaceModel& X, const TDivisor& d,
                                   const TDivisor& s, const QDivisor& a, Integer multiple) {
  const TDivisor ambient = multiple * d;
  const TDivisor sub = ambient - s;
  return compare(syzygy_slope(X, sub, a), syzygy_slope(X, ambient, a));
}

std::optional<Threshold> d_threshold(const SurfaceModel& X, const TDivisor& d,
                                     const TDivisor& s, const QDivisor& a) {
  const AsymptoticVerdict verdict = asymptotic_condition(X, d, s, a);
  if (verdict.kind == AsymptoticKind::StablePossible) {
    throw Error(ErrorKind::PreconditionFailed,
                "no threshold: alpha = " + to_string(verdict.witness.alpha) +
                    ", beta = " + to_string(verdict.witness.beta) + " leave stability possible");
  }
  const auto& [alpha, beta] = verdict.witness;
  const bool equality_only = alpha == 0 && beta == 0;

  const auto nef_from = nef_start(X, d, s);
  if (!nef_from) return std::nullopt;
  Integer root_from = 1;
  if (alpha < 0) {
    // q(m) < 0 exactly for m > beta / -alpha.
    const Rational r = beta / -alpha;
    if (r >= 0) root_from = to_integer(floor(r)) + 1;
  }
  const Integer seed = std::max(*nef_from, root_from);

  // Below the seed either mD - S is not nef or q(m) >= 0; the window
  // re-checks the neighbourhood of the seed with exact h0.
  constexpr Integer kBelow = 64;
  constexpr Integer kAbove = 4096;
  for (Integer m = std::max<Integer>(1, seed - kBelow); m <= seed + kAbove; ++m) {
    const TDivisor ambient = m * d;
    const TDivisor sub = ambient - s;
    if (sub.is_zero() || !is_nef(X, sub)) continue;
    if (!has_sections(X, sub) || !has_sections(X, ambient)) continue;
    const auto order = slope_compare(X, d, s, a, m);
    if (order == std::strong_ordering::greater) return Threshold{m, true};
    if (equality_only && order == std::strong_ordering::equal) return Threshold{m, false};
  }
  return std::nullopt;
}

std::vector<TDivisor> destabilizer_candidates(const SurfaceModel& X, std::size_t max_terms) {
  const auto gens = X.effective_generators();
  std::vector<TDivisor> out;
  auto push_unique = [&](TDivisor s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  // Multisets of generators, by size, each enumerated in lexicographic order.
  for (std::size_t k = 1; k <= max_terms; ++k) {
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      TDivisor s(X.generator_count());
      for (std::size_t p : pick) s += X.generator(gens[p]);
      push_unique(std::move(s));
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] + 1 == gens.size()) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t q = pos; q < k; ++q) pick[q] = pick[pos - 1];
    }
  }
  return out;
}

std::optional<Destabilizer> find_destabilizer(const SurfaceModel& X, const TDivisor& d,
                                              const QDivisor& a, Integer multiple,
                                              std::size_t max_terms) {
  const TDivisor ambient = multiple * d;
  if (!is_ample(X, ambient)) {
    throw Error(ErrorKind::NotAmple, "dD must be ample to search for destabilizers");
  }
  const Rational ambient_slope = syzygy_slope(X, ambient, a);
  std::optional<Destabilizer> equal;
  for (TDivisor& s : destabilizer_candidates(X, max_terms)) {
    const TDivisor sub = ambient - s;
    if (sub.is_zero() || !is_nef(X, sub) || !has_sections(X, sub)) continue;
    const Rational sub_slope = syzygy_slope(X, sub, a);
    if (sub_slope > ambient_slope) return Destabilizer{std::move(s), sub_slope, ambient_slope, true};
    if (sub_slope == ambient_slope && !equal) {
      equal = Destabilizer{std::move(s), sub_slope, ambient_slope, false};
    }
  }
  return equal;
}

// --- Hirzebruch surfaces --------------------------------------------------

Rational hirzebruch_boundary(Integer ell, const Rational& b) {
  return 2 * b * (b - ell) / ell + ell;
}

Rational boundary_quadratic(Integer ell, const Rational& b) {
  return 2 * b * b - 3 * ell * b + ell * ell - ell;
}

RegionVerdict hirzebruch_region(Integer ell, const Rational& a, const Rational& b) {
  if (ell < 1) throw Error(ErrorKind::InvalidInput, "region test needs ell >= 1");
  if (a <= ell) throw Error(ErrorKind::NotAmple, "A = S + aF needs a > ell, got a = " + to_string(a));
  if (b <= ell) throw Error(ErrorKind::NotAmple, "D = S + bF needs b > ell, got b = " + to_string(b));
  const Rational bound = hirzebruch_boundary(ell, b);
  if (a > bound) return RegionVerdict::UnstableForLargeD;
  // On the curve: b >= 3l/4 + sqrt(l^2/16 + l/2) iff the quadratic is >= 0,
  // since b > l exceeds the smaller root.
  if (a == bound && boundary_quadratic(ell, b) >= 0) return RegionVerdict::UnstableForLargeD;
  return RegionVerdict::NotCovered;
}

Fan hirzebruch_fan(Integer ell) {
  const std::vector<Ray> rays{{1, 0}, {0, 1}, {-1, ell}, {0, -1}};
  return validate_fan(rays);
}

TDivisor sf_divisor(const Fan& fan, Integer x, Integer y) {
  const HirzebruchFrame frame = hirzebruch_frame(fan);
  TDivisor d(fan.size());
  d[frame.section] = x;
  d[frame.fiber] = y;
  return d;
}

std::pair<Integer, Integer> sf_class(const Fan& fan, const TDivisor& d) {
  if (d.size() != fan.size()) {
    throw Error(ErrorKind::DimensionMismatch, "divisor length does not match the fan");
  }
  const HirzebruchFrame frame = hirzebruch_frame(fan);
  const IntMatrix m = intersection_matrix(fan);
  Integer with_s = 0, with_f = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    with_s += d[i] * m(i, frame.section);
    with_f += d[i] * m(i, frame.fiber);
  }
  // (xS + yF).F = x and (xS + yF).S = y - l x.
  return {with_f, with_s + frame.ell * with_f};
}

AlphaBeta hirzebruch_alpha_beta(Integer ell, const Rational& a, const Rational& b) {
  const Fan fan = hirzebruch_fan(ell);
  const SurfaceModel X = SurfaceModel::toric(fan);
  const QDivisor s(sf_divisor(fan, 1, 0));
  const QDivisor f(sf_divisor(fan, 0, 1));
  return alpha_beta(X, s + b * f, s, s + a * f);
}

// --- polarizations --------------------------------------------------------

Polarization construct_polarization(const SurfaceModel& X, const TDivisor& d,
                                    PolarizationOptions options) {
  if (!is_ample(X, d)) throw Error(ErrorKind::NotAmple, "D must be ample");
  const HypothesisReport hyp = check_hypotheses(X);
  std::vector<std::size_t> candidates;
  bool outside = false;
  if (hyp.ok) {
    candidates = negative_generators(X);
  } else if (options.require_hypotheses) {
    std::string msg = "hypotheses not met";
    for (const auto& line : hyp.diagnostics) msg += "; " + line;
    throw Error(ErrorKind::HypothesesViolated, msg);
  } else {
    candidates.assign(X.effective_generators().begin(), X.effective_generators().end());
    outside = true;
  }

  std::size_t ej = candidates.front();
  Rational best = intersect(X, d, X.generator(ej));
  for (std::size_t g : candidates) {
    const Rational v = intersect(X, d, X.generator(g));
    if (v < best) {
      best = v;
      ej = g;
    }
  }
  const TDivisor e = X.generator(ej);
  const QDivisor dq(d);
  const Rational t = nef_threshold(X, dq, e);
  if (!outside && t < best) {
    throw Error(ErrorKind::Internal, "nef threshold " + to_string(t) + " below D.E_j = " +
                                         to_string(best));
  }
  const QDivisor base = dq - t * QDivisor(e);

  Rational eps = 1;
  for (int k = 0; k <= 20; ++k, eps /= 2) {
    QDivisor candidate = base + eps * QDivisor(e);
    if (!is_ample(X, candidate)) continue;
    const Rational alpha = alpha_beta(X, dq, QDivisor(e), candidate).alpha;
    if (alpha < 0) {
      return Polarization{std::move(candidate), ej, e, t, eps, alpha, outside};
    }
  }
  throw Error(ErrorKind::ConstructionFailed,
              "no eps in 1, 1/2, ..., 2^-20 gives an ample A with alpha < 0 (E_j = " +
                  X.labels()[ej] + ", t = " + to_string(t) + ")");
}

// --- reports ----------------------------------------------------------------

namespace {

bool is_effective_class(const SurfaceModel& X, const TDivisor& s) {
  if (X.is_toric()) return is_effective(X, s);
  std::vector<bool> allowed(X.generator_count(), false);
  for (std::size_t g : X.effective_generators()) allowed[g] = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || (s[i] > 0 && !allowed[i])) return false;
  }
  return true;
}

}  // namespace

Verdict verify_certificate(const SurfaceModel& X, const TDivisor& d, const Certificate& cert) {
  const std::size_t n = X.generator_count();
  if (d.size() != n || cert.a.size() != n || cert.s.size() != n || cert.d0 < 1) {
    return Verdict::NoDestabilizerFound;
  }
  const TDivisor ambient = cert.d0 * d;
  const TDivisor sub = ambient - cert.s;
  if (!is_ample(X, cert.a) || !is_nef(X, ambient) || !is_nef(X, sub) || sub.is_zero() ||
      !is_effective_class(X, cert.s) || !has_sections(X, sub) || !has_sections(X, ambient)) {
    return Verdict::NoDestabilizerFound;
  }
  const Rational sub_slope = syzygy_slope(X, sub, cert.a);
  const Rational ambient_slope = syzygy_slope(X, ambient, cert.a);
  if (sub_slope != cert.sub_slope || ambient_slope != cert.ambient_slope) {
    return Verdict::NoDestabilizerFound;
  }
  if (sub_slope > ambient_slope) return Verdict::NotSemistable;
  if (sub_slope == ambient_slope) return Verdict::NotStable;
  return Verdict::NoDestabilizerFound;
}

StabilityReport certify(const SurfaceModel& X, const TDivisor& d, const TDivisor& s,
                        const QDivisor& a) {
  StabilityReport report;
  report.surface = X.is_toric() ? to_string(recognize(X.fan())) : "abstract";
  if (!X.is_toric()) report.assumptions.emplace_back(kChiAssumption);
  const AsymptoticVerdict asym = asymptotic_condition(X, d, s, a);
  report.alpha_beta = asym.witness;
  if (asym.kind == AsymptoticKind::StablePossible) return report;
  const auto threshold = d_threshold(X, d, s, a);
  if (!threshold) return report;

  Certificate cert;
  cert.a = a.primitive_integral();
  cert.s = s;
  cert.d0 = threshold->d0;
  cert.sub_slope = syzygy_slope(X, cert.d0 * d - s, cert.a);
  cert.ambient_slope = syzygy_slope(X, cert.d0 * d, cert.a);
  const Verdict expected = threshold->strict ? Verdict::NotSemistable : Verdict::NotStable;
  if (verify_certificate(X, d, cert) != expected) {
    throw Error(ErrorKind::Internal, "certificate failed re-verification at d0 = " +
                                         std::to_string(cert.d0));
  }
  report.verdict = expected;
  report.certificate = std::move(cert);
  return report;
}

StabilityReport toric_driver(const Fan& fan, const TDivisor& d) {
  const SurfaceType type = recognize(fan);
  if (type.kind == SurfaceType::Kind::ProjectivePlane ||
      (type.kind == SurfaceType::Kind::Hirzebruch && type.ell == 0)) {
    throw Error(ErrorKind::OutOfTheoremScope,
                to_string(type) + " admits no construction (P2 and P1 x P1 are excluded)");
  }
  const SurfaceModel X = SurfaceModel::toric(fan);
  if (d.size() != X.generator_count()) {
    throw Error(ErrorKind::DimensionMismatch, "D has " + std::to_string(d.size()) +
                                                  " coefficients, the fan has " +
                                                  std::to_string(fan.size()) + " rays");
  }
  if (!is_ample(X, d)) throw Error(ErrorKind::NotAmple, "D must be ample");

  StabilityReport report;
  if (type.kind == SurfaceType::Kind::Hirzebruch) {
    const HirzebruchFrame frame = hirzebruch_frame(fan);
    const auto [b1, b2] = sf_class(fan, d);
    const Rational bound = hirzebruch_boundary(frame.ell, Rational(b2, b1));
    std::optional<Rational> a;
    for (Integer q = 1; q <= 8; ++q) {
      const Rational cand(floor(bound * q) + 1, BigInt(q));
      if (!a || cand < *a) a = cand;
    }
    const QDivisor polarization(sf_divisor(fan, to_integer(mp::denominator(*a)),
                                           to_integer(mp::numerator(*a))));
    report = certify(X, d, X.generator(frame.section), polarization);
  } else {
    Polarization pol = construct_polarization(X, d);
    report = certify(X, d, pol.e, pol.a);
    report.polarization = std::move(pol);
  }
  if (!report.certificate) {
    throw Error(ErrorKind::ConstructionFailed, "no certificate for " + to_string(type));
  }
  return report;
}

StabilityReport abstract_driver(const SurfaceModel& X, const TDivisor& d) {
  if (X.is_toric()) return toric_driver(X.fan(), d);
  Polarization pol = construct_polarization(X, d);
  StabilityReport report = certify(X, d, pol.e, pol.a);
  report.polarization = std::move(pol);
  if (!report.certificate) throw Error(ErrorKind::ConstructionFailed, "no certificate found");
  return report;
}

// --- sweeps -------------------------------------------------------------------

namespace {

std::vector<Rational> grid_values(const Rational& lo, const Rational& hi, const Rational& step) {
  std::vector<Rational> out;
  for (Rational v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

SweepRow evaluate_point(Integer ell, const Rational& a, const Rational& b, bool with_threshold) {
  SweepRow row;
  row.ell = ell;
  row.a = a;
  row.b = b;
  row.verdict = hirzebruch_region(ell, a, b);
  row.alpha_beta = hirzebruch_alpha_beta(ell, a, b);
  if (with_threshold && row.verdict == RegionVerdict::UnstableForLargeD) {
    const Fan fan = hirzebruch_fan(ell);
    const SurfaceModel X = SurfaceModel::toric(fan);
    const TDivisor A = sf_divisor(fan, to_integer(mp::denominator(a)), to_integer(mp::numerator(a)));
    const TDivisor D = sf_divisor(fan, to_integer(mp::denominator(b)), to_integer(mp::numerator(b)));
    row.d0 = d_threshold(X, D, sf_divisor(fan, 1, 0), A);
  }
  return row;
}

}  // namespace

std::vector<SweepRow> hirzebruch_sweep(const SweepGrid& grid, bool with_thresholds) {
  if (grid.step <= 0) throw Error(ErrorKind::InvalidInput, "sweep step must be positive");
  struct Point {
    Integer ell;
    Rational a, b;
  };
  std::vector<Point> points;
  const auto as = grid_values(grid.a_lo, grid.a_hi, grid.step);
  const auto bs = grid_values(grid.b_lo, grid.b_hi, grid.step);
  for (Integer ell : grid.ells) {
    if (ell < 1) throw Error(ErrorKind::InvalidInput, "sweep needs ell >= 1");
    for (const auto& a : as) {
      for (const auto& b : bs) {
        if (a > ell && b > ell) points.push_back({ell, a, b});
      }
    }
  }
  if (points.empty()) throw Error(ErrorKind::EmptyGrid, "no grid point with a > ell and b > ell");

  std::vector<SweepRow> rows(points.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < points.size(); i += workers) {
        rows[i] = evaluate_point(points[i].ell, points[i].a, points[i].b, with_thresholds);
      }
    }));
  }
  for (auto& job : jobs) job.get();
  return rows;
}

}  // namespace syzygy
