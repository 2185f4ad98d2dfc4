#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syzygy/divisors.hpp"

namespace syzygy {

/// Coefficients of q(d) = alpha d^2 + beta d, the numerator of
/// mu_A(M_{dD}) - mu_A(M_{dD-S}) over the common positive denominator
/// 2 (chi(dD) - 1)(chi(dD - S) - 1):
///   alpha = 2 (D.A)(D.S) - (S.A) D^2
///   beta  = -(D.A)(S^2 + S.K) + (S.A)(D.K)
struct AlphaBeta {
  Rational alpha;
  Rational beta;

  Rational q(const Rational& d) const { return alpha * d * d + beta * d; }
};

AlphaBeta alpha_beta(const SurfaceModel& X, const QDivisor& d, const QDivisor& s,
                     const QDivisor& a);

enum class AsymptoticKind { UnstableEventually, UnstableBoundary, StablePossible };

std::string_view to_string(AsymptoticKind kind);

struct AsymptoticVerdict {
  AsymptoticKind kind = AsymptoticKind::StablePossible;
  AlphaBeta witness;
};

/// UnstableEventually iff alpha < 0; UnstableBoundary iff alpha = 0 and
/// beta <= 0; StablePossible otherwise.
AsymptoticVerdict asymptotic_condition(const SurfaceModel& X, const TDivisor& d,
                                       const TDivisor& s, const QDivisor& a);

/// h0 used in slope denominators: lattice count in toric mode, chi in
/// abstract mode.
Rational slope_h0(const SurfaceModel& X, const TDivisor& d);

/// mu_A(M_{O(D)}) = -(D.A)/(h0(D) - 1). Throws NotNef, NotAmple or
/// DegenerateBundle (h0 <= 1).
Rational syzygy_slope(const SurfaceModel& X, const TDivisor& d, const QDivisor& a);

/// Order of mu_A(M_{O(dD-S)}) relative to mu_A(M_{O(dD)}); `greater` means
/// the subbundle destabilizes.
std::strong_ordering slope_compare(const SurfaceModel& X, const TDivisor& d,
                                   const TDivisor& s, const QDivisor& a, Integer multiple);

struct Threshold {
  Integer d0 = 0;
  bool strict = true;  // false: slopes only equal (not stable)
};

/// Smallest d >= 1 with dD - S nef and the subbundle slope strictly above
/// the ambient one; for alpha = beta = 0, the first d where the slopes are
/// equal. The root of q seeds the search and each candidate is confirmed by
/// exact slope comparison. Throws PreconditionFailed for StablePossible.
std::optional<Threshold> d_threshold(const SurfaceModel& X, const TDivisor& d,
                                     const TDivisor& s, const QDivisor& a);

struct Destabilizer {
  TDivisor s;
  Rational sub_slope;
  Rational ambient_slope;
  bool strict = true;
};

/// Candidate subbundles M_{O(dD-S)} with S a sum of at most `max_terms`
/// effective-cone generators, dD - S nef and nonzero. Returns the first
/// strict destabilizer in scan order, else the first equal one.
std::optional<Destabilizer> find_destabilizer(const SurfaceModel& X, const TDivisor& d,
                                              const QDivisor& a, Integer multiple,
                                              std::size_t max_terms = 2);

/// All candidate S considered by find_destabilizer, in scan order.
std::vector<TDivisor> destabilizer_candidates(const SurfaceModel& X, std::size_t max_terms);

// Hirzebruch surfaces, A = S + aF, D = S + bF.

enum class RegionVerdict { UnstableForLargeD, NotCovered };

std::string_view to_string(RegionVerdict verdict);

/// 2b(b - ell)/ell + ell
Rational hirzebruch_boundary(Integer ell, const Rational& b);

/// 2b^2 - 3 ell b + ell^2 - ell; its larger root is
/// 3 ell/4 + sqrt(ell^2/16 + ell/2).
Rational boundary_quadratic(Integer ell, const Rational& b);

/// Throws NotAmple unless a > ell and b > ell (and ell >= 1).
RegionVerdict hirzebruch_region(Integer ell, const Rational& a, const Rational& b);

/// alpha and beta for A = S + aF, D = S + bF and the section S.
AlphaBeta hirzebruch_alpha_beta(Integer ell, const Rational& a, const Rational& b);

/// The ell-th Hirzebruch fan (1,0), (0,1), (-1,ell), (0,-1); S is ray 1.
Fan hirzebruch_fan(Integer ell);

/// Divisor with class xS + yF (in the frame of a 4-ray fan).
TDivisor sf_divisor(const Fan& fan, Integer x, Integer y);

/// Class (x, y) of D = xS + yF on a Hirzebruch fan.
std::pair<Integer, Integer> sf_class(const Fan& fan, const TDivisor& d);

// Polarizations.

struct PolarizationOptions {
  /// When false, rank-2 surfaces are accepted and every generator is used as
  /// a candidate E_j; results carry `outside_hypotheses`.
  bool require_hypotheses = true;
};

struct Polarization {
  QDivisor a;         // (D - tE_j) + eps E_j
  std::size_t ej = 0; // generator index
  TDivisor e;
  Rational t;
  Rational epsilon;
  Rational alpha;
  bool outside_hypotheses = false;
};

/// E_j minimizes D.E_i over negative generators (lowest index on ties),
/// t is the nef threshold of D along E_j, and eps is the largest value in
/// 1, 1/2, ..., 2^-20 with A ample and alpha < 0.
Polarization construct_polarization(const SurfaceModel& X, const TDivisor& d,
                                    PolarizationOptions options = {});

// Reports.

enum class Verdict { NotSemistable, NotStable, NoDestabilizerFound };

std::string_view to_string(Verdict verdict);
Verdict parse_verdict(std::string_view text);

struct Certificate {
  TDivisor a;  // primitive integral polarization
  TDivisor s;
  Integer d0 = 0;
  Rational sub_slope;      // mu_A(M_{O(d0 D - S)})
  Rational ambient_slope;  // mu_A(M_{O(d0 D)})
};

struct StabilityReport {
  Verdict verdict = Verdict::NoDestabilizerFound;
  std::optional<Certificate> certificate;
  std::vector<std::string> assumptions;
  std::optional<AlphaBeta> alpha_beta;
  std::optional<Polarization> polarization;
  std::string surface;  // recognized type or "abstract"
};

inline constexpr std::string_view kChiAssumption = "h0 = chi assumed (ample, d large)";
inline constexpr std::string_view kOutsideHypotheses =
    "polarization built outside the Picard rank >= 3 hypotheses";

/// Recomputes both slopes of a certificate; returns NotSemistable (strict),
/// NotStable (equal) or NoDestabilizerFound (subbundle slope smaller or the
/// certificate is malformed).
Verdict verify_certificate(const SurfaceModel& X, const TDivisor& d, const Certificate& cert);

/// Builds and verifies a certificate for fixed A and S; NoDestabilizerFound
/// when the asymptotic test leaves stability possible.
StabilityReport certify(const SurfaceModel& X, const TDivisor& d, const TDivisor& s,
                        const QDivisor& a);

/// Hirzebruch surfaces (ell >= 1) use A = S + aF with the smallest a of
/// denominator <= 8 inside the instability region; Picard rank >= 3 uses
/// construct_polarization. Throws OutOfTheoremScope for P2 and P1 x P1.
StabilityReport toric_driver(const Fan& fan, const TDivisor& d);

/// Abstract surfaces satisfying check_hypotheses.
StabilityReport abstract_driver(const SurfaceModel& X, const TDivisor& d);

// Region sweeps.

struct SweepGrid {
  std::vector<Integer> ells;
  Rational a_lo, a_hi;
  Rational b_lo, b_hi;
  Rational step;
};

struct SweepRow {
  Integer ell = 0;
  Rational a, b;
  RegionVerdict verdict = RegionVerdict::NotCovered;
  AlphaBeta alpha_beta;
  std::optional<Threshold> d0;
};

/// Inclusive ranges; points outside the ample range (a, b <= ell) are
/// skipped. Throws InvalidInput for a non-positive step and EmptyGrid if no
/// point survives.
std::vector<SweepRow> hirzebruch_sweep(const SweepGrid& grid, bool with_thresholds = true);

}  // namespace syzygy
