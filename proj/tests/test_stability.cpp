#include <gtest/gtest.h>

#include "corpus.hpp"
#include "cubic.hpp"
#include "syzygy/stability.hpp"

using namespace syzygy;

namespace {

SurfaceModel toric(std::vector<Ray> rays) { return SurfaceModel::toric(validate_fan(rays)); }

SurfaceModel f_ell(Integer ell) { return toric(fixtures::hirzebruch_rays(ell)); }

TDivisor sf(const SurfaceModel& X, Integer x, Integer y) { return sf_divisor(X.fan(), x, y); }

Integer isign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Direct expansion of the slope difference on F_ell for A = A1 S + A2 F,
// D = B1 S + B2 F, S-candidate S, written out by hand from
// S^2 = -ell, S.F = 1, F^2 = 0, K = -2S - (2 + ell)F.
AlphaBeta hand_alpha_beta(Integer ell, Integer a1, Integer a2, Integer b1, Integer b2) {
  const Integer da = -ell * a1 * b1 + a1 * b2 + a2 * b1;
  const Integer ds = -ell * b1 + b2;
  const Integer sa = -ell * a1 + a2;
  const Integer dd = -ell * b1 * b1 + 2 * b1 * b2;
  const Integer dk = -2 * (-ell * b1 + b2) - (2 + ell) * b1;
  const Integer ss = -ell;
  const Integer sk = 2 * ell - (2 + ell);
  return {Rational(2 * da * ds - sa * dd), Rational(-da * (ss + sk) + sa * dk)};
}

}  // namespace

TEST(Slope, F1ClosedForm) {
  const SurfaceModel X = f_ell(1);
  const TDivisor d = sf(X, 5, 6);
  const QDivisor a = sf(X, 2, 3);
  for (Integer k = 1; k <= 30; ++k) {
    EXPECT_EQ(syzygy_slope(X, k * d, a), Rational(-34 * k, 35 * k * k + 17 * k));
  }
}

TEST(Slope, GoldenValues) {
  const SurfaceModel X = f_ell(1);
  const QDivisor a = sf(X, 2, 3);
  EXPECT_EQ(syzygy_slope(X, sf(X, 8, 9), a), Rational(-26, 53));
  EXPECT_EQ(syzygy_slope(X, sf(X, 7, 9), a), Rational(-25, 51));
  const SurfaceModel p2 = toric({{1, 0}, {0, 1}, {-1, -1}});
  EXPECT_EQ(syzygy_slope(p2, TDivisor{1, 0, 0}, TDivisor{1, 0, 0}), Rational(-1, 2));
}

TEST(Slope, Errors) {
  const SurfaceModel X = f_ell(1);
  EXPECT_THROW(syzygy_slope(X, sf(X, 1, -1), sf(X, 2, 3)), Error);
  EXPECT_THROW(syzygy_slope(X, sf(X, 5, 6), sf(X, 0, 1)), Error);
  EXPECT_THROW(syzygy_slope(X, TDivisor(4), sf(X, 2, 3)), Error);
}

TEST(SlopeCompare, BoundarySharpness) {
  const SurfaceModel X = f_ell(1);
  const TDivisor d = sf(X, 5, 6), s = sf(X, 1, 0);
  const QDivisor a = sf(X, 2, 3);
  EXPECT_EQ(slope_compare(X, d, s, a, 18), std::strong_ordering::greater);
  EXPECT_EQ(slope_compare(X, d, s, a, 17), std::strong_ordering::equal);
  EXPECT_EQ(slope_compare(X, d, s, a, 10), std::strong_ordering::less);
  EXPECT_EQ(syzygy_slope(X, 17 * d, a), Rational(-1, 18));
  EXPECT_EQ(syzygy_slope(X, 17 * d - s, a), Rational(-1, 18));
}

TEST(AlphaBeta, Examples) {
  const SurfaceModel X = f_ell(1);
  const AlphaBeta ab = alpha_beta(X, sf(X, 5, 6), sf(X, 1, 0), sf(X, 2, 3));
  EXPECT_EQ(ab.alpha, Rational(-1));
  EXPECT_EQ(ab.beta, Rational(17));
  EXPECT_EQ(ab.q(17), Rational(0));
  const AlphaBeta ex = alpha_beta(X, sf(X, 8, 9), sf(X, 1, 0), sf(X, 2, 3));
  EXPECT_EQ(ex.alpha, Rational(-28));
  EXPECT_EQ(ex.beta, Rational(26));
  const SurfaceModel p2 = toric({{1, 0}, {0, 1}, {-1, -1}});
  const TDivisor h{1, 0, 0};
  EXPECT_EQ(alpha_beta(p2, h, h, h).alpha, Rational(1));
}

TEST(AlphaBeta, MatchesHandExpansionOnHirzebruch) {
  for (Integer ell = 0; ell <= 4; ++ell) {
    const SurfaceModel X = f_ell(ell);
    for (Integer a1 = 1; a1 <= 3; ++a1)
      for (Integer a2 = 0; a2 <= 6; ++a2)
        for (Integer b1 = 1; b1 <= 3; ++b1)
          for (Integer b2 = 0; b2 <= 6; ++b2) {
            const AlphaBeta got = alpha_beta(X, sf(X, b1, b2), sf(X, 1, 0), sf(X, a1, a2));
            const AlphaBeta want = hand_alpha_beta(ell, a1, a2, b1, b2);
            EXPECT_EQ(got.alpha, want.alpha);
            EXPECT_EQ(got.beta, want.beta);
          }
  }
}

TEST(AsymptoticCondition, Kinds) {
  const SurfaceModel X = f_ell(1);
  EXPECT_EQ(asymptotic_condition(X, sf(X, 5, 6), sf(X, 1, 0), sf(X, 2, 3)).kind,
            AsymptoticKind::UnstableEventually);
  const SurfaceModel p2 = toric({{1, 0}, {0, 1}, {-1, -1}});
  const TDivisor h{1, 0, 0};
  EXPECT_EQ(asymptotic_condition(p2, h, h, h).kind, AsymptoticKind::StablePossible);
}

TEST(DThreshold, Examples) {
  const SurfaceModel X = f_ell(1);
  const auto t = d_threshold(X, sf(X, 5, 6), sf(X, 1, 0), sf(X, 2, 3));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->d0, 18);
  EXPECT_TRUE(t->strict);
  const auto t1 = d_threshold(X, sf(X, 8, 9), sf(X, 1, 0), sf(X, 2, 3));
  ASSERT_TRUE(t1);
  EXPECT_EQ(t1->d0, 1);
  const SurfaceModel p2 = toric({{1, 0}, {0, 1}, {-1, -1}});
  const TDivisor h{1, 0, 0};
  try {
    d_threshold(p2, h, h, h);
    FAIL() << "expected PreconditionFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(DThreshold, IsTheFirstStrictMultiple) {
  const SurfaceModel X = f_ell(1);
  const TDivisor d = sf(X, 5, 6), s = sf(X, 1, 0);
  const QDivisor a = sf(X, 2, 3);
  for (Integer k = 1; k < 18; ++k) EXPECT_NE(slope_compare(X, d, s, a, k), std::strong_ordering::greater);
  for (Integer k = 18; k <= 40; ++k) EXPECT_EQ(slope_compare(X, d, s, a, k), std::strong_ordering::greater);
}

TEST(FindDestabilizer, Examples) {
  const SurfaceModel X = f_ell(1);
  const auto one = find_destabilizer(X, sf(X, 8, 9), sf(X, 2, 3), 1);
  ASSERT_TRUE(one);
  EXPECT_EQ(one->s, sf(X, 1, 0));
  EXPECT_TRUE(one->strict);
  EXPECT_EQ(one->sub_slope, Rational(-25, 51));
  EXPECT_EQ(one->ambient_slope, Rational(-26, 53));

  const auto eighteen = find_destabilizer(X, sf(X, 5, 6), sf(X, 2, 3), 18);
  ASSERT_TRUE(eighteen);
  EXPECT_TRUE(eighteen->strict);
  EXPECT_GT(eighteen->sub_slope, eighteen->ambient_slope);

  const SurfaceModel p2 = toric({{1, 0}, {0, 1}, {-1, -1}});
  EXPECT_FALSE(find_destabilizer(p2, TDivisor{3, 0, 0}, TDivisor{1, 0, 0}, 1));
  EXPECT_THROW(find_destabilizer(X, sf(X, 0, 1), sf(X, 2, 3), 1), Error);
}

TEST(DestabilizerCandidates, Multisets) {
  const SurfaceModel X = f_ell(1);
  EXPECT_EQ(destabilizer_candidates(X, 1).size(), 4u);
  // 4 singles + 10 unordered pairs with repetition.
  EXPECT_EQ(destabilizer_candidates(X, 2).size(), 14u);
}

TEST(HirzebruchRegion, Examples) {
  EXPECT_EQ(hirzebruch_region(1, Rational(3, 2), Rational(9, 8)), RegionVerdict::UnstableForLargeD);
  EXPECT_EQ(hirzebruch_boundary(1, Rational(9, 8)), Rational(82, 64));
  EXPECT_EQ(hirzebruch_region(2, Rational(6), Rational(3)), RegionVerdict::UnstableForLargeD);
  EXPECT_EQ(hirzebruch_region(1, Rational(5, 4), Rational(2)), RegionVerdict::NotCovered);
  // Equality branch at the root b = 3/2 of 2b^2 - 3b for ell = 1.
  EXPECT_EQ(boundary_quadratic(1, Rational(3, 2)), Rational(0));
  EXPECT_EQ(hirzebruch_region(1, hirzebruch_boundary(1, Rational(3, 2)), Rational(3, 2)),
            RegionVerdict::UnstableForLargeD);
  EXPECT_EQ(hirzebruch_region(1, hirzebruch_boundary(1, Rational(5, 4)), Rational(5, 4)),
            RegionVerdict::NotCovered);
  EXPECT_EQ(hirzebruch_region(1, hirzebruch_boundary(1, Rational(2)), Rational(2)),
            RegionVerdict::UnstableForLargeD);
  EXPECT_THROW(hirzebruch_region(0, Rational(2), Rational(2)), Error);
  EXPECT_THROW(hirzebruch_region(1, Rational(1), Rational(2)), Error);
  EXPECT_THROW(hirzebruch_region(1, Rational(2), Rational(1)), Error);
}

TEST(HirzebruchRegion, ExampleBoundIsRootOfQuadratic) {
  // a = 3/2, ell = 1: unstable exactly where 4b^2 - 4b - 1 < 0.
  for (Integer num = 9; num <= 40; ++num) {
    for (Integer den = 1; den <= 8; ++den) {
      const Rational b(num, den * 8);
      if (b <= 1) continue;
      const Rational quad = 4 * b * b - 4 * b - 1;
      const bool unstable = hirzebruch_region(1, Rational(3, 2), b) == RegionVerdict::UnstableForLargeD;
      EXPECT_EQ(unstable, quad < 0) << b;
    }
  }
}

TEST(HirzebruchRegion, ScaleInvariance) {
  for (Integer ell = 1; ell <= 3; ++ell) {
    const SurfaceModel X = f_ell(ell);
    for (Integer a2 = ell + 1; a2 <= ell + 6; ++a2) {
      for (Integer b2 = ell + 1; b2 <= ell + 4; ++b2) {
        const auto base = asymptotic_condition(X, sf(X, 1, b2), sf(X, 1, 0), sf(X, 1, a2)).kind;
        for (Integer k = 2; k <= 3; ++k) {
          EXPECT_EQ(asymptotic_condition(X, sf(X, k, k * b2), sf(X, 1, 0), sf(X, 1, a2)).kind, base);
          EXPECT_EQ(asymptotic_condition(X, sf(X, 1, b2), sf(X, 1, 0), sf(X, k, k * a2)).kind, base);
        }
      }
    }
  }
}

TEST(HirzebruchRegion, ConsistentWithAlphaBeta) {
  for (Integer ell = 1; ell <= 4; ++ell) {
    const SurfaceModel X = f_ell(ell);
    for (Integer an = 1; an <= 30; ++an) {
      for (Integer bn = 1; bn <= 20; ++bn) {
        const Rational a = ell + Rational(an, 4), b = ell + Rational(bn, 4);
        const AsymptoticKind kind =
            asymptotic_condition(X, sf(X, 4, 4 * ell + bn), sf(X, 1, 0),
                                 sf(X, 4, 4 * ell + an))
                .kind;
        const bool unstable = kind != AsymptoticKind::StablePossible;
        EXPECT_EQ(hirzebruch_region(ell, a, b) == RegionVerdict::UnstableForLargeD, unstable)
            << ell << " " << a << " " << b;
        EXPECT_EQ(isign(hirzebruch_alpha_beta(ell, a, b).alpha),
                  isign(alpha_beta(X, sf(X, 4, 4 * ell + bn), sf(X, 1, 0),
                                   sf(X, 4, 4 * ell + an))
                            .alpha));
      }
    }
  }
}

TEST(NumeratorIdentity, SignOfSlopeDifferenceMatchesQ) {
  for (const auto& c : fixtures::corpus()) {
    const SurfaceModel X = toric(c.rays);
    const TDivisor d = fixtures::some_ample(X);
    const TDivisor a = fixtures::some_ample(X);
    int checked = 0;
    for (std::size_t g : negative_generators(X)) {
      const TDivisor s = X.generator(g);
      const AlphaBeta ab = alpha_beta(X, d, s, a);
      for (Integer k = 1; k <= 50; ++k) {
        const TDivisor sub = k * d - s;
        if (!is_ample(X, sub) || !is_ample(X, sub - X.canonical())) continue;
        const Rational diff = syzygy_slope(X, sub, a) - syzygy_slope(X, k * d, a);
        EXPECT_EQ(isign(diff), -isign(ab.q(k))) << c.name << " d=" << k;
        ++checked;
      }
    }
    if (c.name != "P2" && c.name != "F0") EXPECT_GT(checked, 0) << c.name;
  }
}

TEST(ConstructPolarization, BlowUpOfPlane) {
  const SurfaceModel X = toric({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}});
  const TDivisor d = -X.canonical();
  const Polarization p = construct_polarization(X, d);
  EXPECT_TRUE(is_ample(X, p.a));
  EXPECT_LT(p.alpha, 0);
  EXPECT_GE(p.t, intersect(X, d, p.e));
  EXPECT_EQ(p.e, X.generator(p.ej));
  EXPECT_FALSE(p.outside_hypotheses);
  EXPECT_EQ(p.a, QDivisor(d) - p.t * QDivisor(p.e) + p.epsilon * QDivisor(p.e));
  // Lowest-index minimiser of D.E among the negative generators.
  for (std::size_t g : negative_generators(X)) {
    EXPECT_GE(intersect(X, d, X.generator(g)), intersect(X, d, p.e));
    if (intersect(X, d, X.generator(g)) == intersect(X, d, p.e)) EXPECT_GE(g, p.ej);
  }
}

TEST(ConstructPolarization, LowRank) {
  const SurfaceModel X = f_ell(1);
  try {
    construct_polarization(X, sf(X, 5, 6));
    FAIL() << "expected HypothesesViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesesViolated);
  }
  const Polarization p = construct_polarization(X, sf(X, 5, 6), {.require_hypotheses = false});
  EXPECT_TRUE(p.outside_hypotheses);
  EXPECT_EQ(p.epsilon, Rational(1));
  EXPECT_EQ(p.t, Rational(5));
  EXPECT_EQ(p.alpha, Rational(37) * p.epsilon - 150);
}

TEST(ConstructPolarization, CubicSurface) {
  const SurfaceModel X = fixtures::cubic_surface();
  const Polarization p = construct_polarization(X, -X.canonical());
  EXPECT_EQ(p.ej, 0u);
  EXPECT_EQ(p.t, Rational(1));
  EXPECT_LT(p.alpha, 0);
  EXPECT_TRUE(is_ample(X, p.a));
}

TEST(ToricDriver, Hirzebruch) {
  const Fan fan = hirzebruch_fan(1);
  const StabilityReport r = toric_driver(fan, sf_divisor(fan, 5, 6));
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.verdict, Verdict::NotSemistable);
  EXPECT_EQ(r.certificate->d0, 18);
  EXPECT_EQ(r.certificate->a, sf_divisor(fan, 2, 3));
  EXPECT_EQ(r.certificate->s, sf_divisor(fan, 1, 0));
  EXPECT_EQ(r.surface, "Hirzebruch(1)");
}

TEST(ToricDriver, OutOfScope) {
  try {
    toric_driver(validate_fan(std::vector<Ray>{{1, 0}, {0, 1}, {-1, -1}}), TDivisor{1, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfTheoremScope);
  }
  EXPECT_THROW(toric_driver(hirzebruch_fan(0), TDivisor{1, 1, 1, 1}), Error);
}

TEST(ToricDriver, CertificatesRoundTripOnCorpus) {
  for (const auto& c : fixtures::corpus()) {
    if (c.name == "P2" || c.name == "F0") continue;
    const SurfaceModel X = toric(c.rays);
    const TDivisor d = fixtures::some_ample(X);
    const StabilityReport r = toric_driver(X.fan(), d);
    ASSERT_TRUE(r.certificate) << c.name;
    EXPECT_EQ(verify_certificate(X, d, *r.certificate), r.verdict) << c.name;
    EXPECT_NE(r.verdict, Verdict::NoDestabilizerFound);
    Certificate tampered = *r.certificate;
    tampered.sub_slope += Rational(1, 1000);
    EXPECT_EQ(verify_certificate(X, d, tampered), Verdict::NoDestabilizerFound);
  }
}

TEST(AbstractDriver, AgreesWithToricOnBlowUp) {
  const SurfaceModel T = toric({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}});
  // The three (-1)-curves generate the effective cone; the fibers D0, D4 are sums of them.
  const SurfaceModel A = SurfaceModel::abstract(T.labels(), T.pairing_matrix(), T.canonical(),
                                                negative_generators(T));
  const TDivisor d = -T.canonical();
  const StabilityReport rt = toric_driver(T.fan(), d);
  const StabilityReport ra = abstract_driver(A, d);
  ASSERT_TRUE(rt.certificate && ra.certificate);
  EXPECT_EQ(rt.certificate->a, ra.certificate->a);
  EXPECT_EQ(rt.certificate->d0, ra.certificate->d0);
  EXPECT_EQ(ra.assumptions, std::vector<std::string>{std::string(kChiAssumption)});
}

TEST(AbstractDriver, CubicSurface) {
  const SurfaceModel X = fixtures::cubic_surface();
  const StabilityReport r = abstract_driver(X, -X.canonical());
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.surface, "abstract");
  EXPECT_EQ(verify_certificate(X, -X.canonical(), *r.certificate), r.verdict);
}

TEST(Verdict, StringsRoundTrip) {
  for (Verdict v : {Verdict::NotSemistable, Verdict::NotStable, Verdict::NoDestabilizerFound}) {
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  }
  EXPECT_THROW(parse_verdict("Stable"), Error);
}

TEST(Sweep, MatchesPointwiseRegion) {
  SweepGrid g{{1, 2}, Rational(1), Rational(4), Rational(1), Rational(3), Rational(1, 4)};
  const auto rows = hirzebruch_sweep(g, false);
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) {
    EXPECT_EQ(row.verdict, hirzebruch_region(row.ell, row.a, row.b));
    EXPECT_GT(row.a, row.ell);
    EXPECT_GT(row.b, row.ell);
    EXPECT_FALSE(row.d0);
  }
  const auto again = hirzebruch_sweep(g, false);
  ASSERT_EQ(again.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(again[i].a, rows[i].a);
    EXPECT_EQ(again[i].b, rows[i].b);
    EXPECT_EQ(again[i].ell, rows[i].ell);
  }
}

TEST(Sweep, Errors) {
  SweepGrid bad_step{{1}, Rational(2), Rational(3), Rational(2), Rational(3), Rational(0)};
  EXPECT_THROW(hirzebruch_sweep(bad_step), Error);
  SweepGrid empty{{3}, Rational(1), Rational(2), Rational(1), Rational(2), Rational(1, 2)};
  try {
    hirzebruch_sweep(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyGrid);
  }
}

TEST(Sweep, ThresholdsCertified) {
  SweepGrid g{{2}, Rational(6), Rational(6), Rational(3), Rational(3), Rational(1)};
  const auto rows = hirzebruch_sweep(g);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].verdict, RegionVerdict::UnstableForLargeD);
  ASSERT_TRUE(rows[0].d0);
  const SurfaceModel X = f_ell(2);
  EXPECT_EQ(slope_compare(X, sf(X, 1, 3), sf(X, 1, 0), sf(X, 1, 6), rows[0].d0->d0),
            rows[0].d0->strict ? std::strong_ordering::greater : std::strong_ordering::equal);
}
