#include <cmath>

#include "doctest.h"
#include "goldman/fingerprint.hpp"
#include "goldman/repvar.hpp"

using namespace goldman;

namespace {
const double pi = 3.14159265358979323846;

const SurfaceCase all_cases[] = {SurfaceCase::I, SurfaceCase::II,
                                 SurfaceCase::III};

Su2d torus(double alpha) { return Su2d(std::cos(alpha), std::sin(alpha), 0, 0); }

DoubleRepPointd random_cover(const SurfaceSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return sample_cover<double>(spec, rng);
}
}  // namespace

TEST_CASE("central conjugation acts trivially on base points") {
  SurfaceSpec spec{SurfaceCase::II, 2};
  RepPointd p = [&] {
    Rng rng(41);
    return sample_base<double>(spec, rng);
  }();
  CHECK(max_distance(conjugate_tuple(Su2d::identity(), p), p) == 0.0);
  CHECK(max_distance(conjugate_tuple(Su2d::minus_identity(), p), p) < 1e-15);
}

TEST_CASE("pair action: central pairs act trivially") {
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 1};
    DoubleRepPointd q = random_cover(spec, 42);
    CHECK(max_distance(act_pair(Su2d::identity(), Su2d::identity(), q, spec),
                       q) == 0.0);
    CHECK(max_distance(act_pair(Su2d::minus_identity(),
                                Su2d::minus_identity(), q, spec),
                       q) < 1e-15);
  }
}

TEST_CASE("pair action (1,-1) on a lifted point flips the crossing letters") {
  SurfaceSpec spec{SurfaceCase::I, 2};
  Rng rng(43);
  RepPointd p = sample_base<double>(spec, rng);
  DoubleRepPointd lifted = cover_lift(p, spec);
  DoubleRepPointd moved =
      act_pair(Su2d::identity(), Su2d::minus_identity(), lifted, spec);
  CHECK(moved.c.distance(p.c) == 0.0);
  CHECK(moved.b.distance(p.b) == 0.0);
  CHECK(moved.cbar.distance(p.c) == 0.0);
  CHECK(moved.bbar.distance(p.b) == 0.0);
  for (size_t j = 0; j < p.a.size(); ++j) {
    CHECK(moved.a[j].distance(Su2d::from_raw(-p.a[j].coords())) < 1e-15);
    CHECK(moved.abar[j].distance(Su2d::from_raw(-p.a[j].coords())) < 1e-15);
  }
}

TEST_CASE("pair action preserves membership") {
  Rng rng(44);
  for (SurfaceCase c : all_cases)
    for (int k = 1; k <= 2; ++k) {
      SurfaceSpec spec{c, k};
      DoubleRepPointd q = sample_cover<double>(spec, rng);
      for (int i = 0; i < 20; ++i) {
        Su2d g = haar_sample<double>(rng);
        Su2d h = haar_sample<double>(rng);
        CHECK(cover_relation_residual_max(spec, act_pair(g, h, q, spec)) <
              1e-10);
      }
    }
}

TEST_CASE("lift: identity tuple, membership, equivariance") {
  SurfaceSpec spec{SurfaceCase::I, 1};
  RepPointd id_tuple;
  id_tuple.c = id_tuple.b = Su2d::identity();
  id_tuple.a = {Su2d::identity()};
  DoubleRepPointd doubled = cover_lift(id_tuple, spec);
  CHECK(doubled.cbar.distance(Su2d::identity()) == 0.0);
  CHECK(doubled.abar[0].distance(Su2d::identity()) == 0.0);

  Rng rng(45);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec s{c, 2};
    RepPointd p = sample_base<double>(s, rng);
    DoubleRepPointd lifted = cover_lift(p, s);
    CHECK(cover_relation_residual_max(s, lifted) < 1e-10);

    Su2d g = haar_sample<double>(rng);
    CHECK(max_distance(cover_lift(conjugate_tuple(g, p), s),
                       act_pair(g, g, lifted, s)) < 1e-12);
  }

  RepPointd off = id_tuple;
  off.b = exp_map(LieVecd(0.5, 0.2, 0));  // breaks the case i relation
  off.c = Su2d(0, 1, 0, 0);
  CHECK_THROWS_AS(cover_lift(off, spec), NotInVariety);
}

TEST_CASE("deck swap is an involution intertwining the swapped action") {
  Rng rng(46);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 2};
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    CHECK(max_distance(deck_swap(deck_swap(q)), q) == 0.0);
    CHECK(cover_relation_residual_max(spec, deck_swap(q)) < 1e-10);

    Su2d g = haar_sample<double>(rng);
    Su2d h = haar_sample<double>(rng);
    CHECK(max_distance(deck_swap(act_pair(g, h, q, spec)),
                       act_pair(h, g, deck_swap(q), spec)) < 1e-15);
  }
}

TEST_CASE("base sampler hits the variety on every case") {
  Rng rng(47);
  for (SurfaceCase c : all_cases)
    for (int k = 1; k <= 3; ++k) {
      SurfaceSpec spec{c, k};
      for (int i = 0; i < 50; ++i) {
        RepPointd p = sample_base<double>(spec, rng);
        CHECK(relation_residual(spec, p) < 1e-10);
      }
    }
}

TEST_CASE("case iii base sampler satisfies the commutator relation") {
  SurfaceSpec spec{SurfaceCase::III, 1};
  Rng rng(48);
  RepPointd p = sample_base<double>(spec, rng);
  Su2d lhs = p.b.inverse() * p.c.inverse() * p.b * p.c.inverse();
  Su2d rhs = p.a[0] * p.a[1] * p.a[0].inverse() * p.a[1].inverse();
  CHECK(lhs.distance(rhs) < 1e-10);
}

TEST_CASE("cover sampler hits the variety on every case") {
  Rng rng(49);
  for (SurfaceCase c : all_cases)
    for (int k = 1; k <= 3; ++k) {
      SurfaceSpec spec{c, k};
      for (int i = 0; i < 25; ++i) {
        DoubleRepPointd q = sample_cover<double>(spec, rng);
        CHECK(cover_relation_residual_max(spec, q) < 1e-10);
      }
    }
}

TEST_CASE("samplers are deterministic in the seed") {
  SurfaceSpec spec{SurfaceCase::II, 3};
  DoubleRepPointd q1 = random_cover(spec, 1234);
  DoubleRepPointd q2 = random_cover(spec, 1234);
  CHECK(max_distance(q1, q2) == 0.0);
  CHECK(q1.c.bitwise_equal(q2.c));
  DoubleRepPointd q3 = random_cover(spec, 1235);
  CHECK(max_distance(q1, q3) > 1e-3);
}

TEST_CASE("case iii with k = 0 samples the torus-commutation variety") {
  SurfaceSpec spec{SurfaceCase::III, 0};
  Rng rng(50);
  RepPointd p = sample_base<double>(spec, rng);
  CHECK(relation_residual(spec, p) < 1e-10);
  DoubleRepPointd q = sample_cover<double>(spec, rng);
  CHECK(cover_relation_residual_max(spec, q) < 1e-10);
}

TEST_CASE("fixed stratum: lifts are the x = 1 stratum") {
  Rng rng(51);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 1};
    RepPointd p = sample_base<double>(spec, rng);
    DoubleRepPointd lifted = cover_lift(p, spec);
    StratumCheck sc = in_fixed_stratum(lifted, Su2d::identity(), spec);
    CHECK(sc.member);
    CHECK(sc.residual < 1e-12);

    // generic cover points have unequal halves and miss the stratum
    DoubleRepPointd q = sample_cover<double>(spec, rng);
    CHECK(!in_fixed_stratum(q, Su2d::identity(), spec).member);
  }
}

TEST_CASE("fixed stratum: explicit diagonal witness in case i") {
  SurfaceSpec spec{SurfaceCase::I, 1};
  double phi = 0.7;
  Su2d a = torus(phi);
  Su2d x = torus(-2 * phi);  // x = a^-2
  DoubleRepPointd q;
  q.c = torus(0.4);
  q.b = torus(1.1);
  q.a = {a};
  q.cbar = q.c;
  q.bbar = q.b;
  q.abar = {a * x};
  CHECK(cover_relation_residual_max(spec, q) < 1e-14);
  StratumCheck sc = in_fixed_stratum(q, x, spec);
  CHECK(sc.member);
  CHECK(sc.residual < 1e-14);
}

TEST_CASE("fixed stratum sampler: x = -1 flips the relation sign in case i") {
  SurfaceSpec spec{SurfaceCase::I, 1};
  Rng rng(52);
  DoubleRepPointd q =
      sample_fixed_stratum(spec, Su2d::minus_identity(), rng);
  CHECK(cover_relation_residual_max(spec, q) < 1e-10);
  StratumCheck sc = in_fixed_stratum(q, Su2d::minus_identity(), spec);
  CHECK(sc.member);

  // b^-1 c b c^-1 = -a^2 on the unbarred half
  Su2d lhs = q.b.inverse() * q.c * q.b * q.c.inverse();
  Su2d rhs = Su2d::from_raw(-(q.a[0] * q.a[0]).coords());
  CHECK(lhs.distance(rhs) < 1e-10);
}

TEST_CASE("fixed stratum sampler covers all cases and twist classes") {
  Rng rng(53);
  Su2d toral = torus(pi / 5);
  for (SurfaceCase c : all_cases)
    for (int k = 1; k <= 2; ++k) {
      SurfaceSpec spec{c, k};
      for (Su2d x : {Su2d::identity(), Su2d::minus_identity(), toral}) {
        for (int i = 0; i < 10; ++i) {
          DoubleRepPointd q = sample_fixed_stratum(spec, x, rng);
          CHECK(cover_relation_residual_max(spec, q) < 1e-9);
          StratumCheck sc = in_fixed_stratum(q, x, spec);
          CHECK(sc.member);
          CHECK(sc.residual < 1e-9);
        }
      }
    }
}

TEST_CASE("stratum shape matches the deck-action criterion componentwise") {
  Rng rng(54);
  Su2d x = torus(1.3);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 1};
    DoubleRepPointd q = sample_fixed_stratum(spec, x, rng);
    DoubleRepPointd lhs = deck_swap(q);
    DoubleRepPointd rhs =
        act_pair(Su2d::identity(), x.inverse(), q, spec);
    CHECK(max_distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("fingerprints are action invariant and separate random orbits") {
  Rng rng(55);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 1};
    RepPointd p = sample_base<double>(spec, rng);
    Fingerprint fp = fingerprint(p, spec);
    REQUIRE(!fp.words.empty());
    REQUIRE(fp.words.size() == fp.traces.size());

    Su2d g = haar_sample<double>(rng);
    CHECK(fingerprint_distance(fp, fingerprint(conjugate_tuple(g, p), spec)) <
          1e-12);

    RepPointd other = sample_base<double>(spec, rng);
    CHECK(fingerprint_distance(fp, fingerprint(other, spec)) > 1e-3);

    DoubleRepPointd q = sample_cover<double>(spec, rng);
    Fingerprint fq = fingerprint(q, spec);
    Su2d h = haar_sample<double>(rng);
    CHECK(fingerprint_distance(fq,
                               fingerprint(act_pair(g, h, q, spec), spec)) <
          1e-12);
  }
}

TEST_CASE("sign-flipped handle letters share the lifted fingerprint") {
  SurfaceSpec spec{SurfaceCase::I, 1};
  Rng rng(56);
  RepPointd p = sample_base<double>(spec, rng);
  RepPointd pneg = p;
  pneg.a[0] = Su2d::from_raw(-p.a[0].coords());
  CHECK(relation_residual(spec, pneg) < 1e-10);
  Fingerprint fa = fingerprint(cover_lift(p, spec), spec);
  Fingerprint fb = fingerprint(cover_lift(pneg, spec), spec);
  CHECK(fingerprint_distance(fa, fb) < 1e-12);
  // at base level the two tuples differ: tr(a1) separates them
  CHECK(fingerprint_distance(fingerprint(p, spec),
                             fingerprint(pneg, spec)) > 1e-3);
}

TEST_CASE("cover samples are generically outside the lifted image") {
  Rng rng(57);
  for (SurfaceCase c : all_cases) {
    SurfaceSpec spec{c, 1};
    RepPointd p = sample_base<double>(spec, rng);
    Fingerprint lift_fp = fingerprint(cover_lift(p, spec), spec);
    for (int i = 0; i < 10; ++i) {
      DoubleRepPointd q = sample_cover<double>(spec, rng);
      CHECK(fingerprint_distance(lift_fp, fingerprint(q, spec)) > 1e-3);
    }
  }
}

TEST_CASE("fingerprint word lists are cached and spec-consistent") {
  SurfaceSpec spec{SurfaceCase::II, 1};
  RepPointd p = [&] {
    Rng rng(58);
    return sample_base<double>(spec, rng);
  }();
  Fingerprint f1 = fingerprint(p, spec);
  Fingerprint f2 = fingerprint(p, spec);
  CHECK(f1.words == f2.words);

  SurfaceSpec other{SurfaceCase::II, 2};
  RepPointd p2 = [&] {
    Rng rng(59);
    return sample_base<double>(other, rng);
  }();
  CHECK_THROWS_AS(fingerprint_distance(f1, fingerprint(p2, other)),
                  SpecMismatch);
}
