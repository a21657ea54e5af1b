#include <cmath>

#include "doctest.h"
#include "goldman/su2.hpp"

using namespace goldman;

namespace {
const double pi = 3.14159265358979323846;

Su2d torus(double alpha) { return Su2d(std::cos(alpha), std::sin(alpha), 0, 0); }
}  // namespace

TEST_CASE("quaternion product equals 2x2 matrix product") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    Su2d g = haar_sample<double>(rng);
    Su2d h = haar_sample<double>(rng);
    Mat2c<double> prod = g.matrix() * h.matrix();
    CHECK((prod - (g * h).matrix()).norm() < 1e-14);
    CHECK((g.matrix() * g.inverse().matrix() - Mat2c<double>::Identity())
              .norm() < 1e-14);
    CHECK(std::abs(g.trace() - g.matrix().trace().real()) < 1e-14);
  }
}

TEST_CASE("left and right multiplication matrices") {
  Rng rng(102);
  for (int i = 0; i < 20; ++i) {
    Su2d g = haar_sample<double>(rng);
    Su2d v = haar_sample<double>(rng);
    CHECK((left_mul_matrix(g) * v.coords() - (g * v).coords()).norm() < 1e-14);
    CHECK((right_mul_matrix(g) * v.coords() - (v * g).coords()).norm() <
          1e-14);
  }
}

TEST_CASE("pairing normalization: -tr(EiEj)/2 is the Kronecker delta") {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      LieVecd ei = LieVecd::Zero(), ej = LieVecd::Zero();
      ei[i] = 1;
      ej[j] = 1;
      std::complex<double> tr = (lie_matrix(ei) * lie_matrix(ej)).trace();
      CHECK(std::abs(-0.5 * tr.real() - (i == j ? 1.0 : 0.0)) < 1e-15);
      CHECK(std::abs(tr.imag()) < 1e-15);
    }
}

TEST_CASE("exponential map special values") {
  CHECK(exp_map(LieVecd(0, 0, 0)).distance(Su2d::identity()) == 0.0);
  CHECK(exp_map(LieVecd(pi, 0, 0)).distance(Su2d::minus_identity()) < 1e-15);
  CHECK(std::abs(exp_map(LieVecd(pi / 2, 0, 0)).trace()) < 1e-15);
}

TEST_CASE("exponential map agrees with a 20-term power series") {
  Rng rng(103);
  for (int i = 0; i < 30; ++i) {
    LieVecd v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    Mat2c<double> x = lie_matrix(v);
    Mat2c<double> series = Mat2c<double>::Identity();
    Mat2c<double> term = Mat2c<double>::Identity();
    for (int n = 1; n <= 20; ++n) {
      term = term * x / double(n);
      series += term;
    }
    CHECK((exp_map(v).matrix() - series).norm() < 1e-13);
  }
}

TEST_CASE("angle of a torus element") {
  CHECK(rotation_angle(torus(pi / 3)) == doctest::Approx(pi / 3).epsilon(1e-14));
  Su2d zero_trace = exp_map(LieVecd(pi / 2, 0, 0));
  CHECK(rotation_angle(zero_trace) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK_THROWS_AS(rotation_angle(Su2d::identity()), DegenerateElement);
  CHECK_THROWS_AS(rotation_angle(Su2d::minus_identity()), DegenerateElement);
}

TEST_CASE("angle is conjugation invariant") {
  Rng rng(104);
  for (int i = 0; i < 100; ++i) {
    Su2d g = haar_sample<double>(rng);
    if (g.is_central(1e-6)) continue;
    Su2d x = haar_sample<double>(rng);
    CHECK(std::abs(rotation_angle(g.conjugated_by(x)) - rotation_angle(g)) <
          1e-12);
  }
}

TEST_CASE("principal log of torus elements") {
  LieVecd l = principal_log(Su2d(0, 1, 0, 0));
  CHECK((l - LieVecd(pi / 2, 0, 0)).norm() < 1e-14);
  CHECK(std::abs(principal_log(torus(0.3)).norm() - 0.3) < 1e-14);
}

TEST_CASE("log and exp round trip") {
  Rng rng(105);
  for (int i = 0; i < 200; ++i) {
    Su2d g = haar_sample<double>(rng);
    if (std::abs(g.trace()) >= 2 - 1e-6) continue;
    LieVecd l = principal_log(g);
    CHECK(l.norm() < pi);
    CHECK(exp_map(l).distance(g) < 1e-12);
  }
}

TEST_CASE("angle gradient on the torus is the first basis direction") {
  for (double alpha : {0.2, 1.0, pi / 2, 2.9}) {
    CHECK((angle_gradient(torus(alpha)) - LieVecd(1, 0, 0)).norm() < 1e-12);
  }
}

TEST_CASE("angle gradient: closed forms agree, unit norm, commutes") {
  Rng rng(106);
  for (int i = 0; i < 100; ++i) {
    Su2d g = haar_sample<double>(rng);
    if (std::abs(g.trace()) >= 2 - 1e-3) continue;
    LieVecd grad = angle_gradient(g);
    CHECK(std::abs(grad.norm() - 1.0) < 1e-12);

    LieVecd quotient = 2.0 * g.vec() / std::sqrt(4.0 - g.trace() * g.trace());
    CHECK((quotient - grad).norm() < 1e-12);
    CHECK((principal_log(g).normalized() - grad).norm() < 1e-12);

    Su2d gm = Su2d::from_raw(
        Eigen::Vector4d(0, grad[0], grad[1], grad[2]));
    CHECK((gm * g).distance(g * gm) < 1e-12);
  }
}

TEST_CASE("angle gradient is equivariant under conjugation") {
  Rng rng(107);
  for (int i = 0; i < 100; ++i) {
    Su2d g = haar_sample<double>(rng);
    if (std::abs(g.trace()) >= 2 - 1e-3) continue;
    Su2d x = haar_sample<double>(rng);
    LieVecd grad = angle_gradient(g);
    Su2d gm = Su2d::from_raw(Eigen::Vector4d(0, grad[0], grad[1], grad[2]));
    LieVecd pushed = (x * gm * x.inverse()).vec();
    CHECK((angle_gradient(g.conjugated_by(x)) - pushed).norm() < 1e-12);
    // x on the axis of g fixes the gradient
    Su2d on_axis = twist(g, 0.77);
    CHECK((angle_gradient(g.conjugated_by(on_axis)) - grad).norm() < 1e-12);
  }
}

TEST_CASE("twist special values and subgroup law") {
  Rng rng(108);
  for (int i = 0; i < 50; ++i) {
    Su2d g = haar_sample<double>(rng);
    if (std::abs(g.trace()) >= 2 - 1e-3) continue;
    CHECK(twist(g, 0.0).distance(Su2d::identity()) == 0.0);
    CHECK(twist(g, pi).distance(Su2d::minus_identity()) < 1e-14);
    CHECK(twist(g, 2 * pi).distance(Su2d::identity()) < 1e-14);
    double t = rng.uniform(-6, 6), s = rng.uniform(-6, 6);
    CHECK((twist(g, t) * twist(g, s)).distance(twist(g, t + s)) < 1e-13);
    CHECK((twist(g, t) * g).distance(g * twist(g, t)) < 1e-13);
  }
}

TEST_CASE("twist of the diagonal torus is the explicit circle") {
  Su2d c(0, 1, 0, 0);
  for (double t : {0.3, 1.7, -2.2}) {
    CHECK(twist(c, t).distance(torus(t)) < 1e-15);
  }
}

TEST_CASE("principal square root") {
  CHECK(principal_sqrt(Su2d::identity()).distance(Su2d::identity()) == 0.0);
  CHECK(principal_sqrt(Su2d::minus_identity()).distance(Su2d(0, 1, 0, 0)) <
        1e-15);
  CHECK(principal_sqrt(Su2d(0, 1, 0, 0)).distance(torus(pi / 4)) < 1e-15);
  Rng rng(109);
  for (int i = 0; i < 200; ++i) {
    Su2d g = haar_sample<double>(rng);
    Su2d r = principal_sqrt(g);
    CHECK((r * r).distance(g) < 1e-12);
  }
}

TEST_CASE("conjugator solves the axis transport problem") {
  Su2d p = torus(0.9);
  CHECK(conjugator(p, p).distance(Su2d::identity()) < 1e-14);

  Su2d q(std::cos(0.9), 0, std::sin(0.9), 0);
  Su2d x = conjugator(p, q);
  CHECK((x * p * x.inverse()).distance(q) < 1e-12);

  Rng rng(110);
  for (int i = 0; i < 100; ++i) {
    Su2d g = haar_sample<double>(rng);
    if (g.is_central(1e-6)) continue;
    Su2d y = haar_sample<double>(rng);
    Su2d target = g.conjugated_by(y);
    Su2d found = conjugator(g, target);
    CHECK((found * g * found.inverse()).distance(target) < 1e-10);
  }

  // antipodal axes take the pinned tie-break branch
  Su2d a = torus(1.1);
  Su2d b = torus(-1.1);
  Su2d w = conjugator(a, b);
  CHECK((w * a * w.inverse()).distance(b) < 1e-12);

  CHECK_THROWS_AS(conjugator(torus(0.5), torus(1.0)), TraceMismatch);
}

TEST_CASE("haar sampling: frozen seed, determinism, mean trace") {
  Rng rng(42);
  Su2d g = haar_sample<double>(rng);
  CHECK(g.coords()[0] == doctest::Approx(0.23352234740535252).epsilon(1e-16));
  CHECK(g.coords()[1] == doctest::Approx(0.36751481198019248).epsilon(1e-16));
  CHECK(g.coords()[2] == doctest::Approx(-0.50220748350689348).epsilon(1e-16));
  CHECK(g.coords()[3] == doctest::Approx(0.7471196823448909).epsilon(1e-16));

  Rng r1(7), r2(7);
  for (int i = 0; i < 10; ++i) {
    CHECK(haar_sample<double>(r1).bitwise_equal(haar_sample<double>(r2)));
  }

  // Var(trace) = 1 under Haar, so the mean of 1e4 draws sits within
  // 5/sqrt(1e4) = 0.05 of zero except with negligible probability
  Rng rng_mc(2026);
  double sum = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) sum += haar_sample<double>(rng_mc).trace();
  CHECK(std::abs(sum / n) < 0.05);
}

TEST_CASE("validating constructor enforces the norm window") {
  CHECK_THROWS_AS(Su2d(1.1, 0, 0, 0), InvalidElement);
  CHECK_THROWS_AS(Su2d(0, 0, 0, 0), InvalidElement);
  Su2d ok(1.0 + 1e-7, 0, 0, 0);
  CHECK(std::abs(ok.coords().norm() - 1.0) < 1e-15);
}

TEST_CASE("derived seeds decorrelate trial streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(3, 1, 2) != derive_seed(3, 2, 1));
}
