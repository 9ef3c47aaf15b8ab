#include "wedge4/twoform.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "doctest.h"

using namespace wedge4;

namespace {

TwoForm basis_form(int i) {
  TwoForm w;
  w[i] = 1.0;
  return w;
}

TwoForm random_form(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  TwoForm w;
  for (int i = 0; i < 6; ++i) w[i] = nd(rng);
  return w;
}

}  // namespace

TEST_CASE("pairing: examples and signature") {
  TwoForm w;
  w[C12] = 1.0;
  w[C34] = 1.0;
  CHECK(pairing(w, w) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(pairing(basis_form(C12), basis_form(C13)) == 0.0);

  // Gram eigenvalues are exactly {+1 x3, -1 x3}.
  Eigen::SelfAdjointEigenSolver<Mat6> es(pairing_gram());
  const Vec6 ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) CHECK(ev(i) == doctest::Approx(-1.0).epsilon(1e-14));
  for (int i = 3; i < 6; ++i) CHECK(ev(i) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pairing: symmetry and gradient consistency") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const TwoForm a = random_form(rng);
    const TwoForm b = random_form(rng);
    CHECK(pairing(a, b) == doctest::Approx(pairing(b, a)).epsilon(1e-14));
    CHECK(pairing_gradient(b).dot(a.vec()) == doctest::Approx(pairing(a, b)).epsilon(1e-13));
  }
}

TEST_CASE("sd_split: Euclidean projections") {
  const auto split = ConformalSplit::euclidean();

  auto [p0, m0] = sd_split(sd_basis()[0], split);
  CHECK((p0 - sd_basis()[0]).norm() < 1e-14);
  CHECK(m0.norm() < 1e-14);

  // An (E, E) form splits q-orthogonally: q(w) = q(w+) + q(w-).
  EBForm eb;
  eb.E = Vec3(0.3, -1.2, 0.7);
  eb.B = eb.E;
  const TwoForm w = eb.to_twoform();
  auto [wp, wm] = sd_split(w, split);
  CHECK(pairing(wp, wm) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(pairing(w, w) == doctest::Approx(pairing(wp, wp) + pairing(wm, wm)).epsilon(1e-13));
}

TEST_CASE("sd_split: perturbed split recombination and orthogonality") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd(0.0, 0.1);
  for (int trial = 0; trial < 30; ++trial) {
    Mat3 mu;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mu(i, j) = nd(rng);
    const auto split = ConformalSplit::graph(mu);
    const TwoForm w = random_form(rng);
    auto [wp, wm] = sd_split(w, split);
    CHECK((w - wp - wm).norm() <= 1e-12);
    CHECK(std::abs(pairing(wp, wm)) <= 1e-12);
    CHECK(pairing(wp, wp) >= -1e-12);
    CHECK(pairing(wm, wm) <= 1e-12);
    // Projection pair is idempotent.
    auto [wpp, wpm] = sd_split(wp, split);
    CHECK((wpp - wp).norm() <= 1e-12);
    CHECK(wpm.norm() <= 1e-12);
  }
}

TEST_CASE("negativity_margin: standard frames and graph tangents") {
  CHECK(negativity_margin(asd_basis()) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(negativity_margin(sd_basis()) == doctest::Approx(2.0).epsilon(1e-13));

  // Graph tangents {(e_k, H e_k)} with H = identity: negative margin.
  std::array<TwoForm, 3> tangents;
  for (int k = 0; k < 3; ++k) {
    EBForm eb;
    eb.E = Vec3::Unit(k);
    eb.B = Vec3::Unit(k);
    tangents[k] = eb.to_twoform();
  }
  CHECK(negativity_margin(tangents) == doctest::Approx(-2.0).epsilon(1e-13));

  // Rotation graph: margin = -2 cos(psi) (largest eigenvalue of -(R+R^T)).
  const double psi = 1.1;
  const Mat3 rot = Eigen::AngleAxisd(psi, Vec3(1, 2, -1).normalized()).toRotationMatrix();
  for (int k = 0; k < 3; ++k) {
    EBForm eb;
    eb.E = Vec3::Unit(k);
    eb.B = rot * Vec3::Unit(k);
    tangents[k] = eb.to_twoform();
  }
  CHECK(negativity_margin(tangents) == doctest::Approx(-2.0 * std::cos(psi)).epsilon(1e-12));

  std::array<TwoForm, 3> degenerate = {basis_form(C12), basis_form(C13),
                                       basis_form(C12) + basis_form(C13)};
  CHECK_THROWS_WITH_AS(negativity_margin(degenerate), "degenerate tangent frame",
                       std::invalid_argument);
}

TEST_CASE("chord_value: examples and bilinear identity") {
  const TwoForm w = basis_form(C12) + basis_form(C34);
  CHECK(chord_value(w, w) == 0.0);

  // Prescribed-square normal-form family at unit volume (q = 1):
  // omega_l = (l dx12 + 1/l dx34)/sqrt(2), chord = 2 - (l + 1/l).
  auto normal_form = [](double l) {
    TwoForm v;
    v[C12] = l / std::numbers::sqrt2;
    v[C34] = 1.0 / (l * std::numbers::sqrt2);
    return v;
  };
  CHECK(chord_value(normal_form(1.0), normal_form(2.0)) ==
        doctest::Approx(2.0 - 2.5).epsilon(1e-14));
  CHECK(chord_value(normal_form(1.0), normal_form(1.0)) == 0.0);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const TwoForm a = random_form(rng);
    const TwoForm b = random_form(rng);
    const double expanded = pairing(a, a) - 2.0 * pairing(a, b) + pairing(b, b);
    CHECK(chord_value(a, b) == doctest::Approx(expanded).epsilon(1e-12));
  }
  // Negative chords for the normal-form family, equality only at l = 1.
  for (double l : {0.1, 0.5, 0.9, 1.5, 4.0, 20.0})
    CHECK(chord_value(normal_form(1.0), normal_form(l)) < 0.0);
}

TEST_CASE("null_ray_decompose: basis forms, errors, round trip") {
  const GrassmannPoint g = null_ray_decompose(basis_form(C12));
  CHECK((g.plus - Vec3::UnitX()).norm() < 1e-14);
  CHECK((g.minus - Vec3::UnitX()).norm() < 1e-14);

  CHECK_THROWS_WITH_AS(null_ray_decompose(basis_form(C12) + basis_form(C34)), "not a 2-plane",
                       std::invalid_argument);

  // Random simple forms v^ w round-trip to a positive multiple.
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Vector4d v, u;
    for (int i = 0; i < 4; ++i) {
      v(i) = nd(rng);
      u(i) = nd(rng);
    }
    TwoForm s;
    s[C12] = v(0) * u(1) - v(1) * u(0);
    s[C13] = v(0) * u(2) - v(2) * u(0);
    s[C14] = v(0) * u(3) - v(3) * u(0);
    s[C23] = v(1) * u(2) - v(2) * u(1);
    s[C24] = v(1) * u(3) - v(3) * u(1);
    s[C34] = v(2) * u(3) - v(3) * u(2);
    if (s.norm() < 1e-3) continue;
    const GrassmannPoint p = null_ray_decompose(s);
    const TwoForm back = p.form();
    const double scale = s.vec().dot(back.vec()) / back.vec().squaredNorm();
    CHECK(scale > 0.0);
    CHECK((s - scale * back).norm() <= 1e-10 * s.norm());
  }
}

TEST_CASE("taming_check: Kahler form vs complex lines") {
  const TwoForm kahler = basis_form(C12) + basis_form(C34);
  const auto lines = standard_complex_lines(200);

  auto [tamed, margin] = taming_check(kahler, lines);
  CHECK(tamed);
  CHECK(margin == doctest::Approx(1.0).epsilon(1e-12));

  // Orientation-reversed plane fails.
  GrassmannPoint rev = lines[0];
  rev.plus = -rev.plus;
  rev.minus = -rev.minus;
  auto [tamed2, margin2] = taming_check(kahler, {rev});
  CHECK(!tamed2);
  CHECK(margin2 < 0.0);

  // An ASD form cannot tame the complex lines: the plane span(dx3, dx4)
  // (null form dx12) pairs negatively.
  const TwoForm asd = basis_form(C12) - basis_form(C34);
  auto [tamed3, margin3] = taming_check(asd, lines);
  CHECK(!tamed3);
  CHECK(margin3 <= 0.0);

  CHECK_THROWS_AS(taming_check(kahler, {}), std::invalid_argument);
}

TEST_CASE("plane_from_span matches the kernel convention") {
  // span(e3, e4) corresponds to the null form dx12.
  const GrassmannPoint g = plane_from_span(Eigen::Vector4d::Unit(2), Eigen::Vector4d::Unit(3));
  CHECK((g.form() - basis_form(C12)).norm() < 1e-14);
  // Omega(e3, e4) has the sign of pairing(Omega, theta).
  const TwoForm omega = basis_form(C12) - basis_form(C34);
  CHECK(pairing(omega, g.form()) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("moment_maps: standard triple") {
  const std::array<TwoForm, 3> theta = sd_basis();
  CHECK((moment_maps(theta, theta[0]) - Vec3(1, 0, 0)).norm() < 1e-14);
  CHECK((moment_maps(theta, theta[0] + theta[1]) - Vec3(0.5, 0.5, 0)).norm() < 1e-14);
  CHECK((moment_maps(theta, 2.0 * theta[0]) - Vec3(0.5, 0, 0)).norm() < 1e-14);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const TwoForm w = random_form(rng);
    if (std::abs(pairing(w, w)) < 1e-6) continue;
    const double s = 0.25 + trial * 0.1;
    CHECK((moment_maps(theta, s * w) - moment_maps(theta, w) / s).norm() < 1e-10);
  }

  CHECK_THROWS_WITH_AS(moment_maps(theta, basis_form(C12)), "null form", std::invalid_argument);
}
