#include "wedge4/twoform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wedge4 {

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  for (int i = 0; i < 6; ++i) c[i] += o.c[i];
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& o) {
  for (int i = 0; i < 6; ++i) c[i] -= o.c[i];
  return *this;
}

TwoForm& TwoForm::operator*=(double s) {
  for (double& x : c) x *= s;
  return *this;
}

Vec6 TwoForm::vec() const {
  Vec6 v;
  for (int i = 0; i < 6; ++i) v(i) = c[i];
  return v;
}

TwoForm TwoForm::from_vec(const Vec6& v) {
  TwoForm w;
  for (int i = 0; i < 6; ++i) w.c[i] = v(i);
  return w;
}

double TwoForm::norm() const {
  double s = 0.0;
  for (double x : c) s += x * x;
  return std::sqrt(s);
}

TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
TwoForm operator*(double s, TwoForm a) { return a *= s; }

double pairing(const TwoForm& w, const TwoForm& w2) {
  return w[C12] * w2[C34] + w[C34] * w2[C12]
       - w[C13] * w2[C24] - w[C24] * w2[C13]
       + w[C14] * w2[C23] + w[C23] * w2[C14];
}

Vec6 pairing_gradient(const TwoForm& w2) {
  Vec6 g;
  g(C12) = w2[C34];
  g(C13) = -w2[C24];
  g(C14) = w2[C23];
  g(C23) = w2[C14];
  g(C24) = -w2[C13];
  g(C34) = w2[C12];
  return g;
}

Mat6 pairing_gram() {
  Mat6 g = Mat6::Zero();
  g(C12, C34) = g(C34, C12) = 1.0;
  g(C13, C24) = g(C24, C13) = -1.0;
  g(C14, C23) = g(C23, C14) = 1.0;
  return g;
}

double chord_value(const TwoForm& w, const TwoForm& w2) {
  const TwoForm d = w - w2;
  return pairing(d, d);
}

TwoForm hodge_star(const TwoForm& w) {
  TwoForm s;
  s[C12] = w[C34];
  s[C13] = -w[C24];
  s[C14] = w[C23];
  s[C23] = w[C14];
  s[C24] = -w[C13];
  s[C34] = w[C12];
  return s;
}

namespace {

TwoForm make_form(double c12, double c13, double c14, double c23, double c24, double c34) {
  TwoForm w;
  w.c = {c12, c13, c14, c23, c24, c34};
  return w;
}

}  // namespace

const std::array<TwoForm, 3>& sd_basis() {
  static const std::array<TwoForm, 3> b = {
      make_form(1, 0, 0, 0, 0, 1),
      make_form(0, 1, 0, 0, -1, 0),
      make_form(0, 0, 1, 1, 0, 0),
  };
  return b;
}

const std::array<TwoForm, 3>& asd_basis() {
  static const std::array<TwoForm, 3> b = {
      make_form(1, 0, 0, 0, 0, -1),
      make_form(0, 1, 0, 0, 1, 0),
      make_form(0, 0, 1, -1, 0, 0),
  };
  return b;
}

EBForm EBForm::from_twoform(const TwoForm& w) {
  EBForm eb;
  eb.E = Vec3(w[C14], w[C24], w[C34]);
  eb.B = Vec3(-w[C23], w[C13], -w[C12]);
  return eb;
}

TwoForm EBForm::to_twoform() const {
  TwoForm w;
  w[C14] = E(0);
  w[C24] = E(1);
  w[C34] = E(2);
  w[C23] = -B(0);
  w[C13] = B(1);
  w[C12] = -B(2);
  return w;
}

namespace {

Mat6 frame_matrix(const std::array<TwoForm, 3>& plus, const std::array<TwoForm, 3>& minus) {
  Mat6 f;
  for (int k = 0; k < 3; ++k) {
    f.col(k) = plus[k].vec();
    f.col(3 + k) = minus[k].vec();
  }
  return f;
}

}  // namespace

ConformalSplit ConformalSplit::euclidean() {
  ConformalSplit s;
  s.basis_plus = sd_basis();
  s.basis_minus = asd_basis();
  s.mu = Mat3::Zero();
  s.inv_frame_ = frame_matrix(s.basis_plus, s.basis_minus).inverse();
  return s;
}

ConformalSplit ConformalSplit::graph(const Mat3& mu) {
  ConformalSplit s;
  s.mu = mu;
  // minus[i] = asd_i + sum_j mu_ji sd_j; plus is the pairing-orthogonal
  // complement, spanned by sd_k + sum_i mu_ki asd_i.
  for (int i = 0; i < 3; ++i) {
    TwoForm m = asd_basis()[i];
    for (int j = 0; j < 3; ++j) m += mu(j, i) * sd_basis()[j];
    s.basis_minus[i] = m;
  }
  for (int k = 0; k < 3; ++k) {
    TwoForm p = sd_basis()[k];
    for (int i = 0; i < 3; ++i) p += mu(k, i) * asd_basis()[i];
    s.basis_plus[k] = p;
  }
  // Definiteness: on the graph, q(s + mu s) = -2|s|^2 + 2|mu s|^2.
  Eigen::SelfAdjointEigenSolver<Mat3> es(mu.transpose() * mu);
  if (es.eigenvalues().maxCoeff() >= 1.0)
    throw std::invalid_argument("conformal split: |mu| >= 1, graph not negative");
  s.inv_frame_ = frame_matrix(s.basis_plus, s.basis_minus).inverse();
  return s;
}

void ConformalSplit::coordinates(const TwoForm& w, Vec3& plus, Vec3& minus) const {
  const Vec6 x = inv_frame_ * w.vec();
  plus = x.head<3>();
  minus = x.tail<3>();
}

std::pair<TwoForm, TwoForm> sd_split(const TwoForm& w, const ConformalSplit& split) {
  Vec3 p, m;
  split.coordinates(w, p, m);
  TwoForm wp, wm;
  for (int k = 0; k < 3; ++k) {
    wp += p(k) * split.basis_plus[k];
    wm += m(k) * split.basis_minus[k];
  }
  return {wp, wm};
}

double negativity_margin(const std::array<TwoForm, 3>& tangents) {
  Eigen::Matrix<double, 6, 3> t;
  for (int k = 0; k < 3; ++k) t.col(k) = tangents[k].vec();

  // Orthonormalize (Euclidean) and rescale by sqrt(2) so the standard
  // SD/ASD frames give Gram exactly +-2 I.
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 3>> svd(t, Eigen::ComputeFullU);
  if (svd.singularValues()(2) <= 1e-12 * svd.singularValues()(0))
    throw std::invalid_argument("degenerate tangent frame");
  const Eigen::Matrix<double, 6, 3> q =
      std::numbers::sqrt2 * svd.matrixU().leftCols<3>();

  const Mat3 gram = q.transpose() * pairing_gram() * q;
  Eigen::SelfAdjointEigenSolver<Mat3> es(gram);
  return es.eigenvalues().maxCoeff();
}

TwoForm GrassmannPoint::form() const {
  TwoForm w;
  for (int k = 0; k < 3; ++k) {
    w += 0.5 * plus(k) * sd_basis()[k];
    w += 0.5 * minus(k) * asd_basis()[k];
  }
  return w;
}

GrassmannPoint null_ray_decompose(const TwoForm& w, double tol) {
  const double n2 = w.vec().squaredNorm();
  if (n2 == 0.0) throw std::invalid_argument("not a 2-plane");
  if (std::abs(pairing(w, w)) > tol * n2) throw std::invalid_argument("not a 2-plane");

  const auto [wp, wm] = sd_split(w, ConformalSplit::euclidean());
  GrassmannPoint g;
  // Unit basis coordinates: sd_basis forms have Euclidean norm sqrt(2).
  for (int k = 0; k < 3; ++k) {
    g.plus(k) = 0.5 * wp.vec().dot(sd_basis()[k].vec());
    g.minus(k) = 0.5 * wm.vec().dot(asd_basis()[k].vec());
  }
  const double np = g.plus.norm();
  const double nm = g.minus.norm();
  if (np == 0.0 || nm == 0.0) throw std::invalid_argument("not a 2-plane");
  g.plus /= np;
  g.minus /= nm;
  return g;
}

GrassmannPoint plane_from_span(const Eigen::Vector4d& v, const Eigen::Vector4d& w) {
  TwoForm s;  // v^ w in components
  s[C12] = v(0) * w(1) - v(1) * w(0);
  s[C13] = v(0) * w(2) - v(2) * w(0);
  s[C14] = v(0) * w(3) - v(3) * w(0);
  s[C23] = v(1) * w(2) - v(2) * w(1);
  s[C24] = v(1) * w(3) - v(3) * w(1);
  s[C34] = v(2) * w(3) - v(3) * w(2);
  return null_ray_decompose(hodge_star(s));
}

std::pair<bool, double> taming_check(const TwoForm& omega, const std::vector<GrassmannPoint>& planes) {
  if (planes.empty()) throw std::invalid_argument("taming check: empty plane sample");
  double worst = std::numeric_limits<double>::infinity();
  for (const GrassmannPoint& g : planes) worst = std::min(worst, pairing(omega, g.form()));
  return {worst > 0.0, worst};
}

std::vector<GrassmannPoint> standard_complex_lines(int m) {
  // Fibonacci sphere over S^2_-; the SD factor stays at e1.
  std::vector<GrassmannPoint> lines;
  lines.reserve(static_cast<size_t>(m));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < m; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / m;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    GrassmannPoint g;
    g.plus = Vec3::UnitX();
    g.minus = Vec3(r * std::cos(phi), r * std::sin(phi), z);
    lines.push_back(g);
  }
  return lines;
}

Vec3 moment_maps(const std::array<TwoForm, 3>& theta, const TwoForm& w) {
  const double q = pairing(w, w);
  if (q == 0.0) throw std::invalid_argument("null form");
  return Vec3(pairing(theta[0], w), pairing(theta[1], w), pairing(theta[2], w)) / q;
}

}  // namespace wedge4
