#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

// Pointwise algebra of 2-forms on an oriented R^4: the wedge pairing of
// signature (3,3), self-dual/anti-self-dual splittings, negativity and
// taming predicates, and the null-ray (Grassmannian) picture.
//
// Conventions, fixed once for the whole project:
//   * volume form  vol = dx1^dx2^dx3^dx4,
//   * component order  (c12, c13, c14, c23, c24, c34),
//   * "unit" SD/ASD basis forms have self-pairing +2 / -2,
//   * (E,B) view:  E_i = c_{i4},  B_i = -1/2 eps_{ijk} c_{jk}, so that a
//     graph fiber B = F(E) has negative tangents exactly when HF + HF^T > 0.

namespace wedge4 {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat36 = Eigen::Matrix<double, 3, 6>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// A point of Lambda^2 R^4 in the fixed lexicographic basis.
struct TwoForm {
  std::array<double, 6> c{};  // c12, c13, c14, c23, c24, c34

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  TwoForm& operator+=(const TwoForm& o);
  TwoForm& operator-=(const TwoForm& o);
  TwoForm& operator*=(double s);

  Vec6 vec() const;
  static TwoForm from_vec(const Vec6& v);

  /// Euclidean coefficient norm (not the wedge pairing).
  double norm() const;
};

TwoForm operator+(TwoForm a, const TwoForm& b);
TwoForm operator-(TwoForm a, const TwoForm& b);
TwoForm operator*(double s, TwoForm a);

// Component indices in the fixed order.
enum : int { C12 = 0, C13 = 1, C14 = 2, C23 = 3, C24 = 4, C34 = 5 };

/// Wedge pairing: w ^ w2 = pairing(w, w2) * vol. Symmetric, signature (3,3).
double pairing(const TwoForm& w, const TwoForm& w2);

/// Gradient of w |-> pairing(w, w2) as a 6-vector (the Gram matrix row).
Vec6 pairing_gradient(const TwoForm& w2);

/// The 6x6 Gram matrix of the pairing in the component basis.
Mat6 pairing_gram();

/// pairing(w - w2, w - w2); the quantity behind the negative-chord condition.
double chord_value(const TwoForm& w, const TwoForm& w2);

/// Euclidean Hodge star on components (star of dx12 is dx34, etc.).
TwoForm hodge_star(const TwoForm& w);

// Standard SD/ASD bases, normalized to self-pairing +-2:
//   sd:  dx12+dx34, dx13-dx24, dx14+dx23
//   asd: dx12-dx34, dx13+dx24, dx14-dx23
const std::array<TwoForm, 3>& sd_basis();
const std::array<TwoForm, 3>& asd_basis();

/// Electric/magnetic view of a 2-form for the (x1,x2,x3,t=x4) split.
struct EBForm {
  Vec3 E{Vec3::Zero()};
  Vec3 B{Vec3::Zero()};

  static EBForm from_twoform(const TwoForm& w);
  TwoForm to_twoform() const;
};

/// A conformal structure presented by its maximal positive/negative
/// subspaces of the pairing, each spanned by three forms.
///
/// The Euclidean split has basis sd_basis()/asd_basis(); a perturbed split
/// is the graph {s + mu s : s in asd} over the Euclidean one, with the
/// positive subspace taken as the pairing-orthogonal complement.
struct ConformalSplit {
  std::array<TwoForm, 3> basis_plus;
  std::array<TwoForm, 3> basis_minus;
  Mat3 mu{Mat3::Zero()};

  static ConformalSplit euclidean();

  /// Graph split over the Euclidean one; throws if the graph fails to be
  /// negative definite (|mu| too large).
  static ConformalSplit graph(const Mat3& mu);

  /// Coordinates of w in the (basis_plus, basis_minus) frame.
  void coordinates(const TwoForm& w, Vec3& plus, Vec3& minus) const;

 private:
  Mat6 inv_frame_;  // cached inverse of the 6x6 frame matrix
  friend std::pair<TwoForm, TwoForm> sd_split(const TwoForm&, const ConformalSplit&);
};

/// Splits w = w_plus + w_minus along the given conformal structure.
std::pair<TwoForm, TwoForm> sd_split(const TwoForm& w, const ConformalSplit& split);

/// Largest eigenvalue of the pairing Gram matrix on span(tangents), the
/// tangent frame first being orthonormalized and rescaled so that "unit"
/// SD/ASD frames give exactly +-2. Negative tangents <=> result < 0.
/// Throws std::invalid_argument("degenerate tangent frame") if rank < 3.
double negativity_margin(const std::array<TwoForm, 3>& tangents);

/// A point of Gr2(R^4), identified with a null ray: unit vectors in the SD
/// and ASD coordinate spheres. The represented null form is
/// (plus . sd_basis + minus . asd_basis) / 2, so dx1^dx2 has plus = minus = e1.
struct GrassmannPoint {
  Vec3 plus{Vec3::UnitX()};
  Vec3 minus{Vec3::UnitX()};

  TwoForm form() const;
};

/// Decomposes a nonzero null (decomposable) 2-form into its Grassmann point.
/// Throws std::invalid_argument("not a 2-plane") if |pairing(w,w)| exceeds
/// tol * |w|^2 in the Euclidean coefficient norm.
GrassmannPoint null_ray_decompose(const TwoForm& w, double tol = 1e-9);

/// The oriented 2-plane span(v, w) as a Grassmann point. Under the rank-two
/// form -> kernel identification the plane corresponds to the null form
/// *(v^ w), whose kernel is span(v, w); with this convention
/// pairing(Omega, theta) = Omega(v, w) for orthonormal v, w.
GrassmannPoint plane_from_span(const Eigen::Vector4d& v, const Eigen::Vector4d& w);

/// Taming margins of Omega against a finite sample of 2-planes:
/// min over planes of pairing(Omega, theta). Tamed iff the min is > 0.
/// Throws std::invalid_argument on an empty sample.
std::pair<bool, double> taming_check(const TwoForm& omega, const std::vector<GrassmannPoint>& planes);

/// Complex lines of the standard structure (the prototype negative surface
/// {sd = e1} x S^2_-), sampled deterministically with m points.
std::vector<GrassmannPoint> standard_complex_lines(int m);

/// Hyperkahler moment-map values mu_i = pairing(theta_i, w) / pairing(w, w).
/// Throws std::invalid_argument("null form") when pairing(w,w) = 0.
Vec3 moment_maps(const std::array<TwoForm, 3>& theta, const TwoForm& w);

}  // namespace wedge4
