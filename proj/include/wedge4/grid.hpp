#pragma once

#include "wedge4/twoform.hpp"

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

// Fourier-spectral calculus on the flat unit torus T^3 / T^4: exact
// differentiation of resolved modes, exterior derivative and codifferential,
// integrals, periodic balls, and the W4F1 field file format.
//
// Differentiation zeroes the Nyquist mode of each axis in odd-order
// derivatives, which keeps real fields real and d/d* exactly skew-adjoint.

namespace wedge4 {

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// A periodic grid on the unit torus, dim 3 or 4, with cached FFT plans.
/// Axis sizes must be even; they may differ per axis (reduced-resolution
/// axes for problems with symmetry). Total volume is 1.
class Grid {
 public:
  static GridPtr make(int dim, int n);
  static GridPtr make(const std::vector<int>& n_per_axis);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return dim_; }
  int n(int axis) const { return n_[static_cast<size_t>(axis)]; }
  bool uniform() const;
  size_t npoints() const { return npts_; }
  size_t nspec() const { return nspec_; }
  double cell_volume() const { return cellvol_; }

  size_t index(const std::array<int, 4>& idx) const;  // periodic wrap
  std::array<int, 4> coords(size_t flat) const;
  std::array<double, 4> position(size_t flat) const;

  /// Real-to-complex transform (half spectrum along the last axis).
  void forward(const double* in, std::complex<double>* out) const;
  /// Inverse transform, normalized so inverse(forward(f)) = f.
  void inverse(const std::complex<double>* in, double* out) const;

  /// Signed integer frequencies of a spectral index, per axis.
  void spectral_freq(size_t spec, std::array<int, 4>& m) const;

 private:
  explicit Grid(const std::vector<int>& n_per_axis);

  int dim_ = 0;
  std::array<int, 4> n_{1, 1, 1, 1};
  size_t npts_ = 0;
  size_t nspec_ = 0;
  double cellvol_ = 0.0;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
};

struct ScalarField {
  GridPtr grid;
  std::vector<double> v;

  static ScalarField zeros(const GridPtr& g);
  /// Samples fn at grid positions.
  static ScalarField sample(const GridPtr& g, const std::function<double(const std::array<double, 4>&)>& fn);
};

/// A 1-form field; dim components, component-outermost storage.
struct OneFormField {
  GridPtr grid;
  std::vector<double> v;

  static OneFormField zeros(const GridPtr& g);
  int ncomp() const { return grid->dim(); }
  std::span<double> comp(int k);
  std::span<const double> comp(int k) const;
};

/// A Lambda^2 R^4-valued field (6 components, order c12..c34) over a grid of
/// dim 3 (t-invariant picture) or dim 4.
struct TwoFormField {
  GridPtr grid;
  std::vector<double> v;

  static TwoFormField zeros(const GridPtr& g);
  static TwoFormField constant(const GridPtr& g, const TwoForm& w);
  int ncomp() const { return 6; }
  std::span<double> comp(int k);
  std::span<const double> comp(int k) const;

  TwoForm at(size_t flat) const;
  void set(size_t flat, const TwoForm& w);
};

/// Components of a 3-form on R^4 (order 123, 124, 134, 234); dim-4 grids.
struct ThreeFormField {
  GridPtr grid;
  std::vector<double> v;

  int ncomp() const { return 4; }
  std::span<double> comp(int k);
  std::span<const double> comp(int k) const;
};

// Scalar calculus (any dim).
ScalarField partial(const ScalarField& f, int axis);
OneFormField grad(const ScalarField& f);
ScalarField divergence(const OneFormField& a);
ScalarField dstar1(const OneFormField& a);  // = -divergence
/// Solves Laplace u = f with zero mean (the k = 0 mode of f is discarded).
ScalarField inv_laplacian(const ScalarField& f);
void project_zero_mean(ScalarField& f);
void project_zero_mean(OneFormField& a);

// Exterior calculus valued in Lambda^2 R^4 (dim-4 grids only).
TwoFormField d1(const OneFormField& a);
ThreeFormField d2(const TwoFormField& w);
OneFormField dstar2(const TwoFormField& w);

// Integrals and norms (pairwise-tree reductions; volume 1).
double integrate(const ScalarField& f);
double inner(const ScalarField& f, const ScalarField& g);
double inner(const OneFormField& a, const OneFormField& b);
double inner(const TwoFormField& w, const TwoFormField& w2);
double sup_norm(const ScalarField& f);
double sup_norm(const OneFormField& a);
double sup_norm(const TwoFormField& w);
/// sup over grid points of the Euclidean coefficient norm |w(x)|.
double sup_pointwise_norm(const TwoFormField& w);

/// Pointwise wedge pairing as a scalar field.
ScalarField pointwise_pairing(const TwoFormField& w, const TwoFormField& w2);
/// integral of the pointwise pairing; grids must match.
double wedge_integral(const TwoFormField& w, const TwoFormField& w2);

// Pointwise Euclidean SD/ASD projections.
TwoFormField sd_part(const TwoFormField& w);
TwoFormField asd_part(const TwoFormField& w);

/// Componentwise mean: the harmonic (constant) representative of [w].
TwoForm harmonic_parts(const TwoFormField& w);

/// Axis-aligned periodic Euclidean ball; r <= 1/4 so it cannot wrap.
struct Ball {
  std::array<int, 4> center{0, 0, 0, 0};
  double radius = 0.0;
};

/// Visits every grid point with periodic distance <= r from the center;
/// fn(flat_index, distance). Throws if r <= 0 or r > 1/4.
void for_each_ball_point(const Grid& g, const Ball& ball,
                         const std::function<void(size_t, double)>& fn);
double ball_integral(const ScalarField& f, const Ball& ball);
/// max over components of (max - min) over the ball.
double oscillation(const TwoFormField& w, const Ball& ball);

// Spectral-side helpers for the solvers.
struct Spectrum {
  GridPtr grid;
  std::vector<std::complex<double>> v;
};
Spectrum forward(const ScalarField& f);
ScalarField inverse(const Spectrum& s);
/// d^2/dx_a dx_b from a cached spectrum (Nyquist zeroed on odd factors).
ScalarField second_partial(const Spectrum& s, int a, int b);
ScalarField partial(const Spectrum& s, int axis);

// Seeded band-limited random fields: modes with |m_axis| < kmax, unit-scale
// normal amplitudes. Deterministic for a given rng state.
ScalarField random_band_limited(const GridPtr& g, std::mt19937_64& rng, int kmax);
OneFormField random_band_limited_oneform(const GridPtr& g, std::mt19937_64& rng, int kmax);

// W4F1 field files: magic "W4F1", u16 version=1, u8 dim, u8 ncomp, u32 n,
// float64 data little-endian, row-major, component-outermost. Uniform grids
// only (the format stores a single n).
void save_w4f1(const std::string& path, const GridPtr& grid, int ncomp,
               std::span<const double> data);
void save_w4f1(const std::string& path, const ScalarField& f);
void save_w4f1(const std::string& path, const OneFormField& f);
void save_w4f1(const std::string& path, const TwoFormField& f);

struct LoadedField {
  GridPtr grid;
  int ncomp = 0;
  std::vector<double> data;
};
LoadedField load_w4f1(const std::string& path);

}  // namespace wedge4
