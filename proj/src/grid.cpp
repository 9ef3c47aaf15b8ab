#include "wedge4/grid.hpp"

#include "wedge4/reduce.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little, "W4F1 writer assumes little-endian host");

namespace wedge4 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// Pair order (i<j) matching the TwoForm component order for dim 4.
constexpr int kPair4[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
// Triples (i<j<k) for 3-form components on R^4.
constexpr int kTriple4[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

int pair_index4(int i, int j) {  // requires i < j
  for (int p = 0; p < 6; ++p)
    if (kPair4[p][0] == i && kPair4[p][1] == j) return p;
  return -1;
}

void require_dim4(const Grid& g, const char* op) {
  if (g.dim() != 4) throw std::invalid_argument(std::string(op) + ": requires a dim-4 grid");
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  bool ok = a->dim() == b->dim();
  for (int i = 0; ok && i < a->dim(); ++i) ok = a->n(i) == b->n(i);
  if (!ok) throw std::invalid_argument("grid mismatch");
}

}  // namespace

Grid::Grid(const std::vector<int>& n_per_axis) {
  dim_ = static_cast<int>(n_per_axis.size());
  if (dim_ != 3 && dim_ != 4) throw std::invalid_argument("grid: dim must be 3 or 4");
  npts_ = 1;
  for (int a = 0; a < dim_; ++a) {
    const int n = n_per_axis[static_cast<size_t>(a)];
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("grid: axis sizes must be even and >= 2");
    n_[static_cast<size_t>(a)] = n;
    npts_ *= static_cast<size_t>(n);
  }
  cellvol_ = 1.0 / static_cast<double>(npts_);
  nspec_ = npts_ / static_cast<size_t>(n_[static_cast<size_t>(dim_ - 1)]) *
           static_cast<size_t>(n_[static_cast<size_t>(dim_ - 1)] / 2 + 1);

  std::lock_guard<std::mutex> lock(plan_mutex());
  std::vector<double> rbuf(npts_);
  std::vector<std::complex<double>> cbuf(nspec_);
  int dims[4];
  for (int a = 0; a < dim_; ++a) dims[a] = n_[static_cast<size_t>(a)];
  plan_r2c_ = fftw_plan_dft_r2c(dim_, dims, rbuf.data(),
                                reinterpret_cast<fftw_complex*>(cbuf.data()),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_c2r_ = fftw_plan_dft_c2r(dim_, dims, reinterpret_cast<fftw_complex*>(cbuf.data()),
                                rbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_r2c_ == nullptr || plan_c2r_ == nullptr) throw std::runtime_error("fftw planning failed");
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (plan_r2c_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  if (plan_c2r_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

GridPtr Grid::make(int dim, int n) {
  return make(std::vector<int>(static_cast<size_t>(dim), n));
}

GridPtr Grid::make(const std::vector<int>& n_per_axis) {
  return GridPtr(new Grid(n_per_axis));
}

bool Grid::uniform() const {
  for (int a = 1; a < dim_; ++a)
    if (n_[static_cast<size_t>(a)] != n_[0]) return false;
  return true;
}

size_t Grid::index(const std::array<int, 4>& idx) const {
  size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const int n = n_[static_cast<size_t>(a)];
    int i = idx[static_cast<size_t>(a)] % n;
    if (i < 0) i += n;
    flat = flat * static_cast<size_t>(n) + static_cast<size_t>(i);
  }
  return flat;
}

std::array<int, 4> Grid::coords(size_t flat) const {
  std::array<int, 4> idx{0, 0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    const size_t n = static_cast<size_t>(n_[static_cast<size_t>(a)]);
    idx[static_cast<size_t>(a)] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

std::array<double, 4> Grid::position(size_t flat) const {
  const auto idx = coords(flat);
  std::array<double, 4> x{0, 0, 0, 0};
  for (int a = 0; a < dim_; ++a)
    x[static_cast<size_t>(a)] =
        static_cast<double>(idx[static_cast<size_t>(a)]) / n_[static_cast<size_t>(a)];
  return x;
}

void Grid::forward(const double* in, std::complex<double>* out) const {
  // r2c destroys its input for multidimensional transforms; copy.
  std::vector<double> tmp(in, in + npts_);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), tmp.data(),
                       reinterpret_cast<fftw_complex*>(out));
}

void Grid::inverse(const std::complex<double>* in, double* out) const {
  std::vector<std::complex<double>> tmp(in, in + nspec_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(tmp.data()), out);
  const double scale = cellvol_;
  for (size_t i = 0; i < npts_; ++i) out[i] *= scale;
}

void Grid::spectral_freq(size_t spec, std::array<int, 4>& m) const {
  const int last = dim_ - 1;
  const size_t nlast = static_cast<size_t>(n_[static_cast<size_t>(last)] / 2 + 1);
  m[static_cast<size_t>(last)] = static_cast<int>(spec % nlast);
  spec /= nlast;
  for (int a = last - 1; a >= 0; --a) {
    const int n = n_[static_cast<size_t>(a)];
    int raw = static_cast<int>(spec % static_cast<size_t>(n));
    spec /= static_cast<size_t>(n);
    m[static_cast<size_t>(a)] = raw <= n / 2 ? raw : raw - n;
  }
  for (int a = dim_; a < 4; ++a) m[static_cast<size_t>(a)] = 0;
}

ScalarField ScalarField::zeros(const GridPtr& g) { return {g, std::vector<double>(g->npoints(), 0.0)}; }

ScalarField ScalarField::sample(const GridPtr& g,
                                const std::function<double(const std::array<double, 4>&)>& fn) {
  ScalarField f = zeros(g);
  for (size_t i = 0; i < g->npoints(); ++i) f.v[i] = fn(g->position(i));
  return f;
}

OneFormField OneFormField::zeros(const GridPtr& g) {
  return {g, std::vector<double>(static_cast<size_t>(g->dim()) * g->npoints(), 0.0)};
}

std::span<double> OneFormField::comp(int k) {
  return {v.data() + static_cast<size_t>(k) * grid->npoints(), grid->npoints()};
}
std::span<const double> OneFormField::comp(int k) const {
  return {v.data() + static_cast<size_t>(k) * grid->npoints(), grid->npoints()};
}

TwoFormField TwoFormField::zeros(const GridPtr& g) {
  return {g, std::vector<double>(6 * g->npoints(), 0.0)};
}

TwoFormField TwoFormField::constant(const GridPtr& g, const TwoForm& w) {
  TwoFormField f = zeros(g);
  for (int k = 0; k < 6; ++k) {
    auto c = f.comp(k);
    std::fill(c.begin(), c.end(), w[k]);
  }
  return f;
}

std::span<double> TwoFormField::comp(int k) {
  return {v.data() + static_cast<size_t>(k) * grid->npoints(), grid->npoints()};
}
std::span<const double> TwoFormField::comp(int k) const {
  return {v.data() + static_cast<size_t>(k) * grid->npoints(), grid->npoints()};
}

TwoForm TwoFormField::at(size_t flat) const {
  TwoForm w;
  const size_t n = grid->npoints();
  for (int k = 0; k < 6; ++k) w[k] = v[static_cast<size_t>(k) * n + flat];
  return w;
}

void TwoFormField::set(size_t flat, const TwoForm& w) {
  const size_t n = grid->npoints();
  for (int k = 0; k < 6; ++k) v[static_cast<size_t>(k) * n + flat] = w[k];
}

std::span<double> ThreeFormField::comp(int k) {
  return {v.data() + static_cast<size_t>(k) * grid->npoints(), grid->npoints()};
}
std::span<const double> ThreeFormField::comp(int k) const {
  return {v.data() + static_cast<size_t>(k) * grid->npoints(), grid->npoints()};
}

namespace {

// Multiplies a spectrum by the derivative symbol of d/dx_a: i * 2pi m_a,
// with the Nyquist mode of axis a zeroed.
void apply_deriv_symbol(const Grid& g, std::vector<std::complex<double>>& s, int axis) {
  std::array<int, 4> m;
  const int nyq = g.n(axis) / 2;
  for (size_t i = 0; i < s.size(); ++i) {
    g.spectral_freq(i, m);
    const int ma = m[static_cast<size_t>(axis)];
    if (ma == nyq || ma == -nyq)
      s[i] = 0.0;
    else
      s[i] *= std::complex<double>(0.0, kTwoPi * ma);
  }
}

std::vector<std::complex<double>> forward_comp(const Grid& g, std::span<const double> comp) {
  std::vector<std::complex<double>> s(g.nspec());
  g.forward(comp.data(), s.data());
  return s;
}

void inverse_into(const Grid& g, const std::vector<std::complex<double>>& s, std::span<double> out) {
  g.inverse(s.data(), out.data());
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) {
  const Grid& g = *f.grid;
  auto s = forward_comp(g, f.v);
  apply_deriv_symbol(g, s, axis);
  ScalarField out = ScalarField::zeros(f.grid);
  inverse_into(g, s, out.v);
  return out;
}

OneFormField grad(const ScalarField& f) {
  const Grid& g = *f.grid;
  const auto base = forward_comp(g, f.v);
  OneFormField out = OneFormField::zeros(f.grid);
  for (int a = 0; a < g.dim(); ++a) {
    auto s = base;
    apply_deriv_symbol(g, s, a);
    inverse_into(g, s, out.comp(a));
  }
  return out;
}

ScalarField divergence(const OneFormField& a) {
  const Grid& g = *a.grid;
  std::vector<std::complex<double>> acc(g.nspec(), 0.0);
  for (int k = 0; k < g.dim(); ++k) {
    auto s = forward_comp(g, a.comp(k));
    apply_deriv_symbol(g, s, k);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
  }
  ScalarField out = ScalarField::zeros(a.grid);
  inverse_into(g, acc, out.v);
  return out;
}

ScalarField dstar1(const OneFormField& a) {
  ScalarField d = divergence(a);
  for (double& x : d.v) x = -x;
  return d;
}

ScalarField inv_laplacian(const ScalarField& f) {
  const Grid& g = *f.grid;
  auto s = forward_comp(g, f.v);
  std::array<int, 4> m;
  for (size_t i = 0; i < s.size(); ++i) {
    g.spectral_freq(i, m);
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double ka = kTwoPi * m[static_cast<size_t>(a)];
      k2 += ka * ka;
    }
    s[i] = k2 == 0.0 ? 0.0 : s[i] / (-k2);
  }
  ScalarField out = ScalarField::zeros(f.grid);
  inverse_into(g, s, out.v);
  return out;
}

void project_zero_mean(ScalarField& f) {
  const double mean = pairwise_sum(f.v) / static_cast<double>(f.v.size());
  for (double& x : f.v) x -= mean;
}

void project_zero_mean(OneFormField& a) {
  for (int k = 0; k < a.ncomp(); ++k) {
    auto c = a.comp(k);
    const double mean = pairwise_sum(c) / static_cast<double>(c.size());
    for (double& x : c) x -= mean;
  }
}

TwoFormField d1(const OneFormField& a) {
  require_dim4(*a.grid, "d1");
  const Grid& g = *a.grid;
  // (d1 a)_{ij} = di a_j - dj a_i.
  std::array<std::vector<std::complex<double>>, 4> ahat;
  for (int k = 0; k < 4; ++k) ahat[static_cast<size_t>(k)] = forward_comp(g, a.comp(k));
  TwoFormField out = TwoFormField::zeros(a.grid);
  for (int p = 0; p < 6; ++p) {
    const int i = kPair4[p][0], j = kPair4[p][1];
    auto si = ahat[static_cast<size_t>(j)];
    apply_deriv_symbol(g, si, i);
    auto sj = ahat[static_cast<size_t>(i)];
    apply_deriv_symbol(g, sj, j);
    for (size_t q = 0; q < si.size(); ++q) si[q] -= sj[q];
    inverse_into(g, si, out.comp(p));
  }
  return out;
}

ThreeFormField d2(const TwoFormField& w) {
  require_dim4(*w.grid, "d2");
  const Grid& g = *w.grid;
  std::array<std::vector<std::complex<double>>, 6> what;
  for (int p = 0; p < 6; ++p) what[static_cast<size_t>(p)] = forward_comp(g, w.comp(p));
  ThreeFormField out{w.grid, std::vector<double>(4 * g.npoints(), 0.0)};
  for (int t = 0; t < 4; ++t) {
    const int i = kTriple4[t][0], j = kTriple4[t][1], k = kTriple4[t][2];
    // (dw)_{ijk} = di w_{jk} - dj w_{ik} + dk w_{ij}
    auto s1 = what[static_cast<size_t>(pair_index4(j, k))];
    apply_deriv_symbol(g, s1, i);
    auto s2 = what[static_cast<size_t>(pair_index4(i, k))];
    apply_deriv_symbol(g, s2, j);
    auto s3 = what[static_cast<size_t>(pair_index4(i, j))];
    apply_deriv_symbol(g, s3, k);
    for (size_t q = 0; q < s1.size(); ++q) s1[q] = s1[q] - s2[q] + s3[q];
    inverse_into(g, s1, out.comp(t));
  }
  return out;
}

OneFormField dstar2(const TwoFormField& w) {
  require_dim4(*w.grid, "dstar2");
  const Grid& g = *w.grid;
  std::array<std::vector<std::complex<double>>, 6> what;
  for (int p = 0; p < 6; ++p) what[static_cast<size_t>(p)] = forward_comp(g, w.comp(p));
  OneFormField out = OneFormField::zeros(w.grid);
  for (int j = 0; j < 4; ++j) {
    std::vector<std::complex<double>> acc(g.nspec(), 0.0);
    for (int i = 0; i < 4; ++i) {
      if (i == j) continue;
      // (d* w)_j = -sum_i di w_{ij}, with w_{ij} = -w_{ji} on stored i<j comps.
      const double sign = i < j ? 1.0 : -1.0;
      const int p = i < j ? pair_index4(i, j) : pair_index4(j, i);
      auto s = what[static_cast<size_t>(p)];
      apply_deriv_symbol(g, s, i);
      for (size_t q = 0; q < acc.size(); ++q) acc[q] -= sign * s[q];
    }
    inverse_into(g, acc, out.comp(j));
  }
  return out;
}

double integrate(const ScalarField& f) {
  return pairwise_sum(f.v) * f.grid->cell_volume();
}

double inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid, g.grid);
  return pairwise_dot(f.v, g.v) * f.grid->cell_volume();
}

double inner(const OneFormField& a, const OneFormField& b) {
  require_same_grid(a.grid, b.grid);
  return pairwise_dot(a.v, b.v) * a.grid->cell_volume();
}

double inner(const TwoFormField& w, const TwoFormField& w2) {
  require_same_grid(w.grid, w2.grid);
  return pairwise_dot(w.v, w2.v) * w.grid->cell_volume();
}

namespace {
double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
}  // namespace

double sup_norm(const ScalarField& f) { return sup_abs(f.v); }
double sup_norm(const OneFormField& a) { return sup_abs(a.v); }
double sup_norm(const TwoFormField& w) { return sup_abs(w.v); }

double sup_pointwise_norm(const TwoFormField& w) {
  const size_t n = w.grid->npoints();
  double m = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double x = w.v[static_cast<size_t>(k) * n + i];
      s += x * x;
    }
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

ScalarField pointwise_pairing(const TwoFormField& w, const TwoFormField& w2) {
  require_same_grid(w.grid, w2.grid);
  const size_t n = w.grid->npoints();
  ScalarField out = ScalarField::zeros(w.grid);
  const auto a12 = w.comp(C12), a13 = w.comp(C13), a14 = w.comp(C14), a23 = w.comp(C23),
             a24 = w.comp(C24), a34 = w.comp(C34);
  const auto b12 = w2.comp(C12), b13 = w2.comp(C13), b14 = w2.comp(C14), b23 = w2.comp(C23),
             b24 = w2.comp(C24), b34 = w2.comp(C34);
  for (size_t i = 0; i < n; ++i)
    out.v[i] = a12[i] * b34[i] + a34[i] * b12[i] - a13[i] * b24[i] - a24[i] * b13[i] +
               a14[i] * b23[i] + a23[i] * b14[i];
  return out;
}

double wedge_integral(const TwoFormField& w, const TwoFormField& w2) {
  return integrate(pointwise_pairing(w, w2));
}

namespace {
TwoFormField star_part(const TwoFormField& w, double sign) {
  const size_t n = w.grid->npoints();
  TwoFormField out = TwoFormField::zeros(w.grid);
  // star: (c12,c13,c14,c23,c24,c34) -> (c34,-c24,c23,c14,-c13,c12)
  constexpr int starc[6] = {C34, C24, C23, C14, C13, C12};
  constexpr double stars[6] = {1, -1, 1, 1, -1, 1};
  for (int k = 0; k < 6; ++k) {
    auto o = out.comp(k);
    const auto a = w.comp(k);
    const auto b = w.comp(starc[k]);
    for (size_t i = 0; i < n; ++i) o[i] = 0.5 * (a[i] + sign * stars[k] * b[i]);
  }
  return out;
}
}  // namespace

TwoFormField sd_part(const TwoFormField& w) { return star_part(w, 1.0); }
TwoFormField asd_part(const TwoFormField& w) { return star_part(w, -1.0); }

TwoForm harmonic_parts(const TwoFormField& w) {
  TwoForm c;
  for (int k = 0; k < 6; ++k)
    c[k] = pairwise_sum(w.comp(k)) / static_cast<double>(w.grid->npoints());
  return c;
}

void for_each_ball_point(const Grid& g, const Ball& ball,
                         const std::function<void(size_t, double)>& fn) {
  if (!(ball.radius > 0.0) || ball.radius > 0.25)
    throw std::invalid_argument("ball radius out of range (0, 1/4]");
  const int d = g.dim();
  std::array<int, 4> lo{0, 0, 0, 0}, hi{0, 0, 0, 0};
  for (int a = 0; a < d; ++a) {
    const int reach = static_cast<int>(std::floor(ball.radius * g.n(a)));
    lo[static_cast<size_t>(a)] = -reach;
    hi[static_cast<size_t>(a)] = reach;
  }
  const double r2 = ball.radius * ball.radius;
  std::array<int, 4> off{0, 0, 0, 0};
  std::array<int, 4> idx{0, 0, 0, 0};

  std::function<void(int, double)> recurse = [&](int axis, double acc2) {
    if (axis == d) {
      if (acc2 <= r2) {
        for (int a = 0; a < d; ++a)
          idx[static_cast<size_t>(a)] = ball.center[static_cast<size_t>(a)] + off[static_cast<size_t>(a)];
        fn(g.index(idx), std::sqrt(acc2));
      }
      return;
    }
    const double h = 1.0 / g.n(axis);
    for (int o = lo[static_cast<size_t>(axis)]; o <= hi[static_cast<size_t>(axis)]; ++o) {
      const double dx = o * h;
      const double a2 = acc2 + dx * dx;
      if (a2 > r2) continue;
      off[static_cast<size_t>(axis)] = o;
      recurse(axis + 1, a2);
    }
  };
  recurse(0, 0.0);
}

double ball_integral(const ScalarField& f, const Ball& ball) {
  std::vector<double> vals;
  for_each_ball_point(*f.grid, ball, [&](size_t i, double) { vals.push_back(f.v[i]); });
  return pairwise_sum(vals) * f.grid->cell_volume();
}

double oscillation(const TwoFormField& w, const Ball& ball) {
  const size_t n = w.grid->npoints();
  std::array<double, 6> mn, mx;
  mn.fill(std::numeric_limits<double>::infinity());
  mx.fill(-std::numeric_limits<double>::infinity());
  for_each_ball_point(*w.grid, ball, [&](size_t i, double) {
    for (int k = 0; k < 6; ++k) {
      const double x = w.v[static_cast<size_t>(k) * n + i];
      mn[static_cast<size_t>(k)] = std::min(mn[static_cast<size_t>(k)], x);
      mx[static_cast<size_t>(k)] = std::max(mx[static_cast<size_t>(k)], x);
    }
  });
  double osc = 0.0;
  for (int k = 0; k < 6; ++k) osc = std::max(osc, mx[static_cast<size_t>(k)] - mn[static_cast<size_t>(k)]);
  return osc;
}

Spectrum forward(const ScalarField& f) {
  Spectrum s{f.grid, std::vector<std::complex<double>>(f.grid->nspec())};
  f.grid->forward(f.v.data(), s.v.data());
  return s;
}

ScalarField inverse(const Spectrum& s) {
  ScalarField f = ScalarField::zeros(s.grid);
  s.grid->inverse(s.v.data(), f.v.data());
  return f;
}

ScalarField second_partial(const Spectrum& s, int a, int b) {
  const Grid& g = *s.grid;
  auto t = s.v;
  if (a == b) {
    std::array<int, 4> m;
    for (size_t i = 0; i < t.size(); ++i) {
      g.spectral_freq(i, m);
      const double ka = kTwoPi * m[static_cast<size_t>(a)];
      t[i] *= -ka * ka;
    }
  } else {
    apply_deriv_symbol(g, t, a);
    apply_deriv_symbol(g, t, b);
  }
  ScalarField out = ScalarField::zeros(s.grid);
  inverse_into(g, t, out.v);
  return out;
}

ScalarField partial(const Spectrum& s, int axis) {
  auto t = s.v;
  apply_deriv_symbol(*s.grid, t, axis);
  ScalarField out = ScalarField::zeros(s.grid);
  inverse_into(*s.grid, t, out.v);
  return out;
}

ScalarField random_band_limited(const GridPtr& g, std::mt19937_64& rng, int kmax) {
  // Sum of random cosines over a fixed mode list; deterministic given rng.
  std::normal_distribution<double> amp(0.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, kTwoPi);
  const int d = g->dim();
  std::vector<std::array<int, 4>> modes;
  std::array<int, 4> m{0, 0, 0, 0};
  std::function<void(int)> enumerate = [&](int axis) {
    if (axis == d) {
      bool zero = true;
      for (int a = 0; a < d; ++a)
        if (m[static_cast<size_t>(a)] != 0) zero = false;
      if (!zero) modes.push_back(m);
      return;
    }
    const int cap = std::min(kmax - 1, g->n(axis) / 2 - 1);
    for (int k = -cap; k <= cap; ++k) {
      m[static_cast<size_t>(axis)] = k;
      enumerate(axis + 1);
    }
  };
  enumerate(0);

  ScalarField f = ScalarField::zeros(g);
  const size_t npts = g->npoints();
  // Normalize so the field scale is O(1) regardless of mode count.
  const double scale = 1.0 / std::sqrt(static_cast<double>(modes.size()));
  for (const auto& mode : modes) {
    const double a = amp(rng) * scale;
    const double p = ph(rng);
    for (size_t i = 0; i < npts; ++i) {
      const auto x = g->position(i);
      double phase = p;
      for (int ax = 0; ax < d; ++ax) phase += kTwoPi * mode[static_cast<size_t>(ax)] * x[static_cast<size_t>(ax)];
      f.v[i] += a * std::cos(phase);
    }
  }
  return f;
}

OneFormField random_band_limited_oneform(const GridPtr& g, std::mt19937_64& rng, int kmax) {
  OneFormField a = OneFormField::zeros(g);
  for (int k = 0; k < g->dim(); ++k) {
    const ScalarField f = random_band_limited(g, rng, kmax);
    auto c = a.comp(k);
    std::copy(f.v.begin(), f.v.end(), c.begin());
  }
  return a;
}

namespace {

template <class T>
void write_raw(std::ofstream& os, const T& x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
T read_raw(std::ifstream& is) {
  T x;
  is.read(reinterpret_cast<char*>(&x), sizeof(T));
  return x;
}

}  // namespace

void save_w4f1(const std::string& path, const GridPtr& grid, int ncomp,
               std::span<const double> data) {
  if (!grid->uniform()) throw std::invalid_argument("W4F1: uniform grids only");
  if (data.size() != static_cast<size_t>(ncomp) * grid->npoints())
    throw std::invalid_argument("W4F1: data size mismatch");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("W4F1: cannot open " + path + " for writing");
  const unsigned char magic[4] = {0x57, 0x34, 0x46, 0x31};
  os.write(reinterpret_cast<const char*>(magic), 4);
  write_raw<uint16_t>(os, 1);
  write_raw<uint8_t>(os, static_cast<uint8_t>(grid->dim()));
  write_raw<uint8_t>(os, static_cast<uint8_t>(ncomp));
  write_raw<uint32_t>(os, static_cast<uint32_t>(grid->n(0)));
  os.write(reinterpret_cast<const char*>(data.data()),
           static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!os) throw std::runtime_error("W4F1: write failed: " + path);
}

void save_w4f1(const std::string& path, const ScalarField& f) { save_w4f1(path, f.grid, 1, f.v); }
void save_w4f1(const std::string& path, const OneFormField& f) {
  save_w4f1(path, f.grid, f.ncomp(), f.v);
}
void save_w4f1(const std::string& path, const TwoFormField& f) { save_w4f1(path, f.grid, 6, f.v); }

LoadedField load_w4f1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("W4F1: cannot open " + path);
  unsigned char magic[4];
  is.read(reinterpret_cast<char*>(magic), 4);
  if (!is || magic[0] != 0x57 || magic[1] != 0x34 || magic[2] != 0x46 || magic[3] != 0x31)
    throw std::runtime_error("W4F1: bad magic in " + path);
  const auto version = read_raw<uint16_t>(is);
  if (version != 1) throw std::runtime_error("W4F1: unsupported version");
  const int dim = read_raw<uint8_t>(is);
  const int ncomp = read_raw<uint8_t>(is);
  const auto n = read_raw<uint32_t>(is);
  LoadedField lf;
  lf.grid = Grid::make(dim, static_cast<int>(n));
  lf.ncomp = ncomp;
  lf.data.resize(static_cast<size_t>(ncomp) * lf.grid->npoints());
  is.read(reinterpret_cast<char*>(lf.data.data()),
          static_cast<std::streamsize>(lf.data.size() * sizeof(double)));
  if (!is) throw std::runtime_error("W4F1: truncated file " + path);
  return lf;
}

}  // namespace wedge4
