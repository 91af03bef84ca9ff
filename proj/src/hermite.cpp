#include "xf/hermite.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>

#include "xf/errors.hpp"

namespace xf {

namespace {
void require_y_extent(int n, const Grid2D& g) {
  const double need = 2.0 * std::sqrt(2.0 * n + 1.0) + 8.0;
  if (g.y_max - g.y_min < need)
    throw DomainTooSmall("y-extent " + std::to_string(g.y_max - g.y_min) +
                         " below " + std::to_string(need) +
                         " required for oscillator level " + std::to_string(n));
}
} // namespace

Eigen::VectorXd hermite_values(int n, const Eigen::VectorXd& ys) {
  const int m = static_cast<int>(ys.size());
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd cur(m);
  const double c0 = std::pow(M_PI, -0.25);
  for (int j = 0; j < m; ++j) cur[j] = c0 * std::exp(-0.5 * ys[j] * ys[j]);
  for (int k = 0; k < n; ++k) {
    const double A = std::sqrt(2.0 / (k + 1.0));
    const double B = std::sqrt(k / (k + 1.0));
    Eigen::VectorXd next = A * ys.cwiseProduct(cur) - B * prev;
    prev.swap(cur);
    cur.swap(next);
  }
  return cur;
}

HermiteBasis::HermiteBasis(const Grid2D& g, int max_n)
    : grid_(g), max_n_(max_n) {
  if (max_n < 0) throw InvalidParameter("oscillator level must be nonnegative");
  require_y_extent(max_n, g);
  wy_.resize(g.n_y);
  for (int j = 0; j < g.n_y; ++j) wy_[j] = quad_weight_y(g, j);
  psi_.resize(g.n_y, max_n + 1);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(g.n_y);
  Eigen::VectorXd cur = hermite_values(0, g.ys);
  psi_.col(0) = cur;
  for (int k = 0; k < max_n; ++k) {
    const double A = std::sqrt(2.0 / (k + 1.0));
    const double B = std::sqrt(k / (k + 1.0));
    Eigen::VectorXd next = A * g.ys.cwiseProduct(cur) - B * prev;
    psi_.col(k + 1) = next;
    prev.swap(cur);
    cur.swap(next);
  }
}

Eigen::VectorXd HermiteBasis::psi(int n) const {
  if (n < 0 || n > max_n_)
    throw InvalidParameter("oscillator level out of range");
  return psi_.col(n);
}

double HermiteBasis::y_inner(const Eigen::VectorXd& f,
                             const Eigen::VectorXd& g) const {
  return (wy_.array() * f.array() * g.array()).sum();
}

double HermiteBasis::y_norm(const Eigen::VectorXd& f) const {
  return std::sqrt(std::max(0.0, y_inner(f, f)));
}

double HermiteBasis::eigen_residual(int n) const {
  const Eigen::VectorXd& p = psi_.col(n);
  const int m = grid_.n_y;
  const double L = grid_.periodic() ? (grid_.y_max - grid_.y_min)
                                    : (grid_.y_max - grid_.y_min) * m / (m - 1.0);
  Eigen::VectorXcd hat = Eigen::VectorXcd::Zero(m);
  for (int j = 0; j < m; ++j) hat[j] = p[j];
  // 1D spectral second derivative; psi_n vanishes at the boundary to machine
  // precision under the extent precondition, so periodic wrap is harmless.
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec(m);
  fft.fwd(spec, hat);
  for (int k = 0; k < m; ++k) {
    const int kk = (k <= m / 2) ? k : k - m;
    const double eta = 2.0 * M_PI * kk / L;
    spec[k] *= eta * eta;
  }
  fft.inv(hat, spec);
  double num = 0, den = 0;
  for (int j = 0; j < m; ++j) {
    const double y = grid_.ys[j];
    const double r = hat[j].real() + (y * y - (2.0 * n + 1.0)) * p[j];
    num += wy_[j] * r * r;
    den += wy_[j] * p[j] * p[j];
  }
  return std::sqrt(num / den) / (2.0 * n + 1.0);
}

Eigen::MatrixXcd HermiteBasis::analyze(const CArray& v) const {
  Eigen::MatrixXd weighted = psi_.array().colwise() * wy_.array();
  return v.matrix() * weighted; // (n_x, n_y) x (n_y, max_n+1)
}

CArray HermiteBasis::synthesize(const Eigen::MatrixXcd& coeffs) const {
  return (coeffs * psi_.transpose()).array();
}

StateField hermite_psi(int n, const Grid2D& g) {
  require_y_extent(n, g);
  Eigen::VectorXd p = hermite_values(n, g.ys);
  StateField f(g);
  for (int j = 0; j < g.n_y; ++j) f.v.col(j).setConstant(p[j]);
  return f;
}

StateField hermite_product_state(const Grid2D& g, int n, double x0,
                                 double sigma_x) {
  if (sigma_x <= 0) throw InvalidParameter("gaussian width must be positive");
  require_y_extent(n, g);
  Eigen::VectorXd p = hermite_values(n, g.ys);
  StateField f(g);
  const double s2 = 2.0 * sigma_x * sigma_x;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double dx = g.xs[i] - x0;
      f.v(i, j) = std::exp(-dx * dx / s2) * p[j];
    }
  return normalized(std::move(f));
}

} // namespace xf
