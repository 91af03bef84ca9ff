#include "xf/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace xf {

namespace {
thread_local Eigen::FFT<double> g_fft;
} // namespace

void fft_x(CArray& f, bool inverse) {
  const Eigen::Index n = f.rows();
  Eigen::VectorXcd in(n), out(n);
  for (Eigen::Index j = 0; j < f.cols(); ++j) {
    in = f.col(j).matrix();
    if (inverse)
      g_fft.inv(out, in);
    else
      g_fft.fwd(out, in);
    f.col(j) = out.array();
  }
}

void fft_y(CArray& f, bool inverse) {
  const Eigen::Index n = f.cols();
  Eigen::VectorXcd in(n), out(n);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    in = f.row(i).transpose().matrix();
    if (inverse)
      g_fft.inv(out, in);
    else
      g_fft.fwd(out, in);
    f.row(i) = out.array().transpose();
  }
}

void fft2(CArray& f, bool inverse) {
  fft_x(f, inverse);
  fft_y(f, inverse);
}

} // namespace xf
