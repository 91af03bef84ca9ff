#pragma once

#include <complex>

#include <Eigen/Core>

#include "xf/grid.hpp"

namespace xf {

using Cplx = std::complex<double>;
using CArray = Eigen::ArrayXXcd; // (n_x rows, n_y cols), entry (i,j) at (x_i, y_j)

// In-place 1D DFT along the x axis (down each column) or the y axis (along
// each row) of a 2D array. Forward transforms are unnormalized; inverse
// transforms carry the 1/n factor, so inv(fwd(f)) == f.
void fft_x(CArray& f, bool inverse);
void fft_y(CArray& f, bool inverse);
void fft2(CArray& f, bool inverse);

// Applies a diagonal multiplier in x-frequency space: f <- IFFTx[ m(xi,y) FFTx f ].
// The multiplier is sampled as m(xi_k, y_j).
template <typename M>
void apply_symbol_x(const Grid2D& g, CArray& f, M&& m) {
  fft_x(f, false);
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    for (Eigen::Index k = 0; k < f.rows(); ++k)
      f(k, j) *= m(g.xi[k], g.ys[j]);
  fft_x(f, true);
}

// Same along y: f <- IFFTy[ m(x, eta) FFTy f ].
template <typename M>
void apply_symbol_y(const Grid2D& g, CArray& f, M&& m) {
  fft_y(f, false);
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    for (Eigen::Index k = 0; k < f.rows(); ++k)
      f(k, j) *= m(g.xs[k], g.eta[j]);
  fft_y(f, true);
}

// Fully diagonal double-Fourier multiplier m(xi, eta).
template <typename M>
void apply_symbol_xy(CArray& f, const Grid2D& g, M&& m) {
  fft2(f, false);
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    for (Eigen::Index k = 0; k < f.rows(); ++k)
      f(k, j) *= m(g.xi[k], g.eta[j]);
  fft2(f, true);
}

} // namespace xf
