#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "xf/field.hpp"

namespace xf {

enum class KernelVariant { paper, shifted };

// Oscillatory-kernel description for the free propagator: prefactor
// 1/(4 pi i sin t), Gaussian-chirp quadratic phase cot(t)(x-c-w)^2/4, linear
// phases b, c, and the accumulated phase a(t) obtained by quadrature.
struct MehlerKernelSpec {
  KernelVariant variant = KernelVariant::shifted;
  double quad_tol = 1e-6; // aliasing guard threshold on spectral tail mass
  double a_tol = 1e-10;   // phase-integral tolerance
  double sin_floor = 1e-3;
};

Eigen::Vector2d phase_b(double t);
Eigen::Vector2d phase_c(double t, KernelVariant variant);
double phase_a(double t, const MehlerKernelSpec& spec);

// The drift-center coefficients of both published variants disagree with the
// at-rest E x B cycloid; this third set follows the classical flow and is the
// one that actually reproduces e^{-itH0} (see validate_kernel).
Eigen::Vector2d cycloid_drift_center(double t);

struct KernelCoefficients {
  double a = 0;
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
};

KernelCoefficients kernel_coefficients(double t, const MehlerKernelSpec& spec);
KernelCoefficients cycloid_kernel_coefficients(double t, double a_tol = 1e-10);

// w-integral of the kernel against f by grid quadrature, with the phase
// factorized into per-axis geometric sequences. Throws NearSingularTime when
// |sin t| < sin_floor and AliasedPhase when the data's spectrum says the
// phase samples land outside the resolved band.
StateField apply_kernel_with(double t, const StateField& f,
                             const KernelCoefficients& coeff,
                             const MehlerKernelSpec& spec);

StateField apply_free_propagator(double t, const StateField& f,
                                 const MehlerKernelSpec& spec);

enum class KernelVerdict { paper, shifted, inconclusive };

struct KernelValidation {
  struct Row {
    double t;
    std::string data_label;
    double err_paper;
    double err_shifted;
    double err_cycloid; // diagnostic reference column
  };
  std::vector<Row> rows;
  KernelVerdict verdict;
  double worst_paper = 0;
  double worst_shifted = 0;
  double worst_cycloid = 0;
};

// Compares both variants (plus the cycloid reference) against the
// time-stepping oracle on each (t, data) pair and picks the uniformly better
// variant; inconclusive when both exceed 5 percent.
KernelValidation validate_kernel(
    const std::vector<double>& t_list,
    const std::vector<std::pair<std::string, StateField>>& data_list,
    const MehlerKernelSpec& spec);

} // namespace xf
