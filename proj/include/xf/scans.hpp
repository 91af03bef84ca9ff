#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xf/potential.hpp"
#include "xf/resolvent.hpp"
#include "xf/stats.hpp"

namespace xf {

struct ScanPoint {
  double lambda;
  double nu;
  double norm;
  int iterations;
  double residual;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::optional<FitResult> fitted_exponent;
  std::map<std::string, double> constants;
  std::vector<double> envelope; // decay scan only, aligned with points
};

// ||<r>^{-delta} (H0-lambda-i nu)^{-1} <r>^{-delta}|| over lambda_grid, with
// the log-log slope when at least 6 points span a decade, plus the reference
// upper envelope nu^{-1}(lambda^{-theta} + (1+nu)/lambda +
// (1+nu^{-2})lambda^{theta-1})^{delta/2}.
ScanResult decay_scan(const Grid2D& g, double delta, double nu,
                      const std::vector<double>& lambda_grid, double theta,
                      std::uint32_t seed = 42);

// |D_x+beta+i|^{-1} sandwich over [-R,R] x nu_grid; records C_R and the
// worst-case small-nu uniformity ratio.
ScanResult mourre_scan(const Grid2D& g, double R,
                       const std::vector<double>& lambda_grid,
                       const std::vector<double>& nu_grid, double beta,
                       std::uint32_t seed = 42);

// Strip-weight sandwich (both sides) for C_{R,gamma}; asymmetric form with
// right factor |D_x+i|^{-1} for B_{R,gamma}; reruns the symmetric form at
// eta0/2 and records the ratio.
ScanResult weighted_mourre_scan(const Grid2D& g, double gamma, double eta0,
                                double beta, double R,
                                const std::vector<double>& lambda_grid,
                                const std::vector<double>& nu_grid,
                                std::uint32_t seed = 42);

struct Certificate {
  double c = 0;
  bool pass = false;
  double bound = 0;      // B/(1-c) when pass
  double sup_norm = 0;   // measured sup <x>^{1+gamma}|V|
  double direct_sup = 0; // directly scanned H weighted norm
  bool consistent = false;
  ScanResult direct_scan;
};

Certificate contraction_certificate(const Grid2D& g, const PotentialSpec& V,
                                    double gamma, double R, double C_Rg,
                                    double B_Rg,
                                    const std::vector<double>& nu_grid,
                                    std::uint32_t seed = 42);

std::vector<double> log_spaced(double lo, double hi, int n);
std::vector<double> lin_spaced(double lo, double hi, int n);

} // namespace xf
