#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monolat {

inline constexpr const char* kVersion = "0.1.0";

/// Exact lattice step ratio i/j, kept in lowest terms with num, den >= 1.
struct Ratio {
  long long num = 1;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  static Ratio reduced(long long n, long long d);
};

bool operator==(const Ratio& a, const Ratio& b);
bool operator<(const Ratio& a, const Ratio& b);  // exact, via cross multiplication

/// Local diffusion data after normalising the first volatility to 1:
/// anisotropy R > 0 and correlation rho in [-1, 1].
struct ReducedModel {
  double R;
  double rho;
  ReducedModel(double R_, double rho_);
};

struct CanonicalForm {
  ReducedModel model;  // R >= 1, rho >= 0
  bool swapped;        // input had R < 1, replaced by 1/R
  bool reflected;      // input had rho < 0, replaced by -rho
};

/// Map (R, rho) to the symmetry-equivalent representative with R >= 1, rho >= 0.
/// Feasibility for every stencil radius is invariant under both flags.
CanonicalForm canonicalize(const ReducedModel& m);

/// All distinct ratios i/j with 1 <= i, j <= s, sorted ascending.
/// Always contains 1; min is 1/s, max is s.
struct StencilSpec {
  int s = 1;
  std::vector<Ratio> ratios;

  bool contains(long long num, long long den) const;               // exact membership
  bool contains_value(double R, double rel_tol = 1e-12) const;     // tolerance membership
};

StencilSpec ratio_set(int s);

/// Mesh widths h, H and time step k; the mesh ratio lambda = k/h^2 is derived.
struct LatticeConfig {
  double h;
  double H;
  double k;
  LatticeConfig(double h_, double H_, double k_);
  double lambda() const { return k / (h * h); }
};

/// One-step transition probabilities on [-s, s]^2 together with the mesh
/// ratio lambda = k/h^2 the kernel was scaled for. Entries are stored dense,
/// (i, j) at (i+s)*(2s+1) + (j+s), and include the centre (0,0).
struct TransitionKernel {
  int s = 1;
  double lambda = 1.0;
  std::vector<double> p;

  TransitionKernel() = default;
  TransitionKernel(int s_, double lambda_);

  int side() const { return 2 * s + 1; }
  double at(int i, int j) const;
  double& at(int i, int j);
  double mass() const;  // sum of all entries including (0,0)
};

struct FeasibilityVerdict {
  bool feasible;
  double dual_infimum;  // +infinity when rho == 0 (empty dual domain)
  double threshold;     // 2 R |rho|
  double margin;        // dual_infimum - threshold
  bool boundary;        // margin inside the classification band and not rational-certified
};

/// Farkas witness of infeasibility: z1, z2 >= 0 with
///   xi^2 z1 - 2 xi + z2 >= 0 for every ratio xi, and
///   R^2 z1 - 2|rho| R + z2 < 0.
/// `sign` records the sign of rho the reflection maps back to.
struct DualCertificate {
  double z1;
  double z2;
  int sign;
};

/// Absolute band around zero margin inside which a verdict is flagged as
/// boundary rather than silently classified.
double classification_tolerance(double threshold);

inline constexpr double kRationalDetectTol = 1e-12;

struct MonotonicityError : std::runtime_error {
  std::vector<std::pair<double, double>> samples;  // (rho, margin) grid that failed
  MonotonicityError(const std::string& msg, std::vector<std::pair<double, double>> g);
};

struct DriftBudgetError : std::runtime_error {
  double admissible_k;  // largest time step the centre-mass budget allows
  DriftBudgetError(const std::string& msg, double k_max);
};

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace monolat
