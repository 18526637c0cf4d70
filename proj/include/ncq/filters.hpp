#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ncq/grid.hpp"

namespace ncq {

/// Rotationally symmetric, positive, even kernel ω(β), given as ln ω in
/// terms of |β|² so that weighted norms can be formed without underflow.
struct RadialKernel {
  std::string name;
  std::function<double(double)> log_profile;
  /// |β| beyond which ω is negligible (ω < 1e-40 ω(0)).
  double support = 0.0;

  double operator()(double r2) const { return std::exp(log_profile(r2)); }
};

/// ω(β) = exp(−|β|⁴), the default kernel for autocorrelation filters.
RadialKernel quartic_kernel();

/// ω(β) = exp(−|β|²). Its weighted norm ‖ω e^{u|β|²}‖₂ is finite only for
/// u < 1, which makes it a useful negative case for the decay lemma.
RadialKernel gaussian_kernel();

RadialKernel kernel_by_name(const std::string& name);

/// Unnormalised autocorrelation ∫ ω(β′) ω(β + β′) d²β′ at |β| = r, by nested
/// trapezoid refinement on the kernel's support. Throws ErrorKind::Accuracy
/// if successive refinements differ by more than `rel_tol` (relative).
double autocorrelation(const RadialKernel& kernel, double r, double rel_tol = 1e-10);

/// Monotone cubic (Fritsch-Carlson) table of a normalised radial profile.
/// Evaluates to 0 beyond the last radius.
class RadialTable {
 public:
  RadialTable(std::vector<double> radii, std::vector<double> values, double normalization,
              std::string kernel_name);

  double operator()(double r) const;

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  double r_max() const { return radii_.back(); }
  double normalization() const { return normalization_; }
  const std::string& kernel_name() const { return kernel_name_; }

 private:
  std::vector<double> radii_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  double normalization_;
  std::string kernel_name_;
};

inline constexpr std::size_t kDefaultRadialNodes = 2048;
inline constexpr double kRadialCutoff = 1e-14;

/// Ω(r) = 𝒩⁻¹ ∫ ω(β′) ω(β + β′) d²β′ with 𝒩 = ∫ ω², tabulated on `nodes`
/// equally spaced radii from 0 to the first radius where Ω < 1e-14.
RadialTable build_autocorr_filter(const RadialKernel& kernel,
                                  std::size_t nodes = kDefaultRadialNodes);

/// Default quartic-kernel table, built once per process.
std::shared_ptr<const RadialTable> default_autocorr_table();

enum class FilterKind { TriangularProduct, Autocorrelation, GaussianS };

std::string to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& name);

/// A nonclassicality filter Ω_w. `width` scales the argument (Ω_w(β) =
/// Ω_1(β/w)); GaussianS ignores it and is parameterised by `s` instead.
struct NCFilter {
  FilterKind kind = FilterKind::Autocorrelation;
  double width = 1.0;
  double s = 0.0;
  std::shared_ptr<const RadialTable> table;

  static NCFilter triangular(double width);
  static NCFilter autocorrelation(double width,
                                  std::shared_ptr<const RadialTable> table = default_autocorr_table());
  static NCFilter gaussian_s(double s);

  NCFilter with_width(double w) const;

  /// Radius outside which the filter vanishes (infinity for GaussianS).
  double support() const;

  std::string tag() const;
};

double eval_triangular(PhasePlanePoint beta, double width);
double eval_gaussian_s(PhasePlanePoint beta, double s);
double eval_filter(const NCFilter& filter, PhasePlanePoint beta);

/// Ω_w on every node of a grid.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> filter_on_grid(
    const NCFilter& filter, const SquareGrid<Scalar>& grid) {
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(grid.size(), grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index j = 0; j < grid.size(); ++j)
      out(i, j) = static_cast<Scalar>(eval_filter(filter, PhasePlanePoint(grid.point(i, j))));
  return out;
}

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct ConditionResult {
  Verdict verdict = Verdict::Inconclusive;
  /// Worst value of the condition's metric across the tested widths.
  double metric = 0.0;
  std::string evidence;
};

struct ConditionReport {
  ConditionResult universality;    // (a)
  ConditionResult non_negativity;  // (b)
  ConditionResult completeness;    // (c)

  bool all_pass() const {
    return universality.verdict == Verdict::Pass && non_negativity.verdict == Verdict::Pass &&
           completeness.verdict == Verdict::Pass;
  }
};

struct ConditionTolerances {
  /// Box-growth convergence threshold for (a).
  double convergence = 1e-6;
  /// Relative negativity allowed in the discrete Fourier transform for (b).
  double negativity = 1e-8;
  /// Largest box half-width explored for (a).
  double max_box = 60.0;
};

/// Numerical evidence for the three filter conditions:
///  (a) ∫ |Ω_w e^{|β|²/2}|² over growing boxes converges (and agrees under
///      step refinement);
///  (b) the discrete Fourier transform of Ω_w is ≥ −ε max;
///  (c) Ω_w(0) = 1 and Ω_w(β) grows toward 1 as w doubles.
ConditionReport check_conditions(const NCFilter& filter, std::span<const double> widths,
                                 const ConditionTolerances& tol = {});

struct LemmaPoint {
  double radius;
  double value;  // |Ω(α)| of the unnormalised autocorrelation
  double bound;  // C² e^{−u|α|²/2}
};

struct LemmaReport {
  double u = 0.0;
  bool premise_holds = false;
  double weighted_norm = 0.0;  // C(u) = ‖ω e^{u|β|²}‖₂
  std::vector<LemmaPoint> points;
  bool bound_holds = false;
  std::string note;
};

/// Checks |Ω(α)| ≤ C(u)² e^{−u|α|²/2} for the unnormalised autocorrelation
/// of `kernel` at each α. Reports a premise violation instead of a bound when
/// C(u) diverges under box growth.
LemmaReport lemma1_bound_check(const RadialKernel& kernel, double u,
                               std::span<const PhasePlanePoint> alphas);

/// RadialTable as CSV (r, Omega) plus JSON metadata.
void save_radial_table(const RadialTable& table, const std::string& csv_path);

}  // namespace ncq
