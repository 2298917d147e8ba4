#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thermopauli/errors.hpp"
#include "thermopauli/series1.hpp"

namespace thermopauli {

// Entropy function S(E) over extensive coordinates E_0..E_{dim-1}.  Models
// supply eval; derivatives fall back to finite differences unless overridden.
class EntropyModel {
 public:
  virtual ~EntropyModel() = default;

  virtual int dim() const = 0;
  virtual double eval(const Eigen::VectorXd& e) const = 0;
  virtual bool in_domain(const Eigen::VectorXd& e) const;
  virtual Eigen::VectorXd reference_point() const;
  virtual Eigen::VectorXd grad(const Eigen::VectorXd& e) const;
  virtual Eigen::MatrixXd hess(const Eigen::VectorXd& e) const;

  // Derivatives 0..order of t -> S(e + t v) at t = 0.  The finite-difference
  // default supports order <= 6; analytic models have no such cap.
  virtual std::vector<double> directional_series(const Eigen::VectorXd& e,
                                                 const Eigen::VectorXd& v, int order) const;

 protected:
  void check_dim(const Eigen::VectorXd& e) const;
};

struct ThermoPoint {
  Eigen::VectorXd E;
  Eigen::VectorXd beta;
};

ThermoPoint make_point(const EntropyModel& s, const Eigen::VectorXd& e);

// Monoatomic ideal gas over (U, V, N).  The calibration constant c0 bundles
// all physical prefactors; the mass parameter enters the same logarithm.
class SackurTetrodeModel final : public EntropyModel {
 public:
  explicit SackurTetrodeModel(double kb = 1.0, double mass = 1.0, double c0 = 1.0);

  int dim() const override { return 3; }
  double eval(const Eigen::VectorXd& e) const override;
  bool in_domain(const Eigen::VectorXd& e) const override;
  Eigen::VectorXd reference_point() const override;
  Eigen::VectorXd grad(const Eigen::VectorXd& e) const override;
  Eigen::MatrixXd hess(const Eigen::VectorXd& e) const override;
  std::vector<double> directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                         int order) const override;

  double kb() const { return kb_; }
  double mass() const { return mass_; }
  double c0() const { return c0_; }

 private:
  double kb_, mass_, c0_;
};

// S(E) = const + linear.(E - center) + (E - center)^T hessian (E - center)/2.
class QuadraticModel final : public EntropyModel {
 public:
  QuadraticModel(double constant, Eigen::VectorXd linear, Eigen::MatrixXd hessian,
                 Eigen::VectorXd center = Eigen::VectorXd());

  int dim() const override { return static_cast<int>(linear_.size()); }
  double eval(const Eigen::VectorXd& e) const override;
  Eigen::VectorXd grad(const Eigen::VectorXd& e) const override;
  Eigen::MatrixXd hess(const Eigen::VectorXd& e) const override;
  std::vector<double> directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                         int order) const override;

 private:
  double constant_;
  Eigen::VectorXd linear_;
  Eigen::MatrixXd hessian_;
  Eigen::VectorXd center_;
};

// Non-interacting juxtaposition: coordinates concatenate, entropies add.
class ProductModel final : public EntropyModel {
 public:
  explicit ProductModel(std::vector<std::shared_ptr<const EntropyModel>> factors);

  int dim() const override { return total_dim_; }
  double eval(const Eigen::VectorXd& e) const override;
  bool in_domain(const Eigen::VectorXd& e) const override;
  Eigen::VectorXd reference_point() const override;
  Eigen::VectorXd grad(const Eigen::VectorXd& e) const override;
  Eigen::MatrixXd hess(const Eigen::VectorXd& e) const override;
  std::vector<double> directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                         int order) const override;

  const std::vector<std::shared_ptr<const EntropyModel>>& factors() const { return factors_; }

 private:
  std::vector<std::shared_ptr<const EntropyModel>> factors_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
};

// New extensive coordinates E' = C E.  Intensive coordinates transform by
// the inverse transpose, which is what keeps sum beta_i dE_i invariant.
class LinearChangeModel final : public EntropyModel {
 public:
  LinearChangeModel(std::shared_ptr<const EntropyModel> base, Eigen::MatrixXd c);

  int dim() const override { return base_->dim(); }
  double eval(const Eigen::VectorXd& e) const override;
  bool in_domain(const Eigen::VectorXd& e) const override;
  Eigen::VectorXd reference_point() const override;
  Eigen::VectorXd grad(const Eigen::VectorXd& e) const override;
  Eigen::MatrixXd hess(const Eigen::VectorXd& e) const override;
  std::vector<double> directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                         int order) const override;

  const Eigen::MatrixXd& c() const { return c_; }

 private:
  std::shared_ptr<const EntropyModel> base_;
  Eigen::MatrixXd c_, c_inv_;
};

// S - q; the output of canonicalization.
class ShiftedModel final : public EntropyModel {
 public:
  ShiftedModel(std::shared_ptr<const EntropyModel> base, double q);

  int dim() const override { return base_->dim(); }
  double eval(const Eigen::VectorXd& e) const override;
  bool in_domain(const Eigen::VectorXd& e) const override;
  Eigen::VectorXd reference_point() const override;
  Eigen::VectorXd grad(const Eigen::VectorXd& e) const override;
  Eigen::MatrixXd hess(const Eigen::VectorXd& e) const override;
  std::vector<double> directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                         int order) const override;

  double q() const { return q_; }

 private:
  std::shared_ptr<const EntropyModel> base_;
  double q_;
};

struct CanonicalizeResult {
  std::shared_ptr<const EntropyModel> model;
  double q = 0.0;
};

// Splits off the constant defect of quasi-homogeneity: S(lambda E) must equal
// lambda S(E) + q (1 - lambda).  The shift is measured at lambda = 2 and
// cross-checked at lambda = 3 and at a second sample point.
CanonicalizeResult canonicalize_entropy(std::shared_ptr<const EntropyModel> raw,
                                        double tol = 1e-6);

struct StabilityReport {
  bool stable = false;
  std::vector<int> witness;  // first failing proper index subset, empty when stable
};

// Negative definiteness of every proper principal Hessian block (the full
// block is excluded: extensivity makes it singular).
StabilityReport check_linear_stability(const EntropyModel& s, const Eigen::VectorXd& e);

struct LegendreResult {
  double value = 0.0;
  Eigen::VectorXd E;  // stationary extensive point
};

// Partial Legendre transform in the coordinates I at the point's own beta_I:
// value = S(E*) - sum_{i in I} beta_i E*_i, E* solved by Newton from point.E.
LegendreResult legendre_transform_subset(const EntropyModel& s, const std::vector<int>& index_set,
                                         const ThermoPoint& point);

struct ReductionSpec {
  Eigen::MatrixXd C;          // new coordinates E' = C E
  std::vector<int> released;  // E' indices free to relax
};

// Condition number of C; throws if C is singular.
double reduction_condition_number(const ReductionSpec& spec);

// Relaxation to equilibrium: held E' coordinates stay fixed, released ones
// maximize entropy.  At the result the released intensive coordinates vanish.
ThermoPoint reduce(const EntropyModel& s, const ReductionSpec& spec, const ThermoPoint& start);

struct ChemicalScenario {
  double N0 = 0.0, N1 = 0.0, N2 = 0.0;  // moles of A, B, C
  double K = 1.0;                       // equilibrium constant
  double U = 1.0, V = 1.0;
};

// Progress variable of A + B <-> 2C: the root of
// K (N0 - x)(N1 - x) = (N2 + 2x)^2 with all post-shift moles non-negative.
double chemical_shift(const ChemicalScenario& s);

struct GibbsScenario {
  double u = 1.0, v = 1.0, n = 1.0;  // per-subsystem energy, volume, moles
  double M0 = 1.0, M1 = 1.0;         // molar masses
  double eps0 = 0.1;                 // similarity threshold
  std::function<double(double)> K_of_eps;  // empty: built-in monotone ramp
  double kb = 1.0;
  double c0 = 1.0;
};

struct GibbsReport {
  double eps = 0.0;
  std::string regime;  // "distinct" | "identical" | "intermediate"
  double K = 0.0;
  double mixing_entropy = 0.0;
};

GibbsReport gibbs_report(const GibbsScenario& g);
double mixing_entropy(const GibbsScenario& g);

struct ExpansionPair {
  TruncatedSeries1<double> U;  // in "x", constant term 1
  TruncatedSeries1<double> W;  // in "y", constant term 1
  double c = 0.0;              // sqrt(-S'') along the expansion direction
};

// Normalized second-derivative expansions of the entropy remainder along the
// last coordinate and of its Legendre dual, rescaled so both start at 1 and
// the curvature product is -1.
ExpansionPair expansion_pair(const EntropyModel& s, const ThermoPoint& a, int n0);

// The two closure identities that let a single profile generate both series.
bool pure_state_compatibility(const TruncatedSeries1<double>& u, const TruncatedSeries1<double>& w,
                              double tol = 1e-8);

}  // namespace thermopauli
