#include "thermopauli/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "thermopauli/oracle.hpp"

namespace thermopauli {

namespace {

std::vector<double> fd_directional(const EntropyModel& s, const Eigen::VectorXd& e,
                                   const Eigen::VectorXd& v, int order) {
  if (order < 0) throw truncation_error("directional order must be non-negative");
  if (order > 6)
    throw truncation_error(
        "finite-difference directional series supports order <= 6; "
        "use a model with analytic derivatives beyond that");
  auto fn = [&](double t) { return s.eval(e + t * v); };
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) out[static_cast<std::size_t>(k)] = oracle::finite_diff_derivatives(fn, 0.0, k).value;
  return out;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& h, const std::vector<int>& idx) {
  const int r = static_cast<int>(idx.size());
  Eigen::MatrixXd out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out(i, j) = h(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

void check_index_set(const std::vector<int>& idx, int dim, const char* what) {
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  for (int i : idx) {
    if (i < 0 || i >= dim) throw inconsistent_input_error(std::string(what) + ": index out of range");
    if (seen[static_cast<std::size_t>(i)]) throw inconsistent_input_error(std::string(what) + ": repeated index");
    seen[static_cast<std::size_t>(i)] = true;
  }
}

}  // namespace

void EntropyModel::check_dim(const Eigen::VectorXd& e) const {
  if (static_cast<int>(e.size()) != dim())
    throw inconsistent_input_error("coordinate vector has wrong dimension");
}

bool EntropyModel::in_domain(const Eigen::VectorXd& e) const {
  check_dim(e);
  return true;
}

Eigen::VectorXd EntropyModel::reference_point() const { return Eigen::VectorXd::Ones(dim()); }

Eigen::VectorXd EntropyModel::grad(const Eigen::VectorXd& e) const {
  check_dim(e);
  Eigen::VectorXd g(dim());
  for (int i = 0; i < dim(); ++i) {
    auto fn = [&](double t) {
      Eigen::VectorXd p = e;
      p(i) = t;
      return eval(p);
    };
    g(i) = oracle::finite_diff_derivatives(fn, e(i), 1).value;
  }
  return g;
}

Eigen::MatrixXd EntropyModel::hess(const Eigen::VectorXd& e) const {
  check_dim(e);
  const int d = dim();
  Eigen::MatrixXd h(d, d);
  auto second_along = [&](const Eigen::VectorXd& v) {
    auto fn = [&](double t) { return eval(e + t * v); };
    return oracle::finite_diff_derivatives(fn, 0.0, 2).value;
  };
  Eigen::VectorXd diag(d);
  for (int i = 0; i < d; ++i) {
    diag(i) = second_along(Eigen::VectorXd::Unit(d, i));
    h(i, i) = diag(i);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double mixed =
          0.5 * (second_along(Eigen::VectorXd::Unit(d, i) + Eigen::VectorXd::Unit(d, j)) - diag(i) - diag(j));
      h(i, j) = mixed;
      h(j, i) = mixed;
    }
  return h;
}

std::vector<double> EntropyModel::directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                                     int order) const {
  check_dim(e);
  check_dim(v);
  return fd_directional(*this, e, v, order);
}

ThermoPoint make_point(const EntropyModel& s, const Eigen::VectorXd& e) {
  if (!s.in_domain(e)) throw infeasible_error("point outside the model domain");
  return ThermoPoint{e, s.grad(e)};
}

// ---------------------------------------------------------------------------
// Sackur-Tetrode

SackurTetrodeModel::SackurTetrodeModel(double kb, double mass, double c0)
    : kb_(kb), mass_(mass), c0_(c0) {
  if (!(kb > 0.0) || !(mass > 0.0) || !(c0 > 0.0))
    throw inconsistent_input_error("kB, mass and c0 must be positive");
}

bool SackurTetrodeModel::in_domain(const Eigen::VectorXd& e) const {
  check_dim(e);
  return e(0) > 0.0 && e(1) > 0.0 && e(2) > 0.0;
}

Eigen::VectorXd SackurTetrodeModel::reference_point() const { return Eigen::VectorXd::Ones(3); }

double SackurTetrodeModel::eval(const Eigen::VectorXd& e) const {
  if (!in_domain(e)) throw infeasible_error("Sackur-Tetrode needs U, V, N > 0");
  const double u = e(0), v = e(1), n = e(2);
  return kb_ * n * (std::log(c0_ * mass_ * (v / n) * std::pow(u / n, 1.5)) + 2.5);
}

Eigen::VectorXd SackurTetrodeModel::grad(const Eigen::VectorXd& e) const {
  if (!in_domain(e)) throw infeasible_error("Sackur-Tetrode needs U, V, N > 0");
  const double u = e(0), v = e(1), n = e(2);
  Eigen::VectorXd g(3);
  g(0) = 1.5 * kb_ * n / u;
  g(1) = kb_ * n / v;
  g(2) = kb_ * std::log(c0_ * mass_ * (v / n) * std::pow(u / n, 1.5));
  return g;
}

Eigen::MatrixXd SackurTetrodeModel::hess(const Eigen::VectorXd& e) const {
  if (!in_domain(e)) throw infeasible_error("Sackur-Tetrode needs U, V, N > 0");
  const double u = e(0), v = e(1), n = e(2);
  Eigen::MatrixXd h(3, 3);
  h(0, 0) = -1.5 * kb_ * n / (u * u);
  h(0, 1) = 0.0;
  h(0, 2) = 1.5 * kb_ / u;
  h(1, 1) = -kb_ * n / (v * v);
  h(1, 2) = kb_ / v;
  h(2, 2) = -2.5 * kb_ / n;
  h(1, 0) = h(0, 1);
  h(2, 0) = h(0, 2);
  h(2, 1) = h(1, 2);
  return h;
}

namespace {

// k-th derivative at t = 0 of (A + t a) log(B + t b), B > 0.
double dk_xlog(double a_val, double a_dir, double b_val, double b_dir, int k) {
  auto lk = [&](int j) {
    if (j == 0) return std::log(b_val);
    double r = b_dir / b_val;
    double out = std::pow(r, j);
    for (int i = 1; i < j; ++i) out *= static_cast<double>(i);
    return (j % 2 == 0) ? -out : out;
  };
  if (k == 0) return a_val * lk(0);
  return a_val * lk(k) + static_cast<double>(k) * a_dir * lk(k - 1);
}

}  // namespace

std::vector<double> SackurTetrodeModel::directional_series(const Eigen::VectorXd& e,
                                                           const Eigen::VectorXd& v, int order) const {
  check_dim(v);
  if (!in_domain(e)) throw infeasible_error("Sackur-Tetrode needs U, V, N > 0");
  if (order < 0) throw truncation_error("directional order must be non-negative");
  const double uu = e(0), vv = e(1), nn = e(2);
  const double du = v(0), dv = v(1), dn = v(2);
  const double k0 = std::log(c0_ * mass_) + 2.5;
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    double lin = (k == 0) ? nn * k0 : (k == 1 ? dn * k0 : 0.0);
    out[static_cast<std::size_t>(k)] =
        kb_ * (lin + dk_xlog(nn, dn, vv, dv, k) + 1.5 * dk_xlog(nn, dn, uu, du, k) -
               2.5 * dk_xlog(nn, dn, nn, dn, k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic

QuadraticModel::QuadraticModel(double constant, Eigen::VectorXd linear, Eigen::MatrixXd hessian,
                               Eigen::VectorXd center)
    : constant_(constant), linear_(std::move(linear)), hessian_(std::move(hessian)), center_(std::move(center)) {
  const int d = static_cast<int>(linear_.size());
  if (d < 1) throw inconsistent_input_error("quadratic model needs at least one coordinate");
  if (hessian_.rows() != d || hessian_.cols() != d)
    throw inconsistent_input_error("hessian shape does not match the linear term");
  if (center_.size() == 0) center_ = Eigen::VectorXd::Zero(d);
  if (static_cast<int>(center_.size()) != d)
    throw inconsistent_input_error("center shape does not match the linear term");
  const double asym = (hessian_ - hessian_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, hessian_.cwiseAbs().maxCoeff()))
    throw inconsistent_input_error("hessian must be symmetric");
  hessian_ = 0.5 * (hessian_ + hessian_.transpose());
}

double QuadraticModel::eval(const Eigen::VectorXd& e) const {
  check_dim(e);
  const Eigen::VectorXd d = e - center_;
  return constant_ + linear_.dot(d) + 0.5 * d.dot(hessian_ * d);
}

Eigen::VectorXd QuadraticModel::grad(const Eigen::VectorXd& e) const {
  check_dim(e);
  return linear_ + hessian_ * (e - center_);
}

Eigen::MatrixXd QuadraticModel::hess(const Eigen::VectorXd& e) const {
  check_dim(e);
  return hessian_;
}

std::vector<double> QuadraticModel::directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                                       int order) const {
  check_dim(e);
  check_dim(v);
  if (order < 0) throw truncation_error("directional order must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  out[0] = eval(e);
  if (order >= 1) out[1] = grad(e).dot(v);
  if (order >= 2) out[2] = v.dot(hessian_ * v);
  return out;
}

// ---------------------------------------------------------------------------
// Product

ProductModel::ProductModel(std::vector<std::shared_ptr<const EntropyModel>> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw inconsistent_input_error("product model needs at least one factor");
  offsets_.reserve(factors_.size() + 1);
  offsets_.push_back(0);
  for (const auto& f : factors_) {
    if (!f) throw inconsistent_input_error("product model factor is null");
    total_dim_ += f->dim();
    offsets_.push_back(total_dim_);
  }
}

double ProductModel::eval(const Eigen::VectorXd& e) const {
  check_dim(e);
  double s = 0.0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    s += factors_[i]->eval(e.segment(offsets_[i], factors_[i]->dim()));
  return s;
}

bool ProductModel::in_domain(const Eigen::VectorXd& e) const {
  check_dim(e);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!factors_[i]->in_domain(e.segment(offsets_[i], factors_[i]->dim()))) return false;
  return true;
}

Eigen::VectorXd ProductModel::reference_point() const {
  Eigen::VectorXd r(total_dim_);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    r.segment(offsets_[i], factors_[i]->dim()) = factors_[i]->reference_point();
  return r;
}

Eigen::VectorXd ProductModel::grad(const Eigen::VectorXd& e) const {
  check_dim(e);
  Eigen::VectorXd g(total_dim_);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    g.segment(offsets_[i], factors_[i]->dim()) = factors_[i]->grad(e.segment(offsets_[i], factors_[i]->dim()));
  return g;
}

Eigen::MatrixXd ProductModel::hess(const Eigen::VectorXd& e) const {
  check_dim(e);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(total_dim_, total_dim_);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const int d = factors_[i]->dim();
    h.block(offsets_[i], offsets_[i], d, d) = factors_[i]->hess(e.segment(offsets_[i], d));
  }
  return h;
}

std::vector<double> ProductModel::directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                                     int order) const {
  check_dim(e);
  check_dim(v);
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const int d = factors_[i]->dim();
    const auto part = factors_[i]->directional_series(e.segment(offsets_[i], d), v.segment(offsets_[i], d), order);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += part[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear change of coordinates

LinearChangeModel::LinearChangeModel(std::shared_ptr<const EntropyModel> base, Eigen::MatrixXd c)
    : base_(std::move(base)), c_(std::move(c)) {
  if (!base_) throw inconsistent_input_error("linear change needs a base model");
  const int d = base_->dim();
  if (c_.rows() != d || c_.cols() != d)
    throw inconsistent_input_error("coordinate-change matrix shape does not match the base model");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c_);
  if (!lu.isInvertible()) throw singular_error("coordinate-change matrix is singular");
  c_inv_ = lu.inverse();
}

double LinearChangeModel::eval(const Eigen::VectorXd& e) const {
  check_dim(e);
  return base_->eval(c_inv_ * e);
}

bool LinearChangeModel::in_domain(const Eigen::VectorXd& e) const {
  check_dim(e);
  return base_->in_domain(c_inv_ * e);
}

Eigen::VectorXd LinearChangeModel::reference_point() const { return c_ * base_->reference_point(); }

Eigen::VectorXd LinearChangeModel::grad(const Eigen::VectorXd& e) const {
  check_dim(e);
  return c_inv_.transpose() * base_->grad(c_inv_ * e);
}

Eigen::MatrixXd LinearChangeModel::hess(const Eigen::VectorXd& e) const {
  check_dim(e);
  return c_inv_.transpose() * base_->hess(c_inv_ * e) * c_inv_;
}

std::vector<double> LinearChangeModel::directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                                          int order) const {
  check_dim(e);
  check_dim(v);
  return base_->directional_series(c_inv_ * e, c_inv_ * v, order);
}

// ---------------------------------------------------------------------------
// Constant shift

ShiftedModel::ShiftedModel(std::shared_ptr<const EntropyModel> base, double q)
    : base_(std::move(base)), q_(q) {
  if (!base_) throw inconsistent_input_error("shift needs a base model");
}

double ShiftedModel::eval(const Eigen::VectorXd& e) const { return base_->eval(e) - q_; }
bool ShiftedModel::in_domain(const Eigen::VectorXd& e) const { return base_->in_domain(e); }
Eigen::VectorXd ShiftedModel::reference_point() const { return base_->reference_point(); }
Eigen::VectorXd ShiftedModel::grad(const Eigen::VectorXd& e) const { return base_->grad(e); }
Eigen::MatrixXd ShiftedModel::hess(const Eigen::VectorXd& e) const { return base_->hess(e); }

std::vector<double> ShiftedModel::directional_series(const Eigen::VectorXd& e, const Eigen::VectorXd& v,
                                                     int order) const {
  auto out = base_->directional_series(e, v, order);
  out[0] -= q_;
  return out;
}

// ---------------------------------------------------------------------------
// Operations

CanonicalizeResult canonicalize_entropy(std::shared_ptr<const EntropyModel> raw, double tol) {
  if (!raw) throw inconsistent_input_error("canonicalize needs a model");
  const Eigen::VectorXd e1 = raw->reference_point();
  const Eigen::VectorXd e2 = 0.8 * e1;
  for (const auto& e : {e1, e2})
    for (double lam : {1.0, 2.0, 3.0})
      if (!raw->in_domain(lam * e))
        throw inconsistent_input_error("scaled reference samples leave the model domain");

  auto defect = [&](double lam, const Eigen::VectorXd& e) {
    return (raw->eval(lam * e) - lam * raw->eval(e)) / (1.0 - lam);
  };
  const double q = defect(2.0, e1);
  const double check_lam = defect(3.0, e1);
  const double check_pt = defect(2.0, e2);
  const double scale = std::max(1.0, std::abs(q));
  if (std::abs(check_lam - q) > tol * scale || std::abs(check_pt - q) > tol * scale)
    throw inconsistent_input_error("entropy is not quasi-homogeneous: shift estimates disagree");
  return CanonicalizeResult{std::make_shared<ShiftedModel>(std::move(raw), q), q};
}

StabilityReport check_linear_stability(const EntropyModel& s, const Eigen::VectorXd& e) {
  const int d = s.dim();
  if (d > 9) throw truncation_error("stability scan over subsets is limited to dimension 9");
  const Eigen::MatrixXd h = s.hess(e);
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(submatrix(h, idx), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw convergence_error("eigenvalue solve failed in stability scan");
    if (es.eigenvalues().maxCoeff() >= 0.0) return StabilityReport{false, idx};
  }
  return StabilityReport{true, {}};
}

LegendreResult legendre_transform_subset(const EntropyModel& s, const std::vector<int>& index_set,
                                         const ThermoPoint& point) {
  const int d = s.dim();
  if (index_set.empty()) throw inconsistent_input_error("legendre transform needs a non-empty index set");
  check_index_set(index_set, d, "legendre index set");
  if (static_cast<int>(point.E.size()) != d || static_cast<int>(point.beta.size()) != d)
    throw inconsistent_input_error("point shape does not match the model");

  const int r = static_cast<int>(index_set.size());
  Eigen::VectorXd target(r);
  for (int i = 0; i < r; ++i) target(i) = point.beta(index_set[static_cast<std::size_t>(i)]);

  Eigen::VectorXd e = point.E;
  const double tol = 1e-11 * (1.0 + target.cwiseAbs().maxCoeff());
  for (int iter = 0; iter < 60; ++iter) {
    const Eigen::VectorXd g = s.grad(e);
    Eigen::VectorXd f(r);
    for (int i = 0; i < r; ++i) f(i) = g(index_set[static_cast<std::size_t>(i)]) - target(i);
    if (f.cwiseAbs().maxCoeff() < tol) {
      double val = s.eval(e);
      for (int i = 0; i < r; ++i) val -= target(i) * e(index_set[static_cast<std::size_t>(i)]);
      return LegendreResult{val, e};
    }
    const Eigen::MatrixXd hii = submatrix(s.hess(e), index_set);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(hii);
    if (!lu.isInvertible())
      throw convergence_error("legendre stationarity system is singular at the current iterate");
    const Eigen::VectorXd step = lu.solve(f);
    double alpha = 1.0;
    Eigen::VectorXd trial = e;
    for (int halves = 0; halves < 50; ++halves) {
      trial = e;
      for (int i = 0; i < r; ++i) trial(index_set[static_cast<std::size_t>(i)]) -= alpha * step(i);
      if (s.in_domain(trial)) break;
      alpha *= 0.5;
      if (halves == 49) throw convergence_error("legendre iterate cannot stay inside the domain");
    }
    e = trial;
  }
  throw convergence_error("legendre stationarity iteration did not converge");
}

double reduction_condition_number(const ReductionSpec& spec) {
  if (spec.C.rows() != spec.C.cols() || spec.C.rows() < 1)
    throw inconsistent_input_error("reduction matrix must be square");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(spec.C);
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 0.0)) throw singular_error("reduction matrix is singular");
  return svd.singularValues().maxCoeff() / smin;
}

ThermoPoint reduce(const EntropyModel& s, const ReductionSpec& spec, const ThermoPoint& start) {
  const int d = s.dim();
  if (spec.C.rows() != d || spec.C.cols() != d)
    throw inconsistent_input_error("reduction matrix shape does not match the model");
  check_index_set(spec.released, d, "released set");
  if (static_cast<int>(start.E.size()) != d)
    throw inconsistent_input_error("start point shape does not match the model");
  if (!s.in_domain(start.E)) throw infeasible_error("start point outside the model domain");
  if (spec.released.empty()) return make_point(s, start.E);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(spec.C);
  if (!lu.isInvertible()) throw singular_error("reduction matrix is singular");
  const Eigen::MatrixXd cinv = lu.inverse();
  const int r = static_cast<int>(spec.released.size());
  Eigen::MatrixXd vdirs(d, r);
  for (int j = 0; j < r; ++j) vdirs.col(j) = cinv.col(spec.released[static_cast<std::size_t>(j)]);

  Eigen::VectorXd t = Eigen::VectorXd::Zero(r);
  const double t_cap = 1e8 * (1.0 + start.E.cwiseAbs().maxCoeff());
  double value = s.eval(start.E);
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::VectorXd e = start.E + vdirs * t;
    const Eigen::VectorXd g = vdirs.transpose() * s.grad(e);
    if (g.cwiseAbs().maxCoeff() < 1e-12 * (1.0 + s.grad(e).cwiseAbs().maxCoeff()))
      return make_point(s, e);

    Eigen::VectorXd step;
    const Eigen::MatrixXd hr = vdirs.transpose() * s.hess(e) * vdirs;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(-hr);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) step = ldlt.solve(g);
    if (step.size() == 0 || !(g.dot(step) > 0.0)) step = g;  // ascent fallback

    double alpha = 1.0;
    bool moved = false;
    for (int halves = 0; halves < 60; ++halves) {
      const Eigen::VectorXd t_try = t + alpha * step;
      const Eigen::VectorXd e_try = start.E + vdirs * t_try;
      if (s.in_domain(e_try)) {
        const double v_try = s.eval(e_try);
        if (v_try >= value + 1e-4 * alpha * g.dot(step)) {
          t = t_try;
          value = v_try;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) throw convergence_error("relaxation line search stalled");
    if (t.cwiseAbs().maxCoeff() > t_cap)
      throw convergence_error("relaxation appears unbounded along the released coordinates");
  }
  throw convergence_error("relaxation did not converge");
}

double chemical_shift(const ChemicalScenario& s) {
  if (!(s.N0 >= 0.0) || !(s.N1 >= 0.0) || !(s.N2 >= 0.0))
    throw inconsistent_input_error("mole counts must be non-negative");
  if (!(s.K > 0.0)) throw inconsistent_input_error("equilibrium constant must be positive");
  const double lo = -0.5 * s.N2;
  const double hi = std::min(s.N0, s.N1);
  if (!(hi > lo)) throw infeasible_error("no admissible shift: the mole interval is empty");

  const double logk = std::log(s.K);
  auto h = [&](double x) {
    return 2.0 * std::log(s.N2 + 2.0 * x) - std::log(s.N0 - x) - std::log(s.N1 - x) - logk;
  };
  double a = lo, b = hi;
  for (int iter = 0; iter < 110; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // interval at double resolution
    (h(mid) < 0.0 ? a : b) = mid;
  }
  double x = 0.5 * (a + b);
  for (int iter = 0; iter < 6; ++iter) {
    const double hp = 4.0 / (s.N2 + 2.0 * x) + 1.0 / (s.N0 - x) + 1.0 / (s.N1 - x);
    double next = x - h(x) / hp;
    next = std::clamp(next, std::nextafter(lo, hi), std::nextafter(hi, lo));
    if (next == x) break;
    x = next;
  }
  return x;
}

namespace {

struct GasPortion {
  double mass, moles;
};

// Entropy of several ideal-gas portions sharing a container: each portion
// fills the full volume, and the energy split is settled by relaxing the
// pairwise energy-transfer coordinates from the equal-temperature start.
double shared_container_entropy(const std::vector<GasPortion>& gases, double u_total, double volume,
                                double kb, double c0) {
  std::vector<std::shared_ptr<const EntropyModel>> factors;
  double n_total = 0.0;
  for (const auto& gas : gases) {
    factors.push_back(std::make_shared<SackurTetrodeModel>(kb, gas.mass, c0));
    n_total += gas.moles;
  }
  const int k = static_cast<int>(gases.size());
  Eigen::VectorXd e0(3 * k);
  for (int j = 0; j < k; ++j) {
    e0(3 * j) = u_total * gases[static_cast<std::size_t>(j)].moles / n_total;
    e0(3 * j + 1) = volume;
    e0(3 * j + 2) = gases[static_cast<std::size_t>(j)].moles;
  }
  const ProductModel composite(factors);
  if (k == 1) return composite.eval(e0);

  ReductionSpec spec;
  spec.C = Eigen::MatrixXd::Identity(3 * k, 3 * k);
  for (int j = 1; j < k; ++j) {
    spec.C(0, 3 * j) = 1.0;  // row 0 becomes the held total energy
    spec.C(3 * j, 0) = 1.0;  // row 3j becomes the released transfer U0 - Uj
    spec.C(3 * j, 3 * j) = -1.0;
    spec.released.push_back(3 * j);
  }
  const ThermoPoint out = reduce(composite, spec, make_point(composite, e0));
  return composite.eval(out.E);
}

}  // namespace

GibbsReport gibbs_report(const GibbsScenario& g) {
  if (!(g.u > 0.0) || !(g.v > 0.0) || !(g.n > 0.0))
    throw inconsistent_input_error("per-subsystem u, v, n must be positive");
  if (!(g.M0 > 0.0) || !(g.M1 > 0.0)) throw inconsistent_input_error("molar masses must be positive");
  if (!(g.eps0 > 0.0)) throw inconsistent_input_error("similarity threshold must be positive");

  GibbsReport rep;
  const double m2 = 0.5 * (g.M0 + g.M1);
  rep.eps = std::abs(g.M0 - g.M1) / m2;
  rep.K = g.K_of_eps ? g.K_of_eps(rep.eps)
                     : std::pow(10.0, -12.0 + 48.0 * (rep.eps / g.eps0 - 0.5));
  if (!(rep.K > 0.0)) throw inconsistent_input_error("dissimilarity map produced a non-positive K");

  const SackurTetrodeModel s0(g.kb, g.M0, g.c0), s1(g.kb, g.M1, g.c0);
  const double s_before =
      s0.eval(Eigen::Vector3d(g.u, g.v, g.n)) + s1.eval(Eigen::Vector3d(g.u, g.v, g.n));
  const double u_total = 2.0 * g.u, v_total = 2.0 * g.v;

  if (rep.eps > g.eps0) {
    rep.regime = "distinct";
    rep.mixing_entropy =
        shared_container_entropy({{g.M0, g.n}, {g.M1, g.n}}, u_total, v_total, g.kb, g.c0) - s_before;
  } else if (rep.eps < 0.5 * g.eps0) {
    rep.regime = "identical";
    rep.mixing_entropy = shared_container_entropy({{m2, 2.0 * g.n}}, u_total, v_total, g.kb, g.c0) - s_before;
  } else {
    rep.regime = "intermediate";
    // A + B <-> 2C with C the hybrid species; large K means "stay distinct",
    // which is the small-K side of the shift equation, hence the reciprocal.
    ChemicalScenario chem;
    chem.N0 = g.n;
    chem.N1 = g.n;
    chem.N2 = 0.0;
    chem.K = 1.0 / rep.K;
    chem.U = u_total;
    chem.V = v_total;
    const double x = chemical_shift(chem);
    std::vector<GasPortion> gases;
    if (g.n - x > 0.0) {
      gases.push_back({g.M0, g.n - x});
      gases.push_back({g.M1, g.n - x});
    }
    if (2.0 * x > 0.0) gases.push_back({m2, 2.0 * x});
    rep.mixing_entropy = shared_container_entropy(gases, u_total, v_total, g.kb, g.c0) - s_before;
  }
  return rep;
}

double mixing_entropy(const GibbsScenario& g) { return gibbs_report(g).mixing_entropy; }

ExpansionPair expansion_pair(const EntropyModel& s, const ThermoPoint& a, int n0) {
  if (n0 < 1) throw truncation_error("expansion order must be at least 1");
  const int d = s.dim();
  if (static_cast<int>(a.E.size()) != d)
    throw inconsistent_input_error("point shape does not match the model");
  const Eigen::VectorXd dir = Eigen::VectorXd::Unit(d, d - 1);
  const auto sd = s.directional_series(a.E, dir, n0 + 2);
  const double s2 = sd[2];
  if (!(s2 < 0.0))
    throw inconsistent_input_error("expansion needs strictly negative curvature along the last coordinate");
  const double c = std::sqrt(-s2);

  TruncatedSeries1<double> u(n0, "x");
  u.at(0) = 1.0;
  for (int m = 1; m <= n0; ++m)
    u.at(m) = -sd[static_cast<std::size_t>(m) + 2] / std::pow(c, m + 2);

  TruncatedSeries1<double> gser(n0 + 1, "x");
  for (int k = 1; k <= n0 + 1; ++k) gser.at(k) = sd[static_cast<std::size_t>(k) + 1];
  const auto xinv = series_compositional_inverse(gser);

  TruncatedSeries1<double> w(n0, "y");
  w.at(0) = 1.0;
  for (int m = 1; m <= n0; ++m)
    w.at(m) = -std::pow(c, m + 2) * xinv[static_cast<std::size_t>(m) + 1];
  return ExpansionPair{std::move(u), std::move(w), c};
}

bool pure_state_compatibility(const TruncatedSeries1<double>& u, const TruncatedSeries1<double>& w,
                              double tol) {
  if (u.degree() < 2 || w.degree() < 2)
    throw truncation_error("compatibility check needs both expansions through order 2");
  const double u1 = u[1], u2 = u[2], w2 = w[2];
  const double scale = std::max({1.0, std::abs(u1), std::abs(u2), std::abs(w2)});
  return std::abs(w2 - u2) <= tol * scale && std::abs(2.0 * u2 - 3.0 * u1 * u1) <= tol * scale;
}

}  // namespace thermopauli
