#include "xf/resolvent.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <cmath>
#include <cstdlib>
#include <list>
#include <memory>
#include <mutex>
#include <random>

#include "xf/errors.hpp"
#include "xf/fft.hpp"
#include "xf/potential.hpp"

namespace xf {

WeightDescriptor weight_identity() { return {}; }

WeightDescriptor weight_r_pow(const Grid2D& g, double delta) {
  if (!(delta > 0 && delta <= 2))
    throw ValidationError("delta", "must be in (0, 2]");
  WeightDescriptor w;
  w.has_pointwise = true;
  w.pointwise.resize(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double r2 = g.xs[i] * g.xs[i] + g.ys[j] * g.ys[j];
      w.pointwise(i, j) = std::pow(1.0 + r2, -0.5 * delta);
    }
  w.sup = w.pointwise.maxCoeff();
  w.label = "jr_pow(-" + std::to_string(delta) + ")";
  return w;
}

WeightDescriptor weight_x_pow(const Grid2D& g, double s) {
  WeightDescriptor w;
  w.has_pointwise = true;
  w.pointwise.resize(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      w.pointwise(i, j) = std::pow(1.0 + g.xs[i] * g.xs[i], -0.5 * s);
  w.sup = w.pointwise.maxCoeff();
  w.label = "jx_pow(-" + std::to_string(s) + ")";
  return w;
}

WeightDescriptor weight_strip(const Grid2D& g, double gamma, double eta0,
                              double beta) {
  if (!(gamma > 0 && gamma < 0.5))
    throw ValidationError("gamma", "must be in (0, 0.5)");
  if (!(eta0 > 0 && eta0 < 1))
    throw ValidationError("eta0", "must be in (0, 1)");
  const double s = 0.5 + 0.5 * gamma;
  WeightDescriptor w;
  w.has_pointwise = true;
  w.pointwise.resize(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j) {
    const double d = std::max(std::abs(g.ys[j] - beta), 0.5 * g.h_y);
    double yfac = std::pow(d, -gamma);
    // F_{eta0}(t) = F(t/eta0): 1 on |t| <= eta0, 0 beyond 2 eta0
    const double t = std::abs(g.ys[j] - beta);
    double F;
    if (t <= eta0) {
      F = 1.0;
    } else if (t >= 2 * eta0) {
      F = 0.0;
    } else {
      const double u = t / eta0 - 1.0;
      const auto B = [](double v) { return v > 0 ? std::exp(-1.0 / v) : 0.0; };
      F = 1.0 - B(u) / (B(u) + B(1.0 - u));
    }
    for (int i = 0; i < g.n_x; ++i)
      w.pointwise(i, j) =
          yfac * F * std::pow(1.0 + g.xs[i] * g.xs[i], -0.5 * s);
  }
  w.sup = w.pointwise.maxCoeff();
  w.label = "strip(gamma=" + std::to_string(gamma) + ")";
  return w;
}

WeightDescriptor weight_inv_dx(double beta) {
  WeightDescriptor w;
  w.has_symbol = true;
  w.symbol_beta = beta;
  w.sup = 1.0;
  w.label = "inv_abs_dx";
  return w;
}

void apply_weight(const WeightDescriptor& w, StateField& f) {
  if (w.has_pointwise) {
    if (w.pointwise.rows() != f.grid.n_x || w.pointwise.cols() != f.grid.n_y)
      throw GridMismatch("weight array does not match the field grid");
    f.v *= w.pointwise;
  }
  if (w.has_symbol) {
    const double beta = w.symbol_beta;
    apply_symbol_x(f.grid, f.v, [beta](double xi, double) {
      const double s = xi + beta;
      return Cplx(1.0 / std::sqrt(1.0 + s * s), 0);
    });
  }
}

namespace {

struct FactorKey {
  Backend backend;
  int n_x, n_y;
  double x_min, x_max, y_min, y_max;
  int v_kind;
  bool stark;
  double A0, s_decay, eta0, beta;
  double lambda, nu;
  int sign;

  bool operator==(const FactorKey& o) const {
    return backend == o.backend && n_x == o.n_x && n_y == o.n_y &&
           x_min == o.x_min && x_max == o.x_max && y_min == o.y_min &&
           y_max == o.y_max && v_kind == o.v_kind && stark == o.stark &&
           A0 == o.A0 && s_decay == o.s_decay && eta0 == o.eta0 &&
           beta == o.beta && lambda == o.lambda && nu == o.nu &&
           sign == o.sign;
  }
};

FactorKey make_key(const HamiltonianSpec& op, double lambda, double nu,
                   int sign) {
  const Grid2D& g = op.grid;
  FactorKey k{g.backend, g.n_x, g.n_y, g.x_min,       g.x_max, g.y_min,
              g.y_max,   0,     op.stark_term, 0,     0,       0,
              0,         lambda, nu,    sign};
  if (op.V() && !op.V()->is_zero()) {
    k.v_kind = static_cast<int>(op.V()->kind);
    k.A0 = op.V()->A0;
    k.s_decay = op.V()->s_decay;
    k.eta0 = op.V()->eta0;
    k.beta = op.V()->beta;
  }
  return k;
}

class Factorization {
public:
  Factorization(const HamiltonianSpec& op, double lambda, double nu, int sign)
      : n_(op.grid.size()) {
    const Grid2D& g = op.grid;
    if (g.periodic()) {
      dense_mat_ =
          periodic_shifted_matrix(g, op.V(), lambda, nu, sign, op.stark_term);
      dense_ =
          std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXcd>>(dense_mat_);
    } else {
      mat_ = fd_shifted_matrix(g, op.V(), lambda, nu, sign, op.stark_term);
      if (n_ <= 256 * 256) {
        lu_ = std::make_unique<
            Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>>>();
        lu_->analyzePattern(mat_);
        lu_->factorize(mat_);
        if (lu_->info() != Eigen::Success)
          throw SingularSystem("sparse factorization failed");
      } else {
        ilu_ = std::make_unique<
            Eigen::BiCGSTAB<SparseC, Eigen::IncompleteLUT<Cplx>>>();
        ilu_->compute(mat_);
        adj_mat_ = mat_.adjoint();
        ilu_adj_ = std::make_unique<
            Eigen::BiCGSTAB<SparseC, Eigen::IncompleteLUT<Cplx>>>();
        ilu_adj_->compute(adj_mat_);
      }
    }
  }

  Eigen::VectorXcd solve(const Eigen::VectorXcd& b, double tol,
                         bool adjoint) const {
    if (dense_) {
      if (adjoint) return dense_->adjoint().solve(b);
      return dense_->solve(b);
    }
    if (lu_) {
      if (adjoint) return lu_->adjoint().solve(b);
      return lu_->solve(b);
    }
    auto& it = adjoint ? *ilu_adj_ : *ilu_;
    it.setTolerance(tol);
    Eigen::VectorXcd u = it.solve(b);
    if (it.info() != Eigen::Success)
      throw ConvergenceFailure("preconditioned iteration did not converge");
    return u;
  }

  double residual(const Eigen::VectorXcd& u, const Eigen::VectorXcd& b,
                  bool adjoint) const {
    Eigen::VectorXcd r;
    if (dense_)
      r = adjoint ? (dense_mat_.adjoint() * u - b).eval()
                  : (dense_mat_ * u - b).eval();
    else
      r = adjoint ? (mat_.adjoint() * u - b).eval() : (mat_ * u - b).eval();
    return r.norm() / b.norm();
  }

private:
  Eigen::Index n_;
  SparseC mat_, adj_mat_;
  Eigen::MatrixXcd dense_mat_;
  std::unique_ptr<Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>>> lu_;
  std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> dense_;
  std::unique_ptr<Eigen::BiCGSTAB<SparseC, Eigen::IncompleteLUT<Cplx>>> ilu_,
      ilu_adj_;
};

bool cache_enabled() {
  const char* v = std::getenv("XFIELDS_CACHE");
  return !(v && std::string(v) == "0");
}

std::mutex g_cache_mu;
std::list<std::pair<FactorKey, std::shared_ptr<Factorization>>> g_cache;

std::shared_ptr<Factorization> get_factorization(const HamiltonianSpec& op,
                                                 double lambda, double nu,
                                                 int sign) {
  if (!cache_enabled())
    return std::make_shared<Factorization>(op, lambda, nu, sign);
  const FactorKey key = make_key(op, lambda, nu, sign);
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    for (auto it = g_cache.begin(); it != g_cache.end(); ++it)
      if (it->first == key) {
        auto hit = *it;
        g_cache.erase(it);
        g_cache.push_front(hit);
        return hit.second;
      }
  }
  auto made = std::make_shared<Factorization>(op, lambda, nu, sign);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.push_front({key, made});
  while (g_cache.size() > 2) g_cache.pop_back();
  return made;
}

} // namespace

void clear_factorization_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.clear();
}

namespace {

StateField solve_impl(const HamiltonianSpec& op, const ResolventQuery& q,
                      const StateField& rhs, bool adjoint) {
  require_same_grid(op.grid, rhs.grid);
  if (!(q.nu > 0)) throw SingularSystem("absorption nu must be positive");
  auto fac = get_factorization(op, q.lambda, q.nu, q.sign);
  const Eigen::Index N = op.grid.size();
  Eigen::Map<const Eigen::VectorXcd> b(rhs.v.data(), N);
  Eigen::VectorXcd u = fac->solve(b, q.solver_tol, adjoint);
  const double res = fac->residual(u, b, adjoint);
  if (!(res <= std::max(q.solver_tol, 1e-12) * 100))
    throw ConvergenceFailure("resolvent solve residual " + std::to_string(res));
  StateField out(op.grid);
  Eigen::Map<Eigen::VectorXcd>(out.v.data(), N) = u;
  return out;
}

} // namespace

StateField solve_resolvent(const HamiltonianSpec& op, const ResolventQuery& q,
                           const StateField& rhs) {
  return solve_impl(op, q, rhs, false);
}

StateField solve_resolvent_adjoint(const HamiltonianSpec& op,
                                   const ResolventQuery& q,
                                   const StateField& rhs) {
  return solve_impl(op, q, rhs, true);
}

NormEstimate weighted_norm(const HamiltonianSpec& op, const ResolventQuery& q,
                           std::uint32_t seed, int max_iter, double tol) {
  if (!(q.nu > 0)) throw SingularSystem("absorption nu must be positive");
  auto fac = get_factorization(op, q.lambda, q.nu, q.sign);
  const Grid2D& g = op.grid;
  const Eigen::Index N = g.size();

  const auto fwd = [&](const StateField& v) {
    StateField t = v;
    apply_weight(q.weight_right, t);
    Eigen::Map<const Eigen::VectorXcd> b(t.v.data(), N);
    Eigen::VectorXcd u = fac->solve(b, q.solver_tol, false);
    StateField out(g);
    Eigen::Map<Eigen::VectorXcd>(out.v.data(), N) = u;
    apply_weight(q.weight_left, out);
    return out;
  };
  const auto adj = [&](const StateField& v) {
    StateField t = v;
    apply_weight(q.weight_left, t);
    Eigen::Map<const Eigen::VectorXcd> b(t.v.data(), N);
    Eigen::VectorXcd u = fac->solve(b, q.solver_tol, true);
    StateField out(g);
    Eigen::Map<Eigen::VectorXcd>(out.v.data(), N) = u;
    apply_weight(q.weight_right, out);
    return out;
  };

  return power_method_norm(g, fwd, adj, seed, max_iter, tol);
}

NormEstimate power_method_norm(const Grid2D& g, const FieldMap& fwd,
                               const FieldMap& adj, std::uint32_t seed,
                               int max_iter, double tol) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  StateField v(g);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) v.v(i, j) = Cplx(nd(rng), nd(rng));
  v = normalized(std::move(v));

  NormEstimate est;
  double sigma_prev = -1;
  int stable = 0;
  for (int it = 1; it <= max_iter; ++it) {
    StateField w = fwd(v);
    const double nw = norm(w);
    if (nw == 0) {
      est.value = 0;
      est.iterations = it;
      est.residual = 0;
      return est;
    }
    StateField y = adj(w);
    const double ny = norm(y);
    const double sigma = std::sqrt(ny); // ||A* A v|| -> sigma^2 on unit v
    est.value = sigma;
    est.iterations = it;
    if (sigma_prev > 0) {
      const double change = std::abs(sigma - sigma_prev) / sigma;
      est.residual = change;
      if (change <= tol) {
        if (++stable >= 2) return est;
      } else {
        stable = 0;
      }
    }
    sigma_prev = sigma;
    y.v /= ny;
    v = std::move(y);
  }
  est.budget_exceeded = true;
  return est;
}

} // namespace xf
