#include "monolat/grid.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "monolat/feasibility.hpp"
#include "monolat/lp.hpp"
#include "monolat/stencils.hpp"

namespace monolat::grid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

long long quantize(double v) { return std::llround(v * 1e6); }

// Symmetric one-dimensional walk for a node where exactly one volatility
// vanishes; q is the probability mass of the live pair.
TransitionKernel one_dimensional_kernel(bool live_dir1, double q, double lambda) {
  TransitionKernel k(1, lambda);
  if (live_dir1) {
    k.at(1, 0) = 0.5 * q;
    k.at(-1, 0) = 0.5 * q;
  } else {
    k.at(0, 1) = 0.5 * q;
    k.at(0, -1) = 0.5 * q;
  }
  k.at(0, 0) = 1.0 - q;
  return k;
}

}  // namespace

CoefficientField CoefficientField::constant(double s1, double s2, double rho, double mu1, double mu2) {
  return CoefficientField{
      [s1](double, double) { return s1; },  [s2](double, double) { return s2; },
      [rho](double, double) { return rho; }, [mu1](double, double) { return mu1; },
      [mu2](double, double) { return mu2; }};
}

ReducedModel local_reduce(double sigma1, double sigma2, double rho, const LatticeConfig& config) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("local_reduce: requires positive volatilities");
  return ReducedModel(sigma1 * config.H / (sigma2 * config.h), rho);
}

bool GridOperator::all_feasible() const {
  for (const NodeRecord& n : nodes)
    if (!n.feasible) return false;
  return true;
}

long GridOperator::infeasible_count() const {
  long c = 0;
  for (const NodeRecord& n : nodes)
    if (!n.feasible) ++c;
  return c;
}

GridOperator assemble_operator(const CoefficientField& field, const LatticeConfig& config,
                               const Rect& bounds, int s_max) {
  if (s_max < 1) throw std::invalid_argument("assemble_operator: s_max must be >= 1");
  if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0))
    throw std::invalid_argument("assemble_operator: empty bounds");

  GridOperator op;
  op.h = config.h;
  op.H = config.H;
  op.s_max = s_max;
  op.bounds = bounds;
  op.nx = static_cast<int>(std::floor((bounds.x1 - bounds.x0) / config.h + 1e-9)) + 1;
  op.ny = static_cast<int>(std::floor((bounds.y1 - bounds.y0) / config.H + 1e-9)) + 1;
  if (op.nx - 2 * s_max < 3 || op.ny - 2 * s_max < 3)
    throw std::invalid_argument("assemble_operator: grid too small for a 3x3 interior");

  // Kernel cache across nodes of a smooth field; keyed on quantised (R, rho, s).
  std::map<std::tuple<long long, long long, int>, TransitionKernel> kernel_cache;
  std::map<std::pair<long long, long long>, std::optional<int>> stencil_cache;

  for (int ix = s_max; ix < op.nx - s_max; ++ix) {
    for (int iy = s_max; iy < op.ny - s_max; ++iy) {
      const double x = bounds.x0 + ix * config.h;
      const double y = bounds.y0 + iy * config.H;
      const double s1 = field.sigma1(x, y);
      const double s2 = field.sigma2(x, y);
      const double rho = field.rho(x, y);
      const double mu1 = field.mu1(x, y);
      const double mu2 = field.mu2(x, y);
      if (!std::isfinite(s1) || !std::isfinite(s2) || s1 < 0.0 || s2 < 0.0 ||
          !std::isfinite(rho) || std::fabs(rho) > 1.0 || !std::isfinite(mu1) || !std::isfinite(mu2))
        throw std::runtime_error("assemble_operator: coefficient evaluation failed at a node");

      NodeRecord rec{ix, iy, x, y, kNaN, 0, true, kNaN, kNaN};
      std::vector<RowEntry> row;
      double diag = 0.0;
      const double drift_rate = std::fabs(mu1) / config.h + std::fabs(mu2) / config.H;

      if (s1 == 0.0 && s2 == 0.0) {
        // Trivial node: zero generator row (drift-free; the zero row is the
        // degenerate limit of the scheme).
        rec.chosen_s = 0;
        rec.lambda = 0.0;
        rec.time_step = kNaN;
      } else if (s1 == 0.0 || s2 == 0.0) {
        // One-dimensional problem in the live direction.
        const bool live1 = s2 == 0.0;
        const double sig = live1 ? s1 : s2;
        const double mesh = live1 ? config.h : config.H;
        // Saturating step: walk mass q = sig^2 k / mesh^2 plus drift donation.
        const double k0 = mesh * mesh / (sig * sig);
        const double k_node = drift_rate > 0.0 ? 1.0 / (1.0 / k0 + drift_rate) : k0;
        const double q = sig * sig * k_node / (mesh * mesh);
        TransitionKernel kern = one_dimensional_kernel(live1, q, k_node / (config.h * config.h));
        kern = stencils::upwind_drift(kern, stencils::DriftSpec{mu1, mu2},
                                      LatticeConfig(config.h, config.H, k_node));
        rec.chosen_s = 1;
        rec.lambda = kern.lambda;
        rec.time_step = k_node;
        const double scale = 1.0 / k_node;
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const double p = kern.at(di, dj);
            if (p == 0.0) continue;
            row.push_back(RowEntry{op.node_index(ix + di, iy + dj), p * scale});
            diag -= p * scale;
          }
      } else {
        const ReducedModel model = local_reduce(s1, s2, rho, config);
        const auto skey = std::make_pair(quantize(model.R), quantize(model.rho));
        auto sit = stencil_cache.find(skey);
        if (sit == stencil_cache.end())
          sit = stencil_cache.emplace(skey, feasibility::min_stencil(model, s_max)).first;
        const std::optional<int> s_star = sit->second;

        if (!s_star) {
          rec.feasible = false;
          rec.local_R = model.R;
          rec.chosen_s = feasibility::necessary_min_s(model);
        } else {
          const auto kkey = std::make_tuple(skey.first, skey.second, *s_star);
          auto kit = kernel_cache.find(kkey);
          if (kit == kernel_cache.end()) {
            lp::KernelSolution sol = lp::solve_kernel(model, ratio_set(*s_star), lp::Objective::LambdaMax);
            if (sol.status != lp::SolveStatus::Optimal)
              throw std::runtime_error("assemble_operator: LP lost feasibility after min_stencil");
            kit = kernel_cache.emplace(kkey, sol.kernel).first;
          }
          TransitionKernel kern = kit->second;

          // The scale-maximising kernel saturates the mass; donate drift room
          // by shrinking the step so the upwind donation lands exactly on the
          // freed centre mass. The kernel lives in sigma1-normalised time, so
          // the drift passed to the upwind update is mu / sigma1^2.
          double k_node = kern.lambda * config.h * config.h / (s1 * s1);
          if (drift_rate > 0.0) {
            const double c = 1.0 / (1.0 + k_node * drift_rate);
            TransitionKernel scaled(kern.s, kern.lambda * c);
            for (std::size_t idx = 0; idx < kern.p.size(); ++idx) scaled.p[idx] = kern.p[idx] * c;
            scaled.at(0, 0) += 1.0 - c;
            k_node *= c;
            kern = stencils::upwind_drift(scaled, stencils::DriftSpec{mu1 / (s1 * s1), mu2 / (s1 * s1)},
                                          LatticeConfig(config.h, config.H,
                                                        scaled.lambda * config.h * config.h));
          }

          rec.local_R = model.R;
          rec.chosen_s = *s_star;
          rec.lambda = kern.lambda;
          rec.time_step = k_node;
          const double scale = 1.0 / k_node;
          for (int di = -kern.s; di <= kern.s; ++di)
            for (int dj = -kern.s; dj <= kern.s; ++dj) {
              if (di == 0 && dj == 0) continue;
              const double p = kern.at(di, dj);
              if (p == 0.0) continue;
              row.push_back(RowEntry{op.node_index(ix + di, iy + dj), p * scale});
              diag -= p * scale;
            }
        }
      }

      op.nodes.push_back(rec);
      op.rows.push_back(std::move(row));
      op.diag.push_back(diag);
    }
  }
  return op;
}

GridFunction explicit_step(const TransitionKernel& kernel, const GridFunction& u) {
  const int s = kernel.s;
  if (u.nx < 2 * s + 1 || u.ny < 2 * s + 1)
    throw std::invalid_argument("explicit_step: grid smaller than the kernel footprint");
  GridFunction out = u;
  for (int ix = s; ix < u.nx - s; ++ix) {
    for (int iy = s; iy < u.ny - s; ++iy) {
      const double u0 = u.at(ix, iy);
      double acc = 0.0;
      for (int di = -s; di <= s; ++di)
        for (int dj = -s; dj <= s; ++dj) {
          if (di == 0 && dj == 0) continue;
          const double p = kernel.at(di, dj);
          if (p != 0.0) acc += p * (u.at(ix + di, iy + dj) - u0);
        }
      out.at(ix, iy) = u0 + acc;
    }
  }
  return out;
}

GridFunction explicit_step(const GridOperator& op, const GridFunction& u, double k) {
  if (u.nx != op.nx || u.ny != op.ny)
    throw std::invalid_argument("explicit_step: grid function does not match the operator grid");
  if (!(k > 0.0)) throw std::invalid_argument("explicit_step: k must be positive");
  if (!op.all_feasible()) throw std::invalid_argument("explicit_step: operator has infeasible nodes");

  GridFunction out = u;
  for (std::size_t idx = 0; idx < op.nodes.size(); ++idx) {
    const NodeRecord& rec = op.nodes[idx];
    if (rec.chosen_s == 0) continue;  // zero row: identity
    if (std::fabs(k - rec.time_step) > 1e-9 * std::max(k, rec.time_step))
      throw std::invalid_argument("explicit_step: k does not match the per-node time step");
    const double u0 = u.at(rec.ix, rec.iy);
    double acc = 0.0;
    for (const RowEntry& e : op.rows[idx]) acc += e.coeff * (u.v[static_cast<std::size_t>(e.col)] - u0);
    out.at(rec.ix, rec.iy) = u0 + k * acc;
  }
  return out;
}

AuditReport bs_audit(double rho, double sigma1, double sigma2, int n, int s_max) {
  if (n < 4) throw std::invalid_argument("bs_audit: n must be >= 4");
  if (s_max < 1) throw std::invalid_argument("bs_audit: s_max must be >= 1");
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("bs_audit: volatilities must be positive");
  if (!(std::fabs(rho) <= 1.0)) throw std::invalid_argument("bs_audit: rho must lie in [-1, 1]");

  AuditReport rep;
  rep.rho = rho;
  rep.sigma1 = sigma1;
  rep.sigma2 = sigma2;
  rep.n = n;
  rep.s_max = s_max;
  rep.nodes.reserve(static_cast<std::size_t>(n) * n);
  rep.R_min = std::numeric_limits<double>::infinity();
  rep.R_max = 0.0;

  std::map<std::pair<long long, long long>, std::pair<std::optional<int>, int>> cache;

  const double h = 1.0 / n;  // S_max normalised to 1; R depends only on ratios
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double S1 = i * h;
      const double S2 = j * h;
      const double R = sigma1 * S1 / (sigma2 * S2);
      rep.R_min = std::min(rep.R_min, R);
      rep.R_max = std::max(rep.R_max, R);

      const auto key = std::make_pair(quantize(R), quantize(rho));
      auto it = cache.find(key);
      if (it == cache.end()) {
        const ReducedModel model(R, rho);
        it = cache.emplace(key, std::make_pair(feasibility::min_stencil(model, s_max),
                                               feasibility::necessary_min_s(model)))
                 .first;
      }
      const auto& [min_s, necessary] = it->second;
      rep.max_necessary_s = std::max(rep.max_necessary_s, necessary);

      AuditNode node{S1, S2, R, min_s ? *min_s : necessary, min_s.has_value()};
      if (node.feasible) {
        ++rep.feasible_count;
      } else {
        ++rep.infeasible_count;
        if (necessary <= s_max) rep.corollary_explains_all = false;
      }
      rep.nodes.push_back(node);
    }
  }

  const long total = static_cast<long>(n) * n;
  rep.feasible_fraction = static_cast<double>(rep.feasible_count) / static_cast<double>(total);
  rep.expect_infeasible = rho != 0.0 && static_cast<double>(n) > s_max / std::fabs(rho);
  rep.statement_holds = !rep.expect_infeasible || rep.infeasible_count > 0;
  return rep;
}

}  // namespace monolat::grid
