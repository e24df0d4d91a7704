// Copyright 2026 The modesched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modesched/ilqr.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>

namespace modesched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double fd_step(double value, double rel, double floor) {
  return std::max(rel * std::abs(value), floor);
}

struct CostExpansion {
  Eigen::VectorXd lx, lu;
  Eigen::MatrixXd lxx, luu, lux;
};

// Joint central differences over z = (x; u) of the stage cost.
CostExpansion stage_expansion(const ContinuousSystem& system, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, const IlqrConfig& cfg) {
  const int n = system.state_dim();
  const int m = system.control_dim();
  const int dim = n + m;
  Eigen::VectorXd z(dim);
  z.head(n) = x;
  z.tail(m) = u;

  const auto cost_at = [&](const Eigen::VectorXd& zz) {
    return system.stage_cost(zz.head(n), zz.tail(m));
  };

  Eigen::VectorXd grad(dim);
  for (int i = 0; i < dim; ++i) {
    const double h = fd_step(z[i], cfg.fd_step_rel, cfg.fd_step_floor);
    Eigen::VectorXd zp = z, zm = z;
    zp[i] += h;
    zm[i] -= h;
    grad[i] = (cost_at(zp) - cost_at(zm)) / (2.0 * h);
  }

  const double center = cost_at(z);
  Eigen::MatrixXd hess(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double hi = fd_step(z[i], cfg.fd_hessian_rel, cfg.fd_hessian_floor);
    Eigen::VectorXd zp = z, zm = z;
    zp[i] += hi;
    zm[i] -= hi;
    hess(i, i) = (cost_at(zp) - 2.0 * center + cost_at(zm)) / (hi * hi);
    for (int j = 0; j < i; ++j) {
      const double hj = fd_step(z[j], cfg.fd_hessian_rel, cfg.fd_hessian_floor);
      Eigen::VectorXd zpp = z, zpm = z, zmp = z, zmm = z;
      zpp[i] += hi;
      zpp[j] += hj;
      zpm[i] += hi;
      zpm[j] -= hj;
      zmp[i] -= hi;
      zmp[j] += hj;
      zmm[i] -= hi;
      zmm[j] -= hj;
      const double value =
          (cost_at(zpp) - cost_at(zpm) - cost_at(zmp) + cost_at(zmm)) / (4.0 * hi * hj);
      hess(i, j) = value;
      hess(j, i) = value;
    }
  }

  CostExpansion e;
  e.lx = grad.head(n);
  e.lu = grad.tail(m);
  e.lxx = hess.topLeftCorner(n, n);
  e.luu = hess.bottomRightCorner(m, m);
  e.lux = hess.bottomLeftCorner(m, n);
  return e;
}

void terminal_expansion(const ContinuousSystem& system, const Eigen::VectorXd& x,
                        const IlqrConfig& cfg, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) {
  const int n = system.state_dim();
  grad.resize(n);
  hess.resize(n, n);
  const auto cost_at = [&](const Eigen::VectorXd& xx) { return system.terminal_cost(xx); };
  for (int i = 0; i < n; ++i) {
    const double h = fd_step(x[i], cfg.fd_step_rel, cfg.fd_step_floor);
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    grad[i] = (cost_at(xp) - cost_at(xm)) / (2.0 * h);
  }
  const double center = cost_at(x);
  for (int i = 0; i < n; ++i) {
    const double hi = fd_step(x[i], cfg.fd_hessian_rel, cfg.fd_hessian_floor);
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += hi;
    xm[i] -= hi;
    hess(i, i) = (cost_at(xp) - 2.0 * center + cost_at(xm)) / (hi * hi);
    for (int j = 0; j < i; ++j) {
      const double hj = fd_step(x[j], cfg.fd_hessian_rel, cfg.fd_hessian_floor);
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += hi;
      xpp[j] += hj;
      xpm[i] += hi;
      xpm[j] -= hj;
      xmp[i] -= hi;
      xmp[j] += hj;
      xmm[i] -= hi;
      xmm[j] -= hj;
      const double value =
          (cost_at(xpp) - cost_at(xpm) - cost_at(xmp) + cost_at(xmm)) / (4.0 * hi * hj);
      hess(i, j) = value;
      hess(j, i) = value;
    }
  }
}

Eigen::VectorXd clamp(const Eigen::VectorXd& u, const Eigen::VectorXd& lo,
                      const Eigen::VectorXd& hi) {
  return u.cwiseMax(lo).cwiseMin(hi);
}

// Rollout with cost; returns +inf on divergence.
double rollout(const ContinuousSystem& system, const std::vector<Eigen::VectorXd>& controls,
               std::vector<Eigen::VectorXd>& states) {
  const int horizon = system.horizon();
  states.assign(static_cast<std::size_t>(horizon) + 1, Eigen::VectorXd());
  states[0] = system.initial_state();
  double total = 0.0;
  for (int k = 0; k < horizon; ++k) {
    const auto& x = states[static_cast<std::size_t>(k)];
    if (!x.allFinite()) return kInf;
    const double c = system.stage_cost(x, controls[static_cast<std::size_t>(k)]);
    if (!std::isfinite(c)) return kInf;
    total += c;
    Eigen::VectorXd next(system.state_dim());
    system.step_into(x, k, controls[static_cast<std::size_t>(k)], next);
    states[static_cast<std::size_t>(k) + 1] = std::move(next);
  }
  if (!states.back().allFinite()) return kInf;
  const double terminal = system.terminal_cost(states.back());
  if (!std::isfinite(terminal)) return kInf;
  return total + terminal;
}

struct BackwardPass {
  std::vector<Eigen::VectorXd> feedforward;
  std::vector<Eigen::MatrixXd> feedback;
  bool ok = false;
};

BackwardPass backward(const ContinuousSystem& system,
                      const std::vector<Eigen::VectorXd>& states,
                      const std::vector<Eigen::VectorXd>& controls, double reg,
                      const IlqrConfig& cfg) {
  const int horizon = system.horizon();
  const int n = system.state_dim();
  const int m = system.control_dim();
  BackwardPass pass;
  pass.feedforward.assign(static_cast<std::size_t>(horizon), Eigen::VectorXd::Zero(m));
  pass.feedback.assign(static_cast<std::size_t>(horizon), Eigen::MatrixXd::Zero(m, n));

  Eigen::VectorXd vx;
  Eigen::MatrixXd vxx;
  terminal_expansion(system, states.back(), cfg, vx, vxx);

  Eigen::MatrixXd a(n, n), b(n, m);
  for (int k = horizon - 1; k >= 0; --k) {
    const auto& x = states[static_cast<std::size_t>(k)];
    const auto& u = controls[static_cast<std::size_t>(k)];
    finite_diff_step_jacobians(system, x, u, k, cfg.fd_step_rel, cfg.fd_step_floor, a, b);
    const CostExpansion e = stage_expansion(system, x, u, cfg);

    const Eigen::VectorXd qx = e.lx + a.transpose() * vx;
    const Eigen::VectorXd qu = e.lu + b.transpose() * vx;
    const Eigen::MatrixXd qxx = e.lxx + a.transpose() * vxx * a;
    const Eigen::MatrixXd quu = e.luu + b.transpose() * vxx * b;
    const Eigen::MatrixXd qux = e.lux + b.transpose() * vxx * a;

    Eigen::MatrixXd quu_reg = quu + reg * Eigen::MatrixXd::Identity(m, m);
    if (!quu_reg.allFinite()) return pass;
    const Eigen::LLT<Eigen::MatrixXd> llt(quu_reg);
    if (llt.info() != Eigen::Success) return pass;

    const Eigen::VectorXd kff = -llt.solve(qu);
    const Eigen::MatrixXd kfb = -llt.solve(qux);
    pass.feedforward[static_cast<std::size_t>(k)] = kff;
    pass.feedback[static_cast<std::size_t>(k)] = kfb;

    vx = qx + kfb.transpose() * quu * kff + kfb.transpose() * qu + qux.transpose() * kff;
    vxx = qxx + kfb.transpose() * quu * kfb + kfb.transpose() * qux + qux.transpose() * kfb;
    vxx = 0.5 * (vxx + vxx.transpose()).eval();
  }
  pass.ok = true;
  return pass;
}

double forward(const ContinuousSystem& system, const std::vector<Eigen::VectorXd>& states,
               const std::vector<Eigen::VectorXd>& controls, const BackwardPass& pass,
               double alpha, const IlqrConfig& cfg, std::vector<Eigen::VectorXd>& new_states,
               std::vector<Eigen::VectorXd>& new_controls) {
  const int horizon = system.horizon();
  new_states.assign(static_cast<std::size_t>(horizon) + 1, Eigen::VectorXd());
  new_controls.assign(static_cast<std::size_t>(horizon), Eigen::VectorXd());
  new_states[0] = system.initial_state();
  double total = 0.0;
  for (int k = 0; k < horizon; ++k) {
    const auto& x = new_states[static_cast<std::size_t>(k)];
    if (!x.allFinite()) return kInf;
    Eigen::VectorXd u = controls[static_cast<std::size_t>(k)] +
                        alpha * pass.feedforward[static_cast<std::size_t>(k)] +
                        pass.feedback[static_cast<std::size_t>(k)] *
                            (x - states[static_cast<std::size_t>(k)]);
    if (cfg.clamp_controls) u = clamp(u, system.control_lower(), system.control_upper());
    if (!u.allFinite()) return kInf;
    const double c = system.stage_cost(x, u);
    if (!std::isfinite(c)) return kInf;
    total += c;
    Eigen::VectorXd next(system.state_dim());
    system.step_into(x, k, u, next);
    new_controls[static_cast<std::size_t>(k)] = std::move(u);
    new_states[static_cast<std::size_t>(k) + 1] = std::move(next);
  }
  if (!new_states.back().allFinite()) return kInf;
  const double terminal = system.terminal_cost(new_states.back());
  if (!std::isfinite(terminal)) return kInf;
  return total + terminal;
}

}  // namespace

void finite_diff_step_jacobians(const ContinuousSystem& system, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& u, int k, double rel, double floor,
                                Eigen::MatrixXd& a, Eigen::MatrixXd& b) {
  const int n = system.state_dim();
  const int m = system.control_dim();
  a.resize(n, n);
  b.resize(n, m);
  Eigen::VectorXd fp(n), fm(n);
  for (int i = 0; i < n; ++i) {
    const double h = fd_step(x[i], rel, floor);
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    system.step_into(xp, k, u, fp);
    system.step_into(xm, k, u, fm);
    a.col(i) = (fp - fm) / (2.0 * h);
  }
  for (int i = 0; i < m; ++i) {
    const double h = fd_step(u[i], rel, floor);
    Eigen::VectorXd up = u, um = u;
    up[i] += h;
    um[i] -= h;
    system.step_into(x, k, up, fp);
    system.step_into(x, k, um, fm);
    b.col(i) = (fp - fm) / (2.0 * h);
  }
}

namespace {

// Deterministic primer family for the multi-start oracle: zeros, then
// sinusoids u(k) = +/- A sin(2 pi k / P) applied on the first control
// channel. Periods cover typical pump frequencies; amplitudes are half and
// full actuation range (bounded systems) or unit scale otherwise.
std::vector<std::vector<Eigen::VectorXd>> primer_controls(const ContinuousSystem& system,
                                                          int count) {
  const int horizon = system.horizon();
  const int m = system.control_dim();
  double amp = std::min(std::abs(system.control_lower()[0]), std::abs(system.control_upper()[0]));
  if (!std::isfinite(amp) || amp > 1e6) amp = 1.0;

  struct Primer {
    double amplitude;
    int period;
  };
  const Primer primers[] = {
      {0.5 * amp, 16}, {-0.5 * amp, 16}, {0.5 * amp, 24}, {-0.5 * amp, 24},
      {0.5 * amp, 32}, {-0.5 * amp, 32}, {amp, 24},       {-amp, 24},
  };

  std::vector<std::vector<Eigen::VectorXd>> out;
  out.emplace_back(static_cast<std::size_t>(horizon), Eigen::VectorXd::Zero(m));
  for (const Primer& p : primers) {
    if (static_cast<int>(out.size()) >= count) break;
    std::vector<Eigen::VectorXd> controls(static_cast<std::size_t>(horizon),
                                          Eigen::VectorXd::Zero(m));
    for (int k = 0; k < horizon; ++k) {
      controls[static_cast<std::size_t>(k)][0] =
          p.amplitude * std::sin(2.0 * M_PI * k / p.period);
    }
    out.push_back(std::move(controls));
  }
  return out;
}

}  // namespace

IlqrResult ilqr_oracle(const ContinuousSystem& system, const IlqrConfig& config) {
  const auto starts = primer_controls(system, std::max(1, config.restarts));
  IlqrResult best;
  bool have_best = false;
  for (const auto& controls : starts) {
    IlqrResult candidate = ilqr_oracle(system, controls, config);
    if (!have_best || candidate.cost < best.cost) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

IlqrResult ilqr_oracle(const ContinuousSystem& system,
                       std::vector<Eigen::VectorXd> initial_controls,
                       const IlqrConfig& config) {
  if (static_cast<int>(initial_controls.size()) != system.horizon()) {
    throw std::invalid_argument("ilqr_oracle: control count does not match the horizon");
  }
  IlqrResult result;
  result.controls = std::move(initial_controls);
  if (config.clamp_controls) {
    for (auto& u : result.controls) {
      u = clamp(u, system.control_lower(), system.control_upper());
    }
  }
  result.cost = rollout(system, result.controls, result.states);
  result.cost_history.push_back(result.cost);
  if (!std::isfinite(result.cost)) return result;

  double reg = config.reg_init;
  std::vector<Eigen::VectorXd> trial_states, trial_controls;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    BackwardPass pass = backward(system, result.states, result.controls, reg, config);
    while (!pass.ok) {
      reg *= config.reg_scale;
      if (reg > config.reg_max) {
        result.warning_non_pd = true;
        return result;
      }
      pass = backward(system, result.states, result.controls, reg, config);
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int ls = 0; ls < config.line_search_steps; ++ls, alpha *= 0.5) {
      const double trial_cost =
          forward(system, result.states, result.controls, pass, alpha, config, trial_states,
                  trial_controls);
      if (trial_cost < result.cost - config.acceptance_floor) {
        const double improvement = result.cost - trial_cost;
        result.cost = trial_cost;
        result.states.swap(trial_states);
        result.controls.swap(trial_controls);
        result.cost_history.push_back(result.cost);
        ++result.iterations_accepted;
        reg = std::max(config.reg_min, reg / config.reg_scale);
        accepted = true;
        if (improvement < config.tolerance) {
          result.converged = true;
          return result;
        }
        break;
      }
    }
    if (!accepted) {
      reg *= config.reg_scale;
      if (reg > config.reg_max) {
        // No descent direction within the regularization ladder: the
        // iterate is stationary for all practical purposes.
        result.converged = true;
        return result;
      }
    }
  }
  return result;
}

}  // namespace modesched
