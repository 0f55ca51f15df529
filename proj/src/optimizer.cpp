/* Copyright 2026 The tspqaoa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tspqaoa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tspqaoa/error.hpp"

namespace tspqaoa {

std::string_view to_string(OptimizerKind kind) {
  return kind == OptimizerKind::kCobyla ? "cobyla" : "nelder-mead";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "cobyla") return OptimizerKind::kCobyla;
  if (name == "nelder-mead") return OptimizerKind::kNelderMead;
  throw ValidationError("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(OptimizerStatus status) {
  switch (status) {
    case OptimizerStatus::kConverged:
      return "converged";
    case OptimizerStatus::kMaxEvals:
      return "max_evals";
    case OptimizerStatus::kRoundingError:
      return "rounding_error";
  }
  return "unknown";
}

namespace {

void check_options(std::size_t dims, const OptimizerOptions& o) {
  if (dims == 0) throw ValidationError("optimizer needs at least one variable");
  if (!(o.initial_step > 0.0) || !(o.tolerance > 0.0) ||
      o.tolerance > o.initial_step) {
    throw ValidationError("need 0 < tolerance <= initial_step");
  }
  if (o.max_evals < 1) throw ValidationError("max_evals must be positive");
}

// Row-major dense matrix; just enough for the simplex bookkeeping.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols)
      : cols_(cols), data_(rows * cols, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t cols_;
  std::vector<double> data_;
};

}  // namespace

// The control flow follows Powell's reference cobylb with m = 0 constraints:
// the merit function reduces to f, the penalty parameter stays 0, and the
// trust-region step is -rho * g / |g|. Labels in the reference code map to
// the Stage values below.
OptimizeOutcome minimize_cobyla(const Objective& objective,
                                std::vector<double> x0,
                                const OptimizerOptions& options) {
  check_options(x0.size(), options);
  constexpr double kAlpha = 0.25;  // lower bound on simplex "width" / rho
  constexpr double kBeta = 2.1;    // upper bound on edge length / rho
  constexpr double kGamma = 0.5;   // geometry-step length factor
  constexpr double kDelta = 1.1;   // edge-length threshold when replacing

  const std::size_t n = x0.size();
  const std::size_t pole = n;
  const double rhobeg = options.initial_step;
  const double rhoend = options.tolerance;
  double rho = rhobeg;

  // sim(:, j) for j < n holds vertex j minus the pole; sim(:, n) is the pole.
  // simi is the inverse of the leading n x n block.
  Matrix sim(n, n + 1);
  Matrix simi(n, n);
  std::vector<double> fval(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sim(i, pole) = x0[i];
    sim(i, i) = rhobeg;
    simi(i, i) = 1.0 / rhobeg;
  }

  std::vector<double> x = x0;
  std::vector<double> dx(n, 0.0), g(n, 0.0), vsig(n, 0.0), veta(n, 0.0),
      sigbar(n, 0.0);
  std::size_t jdrop = pole;
  bool ibrnch = false;
  bool iflag = false;
  double parsig = 0.0, pareta = 0.0, prerem = 0.0, f = 0.0;
  int nfvals = 0;
  OptimizerStatus status = OptimizerStatus::kConverged;

  auto replace_vertex = [&](std::size_t jd) {
    double temp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sim(i, jd) = dx[i];
      temp += simi(jd, i) * dx[i];
    }
    for (std::size_t i = 0; i < n; ++i) simi(jd, i) /= temp;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == jd) continue;
      double t = 0.0;
      for (std::size_t i = 0; i < n; ++i) t += simi(j, i) * dx[i];
      for (std::size_t i = 0; i < n; ++i) simi(j, i) -= t * simi(jd, i);
    }
  };

  enum class Stage { kEvaluate, kSelectBest, kTrustStep, kAssess, kReduceRho, kDone };
  Stage stage = Stage::kEvaluate;

  while (stage != Stage::kDone) {
    switch (stage) {
      case Stage::kEvaluate: {  // label 40
        if (nfvals >= options.max_evals) {
          status = OptimizerStatus::kMaxEvals;
          stage = Stage::kDone;
          break;
        }
        f = objective(x);
        ++nfvals;
        if (ibrnch) {
          stage = Stage::kAssess;
          break;
        }
        fval[jdrop] = f;
        if (static_cast<std::size_t>(nfvals) <= n + 1) {
          // Initial simplex: keep the better of the new vertex and the pole
          // in pole position.
          if (jdrop < n) {
            if (fval[pole] <= f) {
              x[jdrop] = sim(jdrop, pole);
            } else {
              sim(jdrop, pole) = x[jdrop];
              fval[jdrop] = fval[pole];
              fval[pole] = f;
              for (std::size_t k = 0; k <= jdrop; ++k) {
                sim(jdrop, k) = -rhobeg;
                double temp = 0.0;
                for (std::size_t i = k; i <= jdrop; ++i) temp -= simi(i, k);
                simi(jdrop, k) = temp;
              }
            }
          }
          if (static_cast<std::size_t>(nfvals) <= n) {
            jdrop = static_cast<std::size_t>(nfvals) - 1;
            x[jdrop] += rhobeg;
            break;
          }
        }
        ibrnch = true;
        stage = Stage::kSelectBest;
        break;
      }

      case Stage::kSelectBest: {  // label 140
        std::size_t nbest = pole;
        double phimin = fval[pole];
        for (std::size_t j = 0; j < n; ++j) {
          if (fval[j] < phimin) {
            nbest = j;
            phimin = fval[j];
          }
        }
        if (nbest < n) {
          std::swap(fval[pole], fval[nbest]);
          for (std::size_t i = 0; i < n; ++i) {
            const double temp = sim(i, nbest);
            sim(i, nbest) = 0.0;
            sim(i, pole) += temp;
            double tempa = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
              sim(i, k) -= temp;
              tempa -= simi(k, i);
            }
            simi(nbest, i) = tempa;
          }
        }

        double error = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            double temp = (i == j) ? -1.0 : 0.0;
            for (std::size_t k = 0; k < n; ++k) temp += simi(i, k) * sim(k, j);
            error = std::max(error, std::abs(temp));
          }
        }
        if (error > 0.1) {
          status = OptimizerStatus::kRoundingError;
          stage = Stage::kDone;
          break;
        }

        // Gradient of the linear interpolant through the simplex.
        for (std::size_t i = 0; i < n; ++i) {
          double temp = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            temp += (fval[j] - fval[pole]) * simi(j, i);
          }
          g[i] = temp;
        }

        iflag = true;
        parsig = kAlpha * rho;
        pareta = kBeta * rho;
        for (std::size_t j = 0; j < n; ++j) {
          double wsig = 0.0, weta = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            wsig += simi(j, i) * simi(j, i);
            weta += sim(i, j) * sim(i, j);
          }
          vsig[j] = 1.0 / std::sqrt(wsig);
          veta[j] = std::sqrt(weta);
          if (vsig[j] < parsig || veta[j] > pareta) iflag = false;
        }
        if (ibrnch || iflag) {
          stage = Stage::kTrustStep;
          break;
        }

        // Geometry step: replace the vertex that spoils acceptability.
        std::size_t drop = n;
        double temp = pareta;
        for (std::size_t j = 0; j < n; ++j) {
          if (veta[j] > temp) {
            drop = j;
            temp = veta[j];
          }
        }
        if (drop == n) {
          for (std::size_t j = 0; j < n; ++j) {
            if (vsig[j] < temp) {
              drop = j;
              temp = vsig[j];
            }
          }
        }
        jdrop = drop;
        const double len = kGamma * rho * vsig[jdrop];
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dx[i] = len * simi(jdrop, i);
          slope += g[i] * dx[i];
        }
        if (slope > 0.0) {
          for (double& d : dx) d = -d;
        }
        replace_vertex(jdrop);
        for (std::size_t j = 0; j < n; ++j) x[j] = sim(j, pole) + dx[j];
        stage = Stage::kEvaluate;
        break;
      }

      case Stage::kTrustStep: {  // label 370
        double gnorm = 0.0;
        for (double gi : g) gnorm += gi * gi;
        gnorm = std::sqrt(gnorm);
        if (!(gnorm > 0.0)) {
          // Flat model: no step of useful length exists at this radius.
          std::fill(dx.begin(), dx.end(), 0.0);
          ibrnch = true;
          stage = Stage::kReduceRho;
          break;
        }
        double predicted = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dx[i] = -rho * g[i] / gnorm;
          predicted += g[i] * dx[i];
        }
        prerem = -predicted;
        for (std::size_t i = 0; i < n; ++i) x[i] = sim(i, pole) + dx[i];
        ibrnch = true;
        stage = Stage::kEvaluate;
        break;
      }

      case Stage::kAssess: {  // label 440
        double trured = fval[pole] - f;
        if (f == fval[pole]) {
          prerem = 0.0;
          trured = 0.0;
        }
        double ratio = trured <= 0.0 ? 1.0 : 0.0;
        std::size_t drop = n;
        for (std::size_t j = 0; j < n; ++j) {
          double temp = 0.0;
          for (std::size_t i = 0; i < n; ++i) temp += simi(j, i) * dx[i];
          temp = std::abs(temp);
          if (temp > ratio) {
            drop = j;
            ratio = temp;
          }
          sigbar[j] = temp * vsig[j];
        }
        double edgmax = kDelta * rho;
        std::size_t longest = n;
        for (std::size_t j = 0; j < n; ++j) {
          if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
            double temp = veta[j];
            if (trured > 0.0) {
              temp = 0.0;
              for (std::size_t i = 0; i < n; ++i) {
                const double d = dx[i] - sim(i, j);
                temp += d * d;
              }
              temp = std::sqrt(temp);
            }
            if (temp > edgmax) {
              longest = j;
              edgmax = temp;
            }
          }
        }
        if (longest < n) drop = longest;
        if (drop == n) {
          stage = Stage::kReduceRho;
          break;
        }
        jdrop = drop;
        replace_vertex(jdrop);
        fval[jdrop] = f;
        if (trured > 0.0 && trured >= 0.1 * prerem) {
          stage = Stage::kSelectBest;
          break;
        }
        stage = Stage::kReduceRho;
        break;
      }

      case Stage::kReduceRho: {  // label 550
        if (!iflag) {
          ibrnch = false;
          stage = Stage::kSelectBest;
          break;
        }
        if (rho > rhoend) {
          rho *= 0.5;
          if (rho <= 1.5 * rhoend) rho = rhoend;
          stage = Stage::kSelectBest;
          break;
        }
        stage = Stage::kDone;
        break;
      }

      case Stage::kDone:
        break;
    }
  }

  if (nfvals == 0) throw Error("optimizer produced no iterate");
  OptimizeOutcome out;
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = sim(i, pole);
  out.value = fval[pole];
  out.evals = nfvals;
  out.status = status;
  return out;
}

OptimizeOutcome minimize_nelder_mead(const Objective& objective,
                                     std::vector<double> x0,
                                     const OptimizerOptions& options) {
  check_options(x0.size(), options);
  const std::size_t n = x0.size();
  int evals = 0;
  auto budget_left = [&] { return evals < options.max_evals; };
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return objective(x);
  };

  std::vector<std::vector<double>> pts{x0};
  std::vector<double> vals{eval(x0)};
  for (std::size_t i = 0; i < n && budget_left(); ++i) {
    auto p = x0;
    p[i] += options.initial_step;
    vals.push_back(eval(p));
    pts.push_back(std::move(p));
  }

  OptimizerStatus status = OptimizerStatus::kMaxEvals;
  std::vector<std::size_t> idx(pts.size());
  auto sort_simplex = [&] {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return vals[a] < vals[b];
    });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    for (std::size_t i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  if (pts.size() == n + 1) {
    while (true) {
      sort_simplex();
      double size = 0.0, spread = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        spread = std::max(spread, std::abs(vals[i] - vals[0]));
        for (std::size_t k = 0; k < n; ++k) {
          size = std::max(size, std::abs(pts[i][k] - pts[0][k]));
        }
      }
      if (size <= options.tolerance && spread <= options.tolerance) {
        status = OptimizerStatus::kConverged;
        break;
      }
      if (!budget_left()) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
      }
      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) {
          p[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
        }
        return p;
      };

      auto xr = along(-1.0);
      const double fr = eval(xr);
      if (fr < vals[0]) {
        if (budget_left()) {
          auto xe = along(-2.0);
          const double fe = eval(xe);
          if (fe < fr) {
            pts[n] = std::move(xe);
            vals[n] = fe;
            continue;
          }
        }
        pts[n] = std::move(xr);
        vals[n] = fr;
        continue;
      }
      if (fr < vals[n - 1]) {
        pts[n] = std::move(xr);
        vals[n] = fr;
        continue;
      }
      if (!budget_left()) break;
      const bool outside = fr < vals[n];
      auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (outside ? fc <= fr : fc < vals[n]) {
        pts[n] = std::move(xc);
        vals[n] = fc;
        continue;
      }
      for (std::size_t i = 1; i <= n && budget_left(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
        }
        vals[i] = eval(pts[i]);
      }
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  return OptimizeOutcome{pts[best], vals[best], evals, status};
}

OptimizeOutcome minimize(OptimizerKind kind, const Objective& f,
                         std::vector<double> x0,
                         const OptimizerOptions& options) {
  return kind == OptimizerKind::kCobyla
             ? minimize_cobyla(f, std::move(x0), options)
             : minimize_nelder_mead(f, std::move(x0), options);
}

}  // namespace tspqaoa
