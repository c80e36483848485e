#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "aeh/autodiff.hpp"
#include "aeh/network.hpp"

namespace support {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

// central differences of a scalar field
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline Eigen::VectorXd fd_diag_hess(const std::function<double(const Eigen::VectorXd&)>& f,
                                    const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd d(x.size());
  const double fx = f(x);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    d[i] = (f(xp) - 2.0 * fx + f(xm)) / (h * h);
  }
  return d;
}

// straightforward loop-based re-implementation of the network forward pass
// and its input jet, structurally independent of the library's evaluator
inline aeh::JetValue reference_jet(const aeh::ParameterVector& params,
                                   const aeh::NetworkConfig& config, const Eigen::VectorXd& x) {
  const aeh::NetworkLayout layout(config);
  const int d = config.input_dim;
  std::vector<double> value(d, 0.0);
  std::vector<std::vector<double>> grad, hess;

  // activations of the current layer, one jet per unit
  std::vector<double> a(static_cast<std::size_t>(d));
  grad.assign(static_cast<std::size_t>(d), std::vector<double>(d, 0.0));
  hess.assign(static_cast<std::size_t>(d), std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) {
    a[static_cast<std::size_t>(i)] = x[i];
    grad[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  }

  for (int l = 0; l < layout.layer_count(); ++l) {
    const int fin = layout.fan_in(l), fout = layout.fan_out(l);
    std::vector<double> za(fout, 0.0);
    std::vector<std::vector<double>> zg(fout, std::vector<double>(d, 0.0));
    std::vector<std::vector<double>> zh(fout, std::vector<double>(d, 0.0));
    for (int o = 0; o < fout; ++o) {
      double z = params.entries[layout.bias_offset(l) + o];
      for (int k = 0; k < fin; ++k) {
        const double w =
            params.entries[layout.weight_offset(l) + static_cast<std::int64_t>(o) * fin + k];
        z += w * a[static_cast<std::size_t>(k)];
        for (int i = 0; i < d; ++i) {
          zg[o][static_cast<std::size_t>(i)] += w * grad[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
          zh[o][static_cast<std::size_t>(i)] += w * hess[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        }
      }
      za[o] = z;
    }
    if (l < layout.layer_count() - 1) {
      for (int o = 0; o < fout; ++o) {
        const double t = std::tanh(za[o]);
        const double s = 1.0 - t * t;
        const double spp = -2.0 * t * s;
        for (int i = 0; i < d; ++i) {
          const double g = zg[o][static_cast<std::size_t>(i)];
          zh[o][static_cast<std::size_t>(i)] = spp * g * g + s * zh[o][static_cast<std::size_t>(i)];
          zg[o][static_cast<std::size_t>(i)] = s * g;
        }
        za[o] = t;
      }
    }
    a = za;
    grad = zg;
    hess = zh;
  }
  aeh::JetValue jet;
  jet.value = a[0];
  jet.input_grad = Eigen::Map<Eigen::VectorXd>(grad[0].data(), d);
  jet.input_diag_hess = Eigen::Map<Eigen::VectorXd>(hess[0].data(), d);
  return jet;
}

inline double reference_forward(const aeh::ParameterVector& params,
                                const aeh::NetworkConfig& config, const Eigen::VectorXd& x) {
  return reference_jet(params, config, x).value;
}

// textbook Adam, scalar loops
struct ReferenceAdam {
  std::vector<double> m, v;
  long step = 0;

  explicit ReferenceAdam(std::size_t n) : m(n, 0.0), v(n, 0.0) {}

  void update(std::vector<double>& theta, const std::vector<double>& g, double lr, double b1,
              double b2, double eps) {
    step += 1;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      const double mhat = m[i] / (1.0 - std::pow(b1, static_cast<double>(step)));
      const double vhat = v[i] / (1.0 - std::pow(b2, static_cast<double>(step)));
      theta[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
};

// central finite differences of a scalar objective over the parameter vector
inline Eigen::VectorXd fd_param_gradient(
    const std::function<double(const aeh::ParameterVector&)>& objective,
    const aeh::ParameterVector& params, double h) {
  Eigen::VectorXd g(params.entries.size());
  for (Eigen::Index i = 0; i < params.entries.size(); ++i) {
    aeh::ParameterVector p = params;
    p.entries[i] += h;
    const double up = objective(p);
    p.entries[i] = params.entries[i] - h;
    const double down = objective(p);
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

inline Eigen::MatrixXd random_points(const std::vector<std::pair<double, double>>& domain,
                                     int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u01 = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
  Eigen::MatrixXd pts(domain.size(), n);
  for (int c = 0; c < n; ++c) {
    for (std::size_t j = 0; j < domain.size(); ++j) {
      pts(static_cast<Eigen::Index>(j), c) =
          domain[j].first + (domain[j].second - domain[j].first) * u01();
    }
  }
  return pts;
}

}  // namespace support
