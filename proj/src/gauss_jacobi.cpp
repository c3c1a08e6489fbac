#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <tuple>

#include "cfou/quad.hpp"

namespace cfou::quad {

JacobiRule gauss_jacobi_rule(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi_rule: n must be positive");
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi_rule: exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(b2);
  }
  JacobiRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                         std::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);
  if (n == 1) {
    rule.nodes[0] = diag[0];
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

const JacobiRule& cached_rule(int n, double alpha, double beta) {
  thread_local std::map<std::tuple<int, double, double>, JacobiRule> cache;
  auto key = std::make_tuple(n, alpha, beta);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, gauss_jacobi_rule(n, alpha, beta)).first;
  return it->second;
}

}  // namespace cfou::quad
