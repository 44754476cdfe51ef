#include "dapc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace dapc {

ChannelParams ChannelParams::make(AffinityMatrix affinity, Eigen::VectorXd v,
                                  Eigen::VectorXd lambda, double v_min,
                                  double v_max, double lambda_min,
                                  double lambda_max) {
  affinity.validate();
  if (v.size() != affinity.n())
    throw std::invalid_argument("ChannelParams: v must have length N");
  if (lambda.size() != affinity.k())
    throw std::invalid_argument("ChannelParams: lambda must have length K");
  if (!(v_min > 0.0) || !(v_max >= v_min))
    throw std::invalid_argument("ChannelParams: need 0 < v_min <= v_max");
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
    throw std::invalid_argument(
        "ChannelParams: need 0 < lambda_min <= lambda_max");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(v(i) >= v_min) || !(v(i) <= v_max))
      throw std::invalid_argument("ChannelParams: v outside [v_min, v_max]");
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (!(lambda(i) >= lambda_min) || !(lambda(i) <= lambda_max))
      throw std::invalid_argument(
          "ChannelParams: lambda outside [lambda_min, lambda_max]");

  ChannelParams ch;
  ch.abar = affinity.entries * v.asDiagonal();
  ch.affinity = std::move(affinity);
  ch.v = std::move(v);
  ch.lambda = std::move(lambda);
  ch.v_min = v_min;
  ch.v_max = v_max;
  ch.lambda_min = lambda_min;
  ch.lambda_max = lambda_max;
  return ch;
}

ChannelParams ChannelParams::make_const(AffinityMatrix affinity, double v,
                                        double lambda) {
  const Eigen::Index n = affinity.n();
  const Eigen::Index k = affinity.k();
  return make(std::move(affinity), Eigen::VectorXd::Constant(n, v),
              Eigen::VectorXd::Constant(k, lambda), v, v, lambda, lambda);
}

Eigen::VectorXd mean_vector(const ChannelParams& ch, const Eigen::VectorXd& x) {
  if (x.size() != ch.affinity.n())
    throw std::invalid_argument("mean_vector: x must have length N");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x(i) >= 0.0))
      throw std::invalid_argument("mean_vector: inputs must be non-negative");
  return ch.abar * x + ch.lambda;
}

Eigen::VectorXi sample(const ChannelParams& ch, const Eigen::VectorXd& x,
                       Rng& rng) {
  const Eigen::VectorXd mu = mean_vector(ch, x);
  Eigen::VectorXi y(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k)
    y(k) = static_cast<int>(rng.poisson(mu(k)));
  return y;
}

double log_likelihood(const ChannelParams& ch, const Eigen::VectorXd& x,
                      const Eigen::VectorXi& y) {
  const Eigen::VectorXd mu = mean_vector(ch, x);
  if (y.size() != mu.size())
    throw std::invalid_argument("log_likelihood: y must have length K");
  double ll = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (y(k) < 0)
      throw std::invalid_argument("log_likelihood: counts must be >= 0");
    ll += -mu(k) + y(k) * std::log(mu(k)) - std::lgamma(y(k) + 1.0);
  }
  return ll;
}

}  // namespace dapc
