#include "seqdesign/design/spending.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "seqdesign/error.hpp"
#include "seqdesign/numeric.hpp"
#include "seqdesign/proxy.hpp"
#include "seqdesign/rng.hpp"

namespace seqdesign {

double obf_spending(double Gamma0, double s) {
  if (!(Gamma0 > 0.0 && Gamma0 < 1.0)) throw ConfigError("spending: Gamma0 must lie in (0,1)");
  if (!(s > 0.0)) return 0.0;
  return 2.0 * (1.0 - normal_cdf(normal_quantile(1.0 - Gamma0 / 2.0) / std::sqrt(s)));
}

std::vector<double> obf_initial_gammas(double Gamma0, const std::vector<double>& c, bool include_final,
                                       const SpendingCalibration& cal) {
  if (!(Gamma0 > 0.0 && Gamma0 < 1.0)) throw ConfigError("obf_initial_gammas: Gamma0 must lie in (0,1)");
  const std::size_t T = c.size();
  if (T == 0) throw ConfigError("obf_initial_gammas: empty spacing");
  std::vector<double> s(T);
  for (std::size_t t = 0; t < T; ++t) {
    s[t] = c[t] / c.back();
    if (!(s[t] > 0.0) || (t > 0 && !(s[t] > s[t - 1])))
      throw ConfigError("obf_initial_gammas: information fractions must be strictly increasing");
  }
  const std::size_t K = include_final ? T : T - 1;
  std::vector<double> gamma;
  if (K == 0) return gamma;

  // Standardised stage statistics Z_t = sqrt(c_t) * X_t with X ~ N(0, C).
  const Eigen::MatrixXd C = build_C(c);
  const Eigen::MatrixXd L = C.llt().matrixL();
  const std::size_t N = cal.paths;
  std::vector<double> Z(N * K);
  StreamKey key;
  key.seed = cal.seed;
  key.lane = Lane::calibration;
  Eigen::VectorXd e(static_cast<Eigen::Index>(T));
  for (std::size_t i = 0; i < N; ++i) {
    RngStream rng(key.with_index(static_cast<std::uint32_t>(i)));
    for (std::size_t t = 0; t < T; ++t) e(static_cast<Eigen::Index>(t)) = rng.normal();
    const Eigen::VectorXd x = L * e;
    for (std::size_t t = 0; t < K; ++t) Z[i * K + t] = x(static_cast<Eigen::Index>(t)) * std::sqrt(c[t]);
  }

  std::vector<char> alive(N, 1);
  double prev_alpha = 0.0;
  std::vector<double> scratch;
  for (std::size_t t = 0; t < K; ++t) {
    const double alpha = obf_spending(Gamma0, s[t]);
    double z;
    if (t == 0) {
      z = normal_quantile(1.0 - alpha);
    } else {
      const double target = (alpha - prev_alpha) * static_cast<double>(N);
      scratch.clear();
      for (std::size_t i = 0; i < N; ++i)
        if (alive[i]) scratch.push_back(Z[i * K + t]);
      std::sort(scratch.begin(), scratch.end(), std::greater<>());
      // Boundary sits between the k-th and (k+1)-th largest surviving values.
      const double k = std::min(target, static_cast<double>(scratch.size()));
      if (k < 1.0) {
        z = scratch.empty() ? kInf : scratch.front() + (1.0 - k) * 1e-3;
      } else if (k >= static_cast<double>(scratch.size())) {
        z = scratch.back();
      } else {
        const auto j = static_cast<std::size_t>(std::floor(k));
        const double frac = k - static_cast<double>(j);
        z = scratch[j - 1] + frac * (scratch[j] - scratch[j - 1]);
      }
    }
    for (std::size_t i = 0; i < N; ++i)
      if (alive[i] && Z[i * K + t] >= z) alive[i] = 0;
    gamma.push_back(normal_cdf(z));
    prev_alpha = alpha;
  }
  return gamma;
}

}  // namespace seqdesign
