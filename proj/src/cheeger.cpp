#include "sublap/cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sublap/lovasz.hpp"

namespace sublap {

namespace {

constexpr double kSlack = 1e-9;

double cut_value_sum(const SubmodularTransformation& t, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (const auto& f : t.functions()) total += lovasz_eval(f, x);
  return total;
}

double degree_weighted_sum(const SubmodularTransformation& t, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (int v = 0; v < t.n(); ++v) total += t.degree(v) * x(v);
  return total;
}

SubmodularTransformation reflect(const SubmodularTransformation& t) {
  std::vector<SubmodularOracle> reflected;
  reflected.reserve(t.functions().size());
  for (const auto& f : t.functions()) {
    const Subset full = full_mask(f.support_size());
    reflected.emplace_back(
        f.ground_size(), f.support(),
        [f, full](Subset local) { return f.evaluate_local(full & ~local); },
        f.name() + "/reflected");
  }
  return SubmodularTransformation(t.ground(), std::move(reflected));
}

}  // namespace

CutReport conductance_of_set(const SubmodularTransformation& t, Subset s) {
  const Subset full = full_mask(t.n());
  if (s == 0 || s == full || (s & ~full)) throw InputError("conductance: S must be non-trivial");

  CutReport report;
  report.s = s;
  report.cut_s = t.cut(s);
  report.cut_complement = t.cut(full & ~s);
  report.vol_s = t.volume(s);
  report.vol_complement = t.total_volume() - report.vol_s;
  if (report.vol_s <= 0 || report.vol_complement <= 0)
    throw InputError("conductance: both sides need positive volume");
  report.phi = std::min(report.cut_s, report.cut_complement) /
               static_cast<double>(std::min(report.vol_s, report.vol_complement));
  return report;
}

std::pair<double, Subset> brute_force_phi(const SubmodularTransformation& t) {
  if (t.n() > 20) throw CapabilityError("brute_force_phi: ground set larger than 20");
  const Subset full = full_mask(t.n());
  double best = std::numeric_limits<double>::infinity();
  Subset argmin = 0;
  for (Subset s = 1; s < full; ++s) {
    const long vol = t.volume(s);
    if (vol <= 0 || vol >= t.total_volume()) continue;
    const double phi = std::min(t.cut(s), t.cut(full & ~s)) /
                       static_cast<double>(std::min(vol, t.total_volume() - vol));
    if (phi < best) {
      best = phi;
      argmin = s;
    }
  }
  if (argmin == 0) throw InputError("brute_force_phi: no non-trivial set with positive volume");
  return {best, argmin};
}

Subset sweep_positive(const SubmodularTransformation& t, const Eigen::VectorXd& x) {
  if (x.size() != t.n()) throw InputError("sweep_positive: dimension mismatch");
  for (int v = 0; v < t.n(); ++v)
    if (x(v) < -1e-12 || x(v) > 1.0 + 1e-12)
      throw InputError("sweep_positive: x must lie in [0,1]^V");
  const double weighted = degree_weighted_sum(t, x);
  if (weighted <= 1e-14) throw InputError("sweep_positive: sum d(v) x(v) must be positive");

  std::vector<int> positive;
  for (int v = 0; v < t.n(); ++v)
    if (x(v) > 0) positive.push_back(v);
  const std::vector<int> order = descending_order(x, positive);

  Subset prefix = 0, best_set = 0;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int v : order) {
    prefix |= Subset{1} << v;
    const long vol = t.volume(prefix);
    if (vol <= 0) continue;
    const double ratio = t.cut(prefix) / static_cast<double>(vol);
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best_set = prefix;
    }
  }
  if (best_set == 0) throw InputError("sweep_positive: support carries no volume");

  const double bound = cut_value_sum(t, x) / weighted;
  if (best_ratio > bound + kSlack)
    throw std::logic_error("sweep_positive: guarantee violated (internal bug)");
  return best_set;
}

Subset sweep_negative(const SubmodularTransformation& t, const Eigen::VectorXd& x) {
  if (!t.vanishes_on_ground()) throw InputError("sweep_negative requires F(V) = 0");
  if (x.size() != t.n()) throw InputError("sweep_negative: dimension mismatch");
  for (int v = 0; v < t.n(); ++v)
    if (x(v) > 1e-12 || x(v) < -1.0 - 1e-12)
      throw InputError("sweep_negative: x must lie in [-1,0]^V");

  const SubmodularTransformation reflected = reflect(t);
  const Subset s = sweep_positive(reflected, (-x).eval());

  const Subset full = full_mask(t.n());
  const double lhs = t.cut(full & ~s) / static_cast<double>(t.volume(s));
  const double rhs = -cut_value_sum(t, x) / degree_weighted_sum(t, x);
  if (lhs > rhs + kSlack)
    throw std::logic_error("sweep_negative: guarantee violated (internal bug)");
  return s;
}

CutReport strong_sweep(const SubmodularTransformation& t, const Eigen::VectorXd& x) {
  if (!t.vanishes_on_ground()) throw InputError("strong_sweep requires F(V) = 0");
  if (x.size() != t.n() || x.norm() <= 1e-14) throw InputError("strong_sweep: bad input vector");

  const LaplacianOperator op(t, LaplacianMode::normalized);
  if (std::abs(op.trivial_direction().dot(x)) > 1e-6 * x.norm())
    throw InputError("strong_sweep: x must be orthogonal to D^{1/2} 1");
  const double rayleigh = op.rayleigh(x);

  Eigen::VectorXd tilde(t.n());
  for (int v = 0; v < t.n(); ++v) tilde(v) = x(v) / std::sqrt(static_cast<double>(t.degree(v)));

  // Weighted median shift: both open half-supports end up with volume
  // at most vol(V)/2.
  std::vector<int> by_value(t.n());
  std::iota(by_value.begin(), by_value.end(), 0);
  std::sort(by_value.begin(), by_value.end(), [&tilde](int a, int b) {
    if (tilde(a) != tilde(b)) return tilde(a) < tilde(b);
    return a < b;
  });
  const long total = t.total_volume();
  long cumulative = 0;
  double median = tilde(by_value.back());
  for (int v : by_value) {
    cumulative += t.degree(v);
    if (2 * cumulative >= total) {
      median = tilde(v);
      break;
    }
  }

  Eigen::VectorXd y = tilde.array() - median;
  y /= y.cwiseAbs().maxCoeff();
  Eigen::VectorXd z_plus = Eigen::VectorXd::Zero(t.n());
  Eigen::VectorXd z_minus = Eigen::VectorXd::Zero(t.n());
  for (int v = 0; v < t.n(); ++v) {
    if (y(v) > 0) z_plus(v) = y(v) * y(v);
    if (y(v) < 0) z_minus(v) = -y(v) * y(v);
  }

  const double denom_plus = degree_weighted_sum(t, z_plus);
  const double denom_minus = degree_weighted_sum(t, z_minus);
  double ratio_plus = std::numeric_limits<double>::infinity();
  double ratio_minus = std::numeric_limits<double>::infinity();
  if (denom_plus > 1e-14) ratio_plus = cut_value_sum(t, z_plus) / denom_plus;
  if (denom_minus < -1e-14) ratio_minus = -cut_value_sum(t, z_minus) / denom_minus;

  const Subset s = (ratio_plus <= ratio_minus) ? sweep_positive(t, z_plus)
                                               : sweep_negative(t, z_minus);
  const CutReport report = conductance_of_set(t, s);
  if (report.phi > 2.0 * std::sqrt(rayleigh) + kSlack)
    throw std::logic_error("strong_sweep: Cheeger guarantee violated (internal bug)");
  return report;
}

LeftWitness left_witness(const SubmodularTransformation& t, Subset s) {
  const Subset full = full_mask(t.n());
  if (s == 0 || s == full) throw InputError("left_witness: S must be non-trivial");
  if (2 * t.volume(s) > t.total_volume()) s = full & ~s;  // smaller-volume side

  Eigen::VectorXd indicator = Eigen::VectorXd::Zero(t.n());
  for (int v = 0; v < t.n(); ++v)
    if (s >> v & 1) indicator(v) = std::sqrt(static_cast<double>(t.degree(v)));

  const LaplacianOperator op(t, LaplacianMode::normalized);
  LeftWitness witness;
  witness.x_plus = op.project_out_trivial(indicator);
  witness.x_minus = -witness.x_plus;
  witness.rayleigh_plus = op.rayleigh(witness.x_plus);
  witness.rayleigh_minus = op.rayleigh(witness.x_minus);
  return witness;
}

CheegerCertificate certify(const SubmodularTransformation& t, const CertifyOptions& options) {
  if (t.m() == 0) throw InputError("certify: empty transformation");
  if (!t.vanishes_on_ground()) throw InputError("certify requires F(V) = 0");
  for (const auto& f : t.functions()) {
    if (f.support_size() > 16) throw CapabilityError("certify: support larger than 16");
    for (Subset local = 0; local < (Subset{1} << f.support_size()); ++local) {
      const double value = f.evaluate_local(local);
      if (value < -kSlack || value > 1.0 + kSlack)
        throw InputError("certify requires F(S) in [0,1]; scale the input first");
    }
  }

  CheegerCertificate cert;
  std::tie(cert.phi, cert.phi_argmin) = brute_force_phi(t);

  const LeftWitness witness = left_witness(t, cert.phi_argmin);
  cert.rayleigh_left = std::min(witness.rayleigh_plus, witness.rayleigh_minus);

  const LaplacianOperator op(t, LaplacianMode::normalized);
  std::tie(cert.lambda_tilde, cert.eigen) = reference_lambda(
      op, options.restarts, options.seed, {witness.x_plus, witness.x_minus}, options.diffusion);

  cert.sweep = strong_sweep(t, cert.eigen.z);

  cert.left_holds = cert.rayleigh_left <= 2.0 * cert.phi + kSlack;
  cert.right_holds = cert.sweep.phi <= 2.0 * std::sqrt(cert.lambda_tilde) + kSlack;
  cert.sandwich_holds =
      cert.left_holds && cert.right_holds && cert.lambda_tilde <= 2.0 * cert.phi + kSlack;
  return cert;
}

}  // namespace sublap
