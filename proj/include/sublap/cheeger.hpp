#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "sublap/oracle.hpp"
#include "sublap/spectral.hpp"

namespace sublap {

struct CutReport {
  Subset s = 0;
  double cut_s = 0.0;
  double cut_complement = 0.0;
  long vol_s = 0;
  long vol_complement = 0;
  double phi = 0.0;  // min cut side over min volume side
};

/// Exact conductance of a fixed non-trivial set.
CutReport conductance_of_set(const SubmodularTransformation& transformation, Subset s);

/// Exhaustive 2^n minimum of phi_F(S); argmin ties break toward the
/// smallest bitmask. Ground sets capped at 20.
std::pair<double, Subset> brute_force_phi(const SubmodularTransformation& transformation);

/// Sweep over prefixes of the descending order of x in [0,1]^V, restricted
/// to supp(x). The returned S satisfies
/// cut(S)/vol(S) <= sum_e f_e(x) / sum_v d(v) x(v).
Subset sweep_positive(const SubmodularTransformation& transformation, const Eigen::VectorXd& x);

/// Mirror sweep for x in [-1,0]^V via the reflected function F'(S) = F(V\S);
/// requires F(V) = 0. The returned S satisfies
/// cut(V\S)/vol(S) <= -sum_e f_e(x) / sum_v d(v) x(v).
Subset sweep_negative(const SubmodularTransformation& transformation, const Eigen::VectorXd& x);

/// Strong rounding: for x orthogonal to D^{1/2}1, shifts D^{-1/2}x at the
/// weighted median, squares the better half, and sweeps. The returned set
/// satisfies phi_F(S) <= 2 sqrt(R_F(x)); violation raises logic_error.
CutReport strong_sweep(const SubmodularTransformation& transformation, const Eigen::VectorXd& x);

struct LeftWitness {
  Eigen::VectorXd x_plus;   // projected D^{1/2} indicator of S
  Eigen::VectorXd x_minus;  // its negation
  double rayleigh_plus = 0.0;
  double rayleigh_minus = 0.0;
};

/// Proof vectors for the easy Cheeger direction: with vol(S) <= vol(V\S),
/// min of the two Rayleigh quotients is at most 2 phi_F(S).
LeftWitness left_witness(const SubmodularTransformation& transformation, Subset s);

struct CertifyOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
  DiffusionOptions diffusion;
};

struct CheegerCertificate {
  double phi = 0.0;
  Subset phi_argmin = 0;
  double lambda_tilde = 0.0;
  double rayleigh_left = 0.0;  // min over the two witness vectors
  CutReport sweep;
  EigenResult eigen;
  bool left_holds = false;      // rayleigh_left <= 2 phi
  bool right_holds = false;     // phi(sweep set) <= 2 sqrt(lambda_tilde)
  bool sandwich_holds = false;  // lambda_tilde <= 2 phi and the right side
};

/// Full two-sided certification: brute-force phi, witness-seeded diffusion
/// for lambda_tilde, strong sweep on the best eigenvector. Requires
/// F(empty) = F(V) = 0 and values in [0,1].
CheegerCertificate certify(const SubmodularTransformation& transformation,
                           const CertifyOptions& options = {});

}  // namespace sublap
