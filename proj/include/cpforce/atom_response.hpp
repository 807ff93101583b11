#pragma once
//! @file atom_response.hpp
//! @brief Two-level atomic statistical functions of sigma_2 and a matrix
//! Heisenberg-picture oracle for them.
//!
//! Closed forms use Pauli normalisation (sigma_2^2 = 1) and the gap Omega as
//! the level splitting, H_atom = (Omega/2) sigma_3:
//!   chi_g(u) = (1/2) <g|[sigma_2(u), sigma_2(0)]|g> = -i sin(Omega u)
//!   C_g(u)   = (1/2) <g|{sigma_2(u), sigma_2(0)}|g> =  cos(Omega u)
//! The energy engine rescales by dicke_dipole_scale^2 per atom.
#include "core.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>

namespace cpforce {

enum class AtomState { Ground, Excited };

struct AtomicResponse {
  double gap = 1.0;
  AtomState state = AtomState::Ground;
};

inline std::complex<double> atomic_susceptibility(double u, double gap) {
  return {0.0, -std::sin(gap * u)};
}

inline double atomic_symmetric_correlation(double u, double gap) {
  return std::cos(gap * u);
}

struct OracleResponse {
  std::complex<double> susceptibility;
  double symmetric_correlation = 0.0;
};

//! Evolves sigma_2 with exp(+iHu) sigma_2 exp(-iHu), H = (Omega/2) sigma_3,
//! by numerical matrix exponentiation and takes the state expectation of the
//! commutator and anticommutator with sigma_2(0). Basis order is (e, g).
inline OracleResponse heisenberg_oracle(double u, double gap,
                                        AtomState state = AtomState::Ground) {
  using M = Eigen::Matrix2cd;
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  M s2, s3;
  s2 << 0.0, -i, i, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  const M h = 0.5 * gap * s3;
  const M fwd = (i * u * h).exp();
  const M bwd = (-i * u * h).exp();
  const M s2u = fwd * s2 * bwd;

  Eigen::Vector2cd psi;
  if (state == AtomState::Ground)
    psi << 0.0, 1.0;
  else
    psi << 1.0, 0.0;

  const M comm = s2u * s2 - s2 * s2u;
  const M anti = s2u * s2 + s2 * s2u;
  const C chi = 0.5 * psi.dot(comm * psi);
  const C corr = 0.5 * psi.dot(anti * psi);
  return {chi, corr.real()};
}

} // namespace cpforce
