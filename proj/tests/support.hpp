#pragma once

#include "oracles.hpp"
#include "ruelle/potential.hpp"

inline ruelle::TabulatedFunction to_library(const ruelle::TransitionStructure& shift, const oracle::Table& t, int m) {
  auto basis = ruelle::make_basis(shift, m);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < basis->size(); ++i) v(static_cast<Eigen::Index>(i)) = t.at(basis->words().word(i));
  return {basis, v};
}

inline oracle::Table to_oracle(const ruelle::TabulatedFunction& f) {
  oracle::Table t;
  for (std::size_t i = 0; i < f.basis().size(); ++i) t[f.basis().words().word(i)] = f.values()(static_cast<Eigen::Index>(i));
  return t;
}

inline Eigen::MatrixXi golden() { return (Eigen::MatrixXi(2, 2) << 1, 1, 1, 0).finished(); }
inline Eigen::MatrixXi full(int n) { return Eigen::MatrixXi::Ones(n, n); }

// Five aperiodic test matrices, the last a non-full 4x4.
inline std::vector<Eigen::MatrixXi> test_matrices() {
  Eigen::MatrixXi three(3, 3), four(4, 4);
  three << 1, 1, 0, 0, 1, 1, 1, 1, 1;
  four << 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1;
  return {full(2), golden(), full(3), three, four};
}
