#pragma once

// Brute-force reference built from explicit 2x2 Pauli matrices and Kronecker
// products. It shares no code with the bit-mask kernels in pgap/spectra.hpp.

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "pgap/pauli_sum.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline Mat site_matrix(char c) {
  Mat m(2, 2);
  const cplx i(0.0, 1.0);
  switch (c) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

inline Mat pauli_matrix(const std::string& text) {
  Mat m = Mat::Identity(1, 1);
  for (char c : text) m = kron(m, site_matrix(c));
  return m;
}

template <typename Coeff>
Mat dense(const pgap::PauliSum<Coeff>& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) m += cplx(c) * pauli_matrix(p.str());
  return m;
}

inline Eigen::VectorXd spectrum(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace oracle
