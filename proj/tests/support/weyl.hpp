#pragma once

// Test oracle: Weyl symbols as complex polynomials in phase-space variables,
// operator products through the Moyal star product, and exact Gaussian
// expectations of polynomial symbols.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <vector>

namespace weyl {

using Complex = std::complex<double>;
using Exponents = std::vector<int>;

class Poly {
 public:
  explicit Poly(int n_vars = 0) : n_(n_vars) {}

  static Poly constant(int n_vars, Complex c);
  static Poly variable(int n_vars, int index);

  int n_vars() const { return n_; }
  int degree() const;
  const std::map<Exponents, Complex>& terms() const { return terms_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(Complex c) const;
  /// Pointwise (commutative) product of symbols.
  Poly operator*(const Poly& o) const;
  Poly derivative(int index) const;
  Poly conj() const;

 private:
  void add(const Exponents& e, Complex c);

  int n_;
  std::map<Exponents, Complex> terms_;
};

/// Symbol of the operator product A B from the symbols of A and B, with
/// [x_a, x_b] = i J_ab and J = diag(w, w, ...), w = [[0, 1], [-1, 0]].
Poly star(const Poly& f, const Poly& g);

/// Annihilation symbol (q_m + i p_m)/sqrt2 of mode m.
Poly annihilation(int n_vars, int mode);
Poly creation(int n_vars, int mode);

/// Exact expectation of a polynomial under the Gaussian Wigner density with
/// the given means and covariance.
Complex gaussian_expectation(const Poly& f, const Eigen::VectorXd& means, const Eigen::MatrixXd& cov);

}  // namespace weyl
