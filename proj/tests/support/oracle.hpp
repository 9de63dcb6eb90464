#pragma once

// Brute-force reference implementations used to check the library. They
// share no code with it beyond the amplitude ordering convention.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

inline std::vector<int> digits(long index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = static_cast<int>(index % dims[k]);
    index /= dims[k];
  }
  return d;
}

inline long compose(const std::vector<int>& d, const std::vector<int>& dims) {
  long index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + d[k];
  return index;
}

// Partial trace of |psi><psi| keeping the 0-based parties in `keep`.
inline Eigen::MatrixXcd reduce(const Eigen::VectorXcd& psi, const std::vector<int>& dims,
                               const std::vector<int>& keep) {
  std::vector<int> kd;
  for (int k : keep) kd.push_back(dims[static_cast<std::size_t>(k)]);
  long n = 1;
  for (int d : kd) n *= d;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  const long total = psi.size();
  for (long a = 0; a < total; ++a)
    for (long b = 0; b < total; ++b) {
      const auto da = digits(a, dims), db = digits(b, dims);
      bool same_rest = true;
      for (std::size_t k = 0; k < dims.size() && same_rest; ++k) {
        bool kept = false;
        for (int q : keep) kept = kept || q == static_cast<int>(k);
        if (!kept && da[k] != db[k]) same_rest = false;
      }
      if (!same_rest) continue;
      std::vector<int> ka, kb;
      for (int q : keep) {
        ka.push_back(da[static_cast<std::size_t>(q)]);
        kb.push_back(db[static_cast<std::size_t>(q)]);
      }
      rho(compose(ka, kd), compose(kb, kd)) += psi(a) * std::conj(psi(b));
    }
  return rho;
}

// Number of singular values above `rel` times the largest.
inline int rank(const Eigen::MatrixXcd& m, double rel = 1e-6) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) r += s(k) > rel * s(0) ? 1 : 0;
  return r;
}

inline Eigen::VectorXd singular_values(const Eigen::VectorXcd& psi, long rows) {
  Eigen::MatrixXcd m(rows, psi.size() / rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < m.cols(); ++j) m(i, j) = psi(i * m.cols() + j);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

inline double entropy(const std::vector<double>& coefficients) {
  double e = 0.0;
  for (double x : coefficients)
    if (x > 0.0) e -= x * x * std::log2(x * x);
  return e;
}

inline Eigen::VectorXcd gaussian_vector(long n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (long k = 0; k < n; ++k) v(k) = cplx(g(gen), g(gen));
  return v.normalized();
}

}  // namespace oracle
