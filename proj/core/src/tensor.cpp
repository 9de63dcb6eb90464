#include "mschmidt/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "mschmidt/random.hpp"
#include "optimize.hpp"

namespace mschmidt {
namespace {

// Splits every full basis index into (index over `part`, index over the rest),
// both row-major with the lowest party slowest.
struct IndexSplit {
  Eigen::Index part_dim = 1;
  Eigen::Index rest_dim = 1;
  std::vector<Eigen::Index> part;
  std::vector<Eigen::Index> rest;
};

IndexSplit split_indices(const DimensionProfile& profile, const SubsystemSet& subset) {
  const std::size_t m = profile.parties();
  IndexSplit s;
  std::vector<Eigen::Index> part_stride(m, 0), rest_stride(m, 0);
  for (std::size_t k = m; k-- > 0;) {
    if (subset.contains(static_cast<int>(k))) {
      part_stride[k] = s.part_dim;
      s.part_dim *= profile.dim(k);
    } else {
      rest_stride[k] = s.rest_dim;
      s.rest_dim *= profile.dim(k);
    }
  }
  const Eigen::Index total = profile.total();
  s.part.resize(static_cast<std::size_t>(total));
  s.rest.resize(static_cast<std::size_t>(total));
  std::vector<int> digit(m, 0);
  for (Eigen::Index t = 0; t < total; ++t) {
    Eigen::Index p = 0, r = 0;
    for (std::size_t k = 0; k < m; ++k) {
      p += digit[k] * part_stride[k];
      r += digit[k] * rest_stride[k];
    }
    s.part[static_cast<std::size_t>(t)] = p;
    s.rest[static_cast<std::size_t>(t)] = r;
    for (std::size_t k = m; k-- > 0;) {
      if (++digit[k] < profile.dim(k)) break;
      digit[k] = 0;
    }
  }
  return s;
}

void require_hermitian(const CMatrix& mat) {
  if (mat.rows() != mat.cols()) throw DomainError("matrix is not square");
  if (mat.size() == 0) return;
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance * scale)
    throw DomainError("matrix is not Hermitian within tolerance");
}

DensityMatrix make_reduction(DimensionProfile profile, CMatrix mat) {
  // Symmetrize away rounding so downstream Hermitian checks see exact symmetry.
  CMatrix herm = 0.5 * (mat + mat.adjoint());
  return DensityMatrix(std::move(profile), std::move(herm));
}

}  // namespace

CMatrix flatten(const CVector& amplitudes, const DimensionProfile& profile, const SubsystemSet& rows) {
  if (amplitudes.size() != profile.total()) throw DomainError("amplitude vector does not match profile");
  if (!rows.empty()) rows.validate(profile.parties());
  const IndexSplit s = split_indices(profile, rows);
  CMatrix m(s.part_dim, s.rest_dim);
  for (Eigen::Index t = 0; t < profile.total(); ++t)
    m(s.part[static_cast<std::size_t>(t)], s.rest[static_cast<std::size_t>(t)]) = amplitudes(t);
  return m;
}

DensityMatrix reduce(const PureState& state, const SubsystemSet& keep) {
  keep.validate(state.parties());
  const CMatrix m = flatten(state, keep);
  return make_reduction(restrict_profile(state.profile(), keep), m * m.adjoint());
}

DensityMatrix reduce(const DensityMatrix& rho, const SubsystemSet& keep) {
  keep.validate(rho.parties());
  const IndexSplit s = split_indices(rho.profile(), keep);
  const Eigen::Index total = rho.profile().total();
  // full index of (kept, rest)
  std::vector<Eigen::Index> full(static_cast<std::size_t>(total));
  for (Eigen::Index t = 0; t < total; ++t)
    full[static_cast<std::size_t>(s.part[t] * s.rest_dim + s.rest[t])] = t;

  CMatrix out = CMatrix::Zero(s.part_dim, s.part_dim);
  const CMatrix& mat = rho.matrix();
  for (Eigen::Index a = 0; a < s.part_dim; ++a)
    for (Eigen::Index b = 0; b < s.part_dim; ++b) {
      cplx acc = 0.0;
      for (Eigen::Index r = 0; r < s.rest_dim; ++r)
        acc += mat(full[static_cast<std::size_t>(a * s.rest_dim + r)],
                   full[static_cast<std::size_t>(b * s.rest_dim + r)]);
      out(a, b) = acc;
    }
  return make_reduction(restrict_profile(rho.profile(), keep), std::move(out));
}

Spectrum spectrum(const CMatrix& mat) {
  require_hermitian(mat);
  const CMatrix herm = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (es.info() != Eigen::Success) throw InternalConsistencyError("eigendecomposition failed");
  const Eigen::Index n = herm.rows();
  Spectrum s{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = es.eigenvalues()(n - 1 - k);
    s.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return s;
}

int numerical_rank(const RVector& values, double tol) {
  if (values.size() == 0) return 0;
  const double top = values.maxCoeff();
  if (!(top > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k)
    if (values(k) > tol * top) ++r;
  return r;
}

int numerical_rank(const CMatrix& mat, double tol) {
  require_hermitian(mat);
  const CMatrix herm = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return numerical_rank(RVector(es.eigenvalues()), tol);
}

int matrix_rank(const CMatrix& mat, double tol) {
  if (mat.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(mat);
  const RVector sq = svd.singularValues().array().square();
  return numerical_rank(sq, tol);
}

CMatrix scaled_root(const DensityMatrix& rho) {
  const Spectrum s = spectrum(rho.matrix());
  RVector root(s.values.size());
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    const double v = s.values(k);
    if (v < -kHermitianTolerance) throw DomainError("negative eigenvalue in scaled_root");
    root(k) = std::sqrt(std::max(v, 0.0) / 2.0);
  }
  return s.vectors * root.asDiagonal() * s.vectors.adjoint();
}

CMatrix partial_transpose(const CMatrix& mat, const DimensionProfile& profile, const SubsystemSet& cut) {
  const Eigen::Index total = profile.total();
  if (mat.rows() != total || mat.cols() != total) throw DomainError("matrix does not match profile");
  cut.validate(profile.parties());
  const IndexSplit s = split_indices(profile, cut);
  std::vector<Eigen::Index> full(static_cast<std::size_t>(total));
  for (Eigen::Index t = 0; t < total; ++t)
    full[static_cast<std::size_t>(s.part[t] * s.rest_dim + s.rest[t])] = t;
  auto at = [&](Eigen::Index c, Eigen::Index o) { return full[static_cast<std::size_t>(c * s.rest_dim + o)]; };

  CMatrix out(total, total);
  for (Eigen::Index i = 0; i < total; ++i)
    for (Eigen::Index j = 0; j < total; ++j)
      out(i, j) = mat(at(s.part[j], s.rest[i]), at(s.part[i], s.rest[j]));
  return out;
}

CVector apply_local_operators(const CVector& amplitudes, const DimensionProfile& profile,
                              std::span<const CMatrix> ops) {
  const std::size_t m = profile.parties();
  if (ops.size() != m) throw DomainError("need exactly one local operator per party");
  if (amplitudes.size() != profile.total()) throw DomainError("amplitude vector does not match profile");
  CVector cur = amplitudes;
  Eigen::Index left = 1;
  for (std::size_t k = 0; k < m; ++k) {
    const Eigen::Index d = profile.dim(k);
    if (ops[k].rows() != d || ops[k].cols() != d)
      throw DomainError("local operator " + std::to_string(k + 1) + " has wrong shape");
    const Eigen::Index right = profile.total() / (left * d);
    CVector next = CVector::Zero(cur.size());
    for (Eigen::Index l = 0; l < left; ++l)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
          const cplx a = ops[k](i, j);
          if (a == cplx{}) continue;
          next.segment((l * d + i) * right, right) += a * cur.segment((l * d + j) * right, right);
        }
    cur = std::move(next);
    left *= d;
  }
  return cur;
}

double coefficient_entropy(std::span<const double> coefficients) {
  double h = 0.0;
  for (double c : coefficients) {
    const double p = c * c;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

CMatrix column_space(const CMatrix& mat, double tol) {
  if (mat.size() == 0) return CMatrix(mat.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(mat, Eigen::ComputeThinU);
  const int r = numerical_rank(RVector(svd.singularValues().array().square()), tol);
  return svd.matrixU().leftCols(r);
}

std::vector<Eigen::Vector2cd> pencil_rank_drops(const CMatrix& m0, const CMatrix& m1, double tol,
                                                int* generic_rank) {
  if (m0.rows() != m1.rows() || m0.cols() != m1.cols()) throw DomainError("pencil shape mismatch");
  CounterRng rng(0x5EED'0F'9E'4C11ULL);
  auto at = [&](const Eigen::Vector2cd& p) -> CMatrix { return p(0) * m0 + p(1) * m1; };

  int g = 0;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::Vector2cd p(rng.complex_normal(), rng.complex_normal());
    g = std::max(g, matrix_rank(at(p.normalized()), tol));
  }
  if (generic_rank) *generic_rank = g;
  std::vector<Eigen::Vector2cd> drops;
  if (g == 0) return drops;

  auto ratio = [&](const Eigen::Vector2cd& p) {
    Eigen::JacobiSVD<CMatrix> svd(at(p.normalized()));
    const auto& sv = svd.singularValues();
    return sv(0) > 0.0 ? sv(g - 1) / sv(0) : 0.0;
  };

  for (int attempt = 0; attempt < 5; ++attempt) {
    // Random Moebius change of coordinates keeps both pencil ends generic,
    // then random projections reduce to a square g x g determinant whose
    // roots contain every true rank drop.
    const cplx alpha = rng.complex_normal(), beta = rng.complex_normal();
    const CMatrix n0 = m0 + alpha * m1;
    const CMatrix n1 = m1 + beta * m0;
    const CMatrix proj_l = rng.ginibre(g, m0.rows());
    const CMatrix proj_r = rng.ginibre(m0.cols(), g);
    const CMatrix a = proj_l * n0 * proj_r;
    const CMatrix b = proj_l * n1 * proj_r;
    Eigen::FullPivLU<CMatrix> lu(b);
    if (!lu.isInvertible() || lu.rcond() < 1e-12) continue;
    Eigen::ComplexEigenSolver<CMatrix> ces(lu.solve(a));
    if (ces.info() != Eigen::Success) continue;

    for (Eigen::Index k = 0; k < ces.eigenvalues().size(); ++k) {
      const cplx w = -ces.eigenvalues()(k);
      // x*n0 + w*n1 with x = 1, mapped back to (m0, m1) coordinates.
      auto point = [&](cplx wv) { return Eigen::Vector2cd(1.0 + wv * beta, alpha + wv).normalized(); };
      const detail::Objective f = [&](std::span<const double> x) {
        return ratio(point(w + cplx(x[0], x[1])));
      };
      const double step = 1e-4 * std::max(1.0, std::abs(w));
      const auto best = detail::nelder_mead(f, {0.0, 0.0}, step, 400, 1e-15, 0.0);
      const Eigen::Vector2cd p = point(w + cplx(best.x[0], best.x[1]));
      if (matrix_rank(at(p), tol) >= g) continue;
      const bool seen = std::any_of(drops.begin(), drops.end(), [&](const Eigen::Vector2cd& q) {
        return std::abs(q.dot(p)) > 1.0 - 1e-8;
      });
      if (!seen) drops.push_back(p);
    }
    return drops;
  }
  throw InternalConsistencyError("could not find a regular projection of the pencil");
}

}  // namespace mschmidt
