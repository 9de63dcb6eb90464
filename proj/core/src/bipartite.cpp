#include "mschmidt/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mschmidt/tensor.hpp"

namespace mschmidt {
namespace {

const SubsystemSet kFirstParty = SubsystemSet::from_zero_based({0});

RVector squared_singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().array().square();
}

int pure_rank(const CVector& v, const DimensionProfile& profile, double tol) {
  return matrix_rank(flatten(v, profile, kFirstParty), tol);
}

bool decisive_shape(int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  return lo == 1 || (lo == 2 && hi <= 3);
}

int product_dim(const DimensionProfile& profile, const SubsystemSet& s) {
  int d = 1;
  for (int i : s.indices()) d *= profile.dim(static_cast<std::size_t>(i));
  return d;
}

}  // namespace

CVector SchmidtDecomposition::reconstruct() const {
  const Eigen::Index nl = left.rows(), nr = right.rows();
  CVector out = CVector::Zero(nl * nr);
  for (int k = 0; k < rank; ++k)
    for (Eigen::Index a = 0; a < nl; ++a) out.segment(a * nr, nr) += coefficients(k) * left(a, k) * right.col(k);
  return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& state, const SubsystemSet& left, double rank_tol) {
  const std::size_t m = state.parties();
  left.validate(m);
  if (left.size() >= m) throw DomainError("left subsystem must be a proper subset of the parties");

  const CMatrix mat = flatten(state, left);
  Eigen::JacobiSVD<CMatrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector sv = svd.singularValues();
  const int r = numerical_rank(RVector(sv.array().square()), rank_tol);

  SchmidtDecomposition d;
  d.rank = r;
  d.coefficients = sv.head(r);
  d.left = svd.matrixU().leftCols(r);
  d.right = svd.matrixV().leftCols(r).conjugate();
  for (int k = 0; k < r; ++k) {
    for (Eigen::Index a = 0; a < d.left.rows(); ++a) {
      const cplx c = d.left(a, k);
      if (std::abs(c) > 1e-12) {
        const cplx phase = c / std::abs(c);
        d.left.col(k) *= std::conj(phase);
        d.right.col(k) *= phase;
        break;
      }
    }
  }
  return d;
}

double entanglement_entropy(const SchmidtDecomposition& decomposition) {
  return coefficient_entropy(std::span<const double>(decomposition.coefficients.data(),
                                                      static_cast<std::size_t>(decomposition.coefficients.size())));
}

double entanglement_entropy(std::span<const double> coefficients) { return coefficient_entropy(coefficients); }

PptTest ppt_test(const DensityMatrix& rho, const SubsystemSet& cut) {
  const std::size_t m = rho.parties();
  cut.validate(m);
  PptTest t;
  const SubsystemSet rest = cut.complement(m);
  if (rest.empty()) return t;
  t.decisive = decisive_shape(product_dim(rho.profile(), cut), product_dim(rho.profile(), rest));
  const CMatrix pt = partial_transpose(rho.matrix(), rho.profile(), cut);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
  t.min_eigenvalue = es.eigenvalues().minCoeff();
  t.entangled = t.min_eigenvalue < kPptThreshold;
  return t;
}

bool ppt_entangled(const DensityMatrix& rho, const SubsystemSet& cut) { return ppt_test(rho, cut).entangled; }

int bipartite_range_lower_bound(const CMatrix& basis, const DimensionProfile& profile, double rank_tol) {
  if (profile.parties() != 2) throw DomainError("bipartite range bound needs a two-party profile");
  if (basis.cols() == 1) return pure_rank(basis.col(0), profile, rank_tol);
  if (basis.cols() != 2) return 1;
  // Every ensemble spans the range, so if at most one ray of the range has
  // Schmidt rank below t, some element of every ensemble has rank >= t.
  const CMatrix m0 = flatten(basis.col(0), profile, kFirstParty);
  const CMatrix m1 = flatten(basis.col(1), profile, kFirstParty);
  int generic = 0;
  const auto drops = pencil_rank_drops(m0, m1, rank_tol, &generic);
  for (int t = generic; t > 1; --t) {
    const auto low = std::count_if(drops.begin(), drops.end(), [&](const Eigen::Vector2cd& p) {
      return matrix_rank(p(0) * m0 + p(1) * m1, rank_tol) < t;
    });
    if (low <= 1) return t;
  }
  return 1;
}

SchmidtNumberResult mixed_bipartite_schmidt_number(const DensityMatrix& rho, const SearchConfig& config) {
  if (rho.parties() != 2) throw DomainError("mixed_bipartite_schmidt_number needs a two-party state");
  const DimensionProfile& profile = rho.profile();
  const double tol = config.rank_tol;
  SchmidtNumberResult out;

  const EnsembleCandidate spectral = eigen_ensemble(rho, tol);
  if (spectral.size() == 1) {
    out.lo = out.hi = pure_rank(spectral.states.front().amplitudes(), profile, tol);
    out.witness = spectral;
    out.branch_trace.push_back("bipartite: rank-1 input, pure Schmidt rank " + std::to_string(out.lo));
    return out;
  }

  const PptTest ppt = ppt_test(rho, kFirstParty);
  out.lo = ppt.entangled ? 2 : 1;
  out.branch_trace.push_back(std::string("bipartite: PPT ") + (ppt.entangled ? "violated" : "satisfied") +
                             (ppt.decisive ? " (decisive)" : "") + ", lo=" + std::to_string(out.lo));

  if (spectral.size() == 2) {
    CMatrix basis(profile.total(), 2);
    basis << spectral.states[0].amplitudes(), spectral.states[1].amplitudes();
    const int certified = bipartite_range_lower_bound(basis, profile, tol);
    if (certified > out.lo) {
      out.lo = certified;
      out.branch_trace.push_back("bipartite: range certificate, lo=" + std::to_string(certified));
    }
  }

  int spectral_hi = 0;
  for (const auto& s : spectral.states) spectral_hi = std::max(spectral_hi, pure_rank(s.amplitudes(), profile, tol));
  const int trivial_hi = std::min(profile.dim(0), profile.dim(1));
  out.hi = std::min(spectral_hi, trivial_hi);
  if (spectral_hi <= trivial_hi) out.witness = spectral;
  out.branch_trace.push_back("bipartite: spectral ensemble hi=" + std::to_string(spectral_hi));

  for (int r = out.lo; r < out.hi; ++r) {
    const ElementPenalty tail = [&, r](const CVector& v) {
      const RVector sq = squared_singular_values(flatten(v, profile, kFirstParty));
      return r < sq.size() ? sq.tail(sq.size() - r).sum() : 0.0;
    };
    const ElementCheck check = [&, r](const PureState& s) { return pure_rank(s.amplitudes(), profile, tol) <= r; };

    if (r == 1 && ppt.decisive && !ppt.entangled) {
      // PPT is equivalent to separability here; search only for a witness.
      SearchConfig light = config;
      light.restarts = std::min(config.restarts, 16);
      out.witness = search_ensemble(rho, tail, check, light);
      out.hi = 1;
      out.branch_trace.push_back(std::string("bipartite: separable by PPT criterion, hi=1") +
                                 (out.witness ? " (product ensemble found)" : " (no explicit witness)"));
      break;
    }
    if (auto found = search_ensemble(rho, tail, check, config)) {
      out.hi = r;
      out.witness = std::move(found);
      out.branch_trace.push_back("bipartite: ensemble search hi=" + std::to_string(r));
      break;
    }
  }
  if (!out.exact()) out.branch_trace.push_back("bipartite: interval not closed within budget");
  return out;
}

}  // namespace mschmidt
