#include "fdsketch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fdsketch/rng.hpp"

namespace fdsketch {

namespace {

constexpr double kAsymmetryTol = 1e-9;
constexpr double kJacobiOffTol = 1e-14;
constexpr std::size_t kJacobiMaxSweeps = 30;
constexpr double kRankCutoff = 1e-12;  // on squared singular values

double max_abs_off_diagonal(const Matrix& a) {
  double best = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p) {
    for (std::size_t q = p + 1; q < a.cols(); ++q) {
      best = std::max(best, std::abs(a(p, q)));
    }
  }
  return best;
}

}  // namespace

EighResult sym_eigh(const Matrix& s) {
  const std::size_t n = s.rows();
  if (n != s.cols()) {
    throw std::invalid_argument("sym_eigh requires a square matrix");
  }
  const double scale = std::sqrt(frobenius_sq(s));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(s(i, j) - s(j, i)) > kAsymmetryTol * std::max(scale, 1.0)) {
        throw std::invalid_argument("sym_eigh requires a symmetric matrix");
      }
    }
  }

  Matrix a = s;
  Matrix vecs = Matrix::identity(n);  // rows accumulate Jᵀ; rows = eigenvectors

  const double stop = kJacobiOffTol * std::max(scale, 0.0);
  for (std::size_t sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (max_abs_off_diagonal(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= stop * 1e-2) continue;
        // Rotation annihilating a(p,q): standard two-sided Jacobi.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(p, k) = a(k, p);
          a(k, q) = sn * akp + c * akq;
          a(q, k) = a(k, q);
        }
        double* vp = vecs.data() + p * n;
        double* vq = vecs.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const double rp = vp[k];
          const double rq = vq[k];
          vp[k] = c * rp - sn * rq;
          vq[k] = sn * rp + c * rq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });

  EighResult out;
  out.eigenvalues.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]);
    std::copy_n(vecs.data() + order[i] * n, n, out.vectors.data() + i * n);
  }
  return out;
}

SvdResult thin_svd(const Matrix& b) {
  const std::size_t ell = b.rows();
  const std::size_t m = b.cols();
  if (ell > m) {
    throw std::invalid_argument("thin_svd requires rows <= cols");
  }

  // Gram route: eigendecompose b*bᵀ (ell x ell), then V = S⁻¹ Uᵀ B.
  Matrix g(ell, ell);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = i; j < ell; ++j) {
      double dot = 0.0;
      const double* ri = b.data() + i * m;
      const double* rj = b.data() + j * m;
      for (std::size_t k = 0; k < m; ++k) dot += ri[k] * rj[k];
      g(i, j) = dot;
      g(j, i) = dot;
    }
  }
  EighResult eig = sym_eigh(g);

  SvdResult out;
  out.singular_values.resize(ell);
  out.right_vectors = Matrix(ell, m);
  const double top = std::max(eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues[0], 0.0);
  const double cutoff = kRankCutoff * top;

  std::size_t rank = 0;
  for (std::size_t k = 0; k < ell; ++k) {
    const double lambda = std::max(eig.eigenvalues[k], 0.0);
    out.singular_values[k] = std::sqrt(lambda);
    if (lambda > cutoff && lambda > 0.0) {
      // v_k = u_kᵀ B / σ_k; u_k is row k of the eigenvector matrix.
      const double inv = 1.0 / out.singular_values[k];
      double* v = out.right_vectors.data() + k * m;
      for (std::size_t r = 0; r < ell; ++r) {
        const double w = eig.vectors(k, r) * inv;
        if (w == 0.0) continue;
        const double* br = b.data() + r * m;
        for (std::size_t j = 0; j < m; ++j) v[j] += w * br[j];
      }
      rank = k + 1;
    } else {
      out.singular_values[k] = 0.0;
    }
  }

  // Complete rows past the rank with an orthonormal basis, Gram-Schmidt
  // against everything found so far, seeded from standard basis vectors.
  for (std::size_t k = rank; k < ell; ++k) {
    std::vector<double> cand(m);
    double best_norm = -1.0;
    std::vector<double> best;
    for (std::size_t axis = 0; axis < m; ++axis) {
      std::fill(cand.begin(), cand.end(), 0.0);
      cand[axis] = 1.0;
      for (std::size_t r = 0; r < k; ++r) {
        const double* v = out.right_vectors.data() + r * m;
        double dot = v[axis];
        for (std::size_t j = 0; j < m; ++j) cand[j] -= dot * v[j];
      }
      const double norm_sq = frobenius_sq(std::span<const double>(cand));
      if (norm_sq > best_norm) {
        best_norm = norm_sq;
        best = cand;
      }
      if (norm_sq >= 0.5) break;  // good enough, stop scanning axes
    }
    // Re-orthogonalize once for accuracy, then normalize.
    for (std::size_t r = 0; r < k; ++r) {
      const double* v = out.right_vectors.data() + r * m;
      double dot = 0.0;
      for (std::size_t j = 0; j < m; ++j) dot += best[j] * v[j];
      for (std::size_t j = 0; j < m; ++j) best[j] -= dot * v[j];
    }
    const double norm = std::sqrt(frobenius_sq(std::span<const double>(best)));
    if (norm > 0.0) {
      for (std::size_t j = 0; j < m; ++j) {
        out.right_vectors(k, j) = best[j] / norm;
      }
    }
  }
  return out;
}

double spectral_norm_sym(const Matrix& s, double tol, std::size_t max_iter,
                         std::uint64_t seed) {
  const std::size_t n = s.rows();
  if (n != s.cols()) {
    throw std::invalid_argument("spectral_norm_sym requires a square matrix");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("spectral_norm_sym requires tol > 0");
  }
  if (n == 0) return 0.0;

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = rng::indexed_gaussian(seed, rng::kStreamPowerStart, i);
  }
  double norm = std::sqrt(frobenius_sq(std::span<const double>(v)));
  if (norm == 0.0) {
    std::fill(v.begin(), v.end(), 0.0);
    v[0] = 1.0;
    norm = 1.0;
  }
  for (double& x : v) x /= norm;

  std::vector<double> w(n), w2(n);
  const auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = s.data() + i * n;
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += row[j] * x[j];
      y[i] = dot;
    }
  };

  // Iterate with s² so both ends of the spectrum converge to |λ|max.
  double lambda = 0.0;
  std::size_t stable = 0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    apply(v, w);
    const double estimate = std::sqrt(frobenius_sq(std::span<const double>(w)));
    if (estimate == 0.0) return 0.0;  // v landed in the kernel of s
    apply(w, w2);
    const double next_norm = std::sqrt(frobenius_sq(std::span<const double>(w2)));
    if (next_norm == 0.0) return estimate;
    for (std::size_t i = 0; i < n; ++i) v[i] = w2[i] / next_norm;

    if (it > 0 && std::abs(estimate - lambda) <= tol * std::max(estimate, 1e-300)) {
      if (++stable >= 2) return estimate;
    } else {
      stable = 0;
    }
    lambda = estimate;
  }
  return lambda;
}

}  // namespace fdsketch
