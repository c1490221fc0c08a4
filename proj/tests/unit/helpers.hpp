#ifndef OPINEQ_TEST_HELPERS_HPP
#define OPINEQ_TEST_HELPERS_HPP

#include <string>

#include "opineq/probe.hpp"

namespace opineq::test {

inline Rng rng_for(std::uint64_t stream) { return trial_rng(20261016, stream); }

inline HermitianMatrix random_pd(Rng& rng, Index n, double m = 0.5, double M = 2.0) {
  return sample_pd(rng, n, SpectralWindow{m, M});
}

inline HermitianMatrix random_hermitian(Rng& rng, Index n) {
  const ComplexMatrix G = sample_gaussian(rng, n, n);
  return HermitianMatrix(G + G.adjoint());
}

inline double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

inline std::string fixture(const std::string& name) { return std::string(OPINEQ_FIXTURES) + "/" + name; }

}  // namespace opineq::test

#endif  // OPINEQ_TEST_HELPERS_HPP
