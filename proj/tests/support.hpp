#pragma once

#include <random>

#include "oracles.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/module.hpp"

namespace testing_support {

inline oracle::IMat to_imat(const stabcat::Mat& m) {
  oracle::IMat out(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<int>(m(i, j));
  return out;
}

inline oracle::Rep to_rep(const stabcat::Module& m) {
  oracle::Rep r{static_cast<int>(m.field().modulus()), static_cast<int>(m.dim()), {}};
  for (const auto& a : m.actions()) r.act.push_back(to_imat(a));
  return r;
}

inline std::vector<std::vector<std::size_t>> relations(const stabcat::RepFile& rf) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& w : rf.relations) out.push_back(w);
  return out;
}

/// Uniform random r x c matrix.
inline stabcat::Mat random_mat(stabcat::PrimeField f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  stabcat::Mat m(f, r, c);
  std::uniform_int_distribution<std::uint32_t> d(0, f.modulus() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

/// Random element of Hom(a, b) via the library's basis.
inline stabcat::Morphism random_hom(const stabcat::Module& a, const stabcat::Module& b, std::mt19937_64& rng) {
  auto hs = stabcat::hom_space(a, b);
  stabcat::Mat c = random_mat(a.field(), hs->dim(), 1, rng);
  return hs->combine(c);
}

}  // namespace testing_support
