#pragma once

// Brute-force reference computations on plain integer matrices. Nothing
// here calls into the library: every answer comes from enumerating all
// candidate matrices over GF(p), so it is only usable at tiny dimensions.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using IMat = std::vector<std::vector<int>>;  // row-major, entries in [0, p)

struct Rep {
  int p = 2;
  int dim = 0;
  std::vector<IMat> act;  // one dim x dim matrix per generator
};

inline IMat zeros(int r, int c) { return IMat(r, std::vector<int>(c, 0)); }

inline IMat eye(int n) {
  IMat m = zeros(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline int rows(const IMat& m) { return static_cast<int>(m.size()); }

inline IMat mul(const IMat& a, const IMat& b, int cols_b, int p) {
  const int n = rows(a);
  const int k = rows(b);
  IMat c = zeros(n, cols_b);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < cols_b; ++j) {
      int s = 0;
      for (int t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      c[i][j] = s % p;
    }
  return c;
}

inline IMat sub(const IMat& a, const IMat& b, int p) {
  IMat c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] = ((a[i][j] - b[i][j]) % p + p) % p;
  return c;
}

inline bool is_zero(const IMat& m) {
  for (const auto& r : m)
    for (int v : r)
      if (v) return false;
  return true;
}

inline int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Calls fn on every r x c matrix over GF(p).
inline void for_each_matrix(int r, int c, int p, const std::function<void(const IMat&)>& fn) {
  const int n = r * c;
  if (ipow(p, n) > (1 << 22)) throw std::runtime_error("oracle enumeration too large");
  IMat m = zeros(r, c);
  std::vector<int> digits(n, 0);
  for (;;) {
    for (int t = 0; t < n; ++t) m[t / c][t % c] = digits[t];
    fn(m);
    int t = 0;
    while (t < n && ++digits[t] == p) digits[t++] = 0;
    if (t == n) break;
  }
}

/// Gaussian elimination mod p, written out independently of the library.
inline int rank_mod(IMat m, int p) {
  if (m.empty()) return 0;
  const int nr = rows(m);
  const int nc = static_cast<int>(m[0].size());
  auto inv = [p](int a) {
    for (int x = 1; x < p; ++x)
      if (a * x % p == 1) return x;
    return 0;
  };
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (m[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    const int s = inv(m[r][c]);
    for (int j = 0; j < nc; ++j) m[r][j] = m[r][j] * s % p;
    for (int i = 0; i < nr; ++i)
      if (i != r && m[i][c]) {
        const int f = m[i][c];
        for (int j = 0; j < nc; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
      }
    ++r;
  }
  return r;
}

/// Rank of the span of a list of equally shaped matrices.
inline int span_rank(const std::vector<IMat>& ms, int p) {
  if (ms.empty()) return 0;
  IMat rowsv;
  for (const auto& m : ms) {
    std::vector<int> v;
    for (const auto& r : m) v.insert(v.end(), r.begin(), r.end());
    rowsv.push_back(v);
  }
  if (rowsv[0].empty()) return 0;
  return rank_mod(rowsv, p);
}

/// f (dst.dim x src.dim) commutes with every generator.
inline bool intertwines(const Rep& src, const Rep& dst, const IMat& f) {
  for (std::size_t g = 0; g < src.act.size(); ++g) {
    auto l = mul(f, src.act[g], src.dim, src.p);
    auto r = mul(dst.act[g], f, src.dim, src.p);
    if (l != r) return false;
  }
  return true;
}

/// Every module homomorphism src -> dst, by enumeration.
inline std::vector<IMat> all_homs(const Rep& src, const Rep& dst) {
  std::vector<IMat> out;
  for_each_matrix(dst.dim, src.dim, src.p, [&](const IMat& f) {
    if (intertwines(src, dst, f)) out.push_back(f);
  });
  return out;
}

/// log_p of the number of homomorphisms.
inline int hom_dim(const Rep& src, const Rep& dst) {
  const auto hs = all_homs(src, dst);
  int d = 0;
  for (std::size_t n = 1; n < hs.size(); n *= src.p) ++d;
  return d;
}

/// Dimension of the span of all composites A -> W -> B.
inline int factoring_dim(const Rep& a, const Rep& b, const Rep& w) {
  std::vector<IMat> comps;
  for (const auto& u : all_homs(a, w))
    for (const auto& v : all_homs(w, b)) comps.push_back(mul(v, u, a.dim, a.p));
  return span_rank(comps, a.p);
}

inline int stable_hom_dim(const Rep& a, const Rep& b, const Rep& w) { return hom_dim(a, b) - factoring_dim(a, b, w); }

/// f - g lies in the span of maps factoring through W.
inline bool factors_through(const IMat& f, const Rep& a, const Rep& b, const Rep& w) {
  std::vector<IMat> comps;
  for (const auto& u : all_homs(a, w))
    for (const auto& v : all_homs(w, b)) comps.push_back(mul(v, u, a.dim, a.p));
  const int r0 = span_rank(comps, a.p);
  comps.push_back(f);
  return span_rank(comps, a.p) == r0;
}

/// An invertible intertwiner a -> b exists.
inline bool modules_isomorphic(const Rep& a, const Rep& b) {
  if (a.dim != b.dim) return false;
  for (const auto& f : all_homs(a, b))
    if (rank_mod(f.empty() ? IMat{} : f, a.p) == a.dim) return true;
  return a.dim == 0;
}

/// f: A -> B and g: B -> A with g f - 1 and f g - 1 factoring through W.
inline bool stably_isomorphic(const Rep& a, const Rep& b, const Rep& w) {
  const auto ab = all_homs(a, b);
  const auto ba = all_homs(b, a);
  // Spans of the factoring maps on both sides, computed once.
  std::vector<IMat> fa, fb;
  for (const auto& u : all_homs(a, w))
    for (const auto& v : all_homs(w, a)) fa.push_back(mul(v, u, a.dim, a.p));
  for (const auto& u : all_homs(b, w))
    for (const auto& v : all_homs(w, b)) fb.push_back(mul(v, u, b.dim, a.p));
  const int ra = span_rank(fa, a.p);
  const int rb = span_rank(fb, a.p);
  auto in_span = [&](std::vector<IMat>& sp, int r0, const IMat& m) {
    if (m.empty() || m[0].empty()) return true;
    sp.push_back(m);
    const bool ok = span_rank(sp, a.p) == r0;
    sp.pop_back();
    return ok;
  };
  for (const auto& f : ab)
    for (const auto& g : ba) {
      if (!in_span(fa, ra, sub(mul(g, f, a.dim, a.p), eye(a.dim), a.p))) continue;
      if (in_span(fb, rb, sub(mul(f, g, b.dim, a.p), eye(b.dim), a.p))) return true;
    }
  return false;
}

/// Submodule ker(f) for f: src -> (something) given as a matrix, with the
/// restricted action. Basis vectors are chosen greedily among all kernel
/// vectors in enumeration order.
inline Rep kernel_rep(const Rep& src, const IMat& f) {
  const int n = src.dim;
  const int p = src.p;
  std::vector<std::vector<int>> basis;
  for_each_matrix(n, 1, p, [&](const IMat& v) {
    if (!is_zero(mul(f, v, 1, p))) return;
    std::vector<std::vector<int>> trial = basis;
    std::vector<int> col;
    for (int i = 0; i < n; ++i) col.push_back(v[i][0]);
    trial.push_back(col);
    if (rank_mod(trial, p) == static_cast<int>(trial.size())) basis = trial;
  });
  const int k = static_cast<int>(basis.size());
  Rep out{p, k, {}};
  // Coordinates of a vector in the basis, by enumeration of coefficient vectors.
  auto coords = [&](const std::vector<int>& v) {
    std::vector<int> c(k, 0);
    bool found = false;
    for_each_matrix(k, 1, p, [&](const IMat& cv) {
      if (found) return;
      std::vector<int> s(n, 0);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) s[i] = (s[i] + cv[j][0] * basis[j][i]) % p;
      if (s == v) {
        for (int j = 0; j < k; ++j) c[j] = cv[j][0];
        found = true;
      }
    });
    if (!found) throw std::runtime_error("kernel not closed under the action");
    return c;
  };
  for (const auto& a : src.act) {
    IMat r = zeros(k, k);
    for (int j = 0; j < k; ++j) {
      std::vector<int> img(n, 0);
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) img[i] = (img[i] + a[i][t] * basis[j][t]) % p;
      auto c = coords(img);
      for (int i = 0; i < k; ++i) r[i][j] = c[i];
    }
    out.act.push_back(r);
  }
  return out;
}

/// Quotient dst / im(f) with the induced action, built as the kernel of
/// the dual: the transpose of a quotient is a submodule of the dual.
inline Rep transpose_rep(const Rep& m) {
  Rep out{m.p, m.dim, {}};
  for (const auto& a : m.act) {
    IMat t = zeros(m.dim, m.dim);
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) t[i][j] = a[j][i];
    out.act.push_back(t);
  }
  return out;
}

inline IMat transpose(const IMat& m, int r, int c) {
  IMat t = zeros(c, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}

/// Cokernel of f: src -> dst as dual of the kernel of f^T on the dual of dst.
inline Rep cokernel_rep(const Rep& dst, const IMat& f, int src_dim) {
  return transpose_rep(kernel_rep(transpose_rep(dst), transpose(f, dst.dim, src_dim)));
}

/// Every relation word acts as zero. Word {i, j} acts as act[i] * act[j].
inline bool satisfies(const Rep& m, const std::vector<std::vector<std::size_t>>& relations) {
  for (const auto& w : relations) {
    IMat acc = eye(m.dim);
    for (std::size_t g : w) acc = mul(acc, m.act[g], m.dim, m.p);
    if (!is_zero(acc)) return false;
  }
  return true;
}

/// dim Ext^1(C, A) as cocycles modulo coboundaries: e ranges over
/// dA x dC blocks making [[a, e], [0, c]] satisfy the relations (one block
/// per generator), coboundaries are e = a h - h c.
inline int ext1_dim(const Rep& c, const Rep& a, const std::vector<std::vector<std::size_t>>& relations) {
  const int p = a.p;
  const int g = static_cast<int>(a.act.size());
  const int n = a.dim + c.dim;
  std::vector<IMat> cocycles;
  // Enumerate the off-diagonal blocks for all generators at once.
  for_each_matrix(a.dim, c.dim * g, p, [&](const IMat& big) {
    Rep e{p, n, {}};
    for (int t = 0; t < g; ++t) {
      IMat m = zeros(n, n);
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) m[i][j] = a.act[t][i][j];
      for (int i = 0; i < c.dim; ++i)
        for (int j = 0; j < c.dim; ++j) m[a.dim + i][a.dim + j] = c.act[t][i][j];
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < c.dim; ++j) m[i][a.dim + j] = big[i][t * c.dim + j];
      e.act.push_back(m);
    }
    if (satisfies(e, relations)) cocycles.push_back(big);
  });
  int zdim = 0;
  for (std::size_t k = 1; k < cocycles.size(); k *= p) ++zdim;
  std::vector<IMat> cob;
  for_each_matrix(a.dim, c.dim, p, [&](const IMat& h) {
    IMat big = zeros(a.dim, c.dim * g);
    for (int t = 0; t < g; ++t) {
      auto d = sub(mul(a.act[t], h, c.dim, p), mul(h, c.act[t], c.dim, p), p);
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < c.dim; ++j) big[i][t * c.dim + j] = d[i][j];
    }
    cob.push_back(big);
  });
  return zdim - span_rank(cob, p);
}

/// f: B -> A is surjective on Hom(W, -).
inline bool is_X_epic(const Rep& b, const Rep& a, const IMat& f, const Rep& w) {
  std::vector<IMat> imgs;
  for (const auto& h : all_homs(w, b)) imgs.push_back(mul(f, h, w.dim, w.p));
  const int r = span_rank(imgs, w.p);
  return r == hom_dim(w, a);
}

/// Some module map s with f s = 1.
inline bool has_right_inverse(const Rep& b, const Rep& a, const IMat& f) {
  for (const auto& s : all_homs(a, b))
    if (mul(f, s, a.dim, a.p) == eye(a.dim)) return true;
  return false;
}

}  // namespace oracle
