#pragma once

// Perron-Frobenius data for nonnegative integer matrices: irreducibility,
// primitivity, expansion factor, and the positive left eigenvector that
// assigns edges their metric lengths.
//
// The expansion factor is computed twice on purpose: power iteration gives
// the approximation, and Newton refinement against the exact integer
// characteristic polynomial certifies it. Primitivity is decided in the
// boolean semiring, where iterates cannot overflow.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttcert/matrix.hpp"

namespace ttcert {

struct PFError : std::runtime_error {
  explicit PFError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Adjacency of the index digraph: j -> i whenever entry (i, j) is positive,
// matching the column convention (edge j maps over edge i).
inline std::vector<std::vector<int>> support_digraph(const IntMatrix& m) {
  std::vector<std::vector<int>> adj(m.size());
  for (int j = 0; j < m.size(); ++j)
    for (int i = 0; i < m.size(); ++i)
      if (m.at(i, j) > 0) adj[j].push_back(i);
  return adj;
}

inline std::vector<char> reachable(const std::vector<std::vector<int>>& adj,
                                   int from) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack = {from};
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

using BoolMatrix = std::vector<char>;  // row-major n*n

inline BoolMatrix bool_of(const IntMatrix& m) {
  BoolMatrix b(static_cast<size_t>(m.size()) * m.size(), 0);
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      b[static_cast<size_t>(i) * m.size() + j] = m.at(i, j) > 0 ? 1 : 0;
  return b;
}

inline BoolMatrix bool_mul(const BoolMatrix& x, const BoolMatrix& y, int n) {
  BoolMatrix out(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (!x[static_cast<size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j)
        if (y[static_cast<size_t>(k) * n + j])
          out[static_cast<size_t>(i) * n + j] = 1;
    }
  return out;
}

}  // namespace detail

inline bool is_irreducible(const IntMatrix& m) {
  if (!m.is_nonnegative()) throw PFError("matrix has negative entries");
  auto adj = detail::support_digraph(m);
  auto radj = std::vector<std::vector<int>>(adj.size());
  for (size_t v = 0; v < adj.size(); ++v)
    for (int w : adj[v]) radj[w].push_back(static_cast<int>(v));
  for (char c : detail::reachable(adj, 0))
    if (!c) return false;
  for (char c : detail::reachable(radj, 0))
    if (!c) return false;
  return true;
}

// Wielandt: a primitive n x n matrix has an all-positive power by exponent
// (n-1)^2 + 1, and an imprimitive one never does. Squaring overshoots the
// bound, which is harmless on the positive side.
inline bool is_primitive(const IntMatrix& m) {
  if (!is_irreducible(m)) return false;
  const int n = m.size();
  long bound = static_cast<long>(n - 1) * (n - 1) + 1;
  detail::BoolMatrix b = detail::bool_of(m);
  long reached = 1;
  while (reached < bound) {
    b = detail::bool_mul(b, b, n);
    reached *= 2;
  }
  for (char c : b)
    if (!c) return false;
  return true;
}

// Monic characteristic polynomial of an integer matrix, highest degree
// first. Faddeev-LeVerrier runs entirely over the integers; the division by
// the step index is exact.
inline std::vector<mpz_class> char_poly(const IntMatrix& m) {
  const int n = m.size();
  std::vector<mpz_class> c(n + 1);
  c[0] = 1;
  IntMatrix b = m;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      IntMatrix shifted = b;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += c[k - 1];
      b = m * shifted;
    }
    mpz_class t = b.trace();
    if (t % k != 0) throw PFError("characteristic polynomial drift");
    c[k] = -t / k;
  }
  return c;
}

inline double eval_poly(const std::vector<mpz_class>& coeffs, double x) {
  double acc = 0.0;
  for (const auto& c : coeffs) acc = acc * x + c.get_d();
  return acc;
}

inline double eval_poly_derivative(const std::vector<mpz_class>& coeffs,
                                   double x) {
  double acc = 0.0;
  const int deg = static_cast<int>(coeffs.size()) - 1;
  for (int i = 0; i < deg; ++i)
    acc = acc * x + coeffs[i].get_d() * (deg - i);
  return acc;
}

namespace detail {

// Divides out (x - r) when r is an integer root. Returns the quotient or
// nothing if the division leaves a remainder.
inline std::vector<mpz_class> try_linear_factor(
    const std::vector<mpz_class>& p, const mpz_class& r,
    bool* exact) {
  std::vector<mpz_class> q(p.size() - 1);
  mpz_class carry = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    carry = p[i] + r * carry;
    q[i] = carry;
  }
  *exact = (p.back() + r * carry) == 0;
  return q;
}

inline std::vector<mpz_class> divisors_capped(const mpz_class& value,
                                              long cap) {
  std::vector<mpz_class> out;
  mpz_class v = abs(value);
  if (v == 0 || v > 1000000000000L) return out;
  for (mpz_class d = 1; d * d <= v && static_cast<long>(out.size()) < cap;
       ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    if (d * d != v) out.push_back(v / d);
  }
  return out;
}

}  // namespace detail

// The factor of the characteristic polynomial that the given approximate
// root satisfies, after splitting off whatever integer roots and small monic
// quadratic factors trial division finds. Factoring effort is deliberately
// bounded; the whole polynomial comes back when nothing splits.
inline std::vector<mpz_class> minimal_factor(std::vector<mpz_class> p,
                                             double root) {
  bool split = true;
  while (split && p.size() > 2) {
    split = false;
    if (p.back() == 0) {  // x divides
      if (std::abs(root) < 1e-6) return {mpz_class(1), mpz_class(0)};
      p.pop_back();
      split = true;
      continue;
    }
    for (const mpz_class& d : detail::divisors_capped(p.back(), 256)) {
      for (int sign : {1, -1}) {
        mpz_class r = sign * d;
        bool exact = false;
        auto q = detail::try_linear_factor(p, r, &exact);
        if (!exact) continue;
        // Keep the factor that still vanishes at the root.
        if (std::abs(root - r.get_d()) < 1e-6) return {mpz_class(1), -r};
        p = q;
        split = true;
        break;
      }
      if (split) break;
    }
  }
  // Bounded search for a monic quadratic factor x^2 + bx + c with c among
  // the divisors of the constant term.
  if (p.size() > 3 && p.size() <= 10) {
    for (const mpz_class& cd : detail::divisors_capped(p.back(), 64)) {
      for (int csign : {1, -1}) {
        mpz_class c = csign * cd;
        for (long b = -64; b <= 64; ++b) {
          std::vector<mpz_class> div = {mpz_class(1), mpz_class(b), c};
          std::vector<mpz_class> rem = p;
          std::vector<mpz_class> quo(p.size() - 2, 0);
          for (size_t i = 0; i + 2 < rem.size(); ++i) {
            mpz_class f = rem[i];
            quo[i] = f;
            for (size_t j = 0; j < 3; ++j) rem[i + j] -= f * div[j];
          }
          if (rem[rem.size() - 2] != 0 || rem[rem.size() - 1] != 0) continue;
          double v = root * root + b * root + c.get_d();
          if (std::abs(v) < 1e-4) return div;
          p = quo;
          if (p.size() <= 3) return p;
        }
      }
    }
  }
  return p;
}

struct PFData {
  double lambda = 0.0;
  std::vector<double> lengths;        // positive, sums to 1
  double residual = 0.0;              // max row residual of lengths * M
  std::vector<mpz_class> char_poly;   // monic, highest degree first
  std::vector<mpz_class> min_factor;  // factor vanishing at lambda
  int iterations = 0;

  bool expanding() const { return lambda > 1.0 + 1e-12; }
};

// Requires a primitive matrix. tol bounds both the eigenvalue defect
// |p(lambda)| relative to p'(lambda) and the left eigenvector residual.
inline PFData pf_analyze(const IntMatrix& m, double tol = 1e-9) {
  if (!is_primitive(m))
    throw PFError("Perron-Frobenius analysis requires a primitive matrix");
  const int n = m.size();
  PFData out;
  out.char_poly = char_poly(m);

  std::vector<double> md(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      md[static_cast<size_t>(i) * n + j] = m.at(i, j).get_d();

  // Left power iteration from the all-ones row vector, normalized to sum 1.
  std::vector<double> y(n, 1.0 / n), next(n);
  double lambda = 0.0;
  int it = 0;
  for (; it < 200000; ++it) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += y[i] * md[static_cast<size_t>(i) * n + j];
      next[j] = s;
      total += s;
    }
    double newLambda = total;  // sum(yM) with sum(y) = 1
    for (int j = 0; j < n; ++j) next[j] = next[j] / total;
    double drift = 0.0;
    for (int j = 0; j < n; ++j) drift = std::max(drift, std::abs(next[j] - y[j]));
    y.swap(next);
    lambda = newLambda;
    if (drift < tol * 1e-3 && it > 2) break;
  }
  out.iterations = it;

  // Newton refinement against the exact characteristic polynomial.
  for (int round = 0; round < 64; ++round) {
    double p = eval_poly(out.char_poly, lambda);
    double dp = eval_poly_derivative(out.char_poly, lambda);
    if (dp == 0.0) break;
    double step = p / dp;
    lambda -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(lambda))) break;
  }
  out.lambda = lambda;

  // Residual of the normalized left eigenvector.
  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += y[i] * md[static_cast<size_t>(i) * n + j];
    residual = std::max(residual, std::abs(s - lambda * y[j]));
  }
  out.lengths = y;
  out.residual = residual;
  if (residual > tol)
    throw PFError("left eigenvector did not converge to tolerance");
  for (double v : out.lengths)
    if (!(v > 0.0)) throw PFError("Perron vector must be strictly positive");

  out.min_factor = minimal_factor(out.char_poly, out.lambda);
  return out;
}

// Axis translation length of the k-th power: k log lambda.
inline double translation_length(const PFData& pf, int k = 1) {
  if (k <= 0) throw PFError("translation_length: power must be positive");
  return k * std::log(pf.lambda);
}

}  // namespace ttcert
