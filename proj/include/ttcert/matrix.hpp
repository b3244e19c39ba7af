#pragma once

// Dense square matrices over arbitrary-precision integers. Transition
// matrices of iterated maps grow exponentially in the iterate, so fixed-width
// arithmetic is not an option here.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace ttcert {

class IntMatrix {
 public:
  explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {
    if (n <= 0) throw std::invalid_argument("matrix size must be positive");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int size() const { return n_; }

  mpz_class& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const mpz_class& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }

  bool operator==(const IntMatrix& o) const = default;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.n_ != y.n_) throw std::invalid_argument("matrix size mismatch");
    IntMatrix out(x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int k = 0; k < x.n_; ++k) {
        const mpz_class& xik = x.at(i, k);
        if (xik == 0) continue;
        for (int j = 0; j < x.n_; ++j) out.at(i, j) += xik * y.at(k, j);
      }
    return out;
  }

  friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
    if (x.n_ != y.n_) throw std::invalid_argument("matrix size mismatch");
    IntMatrix out(x.n_);
    for (size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] + y.a_[i];
    return out;
  }

  IntMatrix pow(long k) const {
    if (k < 0) throw std::invalid_argument("negative matrix power");
    IntMatrix acc = identity(n_);
    IntMatrix base = *this;
    while (k > 0) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  bool all_positive() const {
    for (const auto& v : a_)
      if (v <= 0) return false;
    return true;
  }

  bool is_nonnegative() const {
    for (const auto& v : a_)
      if (v < 0) return false;
    return true;
  }

  mpz_class column_sum(int j) const {
    mpz_class s = 0;
    for (int i = 0; i < n_; ++i) s += at(i, j);
    return s;
  }

  mpz_class trace() const {
    mpz_class s = 0;
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
      out += i == 0 ? "[" : " ";
      for (int j = 0; j < n_; ++j) {
        out += at(i, j).get_str();
        if (j + 1 < n_) out += ' ';
      }
      out += i + 1 < n_ ? "\n" : "]";
    }
    return out;
  }

 private:
  int n_;
  std::vector<mpz_class> a_;
};

}  // namespace ttcert
