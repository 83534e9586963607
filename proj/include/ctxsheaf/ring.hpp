// Copyright 2026 The ctxsheaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file ring.hpp
 * @brief Exact linear algebra over the integers and the residue rings Z/nZ.
 *
 * Every ring element is an arbitrary-precision Integer holding its canonical
 * representative (0 <= e < n over Z/nZ). Linear systems over Z are decided
 * with a Hermite normal form carrying its unimodular transform; systems over
 * Z/nZ are lifted to Z as [A | nI](x; y) = b, except for prime moduli which
 * go through Gauss-Jordan elimination over the field.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ctxsheaf/errors.hpp"

namespace ctxsheaf {

using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Integer>;

namespace detail {

/// Floor division for signed integers.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer mod_floor(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

struct ExtendedGcd {
  Integer g, s, t;  // s*a + t*b = g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Coefficient ring: the integers Z or Z/nZ with n >= 2.
class RingSpec {
 public:
  RingSpec() = default;

  static RingSpec integers() { return RingSpec(0); }
  static RingSpec modulo(std::uint64_t n) {
    if (n < 2) throw UnsupportedRingError("modulus must be at least 2");
    return RingSpec(n);
  }

  /// Accepts "z"/"Z" and "zN"/"ZN"/"Z_N".
  static RingSpec parse(std::string_view text) {
    std::string t;
    for (char c : text)
      if (c != '_' && !std::isspace(static_cast<unsigned char>(c)))
        t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "z") return integers();
    if (t.size() >= 2 && t[0] == 'z' &&
        std::all_of(t.begin() + 1, t.end(),
                    [](unsigned char c) { return std::isdigit(c); }) &&
        t.size() <= 12)
      return modulo(std::stoull(t.substr(1)));
    throw UnsupportedRingError("unknown ring '" + std::string(text) +
                               "' (expected z or zN)");
  }

  bool is_integers() const { return modulus_ == 0; }
  bool is_finite() const { return modulus_ != 0; }
  bool is_field() const { return detail::is_prime(modulus_); }
  /// 0 for Z.
  std::uint64_t modulus() const { return modulus_; }

  std::string name() const {
    return is_integers() ? "Z" : "Z" + std::to_string(modulus_);
  }

  Integer reduce(const Integer& x) const {
    return is_integers() ? x : detail::mod_floor(x, Integer(modulus_));
  }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  explicit RingSpec(std::uint64_t n) : modulus_(n) {}
  std::uint64_t modulus_ = 0;
};

/// Dense row-major matrix over a RingSpec with canonical entries.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(RingSpec ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols) {}

  static RingMatrix identity(RingSpec ring, std::size_t n) {
    RingMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static RingMatrix from_rows(RingSpec ring, const std::vector<Vector>& rows,
                              std::size_t cols) {
    RingMatrix m(ring, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw PreconditionError("from_rows: ragged row");
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Integer& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, const Integer& v) {
    entries_[i * cols_ + j] = ring_.reduce(v);
  }
  void add(std::size_t i, std::size_t j, const Integer& v) {
    set(i, j, at(i, j) + v);
  }

  Vector row(std::size_t i) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Integer& e) { return e == 0; });
  }

  RingMatrix transpose() const {
    RingMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = at(i, j);
    return t;
  }

  /// The same entries reinterpreted in another ring (reduced canonically).
  RingMatrix reinterpret(RingSpec ring) const {
    RingMatrix m(ring, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      m.entries_[k] = ring.reduce(entries_[k]);
    return m;
  }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    if (a.cols_ != b.rows_ || !(a.ring_ == b.ring_))
      throw PreconditionError("matrix product: shape or ring mismatch");
    RingMatrix c(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a.at(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.entries_[i * c.cols_ + j] += aik * b.at(k, j);
      }
    for (auto& e : c.entries_) e = c.ring_.reduce(e);
    return c;
  }

  friend Vector operator*(const RingMatrix& a, const Vector& x) {
    if (a.cols_ != x.size())
      throw PreconditionError("matrix-vector product: shape mismatch");
    Vector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < a.cols_; ++j) acc += a.at(i, j) * x[j];
      y[i] = a.ring_.reduce(acc);
    }
    return y;
  }

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  RingSpec ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> entries_;
};

/// A*x = b.
struct LinearSystem {
  RingMatrix matrix;
  Vector rhs;
};

struct SolveResult {
  bool solvable = false;
  /// One particular solution when solvable.
  Vector solution;
  /// Generators of the solution module of A*x = 0 (a basis over Z and
  /// over prime fields; a generating set over general Z/nZ).
  std::vector<Vector> kernel;
};

/// U*A = H with H in row Hermite normal form and U unimodular.
struct HermiteForm {
  RingMatrix form;
  RingMatrix transform;
  std::size_t rank = 0;
};

/// P*A*Q = D with D diagonal, d_i | d_{i+1}, P and Q unimodular.
struct SmithForm {
  RingMatrix form;
  RingMatrix left;
  RingMatrix right;
};

struct NormalForm {
  HermiteForm hermite;
  SmithForm smith;
};

// ---------------------------------------------------------------------------

namespace detail {

/// Row-operation workspace over Z on plain Integer rows.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Integer> e;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c) {}
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix lift(const RingMatrix& a) {
    IntMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a.at(i, j);
    return m;
  }
  RingMatrix to_ring(RingSpec ring) const {
    RingMatrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, (*this)(i, j));
    return m;
  }

  Integer& operator()(std::size_t i, std::size_t j) { return e[i * cols + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return e[i * cols + j];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  /// row_dst += k * row_src
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col_dst += k * col_src
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  /// (row_a, row_b) <- (s*row_a + t*row_b, u*row_a + v*row_b)
  void combine_rows(std::size_t a, std::size_t b, const Integer& s,
                    const Integer& t, const Integer& u, const Integer& v) {
    for (std::size_t j = 0; j < cols; ++j) {
      Integer x = (*this)(a, j), y = (*this)(b, j);
      (*this)(a, j) = s * x + t * y;
      (*this)(b, j) = u * x + v * y;
    }
  }
};

struct IntHermite {
  IntMatrix h, u;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Row Hermite normal form over Z: u * a = h, u unimodular, pivots positive,
/// entries above a pivot reduced into [0, pivot).
inline IntHermite hermite_over_z(IntMatrix a) {
  IntHermite out;
  out.u = IntMatrix::identity(a.rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      if (a(i, c) == 0) continue;
      const Integer x = a(r, c), y = a(i, c);
      ExtendedGcd eg = extended_gcd(x, y);
      const Integer u = -(y / eg.g), v = x / eg.g;
      a.combine_rows(r, i, eg.s, eg.t, u, v);
      out.u.combine_rows(r, i, eg.s, eg.t, u, v);
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      a.negate_row(r);
      out.u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(a(i, c), a(r, c));
      a.add_row(i, r, -q);
      out.u.add_row(i, r, -q);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.h = std::move(a);
  return out;
}

struct IntSmith {
  IntMatrix d, p, q;
};

inline IntSmith smith_over_z(IntMatrix a) {
  IntSmith out;
  out.p = IntMatrix::identity(a.rows);
  out.q = IntMatrix::identity(a.cols);
  const std::size_t n = std::min(a.rows, a.cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < a.rows; ++i)
        for (std::size_t j = t; j < a.cols; ++j)
          if (a(i, j) != 0 &&
              (!best || abs(a(i, j)) < abs(a(best->first, best->second))))
            best = {i, j};
      if (!best) break;
      if (best->first != t) {
        a.swap_rows(t, best->first);
        out.p.swap_rows(t, best->first);
      }
      if (best->second != t) {
        a.swap_cols(t, best->second);
        out.q.swap_cols(t, best->second);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        Integer k = a(i, t) / a(t, t);
        a.add_row(i, t, -k);
        out.p.add_row(i, t, -k);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        Integer k = a(t, j) / a(t, t);
        a.add_col(j, t, -k);
        out.q.add_col(j, t, -k);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < a.rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < a.cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.add_row(t, *bad_row, 1);
      out.p.add_row(t, *bad_row, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      out.p.negate_row(t);
    }
  }
  out.d = std::move(a);
  return out;
}

struct IntSolve {
  bool solvable = false;
  Vector solution;
  std::vector<Vector> kernel;
};

/// Decides A*x = b over Z. Uses the Hermite form of A^T: U*A^T = H gives
/// A*U^T = H^T, a column echelon matrix solved by forward substitution.
inline IntSolve solve_over_z(const IntMatrix& a, const Vector& b) {
  IntMatrix at(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) at(j, i) = a(i, j);
  IntHermite hf = hermite_over_z(std::move(at));
  const std::size_t rank = hf.pivots.size();
  IntSolve out;
  for (std::size_t j = rank; j < a.cols; ++j) {
    Vector k(a.cols);
    for (std::size_t c = 0; c < a.cols; ++c) k[c] = hf.u(j, c);
    out.kernel.push_back(std::move(k));
  }
  Vector y(a.cols, 0);
  for (std::size_t j = 0; j < rank; ++j) {
    const std::size_t p = hf.pivots[j];
    Integer acc = b[p];
    for (std::size_t i = 0; i < j; ++i) acc -= hf.h(i, p) * y[i];
    if (acc % hf.h(j, p) != 0) return out;
    y[j] = acc / hf.h(j, p);
  }
  // Rows that are not pivot rows must hold as well.
  for (std::size_t row = 0; row < a.rows; ++row) {
    Integer acc = 0;
    for (std::size_t i = 0; i < rank; ++i) acc += hf.h(i, row) * y[i];
    if (acc != b[row]) return out;
  }
  out.solvable = true;
  out.solution.assign(a.cols, 0);
  for (std::size_t j = 0; j < rank; ++j)
    if (y[j] != 0)
      for (std::size_t c = 0; c < a.cols; ++c) out.solution[c] += y[j] * hf.u(j, c);
  return out;
}

/// Gauss-Jordan elimination over the prime field Z/pZ.
inline SolveResult solve_over_prime_field(const RingMatrix& a, const Vector& b) {
  using U = std::uint64_t;
  const U p = a.ring().modulus();
  auto mul = [p](U x, U y) {
    return static_cast<U>((static_cast<unsigned __int128>(x) * y) % p);
  };
  auto inv = [&](U x) {
    U result = 1, base = x, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  };
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<U>> w(m, std::vector<U>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a.at(i, j).convert_to<U>();
    w[i][n] = a.ring().reduce(b[i]).convert_to<U>();
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t sel = r;
    while (sel < m && w[sel][c] == 0) ++sel;
    if (sel == m) continue;
    std::swap(w[r], w[sel]);
    const U iv = inv(w[r][c]);
    for (auto& x : w[r]) x = mul(x, iv);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || w[i][c] == 0) continue;
      const U f = w[i][c];
      for (std::size_t j = 0; j <= n; ++j)
        w[i][j] = (w[i][j] + p - mul(f, w[r][j])) % p;
    }
    pivot_cols.push_back(c);
    ++r;
  }
  SolveResult out;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector k(n, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      k[pivot_cols[i]] = Integer((p - w[i][f]) % p);
    out.kernel.push_back(std::move(k));
  }
  for (std::size_t i = r; i < m; ++i)
    if (w[i][n] != 0) return out;
  out.solvable = true;
  out.solution.assign(n, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i)
    out.solution[pivot_cols[i]] = Integer(w[i][n]);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Decides A*x = b exactly over the matrix ring. Over Z/nZ with composite n
/// the system is lifted to [A | nI](x; y) = b over Z.
inline SolveResult solve_linear_system(const LinearSystem& sys) {
  const RingMatrix& a = sys.matrix;
  const RingSpec ring = a.ring();
  if (sys.rhs.size() != a.rows())
    throw PreconditionError("solve_linear_system: rhs length differs from rows");
  if (ring.is_field()) return detail::solve_over_prime_field(a, sys.rhs);

  Vector b(sys.rhs.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = ring.reduce(sys.rhs[i]);

  if (ring.is_integers()) {
    detail::IntSolve s = detail::solve_over_z(detail::IntMatrix::lift(a), b);
    return {s.solvable, std::move(s.solution), std::move(s.kernel)};
  }

  const Integer n(ring.modulus());
  detail::IntMatrix lifted(a.rows(), a.cols() + a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) lifted(i, j) = a.at(i, j);
    lifted(i, a.cols() + i) = n;
  }
  detail::IntSolve s = detail::solve_over_z(lifted, b);
  SolveResult out;
  out.solvable = s.solvable;
  if (s.solvable) {
    out.solution.resize(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) out.solution[j] = ring.reduce(s.solution[j]);
  }
  for (const Vector& k : s.kernel) {
    Vector proj(a.cols());
    bool nonzero = false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      proj[j] = ring.reduce(k[j]);
      nonzero = nonzero || proj[j] != 0;
    }
    if (nonzero && std::find(out.kernel.begin(), out.kernel.end(), proj) ==
                       out.kernel.end())
      out.kernel.push_back(std::move(proj));
  }
  return out;
}

/// Generators of {x : A*x = 0}.
inline std::vector<Vector> kernel_generators(const RingMatrix& a) {
  return solve_linear_system({a, Vector(a.rows(), 0)}).kernel;
}

/// For a finite ring: a row combination y with y*A = 0 and y*b != 0, which
/// exists exactly when the system is unsolvable (Z/nZ is self-injective).
/// Always nullopt over Z.
inline std::optional<Vector> inconsistency_witness(const LinearSystem& sys) {
  const RingSpec ring = sys.matrix.ring();
  if (ring.is_integers()) return std::nullopt;
  for (const Vector& y : kernel_generators(sys.matrix.transpose())) {
    Integer acc = 0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * sys.rhs[i];
    if (ring.reduce(acc) != 0) return y;
  }
  return std::nullopt;
}

/// Hermite and Smith forms. Over Z/nZ both are the reductions of the forms
/// of the canonical Z lift; the transforms stay invertible (det = +-1).
inline NormalForm normal_form(const RingMatrix& m) {
  const RingSpec ring = m.ring();
  detail::IntMatrix lifted = detail::IntMatrix::lift(m);
  detail::IntHermite h = detail::hermite_over_z(lifted);
  detail::IntSmith s = detail::smith_over_z(lifted);
  NormalForm out;
  out.hermite.form = h.h.to_ring(ring);
  out.hermite.transform = h.u.to_ring(ring);
  out.hermite.rank = h.pivots.size();
  out.smith.form = s.d.to_ring(ring);
  out.smith.left = s.p.to_ring(ring);
  out.smith.right = s.q.to_ring(ring);
  return out;
}

/// Determinant of a square matrix (fraction-free Bareiss over the Z lift,
/// reduced into the ring).
inline Integer determinant(const RingMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant: not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  detail::IntMatrix a = detail::IntMatrix::lift(m);
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && a(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      a.swap_rows(k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return m.ring().reduce(sign * a(n - 1, n - 1));
}

inline bool is_unit(const RingSpec& ring, const Integer& x) {
  if (ring.is_integers()) return x == 1 || x == -1;
  return gcd(ring.reduce(x), Integer(ring.modulus())) == 1;
}

// ---------------------------------------------------------------------------
// Ring homomorphisms.

/// One of the canonical maps Z -> Z/n, Z/n -> Z/m (m | n) or an identity.
struct RingHom {
  RingSpec source;
  RingSpec target;

  void validate() const {
    if (source == target) return;
    if (source.is_integers() && target.is_finite()) return;
    if (source.is_finite() && target.is_finite() &&
        source.modulus() % target.modulus() == 0)
      return;
    throw UnsupportedRingError("no canonical homomorphism " + source.name() +
                               " -> " + target.name());
  }

  Integer operator()(const Integer& x) const { return target.reduce(x); }
};

inline Vector ring_hom_apply(const RingHom& h, const Vector& v) {
  h.validate();
  Vector out;
  out.reserve(v.size());
  for (const Integer& x : v) out.push_back(h(h.source.reduce(x)));
  return out;
}

inline RingMatrix ring_hom_apply(const RingHom& h, const RingMatrix& m) {
  h.validate();
  if (!(m.ring() == h.source))
    throw PreconditionError("ring_hom_apply: matrix is not over the source ring");
  return m.reinterpret(h.target);
}

}  // namespace ctxsheaf
