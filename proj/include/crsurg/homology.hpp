#pragma once

// First homology of surgered manifolds, computed from integer presentation
// matrices by Smith normal form.
//
// Round 1-surgery presentation.  Glue T^2 x [1,2] (generators a = [x],
// b = [y]) to the two-component link exterior E (H_1(E) = <mu_1, mu_2>).
// The gluing sends x -> mu_i and y -> N_i mu_i + lambda_i, where N_i is the
// topological coefficient and lambda_i = sum_j lk(i,j) mu_j in H_1(E).
// Mayer-Vietoris over the two gluing tori gives
//
//   H_1(T_1) + H_1(T_2) -> H_1(E) + H_1(T^2 x I) -> H_1(M) -> H~_0(T_1 u T_2) -> 0
//
// The four images (x on T_1, y on T_1, x on T_2, y on T_2) are the columns
// (1,0,-1,0), (N_1,l,0,-1), (0,1,-1,0), (l,N_2,0,-1) over (mu_1, mu_2, a, b);
// the last map lands onto H~_0 of two tori = Z, which is free, so the sequence
// splits and H_1(M) = coker + Z.  A global sign flip on any column leaves the
// cokernel unchanged.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crsurg/core.hpp"
#include "crsurg/error.hpp"

namespace crsurg {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorKind::InvalidParameter, "ragged matrix literal");
      for (auto v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidParameter, "matrix shape mismatch");
    IntMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }

  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += f * (*this)(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += f * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Exact determinant of a square integer matrix (Bareiss elimination).
inline BigInt determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::InvalidParameter, "determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithResult {
  IntMatrix left;      // U, unimodular
  IntMatrix diagonal;  // D = U * M * V
  IntMatrix right;     // V, unimodular
  /// min(rows, cols) diagonal entries, non-negative, d_1 | d_2 | ...
  std::vector<BigInt> entries;
};

namespace detail {

inline void verify_smith(const IntMatrix& m, const SmithResult& r) {
  if (r.left * m * r.right != r.diagonal)
    throw Error(ErrorKind::InternalError, "Smith normal form certificate U*M*V != D");
  const BigInt du = determinant(r.left), dv = determinant(r.right);
  if (abs(du) != 1 || abs(dv) != 1) throw Error(ErrorKind::InternalError, "Smith normal form transform not unimodular");
  for (std::size_t i = 0; i < r.diagonal.rows(); ++i)
    for (std::size_t j = 0; j < r.diagonal.cols(); ++j)
      if (i != j && r.diagonal(i, j) != 0) throw Error(ErrorKind::InternalError, "Smith normal form not diagonal");
  for (std::size_t i = 0; i + 1 < r.entries.size(); ++i) {
    const BigInt& a = r.entries[i];
    const BigInt& b = r.entries[i + 1];
    if (a < 0 || b < 0 || (a == 0 && b != 0) || (a != 0 && b % a != 0))
      throw Error(ErrorKind::InternalError, "Smith normal form divisibility chain broken");
  }
}

}  // namespace detail

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Row Hermite form in place, row operations mirrored on U.  Pivots are made
// positive and the entries above each pivot reduced into [0, pivot), which
// keeps both D and U from blowing up.
inline void row_hermite(IntMatrix& D, IntMatrix& U) {
  const std::size_t R = D.rows(), C = D.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    for (;;) {
      std::size_t p = R;
      for (std::size_t i = r; i < R; ++i)
        if (D(i, c) != 0 && (p == R || abs(D(i, c)) < abs(D(p, c)))) p = i;
      if (p == R) break;
      if (p != r) {
        D.swap_rows(p, r);
        U.swap_rows(p, r);
      }
      bool again = false;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (D(i, c) == 0) continue;
        const BigInt q = D(i, c) / D(r, c);
        D.add_row(i, r, -q);
        U.add_row(i, r, -q);
        if (D(i, c) != 0) again = true;
      }
      if (!again) break;
    }
    if (D(r, c) == 0) continue;
    if (D(r, c) < 0) {
      D.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const BigInt q = floor_div(D(k, c), D(r, c));
      if (q == 0) continue;
      D.add_row(k, r, -q);
      U.add_row(k, r, -q);
    }
    ++r;
  }
}

inline bool at_most_one_per_line(const IntMatrix& D) {
  std::vector<int> rows(D.rows()), cols(D.cols());
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (D(i, j) != 0 && (++rows[i] > 1 || ++cols[j] > 1)) return false;
  return true;
}

inline IntMatrix permute_rows(const IntMatrix& m, const std::vector<std::size_t>& order) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(order[i], j);
  return out;
}

}  // namespace detail

/// Smith normal form with left/right certificates; the identity U*M*V = D,
/// unimodularity and the divisibility chain are re-checked before returning.
///
/// Alternates row and column Hermite forms until at most one entry per row
/// and column survives, then permutes and repairs divisibility with 2x2
/// gcd/lcm moves.  Plain pivot-and-reduce elimination is much simpler but the
/// certificates grow to tens of thousands of bits on dense 64x64 input.
inline SmithResult smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols(), K = std::min(R, C);
  SmithResult res{IntMatrix::identity(R), m, IntMatrix::identity(C), {}};
  IntMatrix& D = res.diagonal;
  IntMatrix& U = res.left;
  IntMatrix& V = res.right;

  for (int round = 0;; ++round) {
    if (round > 10000) throw Error(ErrorKind::InternalError, "Smith normal form did not converge");
    detail::row_hermite(D, U);
    if (detail::at_most_one_per_line(D)) break;
    IntMatrix Dt = D.transposed(), Vt = V.transposed();
    detail::row_hermite(Dt, Vt);
    D = Dt.transposed();
    V = Vt.transposed();
    if (detail::at_most_one_per_line(D)) break;
  }

  // Move the surviving entries onto the diagonal, zeros last.
  std::vector<std::size_t> row_order, col_order;
  std::vector<bool> row_used(R), col_used(C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (D(i, j) != 0) {
        row_order.push_back(i);
        col_order.push_back(j);
        row_used[i] = col_used[j] = true;
      }
  for (std::size_t i = 0; i < R; ++i)
    if (!row_used[i]) row_order.push_back(i);
  for (std::size_t j = 0; j < C; ++j)
    if (!col_used[j]) col_order.push_back(j);
  D = detail::permute_rows(D, row_order);
  U = detail::permute_rows(U, row_order);
  D = detail::permute_rows(D.transposed(), col_order).transposed();
  V = detail::permute_rows(V.transposed(), col_order).transposed();
  for (std::size_t t = 0; t < K; ++t)
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }

  // diag(a, b) -> diag(g, ab/g) with xa + yb = g:
  //   [x y; -b/g a/g] * diag(a, b) * [1 -yb/g; 1 xa/g]
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j) {
      const BigInt a = D(i, i), b = D(j, j);
      if (a == 0 || b == 0 || b % a == 0) continue;
      BigInt r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
      while (r1 != 0) {
        const BigInt q = r0 / r1;
        BigInt t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
      }
      const BigInt g = r0, ag = a / g, bg = b / g;
      for (std::size_t c = 0; c < R; ++c) {
        const BigInt ui = U(i, c), uj = U(j, c);
        U(i, c) = x0 * ui + y0 * uj;
        U(j, c) = ag * uj - bg * ui;
      }
      for (std::size_t r = 0; r < C; ++r) {
        const BigInt vi = V(r, i), vj = V(r, j);
        V(r, i) = vi + vj;
        V(r, j) = ag * x0 * vj - bg * y0 * vi;
      }
      D(i, i) = g;
      D(j, j) = a * bg;
    }

  for (std::size_t t = 0; t < K; ++t) res.entries.push_back(D(t, t));
  detail::verify_smith(m, res);
  return res;
}

/// Finitely generated abelian group Z^free_rank + sum Z/d_i with d_1 | d_2 | ...
struct H1Class {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const H1Class&) const = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
    for (const auto& d : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.str();
    return s.empty() ? "0" : s;
  }
};

/// Cokernel of the relation matrix: rows are relations, columns generators.
inline H1Class cokernel(const IntMatrix& relations) {
  H1Class h;
  if (relations.rows() == 0) {
    h.free_rank = relations.cols();
    return h;
  }
  const auto snf = smith_normal_form(relations);
  std::size_t nonzero = 0;
  for (const auto& d : snf.entries) {
    if (d != 0) ++nonzero;
    if (d > 1) h.torsion.push_back(d);
  }
  h.free_rank = relations.cols() - nonzero;
  return h;
}

/// Topological linking matrix (framings on the diagonal) of the components
/// with finite coefficients.  Every such coefficient must be an integer.
inline IntMatrix topological_linking_matrix(const ContactSurgeryDiagram& d) {
  std::vector<const LegendrianComponent*> live;
  std::vector<std::int64_t> framing;
  for (const auto& c : d.components) {
    auto it = d.coefficients.find(c.label);
    if (it == d.coefficients.end()) throw Error(ErrorKind::SemanticError, "component '" + c.label + "' has no coefficient");
    SlopeQ t = contact_to_topological(it->second, c.tb);
    if (t.is_infinite()) continue;
    if (!t.is_integer()) throw Error(ErrorKind::InvalidParameter, "linking matrix needs integer framings");
    live.push_back(&c);
    framing.push_back(t.num());
  }
  IntMatrix m(live.size(), live.size());
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = 0; j < live.size(); ++j)
      m(i, j) = i == j ? BigInt(framing[i]) : BigInt(d.linking.get(live[i]->label, live[j]->label));
  return m;
}

/// H_1 of Dehn surgery on a link in S^3: relation p_i mu_i + q_i sum_j lk(i,j) mu_j = 0
/// for topological coefficient p_i/q_i; infinite coefficients are dropped.
inline H1Class h1_dehn(const ContactSurgeryDiagram& d) {
  std::vector<std::pair<const LegendrianComponent*, SlopeQ>> live;
  for (const auto& c : d.components) {
    auto it = d.coefficients.find(c.label);
    if (it == d.coefficients.end()) throw Error(ErrorKind::SemanticError, "component '" + c.label + "' has no coefficient");
    SlopeQ t = contact_to_topological(it->second, c.tb);
    if (!t.is_infinite()) live.emplace_back(&c, t);
  }
  IntMatrix rel(live.size(), live.size());
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = 0; j < live.size(); ++j)
      rel(i, j) = i == j ? BigInt(live[i].second.num())
                         : BigInt(live[i].second.den()) * d.linking.get(live[i].first->label, live[j].first->label);
  return cokernel(rel);
}

/// Presentation matrix (relations as rows over mu_1, mu_2, a, b) of the
/// standalone round 1-surgery before the extra free summand.
inline IntMatrix round1_presentation(std::int64_t tb1, std::int64_t tb2, std::int64_t lk, std::int64_t n1,
                                     std::int64_t n2) {
  const std::int64_t N1 = checked::add(n1, tb1), N2 = checked::add(n2, tb2);
  return IntMatrix{{1, 0, -1, 0}, {N1, lk, 0, -1}, {0, 1, -1, 0}, {lk, N2, 0, -1}};
}

inline H1Class h1_round1(std::int64_t tb1, std::int64_t tb2, std::int64_t lk, std::int64_t n1, std::int64_t n2) {
  H1Class h = cokernel(round1_presentation(tb1, tb2, lk, n1, n2));
  h.free_rank += 1;  // connecting map onto H~_0 of the two gluing tori
  return h;
}

/// Two-component round diagram entry point.
inline H1Class h1_round1(const RoundSurgeryDiagram& d, const Round1Spec& spec) {
  if (d.components.size() != 2) throw Error(ErrorKind::NotTwoComponent, "standalone round 1-surgery needs exactly two components");
  const auto* a = d.find(spec.pair.first);
  const auto* b = d.find(spec.pair.second);
  if (!a || !b || a == b) throw Error(ErrorKind::UnknownComponent, "round1 pair does not name the two components");
  return h1_round1(a->tb, b->tb, d.linking.get(a->label, b->label), spec.coeff_a, spec.coeff_b);
}

struct Round2Homology {
  H1Class outer;  // knot exterior filled along P mu + Q lambda
  H1Class inner;  // neighbourhood of the knot filled: lens-space factor
  bool operator==(const Round2Homology&) const = default;
};

inline H1Class cyclic_group(std::int64_t order) {
  H1Class h;
  if (order == 0)
    h.free_rank = 1;
  else if (order != 1 && order != -1)
    h.torsion.push_back(BigInt(order < 0 ? -order : order));
  return h;
}

/// Round 2-surgery on a knot in S^3 with contact coefficient c: outer
/// component Z/|P|, inner component Z/|Q| where P/Q is the topological
/// coefficient.
inline Round2Homology h1_round2(std::int64_t tb, const SlopeQ& c) {
  const SlopeQ t = contact_to_topological(c, tb);
  const std::int64_t P = t.is_infinite() ? 1 : t.num();
  const std::int64_t Q = t.is_infinite() ? 0 : t.den();
  return {cyclic_group(P), cyclic_group(Q)};
}

}  // namespace crsurg
