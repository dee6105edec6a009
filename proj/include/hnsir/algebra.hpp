#pragma once

// Hypercomplex number system of dimension 2N used for retrieval.
//
// The basis is {e_1, ..., e_2N}, grouped into N blocks (e_{2i-1}, e_{2i}).
// Inside a block the multiplication law is that of split-complex numbers,
//   e_p * e_p = e_p,  e_p * e_q = e_q,  e_q * e_q = e_p     (p = 2i-1, q = 2i)
// and products of basis elements from different blocks vanish. The system is
// commutative, associative and has the unit E = e_1 + e_3 + ... + e_{2N-1}.
//
// Basis indices in this header are 1-based, matching the usual notation e_k.
// Storage is sparse; dense() materializes a 2N coefficient vector on demand.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnsir {

using BasisIndex = std::size_t;

/// Upper bound on the number of terms a table may be built for.
inline constexpr std::size_t kMaxTerms = std::size_t{1} << 20;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : std::invalid_argument("hypercomplex dimension mismatch: " + std::to_string(lhs) +
                              " vs " + std::to_string(rhs)) {}
};

/// Structure constants of the 2N-dimensional system. Every constant is 0 or 1,
/// so an entry is either "zero" or the basis index the product lands on.
class MultiplicationTable {
 public:
  explicit MultiplicationTable(std::size_t n_terms) : n_terms_(n_terms) {
    if (n_terms == 0) throw std::invalid_argument("multiplication table needs at least one term");
    if (n_terms > kMaxTerms)
      throw std::invalid_argument("multiplication table limited to " + std::to_string(kMaxTerms) +
                                  " terms, got " + std::to_string(n_terms));
  }

  [[nodiscard]] std::size_t n_terms() const noexcept { return n_terms_; }
  [[nodiscard]] std::size_t dim() const noexcept { return 2 * n_terms_; }

  /// e_a * e_b, or nullopt when the product is zero.
  [[nodiscard]] std::optional<BasisIndex> entry(BasisIndex a, BasisIndex b) const {
    check_index(a);
    check_index(b);
    if (block_of(a) != block_of(b)) return std::nullopt;
    const bool a_odd = (a % 2) == 1;
    const bool b_odd = (b % 2) == 1;
    if (a_odd && b_odd) return a;
    if (a_odd) return b;
    if (b_odd) return a;
    return a - 1;  // e_q * e_q = e_p
  }

  /// Block number (1-based) that basis element e_k belongs to.
  [[nodiscard]] static constexpr std::size_t block_of(BasisIndex k) noexcept { return (k + 1) / 2; }

  friend bool operator==(const MultiplicationTable&, const MultiplicationTable&) = default;

 private:
  void check_index(BasisIndex k) const {
    if (k < 1 || k > dim())
      throw std::out_of_range("basis index " + std::to_string(k) + " outside [1, " +
                              std::to_string(dim()) + "]");
  }

  std::size_t n_terms_;
};

inline MultiplicationTable build_ir_table(std::size_t n_terms) { return MultiplicationTable(n_terms); }

/// Element of the system: a sparse coefficient vector over the 2N basis.
template <typename Scalar>
class HyperNumber {
 public:
  using Sparse = Eigen::SparseVector<Scalar>;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  HyperNumber() = default;
  explicit HyperNumber(std::size_t dim) : coeffs_(static_cast<Eigen::Index>(dim)) {}

  static HyperNumber zero(std::size_t dim) { return HyperNumber(dim); }

  /// c * e_k.
  static HyperNumber basis(std::size_t dim, BasisIndex k, Scalar c = Scalar(1)) {
    HyperNumber x(dim);
    x.set(k, c);
    return x;
  }

  static HyperNumber from_dense(const Eigen::Ref<const Dense>& v) {
    HyperNumber x(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v[i] != Scalar(0)) x.set(static_cast<BasisIndex>(i + 1), v[i]);
    return x;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return static_cast<std::size_t>(coeffs_.nonZeros()); }

  [[nodiscard]] Scalar operator[](BasisIndex k) const {
    check_index(k);
    return coeffs_.coeff(static_cast<Eigen::Index>(k - 1));
  }

  /// Sets the coefficient of e_k; zero erases the entry.
  void set(BasisIndex k, Scalar c) {
    check_index(k);
    if (!std::isfinite(static_cast<double>(c)))
      throw std::invalid_argument("hypercomplex coefficient must be finite");
    if (c == Scalar(0)) {
      if (coeffs_.coeff(static_cast<Eigen::Index>(k - 1)) != Scalar(0)) {
        coeffs_.coeffRef(static_cast<Eigen::Index>(k - 1)) = Scalar(0);
        coeffs_.prune(Scalar(0), 0);
      }
      return;
    }
    coeffs_.coeffRef(static_cast<Eigen::Index>(k - 1)) = c;
  }

  [[nodiscard]] const Sparse& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] Dense dense() const { return Dense(coeffs_); }

  /// Visits (basis index, coefficient) for every stored nonzero in ascending order.
  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (typename Sparse::InnerIterator it(coeffs_); it; ++it)
      fn(static_cast<BasisIndex>(it.index() + 1), it.value());
  }

  friend bool operator==(const HyperNumber& a, const HyperNumber& b) {
    if (a.dim() != b.dim()) return false;
    Sparse diff = a.coeffs_ - b.coeffs_;
    diff.prune(Scalar(0), Scalar(0));
    return diff.nonZeros() == 0;
  }

 private:
  void check_index(BasisIndex k) const {
    if (k < 1 || k > dim())
      throw std::out_of_range("basis index " + std::to_string(k) + " outside [1, " +
                              std::to_string(dim()) + "]");
  }

  Sparse coeffs_;
};

template <typename Scalar>
HyperNumber<Scalar> from_sorted_terms(std::size_t dim, const std::map<BasisIndex, Scalar>& terms) {
  HyperNumber<Scalar> out(dim);
  for (const auto& [k, c] : terms)
    if (c != Scalar(0)) out.set(k, c);
  return out;
}

using HyperNumberd = HyperNumber<double>;

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}
}  // namespace detail

template <typename Scalar>
HyperNumber<Scalar> add(const HyperNumber<Scalar>& x, const HyperNumber<Scalar>& y) {
  detail::require_same_dim(x.dim(), y.dim());
  std::map<BasisIndex, Scalar> acc;
  x.for_each_nonzero([&](BasisIndex k, Scalar c) { acc[k] += c; });
  y.for_each_nonzero([&](BasisIndex k, Scalar c) { acc[k] += c; });
  return from_sorted_terms(x.dim(), acc);
}

template <typename Scalar>
HyperNumber<Scalar> scale(Scalar c, const HyperNumber<Scalar>& x) {
  std::map<BasisIndex, Scalar> acc;
  x.for_each_nonzero([&](BasisIndex k, Scalar v) { acc[k] = c * v; });
  return from_sorted_terms(x.dim(), acc);
}

/// Product in the algebra: the bilinear extension of the table over all pairs
/// of nonzero coefficients.
template <typename Scalar>
HyperNumber<Scalar> mul(const MultiplicationTable& t, const HyperNumber<Scalar>& x,
                        const HyperNumber<Scalar>& y) {
  detail::require_same_dim(x.dim(), t.dim());
  detail::require_same_dim(y.dim(), t.dim());
  std::map<BasisIndex, Scalar> acc;
  x.for_each_nonzero([&](BasisIndex a, Scalar xa) {
    y.for_each_nonzero([&](BasisIndex b, Scalar yb) {
      if (auto c = t.entry(a, b)) acc[*c] += xa * yb;
    });
  });
  return from_sorted_terms(t.dim(), acc);
}

/// E = e_1 + e_3 + ... + e_{2N-1}.
template <typename Scalar = double>
HyperNumber<Scalar> unit_element(const MultiplicationTable& t) {
  std::map<BasisIndex, Scalar> acc;
  for (std::size_t i = 1; i <= t.n_terms(); ++i) acc.emplace(2 * i - 1, Scalar(1));
  return from_sorted_terms(t.dim(), acc);
}

/// Additive evaluation: +1 on odd basis elements, -1 on even ones.
template <typename Scalar>
Scalar est(const HyperNumber<Scalar>& x) {
  Scalar total(0);
  x.for_each_nonzero([&](BasisIndex k, Scalar c) { total += (k % 2 == 1) ? c : -c; });
  return total;
}

/// Relevance score: Est of the product. Cross-block products vanish, so the
/// full product already is the sum of the per-block products.
template <typename Scalar>
Scalar sim(const MultiplicationTable& t, const HyperNumber<Scalar>& a, const HyperNumber<Scalar>& b) {
  return est(mul(t, a, b));
}

/// Distance-like score (lower is closer): Est of the sum over blocks of
/// (e_p da+)^2 (e_q da-)^2, with every square taken inside the algebra.
template <typename Scalar>
Scalar sim1(const MultiplicationTable& t, const HyperNumber<Scalar>& a, const HyperNumber<Scalar>& b) {
  detail::require_same_dim(a.dim(), t.dim());
  detail::require_same_dim(b.dim(), t.dim());
  std::map<std::size_t, std::pair<Scalar, Scalar>> delta;  // block -> (da+, da-)
  auto collect = [&](const HyperNumber<Scalar>& x, Scalar sign) {
    x.for_each_nonzero([&](BasisIndex k, Scalar c) {
      auto& d = delta[MultiplicationTable::block_of(k)];
      (k % 2 == 1 ? d.first : d.second) += sign * c;
    });
  };
  collect(a, Scalar(1));
  collect(b, Scalar(-1));

  auto sum = HyperNumber<Scalar>::zero(t.dim());
  for (const auto& [block, d] : delta) {
    const auto plus = HyperNumber<Scalar>::basis(t.dim(), 2 * block - 1, d.first);
    const auto minus = HyperNumber<Scalar>::basis(t.dim(), 2 * block, d.second);
    sum = add(sum, mul(t, mul(t, plus, plus), mul(t, minus, minus)));
  }
  return est(sum);
}

/// Per-term s_i = x_{2i-1} - x_{2i}, stored sparsely with length N.
template <typename Scalar>
struct SignedProjection {
  Eigen::SparseVector<Scalar> values;

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

template <typename Scalar>
SignedProjection<Scalar> signed_projection(const HyperNumber<Scalar>& x) {
  std::map<std::size_t, Scalar> acc;
  x.for_each_nonzero([&](BasisIndex k, Scalar c) {
    acc[MultiplicationTable::block_of(k) - 1] += (k % 2 == 1) ? c : -c;
  });
  SignedProjection<Scalar> out{Eigen::SparseVector<Scalar>(static_cast<Eigen::Index>(x.dim() / 2))};
  out.values.reserve(static_cast<Eigen::Index>(acc.size()));
  for (const auto& [i, s] : acc)
    if (s != Scalar(0)) out.values.insertBack(static_cast<Eigen::Index>(i)) = s;
  return out;
}

template <typename Scalar>
Scalar dot(const SignedProjection<Scalar>& a, const SignedProjection<Scalar>& b) {
  detail::require_same_dim(a.size(), b.size());
  return a.values.dot(b.values);
}

/// Left-regular representation: block-diagonal with block i = [[x_p, x_q], [x_q, x_p]].
template <typename Scalar>
Eigen::SparseMatrix<Scalar> matrix_rep(const MultiplicationTable& t, const HyperNumber<Scalar>& x) {
  detail::require_same_dim(x.dim(), t.dim());
  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(2 * x.nonzeros());
  x.for_each_nonzero([&](BasisIndex k, Scalar c) {
    const auto p = static_cast<Eigen::Index>(2 * MultiplicationTable::block_of(k) - 2);
    if (k % 2 == 1) {
      triplets.emplace_back(p, p, c);
      triplets.emplace_back(p + 1, p + 1, c);
    } else {
      triplets.emplace_back(p, p + 1, c);
      triplets.emplace_back(p + 1, p, c);
    }
  });
  const auto n = static_cast<Eigen::Index>(t.dim());
  Eigen::SparseMatrix<Scalar> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace hnsir
