#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "knop/errors.hpp"

namespace knop {

/// Index of a simple root, in [0, rank).
using GeneratorIndex = std::size_t;

inline constexpr std::size_t kDefaultElementBound = 50'000;

/// A crystallographic Cartan matrix.
///
/// Entries follow the convention s_i(alpha_j) = alpha_j - a(i, j) alpha_i.
/// Construction enforces a(i,i) = 2, a(i,j) <= 0 off the diagonal,
/// a(i,j) = 0 iff a(j,i) = 0, and a(i,j) a(j,i) in {0, 1, 2, 3}.
class CartanMatrix {
 public:
  explicit CartanMatrix(std::vector<std::vector<int>> rows);
  CartanMatrix(std::initializer_list<std::vector<int>> rows)
      : CartanMatrix(std::vector<std::vector<int>>(rows)) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

  friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;

 private:
  std::vector<std::vector<int>> rows_;
};

/// Block-diagonal sum; the roots of `b` are numbered after those of `a`.
CartanMatrix direct_sum(const CartanMatrix& a, const CartanMatrix& b);

namespace detail {
struct WeylData;
}

/// A finite Weyl group given by its Cartan matrix.
///
/// Construction computes the positive roots; Cartan matrices of infinite
/// type (affine, hyperbolic) are rejected with DomainError. The object is an
/// immutable handle and cheap to copy.
class WeylGroupSpec {
 public:
  explicit WeylGroupSpec(CartanMatrix cartan,
                         std::size_t element_bound = kDefaultElementBound);

  const CartanMatrix& cartan() const noexcept;
  std::size_t rank() const noexcept;
  std::size_t element_bound() const noexcept;

  /// Order of s_i s_j; i == j is a DomainError.
  int braid_order(GeneratorIndex i, GeneratorIndex j) const;

  /// Positive roots in simple-root coordinates, simple roots first.
  const std::vector<std::vector<int>>& positive_roots() const noexcept;

  /// Same group, different enumeration bound.
  WeylGroupSpec with_element_bound(std::size_t bound) const;

  bool same_group(const WeylGroupSpec& other) const noexcept;

 private:
  friend class WeylElement;
  explicit WeylGroupSpec(std::shared_ptr<const detail::WeylData> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const detail::WeylData> data_;
};

int braid_order(const WeylGroupSpec& spec, GeneratorIndex i, GeneratorIndex j);

/// An element of W, stored as its matrix on simple-root coordinates
/// (column j holds w(alpha_j)). The representation is faithful, so matrix
/// equality is group equality.
class WeylElement {
 public:
  static WeylElement identity(const WeylGroupSpec& spec);
  static WeylElement simple_reflection(const WeylGroupSpec& spec,
                                       GeneratorIndex i);
  /// s_{word[0]} s_{word[1]} ... s_{word[k-1]}.
  static WeylElement from_word(const WeylGroupSpec& spec,
                               const std::vector<GeneratorIndex>& word);

  WeylGroupSpec spec() const;
  std::size_t rank() const noexcept { return rank_; }

  /// Number of positive roots sent to negative roots.
  std::size_t length() const;
  bool is_identity() const;

  /// True iff length(w s_i) < length(w).
  bool has_right_descent(GeneratorIndex i) const;
  /// True iff length(s_i w) < length(w).
  bool has_left_descent(GeneratorIndex i) const;

  WeylElement inverse() const;

  /// Lexicographically least reduced word.
  std::vector<GeneratorIndex> reduced_word() const;

  /// Canonical name: "e" for the identity, otherwise the lexicographically
  /// least reduced word spelled as "s0s1s0".
  std::string name() const;

  /// w applied to a vector in simple-root coordinates.
  std::vector<int> apply(const std::vector<int>& coords) const;

  const std::vector<int>& matrix() const noexcept { return matrix_; }

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement& a, const WeylElement& b);
  friend WeylElement multiply(const WeylElement& a, const WeylElement& b);

  std::size_t hash() const noexcept;

 private:
  WeylElement(std::shared_ptr<const detail::WeylData> data,
              std::vector<int> matrix);

  std::shared_ptr<const detail::WeylData> data_;
  std::size_t rank_ = 0;
  std::vector<int> matrix_;  // row-major rank_ x rank_
};

inline WeylElement simple_reflection(const WeylGroupSpec& spec,
                                     GeneratorIndex i) {
  return WeylElement::simple_reflection(spec, i);
}

/// Group product; elements of different groups raise DomainError.
WeylElement multiply(const WeylElement& a, const WeylElement& b);

inline std::size_t length(const WeylElement& w) { return w.length(); }

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const noexcept {
    return w.hash();
  }
};

/// Every element exactly once, identity first, in breadth-first order over
/// right multiplication by generators (hence by non-decreasing length).
/// Throws ResourceError once more than spec.element_bound() elements appear.
std::vector<WeylElement> enumerate(const WeylGroupSpec& spec);

std::uint64_t group_order(const WeylGroupSpec& spec);

}  // namespace knop
