#include "knop/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace knop {

namespace detail {

struct WeylData {
  CartanMatrix cartan;
  std::size_t element_bound;
  std::vector<std::vector<int>> positive_roots;
  std::vector<std::vector<int>> braid;              // m[i][j], 1 on diagonal
  std::vector<std::vector<int>> reflection_matrix;  // row-major, per generator
};

}  // namespace detail

namespace {

std::string describe_entry(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "cartan[" << i << "][" << j << "]";
  return os.str();
}

int braid_from_product(int product) {
  switch (product) {
    case 0:
      return 2;
    case 1:
      return 3;
    case 2:
      return 4;
    case 3:
      return 6;
    default:
      return 0;
  }
}

// s_i(beta) = beta - <beta, alpha_i^vee> alpha_i with
// <alpha_j, alpha_i^vee> = a(i, j).
std::vector<int> reflect(const CartanMatrix& a, std::size_t i,
                         std::vector<int> beta) {
  int pairing = 0;
  for (std::size_t j = 0; j < a.rank(); ++j) pairing += a(i, j) * beta[j];
  beta[i] -= pairing;
  return beta;
}

bool is_negative(const std::vector<int>& coords) {
  return std::any_of(coords.begin(), coords.end(), [](int c) { return c < 0; });
}

// Every positive root of a finite root system is reached from a simple root
// by simple reflections that stay positive.
std::vector<std::vector<int>> compute_positive_roots(const CartanMatrix& a) {
  const std::size_t n = a.rank();
  const std::size_t cap = n * n + 120;  // E8 has 120, every other type <= n^2
  std::vector<std::vector<int>> roots;
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> simple(n, 0);
    simple[i] = 1;
    seen.insert(simple);
    roots.push_back(simple);
    queue.push_back(simple);
  }
  while (!queue.empty()) {
    auto beta = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      auto image = reflect(a, i, beta);
      if (is_negative(image) || seen.count(image) != 0) continue;
      if (roots.size() >= cap) {
        throw DomainError(
            "Cartan matrix is not of finite type (root system is infinite)");
      }
      seen.insert(image);
      roots.push_back(image);
      queue.push_back(std::move(image));
    }
  }
  return roots;
}

std::vector<int> identity_matrix(std::size_t n) {
  std::vector<int> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

std::vector<int> mat_mul(const std::vector<int>& a, const std::vector<int>& b,
                         std::size_t n) {
  std::vector<int> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const int aik = a[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
  return c;
}

// Right multiplication by s_i only touches column i:
// (M s_i) e_i = -M e_i, (M s_i) e_j = M e_j - a(i,j) M e_i.
void right_multiply_reflection(std::vector<int>& m, const CartanMatrix& a,
                               std::size_t i) {
  const std::size_t n = a.rank();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || a(i, j) == 0) continue;
    for (std::size_t r = 0; r < n; ++r) m[r * n + j] -= a(i, j) * m[r * n + i];
  }
  for (std::size_t r = 0; r < n; ++r) m[r * n + i] = -m[r * n + i];
}

bool column_negative(const std::vector<int>& m, std::size_t n, std::size_t j) {
  for (std::size_t r = 0; r < n; ++r) {
    if (m[r * n + j] < 0) return true;
  }
  return false;
}

}  // namespace

CartanMatrix::CartanMatrix(std::vector<std::vector<int>> rows)
    : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  if (n == 0) throw DomainError("Cartan matrix must have at least one row");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows_[i].size() != n) {
      throw DomainError("Cartan matrix must be square");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows_[i][i] != 2) {
      throw DomainError(describe_entry(i, i) + " must equal 2");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int aij = rows_[i][j];
      const int aji = rows_[j][i];
      if (aij > 0) {
        throw DomainError(describe_entry(i, j) + " must be <= 0");
      }
      if ((aij == 0) != (aji == 0)) {
        throw DomainError(describe_entry(i, j) + " and " +
                          describe_entry(j, i) + " must vanish together");
      }
      if (braid_from_product(aij * aji) == 0) {
        throw DomainError(describe_entry(i, j) + " * " + describe_entry(j, i) +
                          " must lie in {0,1,2,3} (crystallographic)");
      }
    }
  }
}

CartanMatrix direct_sum(const CartanMatrix& a, const CartanMatrix& b) {
  const std::size_t n = a.rank() + b.rank();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) rows[i][j] = a(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j)
      rows[a.rank() + i][a.rank() + j] = b(i, j);
  return CartanMatrix(std::move(rows));
}

WeylGroupSpec::WeylGroupSpec(CartanMatrix cartan, std::size_t element_bound) {
  if (element_bound == 0) throw DomainError("element bound must be positive");
  auto data = std::make_shared<detail::WeylData>(detail::WeylData{
      std::move(cartan), element_bound, {}, {}, {}});
  const CartanMatrix& a = data->cartan;
  const std::size_t n = a.rank();
  data->positive_roots = compute_positive_roots(a);
  data->braid.assign(n, std::vector<int>(n, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) data->braid[i][j] = braid_from_product(a(i, j) * a(j, i));
  for (std::size_t i = 0; i < n; ++i) {
    auto m = identity_matrix(n);
    right_multiply_reflection(m, a, i);
    data->reflection_matrix.push_back(std::move(m));
  }
  data_ = std::move(data);
}

const CartanMatrix& WeylGroupSpec::cartan() const noexcept {
  return data_->cartan;
}

std::size_t WeylGroupSpec::rank() const noexcept {
  return data_->cartan.rank();
}

std::size_t WeylGroupSpec::element_bound() const noexcept {
  return data_->element_bound;
}

int WeylGroupSpec::braid_order(GeneratorIndex i, GeneratorIndex j) const {
  if (i >= rank() || j >= rank()) {
    throw DomainError("generator index out of range");
  }
  if (i == j) throw DomainError("braid order needs two distinct generators");
  return data_->braid[i][j];
}

const std::vector<std::vector<int>>& WeylGroupSpec::positive_roots()
    const noexcept {
  return data_->positive_roots;
}

WeylGroupSpec WeylGroupSpec::with_element_bound(std::size_t bound) const {
  if (bound == 0) throw DomainError("element bound must be positive");
  WeylGroupSpec copy = *this;
  auto data = std::make_shared<detail::WeylData>(*data_);
  data->element_bound = bound;
  copy.data_ = std::move(data);
  return copy;
}

bool WeylGroupSpec::same_group(const WeylGroupSpec& other) const noexcept {
  return data_ == other.data_ || data_->cartan == other.data_->cartan;
}

int braid_order(const WeylGroupSpec& spec, GeneratorIndex i, GeneratorIndex j) {
  return spec.braid_order(i, j);
}

WeylElement::WeylElement(std::shared_ptr<const detail::WeylData> data,
                         std::vector<int> matrix)
    : data_(std::move(data)),
      rank_(data_->cartan.rank()),
      matrix_(std::move(matrix)) {}

WeylElement WeylElement::identity(const WeylGroupSpec& spec) {
  return WeylElement(spec.data_, identity_matrix(spec.rank()));
}

WeylElement WeylElement::simple_reflection(const WeylGroupSpec& spec,
                                           GeneratorIndex i) {
  if (i >= spec.rank()) throw DomainError("generator index out of range");
  return WeylElement(spec.data_, spec.data_->reflection_matrix[i]);
}

WeylElement WeylElement::from_word(const WeylGroupSpec& spec,
                                   const std::vector<GeneratorIndex>& word) {
  auto m = identity_matrix(spec.rank());
  for (GeneratorIndex i : word) {
    if (i >= spec.rank()) throw DomainError("generator index out of range");
    right_multiply_reflection(m, spec.cartan(), i);
  }
  return WeylElement(spec.data_, std::move(m));
}

WeylGroupSpec WeylElement::spec() const {
  return WeylGroupSpec(data_);
}

std::size_t WeylElement::length() const {
  std::size_t count = 0;
  for (const auto& beta : data_->positive_roots) {
    if (is_negative(apply(beta))) ++count;
  }
  return count;
}

bool WeylElement::is_identity() const {
  return matrix_ == identity_matrix(rank_);
}

bool WeylElement::has_right_descent(GeneratorIndex i) const {
  if (i >= rank_) throw DomainError("generator index out of range");
  return column_negative(matrix_, rank_, i);
}

bool WeylElement::has_left_descent(GeneratorIndex i) const {
  return inverse().has_right_descent(i);
}

WeylElement WeylElement::inverse() const {
  // Peel right descents: w = s_{k1} ... s_{kl}, so w^-1 = s_{kl} ... s_{k1}.
  auto m = matrix_;
  auto inv = identity_matrix(rank_);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (column_negative(m, rank_, i)) {
        right_multiply_reflection(m, data_->cartan, i);
        right_multiply_reflection(inv, data_->cartan, i);
        progress = true;
        break;
      }
    }
  }
  return WeylElement(data_, std::move(inv));
}

std::vector<GeneratorIndex> WeylElement::reduced_word() const {
  // The first letter of the lex-least reduced word is the smallest left
  // descent; left descents of w are right descents of w^-1.
  std::vector<GeneratorIndex> word;
  auto inv = inverse().matrix_;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (column_negative(inv, rank_, i)) {
        word.push_back(i);
        right_multiply_reflection(inv, data_->cartan, i);
        progress = true;
        break;
      }
    }
  }
  return word;
}

std::string WeylElement::name() const {
  const auto word = reduced_word();
  if (word.empty()) return "e";
  std::string out;
  for (GeneratorIndex i : word) out += "s" + std::to_string(i);
  return out;
}

std::vector<int> WeylElement::apply(const std::vector<int>& coords) const {
  if (coords.size() != rank_) throw DomainError("coordinate vector size");
  std::vector<int> out(rank_, 0);
  for (std::size_t r = 0; r < rank_; ++r) {
    int s = 0;
    for (std::size_t c = 0; c < rank_; ++c) s += matrix_[r * rank_ + c] * coords[c];
    out[r] = s;
  }
  return out;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  return multiply(a, b);
}

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.rank_ != b.rank_) return false;
  if (a.data_ != b.data_ && !(a.data_->cartan == b.data_->cartan)) {
    return false;
  }
  return a.matrix_ == b.matrix_;
}

std::size_t WeylElement::hash() const noexcept {
  std::size_t seed = matrix_.size();
  for (int x : matrix_) {
    seed ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) +
            (seed >> 2);
  }
  return seed;
}

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  if (a.data_ != b.data_ && !(a.data_->cartan == b.data_->cartan)) {
    throw DomainError("cannot multiply elements of different Weyl groups");
  }
  return WeylElement(a.data_, mat_mul(a.matrix_, b.matrix_, a.rank_));
}

std::vector<WeylElement> enumerate(const WeylGroupSpec& spec) {
  const std::size_t bound = spec.element_bound();
  std::vector<WeylElement> elements;
  std::unordered_set<WeylElement, WeylElementHash> seen;
  auto start = WeylElement::identity(spec);
  seen.insert(start);
  elements.push_back(start);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t i = 0; i < spec.rank(); ++i) {
      if (elements[head].has_right_descent(i)) continue;
      auto next = elements[head] * WeylElement::simple_reflection(spec, i);
      if (!seen.insert(next).second) continue;
      if (elements.size() >= bound) {
        throw ResourceError("Weyl group has more than " +
                                std::to_string(bound) +
                                " elements (element bound " +
                                std::to_string(bound) + ")",
                            bound);
      }
      elements.push_back(std::move(next));
    }
  }
  return elements;
}

std::uint64_t group_order(const WeylGroupSpec& spec) {
  return enumerate(spec).size();
}

}  // namespace knop
