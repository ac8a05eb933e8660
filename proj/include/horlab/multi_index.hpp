#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "horlab/rational.hpp"

namespace horlab {

/// Exponent vector, one nonnegative entry per variable.
class MultiIndex {
 public:
  using value_type = std::uint32_t;
  using storage = boost::container::small_vector<value_type, 8>;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t size) : exps_(size, 0) {}
  MultiIndex(std::initializer_list<value_type> exps) : exps_(exps) {}
  explicit MultiIndex(const std::vector<value_type>& exps)
      : exps_(exps.begin(), exps.end()) {}

  static MultiIndex unit(std::size_t size, std::size_t var) {
    MultiIndex m(size);
    m.exps_[var] = 1;
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  value_type operator[](std::size_t i) const { return exps_[i]; }
  value_type& operator[](std::size_t i) { return exps_[i]; }
  auto begin() const { return exps_.begin(); }
  auto end() const { return exps_.end(); }

  /// |α|
  std::uint64_t total() const;
  bool is_zero() const { return total() == 0; }

  /// Componentwise α ≤ β.
  bool dominated_by(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other ≤ *this.
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex scaled(value_type k) const;

  /// α! = α₁!⋯α_n!
  Integer factorial() const;

  /// Graded lexicographic comparison: total degree first, then the
  /// exponent of the lowest-indexed variable that differs. This is also
  /// the ≺ order on multi-indices used by the Faà di Bruno enumeration.
  std::strong_ordering grlex(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const = default;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  storage exps_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const { return m.hash(); }
};

/// All multi-indices of the given size with |α| == total, in ascending ≺ order.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t size, unsigned total);

/// All multi-indices with |α| <= max_total, ascending ≺ order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t size, unsigned max_total);

/// All α with α ≤ bound componentwise, ascending ≺ order.
std::vector<MultiIndex> multi_indices_below(const MultiIndex& bound);

/// Multinomial-style binomial  α choose β  = Π C(α_i, β_i).
Integer binomial(const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace horlab
