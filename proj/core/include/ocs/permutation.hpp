#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ocs {

/// A bijection on {1..N}, stored 1-based.
///
/// Applied to a stack, output position i receives the card that was at input
/// position perm(i), positions counted from the top.
class Permutation {
 public:
  Permutation() = default;
  /// Throws NotABijection.
  explicit Permutation(std::vector<std::size_t> images);
  Permutation(std::initializer_list<std::size_t> images)
      : Permutation(std::vector<std::size_t>(images)) {}

  static Permutation identity(std::size_t n);
  static Permutation reversal(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  /// 1-based.
  std::size_t operator()(std::size_t i) const { return images_.at(i - 1); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  /// "1,2,3,4"
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// The permutation equal to applying `second` to a stack and then `first`:
/// apply(s, compose(p, q)) == apply(apply(s, q), p).
/// Throws SizeMismatch when sizes differ.
Permutation compose(const Permutation& first, const Permutation& second);

bool is_bijection(const std::vector<std::size_t>& images) noexcept;

/// Every permutation of {1..n} in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

}  // namespace ocs
