#include "ocs/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "ocs/error.hpp"

namespace ocs {

bool is_bijection(const std::vector<std::size_t>& images) noexcept {
  std::vector<bool> hit(images.size() + 1, false);
  for (auto v : images) {
    if (v < 1 || v > images.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) {
    throw Error(ErrorCode::NotABijection, "[" + to_string() + "] is not a permutation of 1.." +
                                              std::to_string(images_.size()));
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{1});
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i + 1) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out;
}

Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.size() != second.size()) {
    throw Error(ErrorCode::SizeMismatch, "cannot compose permutations of sizes " +
                                             std::to_string(first.size()) + " and " +
                                             std::to_string(second.size()));
  }
  // out[i] = (q applied, then p)[i] = after_q[p(i)] = s[q(p(i))]
  std::vector<std::size_t> v(first.size());
  for (std::size_t i = 1; i <= first.size(); ++i) v[i - 1] = second(first(i));
  return Permutation(std::move(v));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{1});
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace ocs
