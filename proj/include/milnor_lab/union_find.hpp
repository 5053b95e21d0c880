#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace milnor {

// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
  }

  std::size_t set_count() const { return sets_; }

  // Dense labels 0..set_count()-1 in order of first appearance.
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> root_label(parent_.size(), parent_.size());
    std::vector<std::size_t> out(parent_.size());
    std::size_t next = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      const std::size_t root = find(v);
      if (root_label[root] == parent_.size()) root_label[root] = next++;
      out[v] = root_label[root];
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

}  // namespace milnor
