#pragma once

// Symmetric-group combinatorics: one-line permutations, inversion length,
// finishing (descent) sets, the staircase normal form w = w_1 w_2 ... w_{n-1}
// with w_i a descending run s_i s_{i-1} ... s_j, and the rho/pi translation
// between permutations and positive braid words.
//
// Convention: permutations act on {1..n} and compose as functions,
// (a*b)(x) = a(b(x)).  A braid word stores generator indices in {1..n-1};
// the word [l1, l2, ...] multiplies left-to-right, s_{l1} s_{l2} ...

#include <string>
#include <vector>

#include "qsphere/common.hpp"

namespace qsphere {

class Permutation {
 public:
  explicit Permutation(u32 n);  // identity
  explicit Permutation(std::vector<u32> images);
  static Permutation transposition(u32 n, u32 i);  // s_i = (i, i+1)

  u32 n() const { return static_cast<u32>(img_.size()); }
  u32 operator()(u32 x) const { return img_[x - 1]; }  // 1-based
  const std::vector<u32>& images() const { return img_; }

  Permutation operator*(const Permutation& o) const;
  Permutation inverse() const;
  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  u32 length() const;    // inversion count
  bool is_identity() const;
  std::string to_text() const;  // one-line notation [w(1),...,w(n)]

 private:
  std::vector<u32> img_;
};

struct BraidWord {
  u32 n = 0;
  std::vector<u32> letters;  // generator indices in {1..n-1}
};

u32 length(const Permutation& w);
Permutation pi(const BraidWord& word);   // multiply the transpositions
bool is_reduced(const BraidWord& word);  // length(pi(word)) == |word|

// Descent set {i : w(i) > w(i+1)}, ascending.
std::vector<u32> finishing_set(const Permutation& w);

// Segments of the staircase normal form; segment i-1 lists the letters of
// w_i left-to-right (a run i, i-1, ..., j, possibly empty).
std::vector<std::vector<u32>> sn_normal_form(const Permutation& w);

// The fixed reduced word of w: the concatenated normal-form segments.
BraidWord rho(const Permutation& w);

// w and w' share a wall crossing: w' = w s_i.
bool coxeter_adjacent(const Permutation& w, const Permutation& w2, u32 i);

// All permutations of {1..n} in lexicographic one-line order.
std::vector<Permutation> all_permutations(u32 n);

}  // namespace qsphere
