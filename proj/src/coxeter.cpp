#include "qsphere/coxeter.hpp"

#include <algorithm>
#include <numeric>

namespace qsphere {

Permutation::Permutation(u32 n) : img_(n) { std::iota(img_.begin(), img_.end(), 1u); }

Permutation::Permutation(std::vector<u32> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (const u32 v : img_) {
    if (v < 1 || v > img_.size() || seen[v - 1]) throw ParamError("not a permutation");
    seen[v - 1] = true;
  }
}

Permutation Permutation::transposition(u32 n, u32 i) {
  if (i < 1 || i >= n) throw ParamError("transposition index out of range");
  Permutation w(n);
  std::swap(w.img_[i - 1], w.img_[i]);
  return w;
}

Permutation Permutation::operator*(const Permutation& o) const {
  if (n() != o.n()) throw ParamError("permutation size mismatch");
  Permutation r(n());
  for (u32 x = 1; x <= n(); ++x) r.img_[x - 1] = img_[o.img_[x - 1] - 1];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r(n());
  for (u32 x = 1; x <= n(); ++x) r.img_[img_[x - 1] - 1] = x;
  return r;
}

u32 Permutation::length() const {
  u32 inv = 0;
  for (u32 i = 0; i < img_.size(); ++i)
    for (u32 j = i + 1; j < img_.size(); ++j) inv += img_[i] > img_[j];
  return inv;
}

bool Permutation::is_identity() const {
  for (u32 x = 1; x <= n(); ++x)
    if (img_[x - 1] != x) return false;
  return true;
}

std::string Permutation::to_text() const {
  std::string out = "[";
  for (u32 i = 0; i < img_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(img_[i]);
  }
  return out + "]";
}

u32 length(const Permutation& w) { return w.length(); }

Permutation pi(const BraidWord& word) {
  Permutation w(word.n);
  for (const u32 l : word.letters) w = w * Permutation::transposition(word.n, l);
  return w;
}

bool is_reduced(const BraidWord& word) { return pi(word).length() == word.letters.size(); }

std::vector<u32> finishing_set(const Permutation& w) {
  std::vector<u32> out;
  for (u32 i = 1; i < w.n(); ++i)
    if (w(i) > w(i + 1)) out.push_back(i);
  return out;
}

std::vector<std::vector<u32>> sn_normal_form(const Permutation& w) {
  const u32 n = w.n();
  std::vector<std::vector<u32>> segments(n == 0 ? 0 : n - 1);
  if (n <= 1) return segments;
  Permutation u = w;
  for (u32 i = n - 1; i >= 1; --i) {
    // Peel off the segment moving position j to the top value i+1.
    const u32 j = u.inverse()(i + 1);
    for (u32 t = i; t >= j; --t) segments[i - 1].push_back(t);
    for (u32 t = j; t <= i; ++t) u = u * Permutation::transposition(n, t);
  }
  if (!u.is_identity()) throw CheckError("normal form peeling failed");
  return segments;
}

BraidWord rho(const Permutation& w) {
  BraidWord word;
  word.n = w.n();
  for (const auto& seg : sn_normal_form(w))
    word.letters.insert(word.letters.end(), seg.begin(), seg.end());
  return word;
}

bool coxeter_adjacent(const Permutation& w, const Permutation& w2, u32 i) {
  return w2 == w * Permutation::transposition(w.n(), i);
}

std::vector<Permutation> all_permutations(u32 n) {
  std::vector<u32> img(n);
  std::iota(img.begin(), img.end(), 1u);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace qsphere
