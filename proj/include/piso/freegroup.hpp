#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "piso/matrix.hpp"

namespace piso {

/// Reduced word in F_r. Letters are signed generator indices ±1..±r.
using Word = std::vector<int>;

/// Appends letter g to w, cancelling against a trailing g^{-1}.
Word multiply(const Word& w, int g);
Word multiply(const Word& a, const Word& b);
Word inverse(const Word& w);
bool is_reduced(const Word& w);

/// Sort key for letters: a1 < a1^-1 < a2 < a2^-1 < ...
int letter_rank(int letter);

/// Closed-form |B(n)| in F_r.
std::uint64_t ball_size(int r, int n);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// All reduced words of length <= n in F_r, ordered by length then
/// lexicographically under letter_rank, with right-multiplication adjacency.
class CayleyBall {
 public:
  static constexpr std::uint64_t kDefaultCap = 1'000'000;

  /// Throws PreconditionError if r < 1, n < 0 or the ball exceeds `cap` words.
  CayleyBall(int r, int n, std::uint64_t cap = kDefaultCap);

  int rank() const { return r_; }
  int radius() const { return n_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(std::size_t i) const { return words_[i]; }
  std::optional<std::size_t> index_of(const Word& w) const;

  /// Index of word(i) * g if it lies in the ball. g in ±1..±r.
  std::optional<std::size_t> neighbor(std::size_t i, int g) const;
  /// Slot layout for neighbor lists: letter_rank order, 2r entries per word.
  std::span<const std::int32_t> neighbors(std::size_t i) const;

  /// Text format: "r n count" then one word per line as signed integers
  /// (the identity is an empty line).
  void write(std::ostream& out) const;
  static CayleyBall read(std::istream& in, std::uint64_t cap = kDefaultCap);

 private:
  int r_;
  int n_;
  std::vector<Word> words_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::int32_t> adjacency_;  // size() * 2r, -1 when outside
};

/// (1/2r) times the 0/1 adjacency of the ball; edges leaving the ball dropped.
/// Dense, so limited to `cap` vertices.
ComplexMatrix mu1_truncated(const CayleyBall& ball, std::size_t cap = 2000);

/// r invertible d x d matrices G_1..G_r with their inverses.
class GeneratorFamily {
 public:
  /// Throws PreconditionError on empty input, mismatched shapes or a
  /// (numerically) singular generator.
  explicit GeneratorFamily(std::vector<ComplexMatrix> generators);

  int rank() const { return static_cast<int>(gens_.size()); }
  Eigen::Index dim() const { return gens_.front().rows(); }
  const ComplexMatrix& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  const ComplexMatrix& inverse(int i) const { return invs_[static_cast<std::size_t>(i)]; }
  /// sum_i (G_i + G_i^{-1})
  ComplexMatrix symmetric_sum() const;

 private:
  std::vector<ComplexMatrix> gens_;
  std::vector<ComplexMatrix> invs_;
};

/// (1/2r) sum_i (G_i + G_i^{-1})
ComplexMatrix mu1_of_representation(const GeneratorFamily& fam);

/// 2r I + i alpha sum_i (G_i + G_i^{-1})
ComplexMatrix phi_alpha(const GeneratorFamily& fam, double alpha);

/// D P with P a uniform random permutation matrix and D a diagonal of
/// independent uniform unimodular entries. Deterministic per seed.
ComplexMatrix random_lp_isometry(int d, std::uint64_t seed);

/// Family of r random ℓ^p isometries of dimension d from one seed.
GeneratorFamily random_isometry_family(int r, int d, std::uint64_t seed);

/// x -> (x, G_1^{-1} x, ..., x, G_r^{-1} x), a (2r d) x d matrix.
ComplexMatrix stacking_map(const GeneratorFamily& fam);
/// (y_1, ..., y_2r) -> y_1 + G_1 y_2 + ... + y_{2r-1} + G_r y_2r, d x (2r d).
ComplexMatrix costacking_map(const GeneratorFamily& fam);
/// Block diagonal with r copies of A(alpha) ⊗ I_d, acting on the stacked space.
ComplexMatrix block_a_alpha(const GeneratorFamily& fam, double alpha);

}  // namespace piso
