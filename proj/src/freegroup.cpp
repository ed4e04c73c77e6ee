#include "piso/freegroup.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "piso/error.hpp"
#include "piso/random.hpp"

namespace piso {

Word multiply(const Word& w, int g) {
  Word out = w;
  if (!out.empty() && out.back() == -g)
    out.pop_back();
  else
    out.push_back(g);
  return out;
}

Word multiply(const Word& a, const Word& b) {
  Word out = a;
  for (int g : b) {
    if (!out.empty() && out.back() == -g)
      out.pop_back();
    else
      out.push_back(g);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& g : out) g = -g;
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) return false;
    if (i + 1 < w.size() && w[i + 1] == -w[i]) return false;
  }
  return true;
}

int letter_rank(int letter) {
  return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
}

static int letter_of_rank(int rank) {
  return rank % 2 == 0 ? rank / 2 + 1 : -(rank / 2 + 1);
}

std::uint64_t ball_size(int r, int n) {
  require(r >= 1 && n >= 0, "ball needs r >= 1 and n >= 0");
  if (r == 1) return 2ULL * static_cast<std::uint64_t>(n) + 1;
  // 1 + 2r ((2r-1)^n - 1) / (2r - 2), accumulated as a geometric sum
  std::uint64_t total = 1;
  std::uint64_t sphere = 2ULL * static_cast<std::uint64_t>(r);
  for (int k = 1; k <= n; ++k) {
    total += sphere;
    sphere *= 2ULL * static_cast<std::uint64_t>(r) - 1;
  }
  return total;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int g : w) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(g));
    h *= 0x100000001b3ULL;
  }
  return h ^ w.size();
}

CayleyBall::CayleyBall(int r, int n, std::uint64_t cap) : r_(r), n_(n) {
  require(r >= 1 && n >= 0, "ball needs r >= 1 and n >= 0");
  // Guard against overflow before calling ball_size for huge n.
  require(n <= 64 || r == 1, "ball radius too large");
  const std::uint64_t count = ball_size(r, n);
  require(count <= cap, "ball of " + std::to_string(count) + " words exceeds cap " +
                            std::to_string(cap));

  words_.reserve(count);
  words_.emplace_back();
  std::size_t begin = 0;
  for (int len = 1; len <= n; ++len) {
    const std::size_t end = words_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int rank = 0; rank < 2 * r; ++rank) {
        const int g = letter_of_rank(rank);
        const Word& parent = words_[i];
        if (!parent.empty() && parent.back() == -g) continue;
        Word child = parent;
        child.push_back(g);
        words_.push_back(std::move(child));
      }
    }
    begin = end;
  }

  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);

  const auto slots = static_cast<std::size_t>(2 * r);
  adjacency_.assign(words_.size() * slots, -1);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (int rank = 0; rank < 2 * r; ++rank) {
      const auto it = index_.find(multiply(words_[i], letter_of_rank(rank)));
      if (it != index_.end())
        adjacency_[i * slots + static_cast<std::size_t>(rank)] =
            static_cast<std::int32_t>(it->second);
    }
  }
}

std::optional<std::size_t> CayleyBall::index_of(const Word& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CayleyBall::neighbor(std::size_t i, int g) const {
  require(g != 0 && std::abs(g) <= r_, "generator index out of range");
  const std::int32_t j = neighbors(i)[static_cast<std::size_t>(letter_rank(g))];
  if (j < 0) return std::nullopt;
  return static_cast<std::size_t>(j);
}

std::span<const std::int32_t> CayleyBall::neighbors(std::size_t i) const {
  const auto slots = static_cast<std::size_t>(2 * r_);
  return {adjacency_.data() + i * slots, slots};
}

void CayleyBall::write(std::ostream& out) const {
  out << r_ << ' ' << n_ << ' ' << words_.size() << '\n';
  for (const Word& w : words_) {
    for (std::size_t k = 0; k < w.size(); ++k) out << (k ? " " : "") << w[k];
    out << '\n';
  }
}

CayleyBall CayleyBall::read(std::istream& in, std::uint64_t cap) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "missing ball header");
  std::istringstream header(line);
  int r = 0;
  int n = 0;
  std::size_t count = 0;
  require(static_cast<bool>(header >> r >> n >> count), "malformed ball header");
  CayleyBall ball(r, n, cap);
  require(count == ball.size(), "ball header count does not match r and n");
  for (std::size_t i = 0; i < count; ++i) {
    require(static_cast<bool>(std::getline(in, line)), "ball file truncated");
    std::istringstream row(line);
    Word w;
    int g = 0;
    while (row >> g) w.push_back(g);
    require(w == ball.word(i), "ball file word " + std::to_string(i) + " out of order");
  }
  return ball;
}

ComplexMatrix mu1_truncated(const CayleyBall& ball, std::size_t cap) {
  require(ball.size() <= cap, "ball too large for a dense matrix");
  const auto n = static_cast<Eigen::Index>(ball.size());
  const double w = 1.0 / (2.0 * ball.rank());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::int32_t j : ball.neighbors(i))
      if (j >= 0) m(static_cast<Eigen::Index>(i), j) = w;
  return m;
}

GeneratorFamily::GeneratorFamily(std::vector<ComplexMatrix> generators)
    : gens_(std::move(generators)) {
  require(!gens_.empty(), "generator family must be nonempty");
  const Eigen::Index d = gens_.front().rows();
  require(d > 0, "generators must be nonempty matrices");
  for (const auto& g : gens_) {
    require(g.rows() == d && g.cols() == d, "generators must be square of equal size");
    require(g.allFinite(), "generator has non-finite entries");
    Eigen::JacobiSVD<ComplexMatrix> svd(g);
    const auto& s = svd.singularValues();
    require(s[d - 1] > 1e-12 * s[0], "generator is singular");
    ComplexMatrix inv = g.fullPivLu().inverse();
    const double residual =
        (g * inv - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    require(residual <= 1e-9, "generator inverse is inaccurate");
    invs_.push_back(std::move(inv));
  }
}

ComplexMatrix GeneratorFamily::symmetric_sum() const {
  ComplexMatrix s = ComplexMatrix::Zero(dim(), dim());
  for (std::size_t i = 0; i < gens_.size(); ++i) s += gens_[i] + invs_[i];
  return s;
}

ComplexMatrix mu1_of_representation(const GeneratorFamily& fam) {
  return fam.symmetric_sum() / (2.0 * fam.rank());
}

ComplexMatrix phi_alpha(const GeneratorFamily& fam, double alpha) {
  require(std::isfinite(alpha), "alpha must be finite");
  const Eigen::Index d = fam.dim();
  return (2.0 * fam.rank()) * ComplexMatrix::Identity(d, d) + (kI * alpha) * fam.symmetric_sum();
}

ComplexMatrix random_lp_isometry(int d, std::uint64_t seed) {
  require(d >= 1, "dimension must be positive");
  Rng rng(seed);
  const std::vector<int> perm = rng.permutation(d);
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(perm[static_cast<std::size_t>(j)], j) = rng.unimodular();
  return m;
}

GeneratorFamily random_isometry_family(int r, int d, std::uint64_t seed) {
  require(r >= 1, "need at least one generator");
  std::vector<ComplexMatrix> gens;
  for (int i = 0; i < r; ++i)
    gens.push_back(random_lp_isometry(d, derive_seed(seed, static_cast<std::uint64_t>(i))));
  return GeneratorFamily(std::move(gens));
}

ComplexMatrix stacking_map(const GeneratorFamily& fam) {
  const Eigen::Index d = fam.dim();
  const int r = fam.rank();
  ComplexMatrix y = ComplexMatrix::Zero(2 * r * d, d);
  for (int i = 0; i < r; ++i) {
    y.block(2 * i * d, 0, d, d).setIdentity();
    y.block((2 * i + 1) * d, 0, d, d) = fam.inverse(i);
  }
  return y;
}

ComplexMatrix costacking_map(const GeneratorFamily& fam) {
  const Eigen::Index d = fam.dim();
  const int r = fam.rank();
  ComplexMatrix x = ComplexMatrix::Zero(d, 2 * r * d);
  for (int i = 0; i < r; ++i) {
    x.block(0, 2 * i * d, d, d).setIdentity();
    x.block(0, (2 * i + 1) * d, d, d) = fam.generator(i);
  }
  return x;
}

ComplexMatrix block_a_alpha(const GeneratorFamily& fam, double alpha) {
  const Eigen::Index d = fam.dim();
  const int r = fam.rank();
  ComplexMatrix a(2 * d, 2 * d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  a << id, (kI * alpha) * id, (kI * alpha) * id, id;
  ComplexMatrix out = ComplexMatrix::Zero(2 * r * d, 2 * r * d);
  for (int i = 0; i < r; ++i) out.block(2 * i * d, 2 * i * d, 2 * d, 2 * d) = a;
  return out;
}

}  // namespace piso
