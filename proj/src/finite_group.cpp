#include "piso/finite_group.hpp"

#include <algorithm>
#include <numeric>

#include "piso/error.hpp"

namespace piso {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const int n = order();
  require(n >= 1, "group must be nonempty");
  for (const auto& row : table_) {
    require(static_cast<int>(row.size()) == n, "multiplication table must be square");
    for (int v : row) require(v >= 0 && v < n, "multiplication table entry out of range");
  }
  for (int g = 0; g < n; ++g)
    require(table_[0][g] == g && table_[g][0] == g, "element 0 must be the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(table_[table_[a][b]][c] == table_[a][table_[b][c]],
                "multiplication table is not associative");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (table_[g][h] == 0) inverse_[g] = h;
  for (int g = 0; g < n; ++g) require(inverse_[g] >= 0, "element has no inverse");
}

FiniteGroup cyclic_group(int n) {
  require(n >= 1, "cyclic group order must be positive");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return FiniteGroup("Z/" + std::to_string(n), std::move(table));
}

static std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

FiniteGroup symmetric_group(int n) {
  require(n >= 1 && n <= 5, "symmetric group supported for 1 <= n <= 5");
  const auto perms = all_permutations(n);
  const auto count = perms.size();
  std::vector<std::vector<int>> table(count, std::vector<int>(count));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      std::vector<int> composed(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<int>(
          std::find(perms.begin(), perms.end(), composed) - perms.begin());
    }
  }
  return FiniteGroup("S" + std::to_string(n), std::move(table));
}

std::vector<int> symmetric_group_element(int n, int index) {
  const auto perms = all_permutations(n);
  require(index >= 0 && index < static_cast<int>(perms.size()), "element index out of range");
  return perms[static_cast<std::size_t>(index)];
}

std::vector<ComplexMatrix> permutation_representation(int n) {
  std::vector<ComplexMatrix> out;
  for (const auto& perm : all_permutations(n)) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(perm[i], i) = 1.0;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace piso
