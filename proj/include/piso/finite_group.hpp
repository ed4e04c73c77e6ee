#pragma once

#include <string>
#include <vector>

#include "piso/matrix.hpp"

namespace piso {

/// A finite group given by its multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  /// table[g][h] = index of g*h. Throws PreconditionError unless the table
  /// is a group with identity 0.
  FiniteGroup(std::string name, std::vector<std::vector<int>> table);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int multiply(int g, int h) const { return table_[g][h]; }
  int inverse(int g) const { return inverse_[g]; }

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

/// Z/n with element k the residue k.
FiniteGroup cyclic_group(int n);

/// S_n, elements listed in lexicographic order of their one-line notation
/// (index 0 is the identity). Composition (gh)(i) = g(h(i)).
FiniteGroup symmetric_group(int n);

/// One-line notation of element `index` of symmetric_group(n).
std::vector<int> symmetric_group_element(int n, int index);

/// Permutation matrices of S_n acting on C^n by e_i -> e_{g(i)}.
std::vector<ComplexMatrix> permutation_representation(int n);

}  // namespace piso
