#pragma once

#include <string>
#include <vector>

#include "hopflat/algebra.hpp"

namespace hopflat {

/// Finite group given by its Cayley table; element 0 must be the identity.
struct GroupTable {
    std::vector<std::vector<int>> cayley;
    std::vector<int> inverse;
    std::vector<std::string> labels;

    int order() const noexcept { return static_cast<int>(cayley.size()); }
};

/// Checks closure, associativity, identity at index 0 and inverses; throws Error(NotAGroup).
void validate_group(const GroupTable& group);

/// Derives the inverse table from a Cayley table (throws NotAGroup if some element has none).
std::vector<int> inverse_table(const std::vector<std::vector<int>>& cayley);

GroupTable cyclic_group(int order);
/// Permutations of {0,1,2} in lexicographic order, composed as (p*q)(i) = p(q(i)).
GroupTable symmetric_group_s3();

/// Group algebra C[G]: group-like basis, S(g) = g^-1, g* = g^-1.
HopfData group_algebra(const GroupTable& group, std::string label = {});
/// Function algebra C(G) on delta functions, pointwise product, star fixing each delta.
HopfData function_algebra(const GroupTable& group, std::string label = {});

/// One of z2-group, z3-group, z4-group, s3-group, z2-fun, s3-fun; throws UnknownFixture.
AlgebraHandle builtin_algebra(const std::string& name);
const std::vector<std::string>& builtin_algebra_names();

}  // namespace hopflat
