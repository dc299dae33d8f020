#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nilpact {

// Dense 0-indexed multiplication table of a finite group, row = left factor.
// The interop format for exhaustive oracles working on arbitrary groups.
class GroupTable {
public:
    GroupTable() = default;
    GroupTable(int order, std::vector<std::uint16_t> table);

    static GroupTable from_function(int order,
                                    const std::function<int(int, int)>& mul);

    int order() const { return n_; }
    int mul(int x, int y) const { return table_[static_cast<std::size_t>(x) * n_ + y]; }
    int identity() const { return identity_; }
    int inverse(int x) const { return inverse_[x]; }
    int element_order(int x) const;
    int commutator(int x, int y) const;  // x^-1 y^-1 x y
    bool is_abelian() const;

    // Throws precondition_error when the table is not a group (associativity,
    // identity, inverses all checked on construction).
    void check_axioms() const;

private:
    int n_ = 0;
    std::vector<std::uint16_t> table_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

// Subgroup generated by `gens`, as a sorted list of element indices.
std::vector<int> generated_subgroup(const GroupTable& g, const std::vector<int>& gens);

// Standard small groups used by oracles and tests.
GroupTable cyclic_table(int n);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);
GroupTable dihedral_table(int n);   // order 2n
GroupTable quaternion8_table();
GroupTable symmetric4_table();
// Upper unitriangular 3x3 matrices over Z/p: the extraspecial group of order
// p^3 and exponent p for odd p (D4 for p = 2).
GroupTable unitriangular_table(int p);

}  // namespace nilpact
