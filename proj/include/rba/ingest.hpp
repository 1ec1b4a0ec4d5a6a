#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rba/rba.hpp"

namespace rba {

/// Multiplication table of a finite group on 0..m-1; entry (i,j) is the index
/// of g_i g_j. Element 0 is the identity.
struct CayleyTable {
  std::size_t order = 0;
  std::vector<std::vector<std::size_t>> table;
};

/// Format: `order m`, then m rows of m whitespace-separated indices.
CayleyTable parse_cayley(std::istream& in);
CayleyTable read_cayley_file(const std::string& path);

/// Group algebra RBA: lambda(i,j,k) = [g_i g_j = g_k], star = inversion.
/// Rejects non-Latin or non-associative tables, naming the failing entry.
Rba from_group(const CayleyTable& cayley);

/// 0/1 relation matrices R_0..R_{r-1} on v points.
struct SchemeRelations {
  std::size_t points = 0;
  std::vector<std::vector<std::vector<int>>> relations;
};

/// Format: `points v classes r`, then r blocks of v rows of v entries in {0,1}.
SchemeRelations parse_scheme(std::istream& in);
SchemeRelations read_scheme_file(const std::string& path);
void write_scheme(std::ostream& out, const SchemeRelations& s);

/// Adjacency algebra with intersection numbers as structure constants, star
/// the transpose permutation, standardized with valencies as degrees.
Rba from_scheme(const SchemeRelations& s);

/// Thin scheme of the regular action: R_g(x, y) = [y = x g].
SchemeRelations group_to_scheme(const CayleyTable& cayley);

}  // namespace rba
