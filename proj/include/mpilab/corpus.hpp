#pragma once

#include "mpilab/axioms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace mpilab {

// Unit ids are the ids of the identity arrows.
struct GroupoidSpec {
  struct Arrow {
    int id = 0;
    int source = 0;
    int target = 0;
  };
  std::vector<int> units;
  std::vector<Arrow> arrows;
  std::map<std::pair<int, int>, int> compose;  // (g, h) -> gh, defined iff source(g) == target(h)
  std::map<int, int> inverse;

  // Throws std::invalid_argument naming the first violated axiom.
  void validate() const;
  int index_of(int id) const;
  int size() const { return static_cast<int>(arrows.size()); }
};

using GroupTable = std::vector<std::vector<int>>;  // table[g][h] = gh, element 0..k-1

Operator matrix_unit_example();
Operator group_mpu(const GroupTable& table);
Operator groupoid_mpi(const GroupoidSpec& g);
Operator conjugate_fixture(const Operator& w, const Mat& u, double tol = 1e-10);

void validate_group_table(const GroupTable& table);
GroupTable cyclic_group(int k);
// permutations of {0..k-1} in lexicographic order; element 0 is the identity
GroupTable symmetric_group(int k);
GroupoidSpec group_as_groupoid(const GroupTable& table);
GroupoidSpec pair_groupoid(int units);
GroupoidSpec disjoint_union(const GroupoidSpec& a, const GroupoidSpec& b);

Mat random_unitary(int n, std::mt19937_64& rng);
Mat permutation_unitary(const std::vector<int>& perm);

struct Fixture {
  std::string id;
  Operator w;
  std::optional<int> unit_count;  // groupoid fixtures only
  bool groupoid_family = false;  // groups and groupoids
};

// The built-in corpus, in a fixed order; every fixture has n <= 8.
std::vector<Fixture> standard_corpus();
// count unitary conjugations cycling over corpus members with n <= max_n.
std::vector<Fixture> conjugated_corpus(std::uint64_t seed, int count = 200, int max_n = 4);

}  // namespace mpilab
