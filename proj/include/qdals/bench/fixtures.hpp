#pragma once

// Bundled reference data, entered to the four decimals of the published
// values.
//
//   c2_1       2x2 Hermitian system and its right-hand side (b as printed,
//              not normalized; loading normalizes it)
//   s2_1       2x2 non-Hermitian sparse matrix for block-encoding checks
//   h1_c4_1    4x4 final Hamiltonian of a 4-dim system, for the separator
//   identity4  A = I on 4 dims with a uniform b; trivially solved

#include <filesystem>
#include <string>
#include <vector>

#include "qdals/bench/instance_io.hpp"

namespace qdals::bench {

enum class FixtureKind { Instance, Matrix };

struct FixtureInfo {
  std::string name;
  FixtureKind kind;
};

const std::vector<FixtureInfo>& fixture_list();
bool is_fixture(const std::string& name);

/// Throws OutOfRange for an unknown name or a matrix fixture.
qlsp::QlspInstance fixture_instance(const std::string& name);
/// Instance fixtures yield their A.
LabeledMatrix fixture_matrix(const std::string& name);

/// File contents as emitted by `fixtures`; instance fixtures keep the
/// printed (raw) right-hand side.
std::string fixture_json(const std::string& name);

/// Writes <name>.json for every fixture into `dir`; returns the paths.
std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir);

}  // namespace qdals::bench
