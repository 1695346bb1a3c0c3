#ifndef WEDGEKIT_ATLAS_HPP
#define WEDGEKIT_ATLAS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedgekit/euler.hpp"

namespace wedgekit {

/// Classification summary for one algebra: orbit count, per-orbit grading
/// dimensions and symmetry verdicts, and the hermitian/tube flags.
struct AtlasEntry {
  std::string family;
  int a = 0;
  int b = -1;
  std::string algebra;
  int orbit_count = 0;
  std::vector<std::array<int, 3>> dims;
  std::vector<bool> symmetric;
  bool hermitian = false;
  bool tube_type = false;
};

inline AtlasEntry compute_atlas_entry(const std::string& family, int a, int b = -1,
                                      std::uint64_t seed = 0x5eedULL) {
  AtlasEntry entry;
  entry.family = family;
  entry.a = a;
  entry.b = b;
  auto alg = make_algebra(family, a, b);
  entry.algebra = alg->name();
  if (family == "so" && a == b)
    throw UnsupportedError("so(n,n) orbit enumeration is deferred");
  const auto orbits = classify_euler_orbits(alg, seed);
  entry.orbit_count = static_cast<int>(orbits.size());
  for (const auto& orbit : orbits) {
    entry.dims.push_back(orbit.grading.dims);
    entry.symmetric.push_back(orbit.symmetry.symmetric());
  }
  try {
    const auto report = is_tube_type_hermitian(alg, seed);
    entry.hermitian = report.hermitian;
    entry.tube_type = report.tube_type;
  } catch (const UnsupportedError&) {
    entry.hermitian = false;
    entry.tube_type = false;
  }
  return entry;
}

inline nlohmann::json atlas_entry_to_json(const AtlasEntry& e) {
  nlohmann::json j;
  j["family"] = e.family;
  j["a"] = e.a;
  if (e.b >= 0) j["b"] = e.b;
  j["algebra"] = e.algebra;
  j["orbits"] = e.orbit_count;
  auto& dims = j["dims"] = nlohmann::json::array();
  for (const auto& d : e.dims) dims.push_back({d[0], d[1], d[2]});
  j["symmetric"] = e.symmetric;
  j["hermitian"] = e.hermitian;
  j["tube_type"] = e.tube_type;
  return j;
}

/// Expected classification values, embedded as a versioned table so drift is
/// auditable by string comparison of the canonical serialization.
inline const char* expected_atlas_json() {
  return R"json({
  "formatVersion": 1,
  "entries": [
    {"a":2,"algebra":"sl2","dims":[[1,1,1]],"family":"sl","hermitian":true,"orbits":1,"symmetric":[true],"tube_type":true},
    {"a":3,"algebra":"sl3","dims":[[2,4,2],[2,4,2]],"family":"sl","hermitian":false,"orbits":2,"symmetric":[false,false],"tube_type":false},
    {"a":4,"algebra":"sl4","dims":[[3,9,3],[4,7,4],[3,9,3]],"family":"sl","hermitian":false,"orbits":3,"symmetric":[false,true,false],"tube_type":false},
    {"a":5,"algebra":"sl5","dims":[[4,16,4],[6,12,6],[6,12,6],[4,16,4]],"family":"sl","hermitian":false,"orbits":4,"symmetric":[false,false,false,false],"tube_type":false},
    {"a":6,"algebra":"sl6","dims":[[5,25,5],[8,19,8],[9,17,9],[8,19,8],[5,25,5]],"family":"sl","hermitian":false,"orbits":5,"symmetric":[false,false,true,false,false],"tube_type":false},
    {"a":1,"algebra":"so(1,2)","b":2,"dims":[[1,1,1]],"family":"so","hermitian":true,"orbits":1,"symmetric":[true],"tube_type":true},
    {"a":1,"algebra":"so(1,3)","b":3,"dims":[[2,2,2]],"family":"so","hermitian":false,"orbits":1,"symmetric":[true],"tube_type":false},
    {"a":1,"algebra":"so(1,4)","b":4,"dims":[[3,4,3]],"family":"so","hermitian":false,"orbits":1,"symmetric":[true],"tube_type":false},
    {"a":2,"algebra":"so(2,3)","b":3,"dims":[[3,4,3]],"family":"so","hermitian":true,"orbits":1,"symmetric":[true],"tube_type":true},
    {"a":2,"algebra":"so(2,4)","b":4,"dims":[[4,7,4]],"family":"so","hermitian":true,"orbits":1,"symmetric":[true],"tube_type":true},
    {"a":2,"algebra":"sp4","dims":[[3,4,3]],"family":"sp","hermitian":true,"orbits":1,"symmetric":[true],"tube_type":true}
  ]
})json";
}

inline std::vector<AtlasEntry> compute_atlas(std::uint64_t seed = 0x5eedULL) {
  std::vector<AtlasEntry> entries;
  for (int n = 2; n <= 6; ++n) entries.push_back(compute_atlas_entry("sl", n, -1, seed));
  for (int d = 2; d <= 4; ++d) entries.push_back(compute_atlas_entry("so", 1, d, seed));
  entries.push_back(compute_atlas_entry("so", 2, 3, seed));
  entries.push_back(compute_atlas_entry("so", 2, 4, seed));
  entries.push_back(compute_atlas_entry("sp", 2, -1, seed));
  return entries;
}

/// Computed atlas vs the embedded table, compared on the canonical
/// serialization of each entry.
struct AtlasComparison {
  bool match = false;
  std::string first_mismatch;
};

inline AtlasComparison compare_with_expected(const std::vector<AtlasEntry>& entries) {
  AtlasComparison cmp;
  const auto expected = nlohmann::json::parse(expected_atlas_json());
  const auto& exp_entries = expected.at("entries");
  if (exp_entries.size() != entries.size()) {
    cmp.first_mismatch = "entry count differs";
    return cmp;
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const auto computed = atlas_entry_to_json(entries[i]);
    if (computed.dump() != exp_entries[i].dump()) {
      cmp.first_mismatch = entries[i].algebra + ": " + computed.dump();
      return cmp;
    }
  }
  cmp.match = true;
  return cmp;
}

}  // namespace wedgekit

#endif
