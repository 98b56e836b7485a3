#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "nvmap/nmap.hpp"

namespace nvmap {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelFile {
  CrystalGroup group;
  std::optional<NMapLift> map;
};

// Parses the JSON model format:
// {
//   "group": {
//     "dimension": k,
//     "lattice_basis": [[...], ...],          // k rows of k entries
//     "coset_reps": [{"A": [[...], ...], "a": [...]}, ...]
//   },
//   "map": {                                   // optional
//     "n": n,
//     "factors": [{"Phi": [[...], ...], "g": [...]}, ...]
//   }
// }
// Entries are integers or exact fraction strings "p/q"; floats are rejected.
// Throws ModelError with a line of context on malformed input.
ModelFile parse_model(const std::string& json_text);
ModelFile load_model(const std::string& path);

std::string model_to_json(const ModelFile& m);

// Bare JSON matrix (array of rows) with the same entry rules as the model
// format.  Rows must be nonempty and of equal length.
RatMat parse_matrix(const std::string& json_text);
RatMat load_matrix(const std::string& path);

}  // namespace nvmap
