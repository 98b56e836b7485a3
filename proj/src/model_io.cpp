#include "nvmap/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nvmap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Rat entry_to_rat(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rat(Int(static_cast<unsigned long>(v.get<std::uint64_t>())));
    return Rat(Int(static_cast<long>(v.get<std::int64_t>())));
  }
  if (v.is_number_float())
    throw ModelError(where + ": floating point entry " + v.dump() +
                     " is not exact; use a fraction string such as \"1/2\"");
  if (v.is_string()) {
    std::optional<Rat> r = rat_parse(v.get<std::string>());
    if (!r)
      throw ModelError(where + ": \"" + v.get<std::string>() +
                       "\" is not an exact rational; write \"p\" or \"p/q\"");
    return *r;
  }
  throw ModelError(where + ": expected an integer or a fraction string, got " + v.dump());
}

RatMat mat_from_json(const json& v, std::size_t rows, std::size_t cols,
                     const std::string& where) {
  if (!v.is_array() || v.size() != rows)
    throw ModelError(where + ": expected " + std::to_string(rows) + " rows");
  RatMat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    if (!row.is_array() || row.size() != cols)
      throw ModelError(where + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = entry_to_rat(row[c],
                             where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

RatVec vec_from_json(const json& v, std::size_t size, const std::string& where) {
  if (!v.is_array() || v.size() != size)
    throw ModelError(where + ": expected a vector of " + std::to_string(size) + " entries");
  RatVec out(size);
  for (std::size_t r = 0; r < size; ++r)
    out[r] = entry_to_rat(v[r], where + "[" + std::to_string(r) + "]");
  return out;
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ModelError(where + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ModelError(where + ": missing field \"" + name + "\"");
  return *it;
}

ordered_json rat_to_json(const Rat& r) {
  if (rat_is_int(r)) {
    Int n = rat_num(r);
    if (n.fits_slong_p()) return ordered_json(n.get_si());
  }
  return ordered_json(rat_str(r));
}

ordered_json mat_to_json(const RatMat& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vec_to_json(const RatVec& v) {
  ordered_json out = ordered_json::array();
  for (const Rat& r : v) out.push_back(rat_to_json(r));
  return out;
}

}  // namespace

ModelFile parse_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("JSON parse error: ") + e.what());
  }

  const json& grp = field(doc, "group", "model");
  const json& dimj = field(grp, "dimension", "group");
  if (!dimj.is_number_unsigned() || dimj.get<std::uint64_t>() == 0 ||
      dimj.get<std::uint64_t>() > 64)
    throw ModelError("group.dimension: expected a positive integer (at most 64)");
  const std::size_t k = dimj.get<std::size_t>();

  ModelFile out;
  out.group.dim = k;

  RatMat basis = mat_from_json(field(grp, "lattice_basis", "group"), k, k,
                               "group.lattice_basis");
  std::optional<IntMat> ibasis = to_int(basis);
  if (!ibasis)
    throw ModelError("group.lattice_basis: entries must be integers; rescale the model "
                     "so the lattice is integral");
  out.group.lattice = IntLattice::from_generators(k, *ibasis);

  const json& reps = field(grp, "coset_reps", "group");
  if (!reps.is_array() || reps.empty())
    throw ModelError("group.coset_reps: expected a nonempty array");
  for (std::size_t c = 0; c < reps.size(); ++c) {
    std::string where = "group.coset_reps[" + std::to_string(c) + "]";
    AffineElement e;
    e.linear = mat_from_json(field(reps[c], "A", where), k, k, where + ".A");
    e.translation = vec_from_json(field(reps[c], "a", where), k, where + ".a");
    out.group.cosets.push_back(std::move(e));
  }

  if (doc.contains("map")) {
    const json& mp = doc["map"];
    const json& nj = field(mp, "n", "map");
    if (!nj.is_number_unsigned() || nj.get<std::uint64_t>() == 0)
      throw ModelError("map.n: expected a positive integer");
    NMapLift lift;
    lift.n = nj.get<std::size_t>();
    const json& factors = field(mp, "factors", "map");
    if (!factors.is_array() || factors.size() != lift.n)
      throw ModelError("map.factors: expected exactly " + std::to_string(lift.n) + " factors");
    for (std::size_t i = 0; i < lift.n; ++i) {
      std::string where = "map.factors[" + std::to_string(i) + "]";
      MapFactor f;
      f.phi = mat_from_json(field(factors[i], "Phi", where), k, k, where + ".Phi");
      f.g = vec_from_json(field(factors[i], "g", where), k, where + ".g");
      lift.factors.push_back(std::move(f));
    }
    out.map = std::move(lift);
  }
  return out;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

RatMat parse_matrix(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_array() || doc.empty() || !doc[0].is_array() || doc[0].empty())
    throw ModelError("matrix: expected a nonempty array of nonempty rows");
  return mat_from_json(doc, doc.size(), doc[0].size(), "matrix");
}

RatMat load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string model_to_json(const ModelFile& m) {
  ordered_json doc;
  ordered_json grp;
  grp["dimension"] = m.group.dim;
  grp["lattice_basis"] = mat_to_json(to_rat(m.group.lattice.basis()));
  ordered_json reps = ordered_json::array();
  for (const AffineElement& e : m.group.cosets) {
    ordered_json rep;
    rep["A"] = mat_to_json(e.linear);
    rep["a"] = vec_to_json(e.translation);
    reps.push_back(std::move(rep));
  }
  grp["coset_reps"] = std::move(reps);
  doc["group"] = std::move(grp);
  if (m.map) {
    ordered_json mp;
    mp["n"] = m.map->n;
    ordered_json factors = ordered_json::array();
    for (const MapFactor& f : m.map->factors) {
      ordered_json fj;
      fj["Phi"] = mat_to_json(f.phi);
      fj["g"] = vec_to_json(f.g);
      factors.push_back(std::move(fj));
    }
    mp["factors"] = std::move(factors);
    doc["map"] = std::move(mp);
  }
  return doc.dump(2) + "\n";
}

}  // namespace nvmap
