#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nvmap/model_io.hpp"
#include "nvmap/nielsen.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nvmap;

constexpr int kOk = 0;
constexpr int kFail = 1;  // validation or assertion failure
constexpr int kUsage = 2; // bad invocation or unreadable input

ordered_json int_json(const Int& n) {
  if (n.fits_slong_p()) return ordered_json(n.get_si());
  return ordered_json(n.get_str());
}

ordered_json rat_json(const Rat& r) {
  if (rat_is_int(r)) return int_json(rat_num(r));
  return ordered_json(rat_str(r));
}

ordered_json count_json(const ExtendedCount& c) {
  if (c.infinite) return ordered_json("inf");
  return int_json(c.value);
}

ordered_json vec_json(const RatVec& v) {
  ordered_json out = ordered_json::array();
  for (const Rat& r : v) out.push_back(rat_json(r));
  return out;
}

ordered_json ivec_json(const IntVec& v) {
  ordered_json out = ordered_json::array();
  for (const Int& n : v) out.push_back(int_json(n));
  return out;
}

ordered_json issues_json(const std::vector<GroupIssue>& issues) {
  ordered_json out = ordered_json::array();
  for (const GroupIssue& is : issues) {
    ordered_json one;
    one["code"] = is.code;
    one["detail"] = is.detail;
    out.push_back(std::move(one));
  }
  return out;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

// "--sublattice M": a positive integer M means M * Z^k in lattice
// coordinates; anything else is read as a matrix file whose columns generate.
IntLattice parse_sublattice(const std::string& arg, std::size_t k) {
  if (!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos) {
    Int scale(arg);
    if (scale == 0) throw ModelError("--sublattice: scale must be positive");
    return IntLattice::scaled(k, scale);
  }
  RatMat m = load_matrix(arg);
  if (m.rows() != k || m.cols() != k)
    throw ModelError(arg + ": expected a " + std::to_string(k) + "x" + std::to_string(k) +
                     " sublattice matrix");
  std::optional<IntMat> im = to_int(m);
  if (!im) throw ModelError(arg + ": sublattice entries must be integers");
  IntLattice sub = IntLattice::from_generators(k, *im);
  if (sub.rank() != k) throw ModelError(arg + ": sublattice matrix is singular");
  return sub;
}

IntLattice lattice_from_file(const std::string& path, const std::string& flag) {
  RatMat m = load_matrix(path);
  std::optional<IntMat> im = to_int(m);
  if (!im) throw ModelError(path + ": " + flag + " entries must be integers");
  return IntLattice::from_generators(m.rows(), *im);
}

// Group (and, when required, map) validation; on failure prints the report
// and returns false.
bool load_checked(const std::string& path, bool need_map, ModelFile& model,
                  std::optional<InducedMorphism>& induced) {
  model = load_model(path);
  ValidationReport vr = validate_group(model.group);
  if (!vr.ok) {
    ordered_json doc;
    doc["group_valid"] = false;
    doc["group_issues"] = issues_json(vr.issues);
    emit(doc);
    std::cerr << "error: group validation failed\n";
    return false;
  }
  if (need_map) {
    if (!model.map) throw ModelError(path + ": missing \"map\" section");
    MapValidation mv = validate_map(model.group, *model.map);
    if (!mv.ok) {
      ordered_json doc;
      doc["group_valid"] = true;
      doc["map_valid"] = false;
      doc["map_issues"] = issues_json(mv.issues);
      emit(doc);
      std::cerr << "error: map validation failed\n";
      return false;
    }
    induced = std::move(mv.induced);
  }
  return true;
}

ordered_json averaging_json(const NielsenReport& rep) {
  ordered_json doc;
  doc["value"] = int_json(rep.value);
  doc["quotient_size"] = rep.quotient_size;
  ordered_json table = ordered_json::array();
  for (const std::vector<Rat>& row : rep.det_table) {
    ordered_json r = ordered_json::array();
    for (const Rat& d : row) r.push_back(rat_json(d));
    table.push_back(std::move(r));
  }
  doc["det_table"] = std::move(table);
  return doc;
}

ordered_json classes_json(const NielsenReport& rep) {
  ordered_json doc;
  doc["value"] = int_json(rep.value);
  ordered_json counts = ordered_json::array();
  for (const ExtendedCount& c : rep.class_counts) counts.push_back(count_json(c));
  doc["class_counts"] = std::move(counts);
  return doc;
}

int run_validate(const std::string& file) {
  ModelFile model = load_model(file);
  ordered_json doc;
  ValidationReport vr = validate_group(model.group);
  doc["group_valid"] = vr.ok;
  doc["group_issues"] = issues_json(vr.issues);
  bool all_ok = vr.ok;
  if (model.map) {
    if (vr.ok) {
      MapValidation mv = validate_map(model.group, *model.map);
      doc["map_valid"] = mv.ok;
      doc["map_issues"] = issues_json(mv.issues);
      all_ok = all_ok && mv.ok;
    } else {
      doc["map_valid"] = false;
      doc["map_issues"] = ordered_json::array(
          {{{"code", "group_invalid"}, {"detail", "group validation failed; map not checked"}}});
      all_ok = false;
    }
  }
  emit(doc);
  return all_ok ? kOk : kFail;
}

int run_nielsen(const std::string& file, const std::string& method, const std::string& sub_arg) {
  ModelFile model;
  std::optional<InducedMorphism> ind;
  if (!load_checked(file, true, model, ind)) return kFail;
  const CrystalGroup& g = model.group;
  const NMapLift& m = *model.map;

  ordered_json doc;
  if (method == "averaging") {
    NielsenReport rep = nielsen_averaging(g, m, parse_sublattice(sub_arg, g.dim));
    doc["nielsen"] = int_json(rep.value);
    doc["method"] = "averaging";
    doc["quotient_size"] = rep.quotient_size;
    doc["det_table"] = averaging_json(rep)["det_table"];
    emit(doc);
    return kOk;
  }
  if (method == "classes") {
    NielsenReport rep = nielsen_via_classes(g, m, *ind);
    doc["nielsen"] = int_json(rep.value);
    doc["method"] = "classes";
    doc["class_counts"] = classes_json(rep)["class_counts"];
    emit(doc);
    return kOk;
  }
  NielsenReport avg = nielsen_averaging(g, m, parse_sublattice(sub_arg, g.dim));
  NielsenReport cls = nielsen_via_classes(g, m, *ind);
  bool agree = avg.value == cls.value;
  doc["nielsen"] = int_json(avg.value);
  doc["agreement"] = agree;
  doc["method"] = "both";
  doc["averaging"] = averaging_json(avg);
  doc["classes"] = classes_json(cls);
  emit(doc);
  if (!agree) {
    std::cerr << "error: averaging and class routes disagree\n";
    return kFail;
  }
  return kOk;
}

int run_fixpoints(const std::string& file) {
  ModelFile model;
  std::optional<InducedMorphism> ind;
  if (!load_checked(file, true, model, ind)) return kFail;
  FixedPointReport fr = fixpoint_enumerate(model.group, *model.map);
  ordered_json doc;
  doc["manifold_fixed_points"] = fr.points.size();
  ordered_json pts = ordered_json::array();
  for (const RatVec& p : fr.points) pts.push_back(vec_json(p));
  doc["points"] = std::move(pts);
  ordered_json raw = ordered_json::array();
  for (const RawFixSolution& s : fr.raw) {
    ordered_json one;
    one["factor"] = s.factor + 1;
    one["coset"] = s.coset;
    one["t"] = ivec_json(s.t);
    one["x"] = vec_json(s.x);
    raw.push_back(std::move(one));
  }
  doc["raw_solutions"] = std::move(raw);
  ordered_json deg = ordered_json::array();
  for (const DegenerateBranch& d : fr.degenerate) {
    ordered_json one;
    one["factor"] = d.factor + 1;
    one["coset"] = d.coset;
    one["rank"] = d.rank;
    one["solutions_exist"] = d.solutions_exist;
    deg.push_back(std::move(one));
  }
  doc["degenerate"] = std::move(deg);
  emit(doc);
  return kOk;
}

int run_classes(const std::string& file, std::size_t factor) {
  ModelFile model;
  std::optional<InducedMorphism> ind;
  if (!load_checked(file, true, model, ind)) return kFail;
  if (factor == 0 || factor > model.map->n)
    throw ModelError("--factor: expected a value in 1.." + std::to_string(model.map->n));
  ReidemeisterClassSet cs = enumerate_classes(model.group, *model.map, *ind, factor - 1);
  ordered_json doc;
  doc["factor"] = factor;
  if (cs.infinite)
    doc["reidemeister"] = "inf";
  else
    doc["reidemeister"] = cs.classes.size();
  ordered_json arr = ordered_json::array();
  for (const ReidemeisterClass& c : cs.classes) {
    ordered_json one;
    one["coset"] = c.rep.coset;
    one["coords"] = ivec_json(c.rep.coords);
    one["essential"] = c.essential;
    one["index_sign"] = c.index_sign;
    one["det"] = rat_json(c.det);
    arr.push_back(std::move(one));
  }
  doc["classes"] = std::move(arr);
  emit(doc);
  return kOk;
}

int run_reidemeister(const std::string& matrix_file, const std::string& sub_arg,
                     const std::string& lattice_file) {
  RatMat m = load_matrix(matrix_file);
  if (m.rows() != m.cols()) throw ModelError(matrix_file + ": expected a square matrix");
  IntLattice lattice = lattice_file.empty() ? IntLattice::standard(m.rows())
                                            : lattice_from_file(lattice_file, "--lattice");
  IntLattice sub;
  if (!sub_arg.empty() && sub_arg.find_first_not_of("0123456789") == std::string::npos) {
    Int scale(sub_arg);
    if (scale == 0) throw ModelError("--sub: scale must be positive");
    IntMat b = lattice.basis();
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) *= scale;
    sub = IntLattice::from_generators(b.rows(), b);
  } else {
    sub = lattice_from_file(sub_arg, "--sub");
  }
  ExtendedCount r = reidemeister_number_lattice(m, lattice, sub);
  ordered_json doc;
  doc["reidemeister"] = count_json(r);
  emit(doc);
  return kOk;
}

int run_lift_check(const std::string& file, const std::string& sub_arg) {
  ModelFile model;
  std::optional<InducedMorphism> ind;
  if (!load_checked(file, true, model, ind)) return kFail;
  IntLattice sub = parse_sublattice(sub_arg, model.group.dim);
  LiftResult lr = lift_check(model.group, *model.map, *ind, sub);
  ordered_json doc;
  doc["liftable"] = lr.liftable;
  if (lr.obstruction) {
    const LiftObstruction& ob = *lr.obstruction;
    ordered_json one;
    one["generator"] = ivec_json(ob.gen_coords);
    one["ambient"] = vec_json(ob.ambient);
    one["factor"] = ob.factor + 1;
    one["reason"] = ob.reason;
    if (ob.image) {
      ordered_json img;
      img["coset"] = ob.image->coset;
      img["coords"] = ivec_json(ob.image->coords);
      one["image"] = std::move(img);
    }
    doc["obstruction"] = std::move(one);
  }
  emit(doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Nielsen numbers of affine n-valued maps on flat manifolds"};
  app.require_subcommand(1);

  std::string validate_file;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a group/map model file");
  validate_cmd->add_option("file", validate_file, "model JSON file")->required();

  std::string nielsen_file, nielsen_method = "averaging", nielsen_sub = "1";
  CLI::App* nielsen_cmd = app.add_subcommand("nielsen", "Nielsen number of the model's map");
  nielsen_cmd->add_option("file", nielsen_file, "model JSON file")->required();
  nielsen_cmd->add_option("--method", nielsen_method, "averaging | classes | both")
      ->check(CLI::IsMember({"averaging", "classes", "both"}));
  nielsen_cmd->add_option("--sublattice", nielsen_sub,
                          "averaging sublattice: integer M (meaning M*Z^k in lattice "
                          "coordinates) or a matrix file");

  std::string fix_file;
  CLI::App* fix_cmd = app.add_subcommand("fixpoints", "Geometric fixed points on the manifold");
  fix_cmd->add_option("file", fix_file, "model JSON file")->required();

  std::string classes_file;
  std::size_t classes_factor = 1;
  CLI::App* classes_cmd =
      app.add_subcommand("classes", "Twisted conjugacy classes of one branch");
  classes_cmd->add_option("file", classes_file, "model JSON file")->required();
  classes_cmd->add_option("--factor", classes_factor, "branch index, 1-based")->required();

  std::string reid_matrix, reid_sub, reid_lattice;
  CLI::App* reid_cmd =
      app.add_subcommand("reidemeister", "Reidemeister number of a torus matrix map");
  reid_cmd->add_option("--matrix", reid_matrix, "square matrix file")->required();
  reid_cmd->add_option("--sub", reid_sub,
                       "sublattice: matrix file (columns generate, ambient coordinates) "
                       "or integer scale")
      ->required();
  reid_cmd->add_option("--lattice", reid_lattice,
                       "ambient lattice matrix file (default: standard Z^k)");

  std::string lift_file, lift_sub = "1";
  CLI::App* lift_cmd =
      app.add_subcommand("lift-check", "Whether the map restricts to a finite cover");
  lift_cmd->add_option("file", lift_file, "model JSON file")->required();
  lift_cmd->add_option("--sublattice", lift_sub,
                       "cover sublattice: integer M or a matrix file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(validate_file);
    if (nielsen_cmd->parsed()) return run_nielsen(nielsen_file, nielsen_method, nielsen_sub);
    if (fix_cmd->parsed()) return run_fixpoints(fix_file);
    if (classes_cmd->parsed()) return run_classes(classes_file, classes_factor);
    if (reid_cmd->parsed()) return run_reidemeister(reid_matrix, reid_sub, reid_lattice);
    if (lift_cmd->parsed()) return run_lift_check(lift_file, lift_sub);
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
