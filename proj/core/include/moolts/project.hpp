#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moolts/env_process.hpp"
#include "moolts/explore.hpp"
#include "moolts/interp.hpp"
#include "moolts/lts.hpp"
#include "moolts/moo_ast.hpp"
#include "moolts/transform.hpp"

namespace moolts::proj {

// Schema violations carry a JSON-pointer-style path ("/instances/ctrl/kind").
class ProjectError : public std::runtime_error {
 public:
  explicit ProjectError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InstanceSpec {
  enum class Kind : std::uint8_t { Transformed, Stub, Fsm };

  Kind kind = Kind::Transformed;
  std::string cls;  // Transformed/Stub; empty for Fsm
  std::vector<std::pair<std::string, scpp::Value>> fields;   // Transformed: initial values
  std::vector<std::pair<std::string, std::string>> members;  // member name -> instance id
  std::string fsm;  // Fsm: name into ProjectFile::fsms
};

struct StubConfig {
  std::map<scpp::FuncId, env::BoundedType> return_bounds;
  std::map<scpp::FuncId, bool> can_throw;
  std::map<scpp::VarId, env::BoundedType> load_bounds;
};

struct ProjectFile {
  std::string sources;  // one path, relative to the project file's directory
  std::string target_class;
  std::string target_instance;  // optional; inferred when exactly one instance matches

  std::vector<std::pair<std::string, InstanceSpec>> instances;  // declaration order kept
  std::optional<InstanceSpec> global_namespace;                 // Stub or Fsm spec
  std::optional<StubConfig> global_stub;                        // bounds when it is a stub

  env::TopInterfaceSpec top;  // top.target resolved at build time
  std::map<std::string, StubConfig> stubs;     // instance id -> bounds
  std::map<std::string, env::CustomFsm> fsms;  // fsm name -> machine (proc filled at build)
  env::Categories categories;

  std::vector<std::string> hide;
  std::vector<lts::RenameRule> rename;
  env::Limits limits;
};

// Text codecs. parse rejects unknown keys; render emits the canonical layout
// (load-render-load is the identity on content).
ProjectFile parse_project_text(const std::string& text, const std::string& name);
std::string render_project(const ProjectFile& p);

ProjectFile load_project(const std::string& path);
void save_project(const ProjectFile& p, const std::string& path);

// Everything a command needs after wiring a project to its sources.
struct BuildResult {
  env::Composition comp;
  std::string target_instance;
  xform::ClassModel target_model;
  std::map<std::string, xform::ClassModel> models;  // per transformed class
};

// Parses the sources, transforms every class used by a transformed instance,
// validates the wiring, and assembles the composition (participants in
// declaration order, global namespace then top interface last). Throws
// ProjectError / moo::MooError / env::ConfigError.
BuildResult build_composition(const ProjectFile& p, const std::string& project_dir);

// Oracle script codec.
interp::Script parse_script_text(const std::string& text, const std::string& name);
interp::Script load_script(const std::string& path);

// Applies the project's hide patterns then rename rules.
lts::Lts apply_label_ops(lts::Lts l, const ProjectFile& p);

std::string read_file(const std::string& path);  // ProjectError on failure
std::string dir_of(const std::string& path);

}  // namespace moolts::proj
