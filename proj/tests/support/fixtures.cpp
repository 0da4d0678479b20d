#include "fixtures.hpp"

#include <map>
#include <stdexcept>

#include "moolts/transform.hpp"

namespace moolts::testing {

std::string fixture_path(const std::string& rel) {
  return std::string(MOOLTS_FIXTURE_DIR) + "/" + rel;
}

env::Composition composition_from_script(const moo::TranslationUnit& tu,
                                         const interp::Script& script,
                                         const std::string& filename) {
  if (!script.globals.empty())
    throw std::runtime_error("script uses globals; the composition cannot mirror them exactly");

  std::map<std::string, xform::ClassModel> models;
  auto model_of = [&](const std::string& cls) -> const xform::ClassModel& {
    auto it = models.find(cls);
    if (it != models.end()) return it->second;
    xform::ClassModel m = xform::transform_class(tu, cls, filename);
    if (!m.diagnostics.empty())
      throw std::runtime_error("class '" + cls + "' does not transform: " +
                               m.diagnostics.front().method + ": " +
                               m.diagnostics.front().message);
    return models.emplace(cls, std::move(m)).first->second;
  };

  env::Composition comp;
  const xform::ClassModel* target_model = nullptr;
  for (const auto& inst : script.instances) {
    const xform::ClassModel& model = model_of(inst.cls);
    if (inst.id == script.target) target_model = &model;

    env::Participant part;
    part.kind = env::Participant::Kind::Transformed;
    part.proc = inst.id;
    part.def.proc = inst.id;
    part.def.get_prog = model.get_prog;
    part.def.param_names = model.param_names;
    for (const auto& [name, v] : inst.fields) sem::sigma_set(part.initial_sigma_g, name, v);
    for (const auto& [name, id] : inst.members)
      sem::sigma_set(part.initial_sigma_g, name, scpp::Value::ptype(id));
    comp.parts.push_back(std::move(part));
  }
  if (!target_model) throw std::runtime_error("script target is not among its instances");

  env::Participant top;
  top.kind = env::Participant::Kind::Top;
  top.proc = "__top";
  top.top.target = script.target;
  for (const auto& call : script.calls) top.top.sequence.push_back({call.func, call.args});
  top.top_offers = env::build_top_offers(top.top, target_model->by_ref, comp.categories);
  comp.parts.push_back(std::move(top));
  return comp;
}

std::vector<std::string> path_labels(const lts::Lts& l) {
  // transitions are sorted by (from, label, to); a path never has two rows
  // with the same source.
  std::map<std::uint32_t, const lts::Transition*> next;
  for (const auto& t : l.transitions) {
    if (!next.emplace(t.from, &t).second)
      throw std::runtime_error("state " + std::to_string(t.from) + " branches");
  }
  std::vector<std::string> out;
  std::vector<bool> seen(l.num_states, false);
  std::uint32_t s = l.initial;
  while (true) {
    if (s >= seen.size() || seen[s]) throw std::runtime_error("path revisits a state");
    seen[s] = true;
    auto it = next.find(s);
    if (it == next.end()) break;
    if (it->second->label != lts::kTau) out.push_back(it->second->label);
    s = it->second->to;
  }
  return out;
}

}  // namespace moolts::testing
