// Command-line front end: project-driven model generation plus standalone
// .aut reduction and comparison.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "moolts/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mini-OO model toolkit: transform classes, generate labeled "
               "transition systems, reduce and compare them"};
  app.require_subcommand(1);

  std::string project, output, json_dump, relation, first, second, source, script;
  bool keep_tau_loops = false;

  CLI::App* transform =
      app.add_subcommand("transform", "print the lowered model of the project's target class");
  transform->add_option("project", project, "project file (JSON)")->required();

  CLI::App* generate =
      app.add_subcommand("generate", "explore the composed statespace and export it");
  generate->add_option("project", project, "project file (JSON)")->required();
  generate->add_option("-o,--output", output, "output .aut path")->required();
  generate->add_option("--json", json_dump, "also write a structured dump here");

  CLI::App* reduce = app.add_subcommand("reduce", "minimize an .aut file modulo a bisimilarity");
  reduce->add_option("input", first, "input .aut path")->required();
  reduce->add_option("--relation", relation, "strong|branching")
      ->required()
      ->check(CLI::IsMember({"strong", "branching"}));
  reduce->add_flag("--keep-tau-loops", keep_tau_loops,
                   "keep inert tau self-loops instead of dropping them");
  reduce->add_option("-o,--output", output, "output .aut path")->required();

  CLI::App* compare = app.add_subcommand("compare", "compare two .aut files");
  compare->add_option("first", first, "first .aut path")->required();
  compare->add_option("second", second, "second .aut path")->required();
  compare->add_option("--relation", relation, "strong|branching|weak-trace")
      ->required()
      ->check(CLI::IsMember({"strong", "branching", "weak-trace"}));

  CLI::App* oracle =
      app.add_subcommand("oracle", "run the reference interpreter over a call script");
  oracle->add_option("source", source, "source file")->required();
  oracle->add_option("script", script, "call script (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return moolts::cmd::kExitError;
  }

  if (transform->parsed())
    return moolts::cmd::cmd_transform(project, std::cout, std::cerr);
  if (generate->parsed())
    return moolts::cmd::cmd_generate(project, output, json_dump, std::cout, std::cerr);
  if (reduce->parsed())
    return moolts::cmd::cmd_reduce(first, relation, keep_tau_loops, output, std::cout, std::cerr);
  if (compare->parsed())
    return moolts::cmd::cmd_compare(first, second, relation, std::cout, std::cerr);
  if (oracle->parsed())
    return moolts::cmd::cmd_oracle(source, script, std::cout, std::cerr);
  return moolts::cmd::kExitError;  // unreachable: require_subcommand(1)
}
