// gluedforms <scene-file> <command> [args] [--seed N] [--degree D] [--samples S] [--json|--text]

#include "gluedforms/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace gluedforms;

  CLI::App app{"Forms, fibres and metrics on Euclidean pieces glued along affine subsets"};
  app.set_version_flag("--version", "gluedforms 1.0");

  std::string scene_path;
  std::string command;
  std::vector<std::string> args;
  CommandOptions options;
  bool text = false;

  std::string commands;
  for (const auto& c : command_names()) commands += (commands.empty() ? "" : ", ") + c;

  app.add_option("scene", scene_path, "Scene file")->required();
  app.add_option("command", command, "One of: " + commands)->required();
  app.allow_extras();
  app.footer("Command arguments follow the command; see README.md.");
  app.add_option("--seed", options.seed, "Seed for every sampled check")->default_val(0);
  app.add_option("--degree", options.degree, "Polynomial degree of the fibre oracle")->default_val(2);
  app.add_option("--samples", options.samples, "Sample count for sampled checks")->default_val(32);
  auto* json_flag = app.add_flag("--json", "JSON report on stdout (default)");
  app.add_flag("--text", text, "Human-readable report on stdout")->excludes(json_flag);
  app.positionals_at_end(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  args = app.remaining();
  try {
    const Scene scene = load_scene(scene_path);
    const Report report = run_command(scene, command, args, options);
    if (text) std::cout << report.to_text();
    else std::cout << report.to_json().dump(2) << '\n';
    if (report.exit_code != 0) std::cerr << "gluedforms: " << report.result.value("message", "") << '\n';
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "gluedforms: " << e.what() << '\n';
    return 2;
  }
}
