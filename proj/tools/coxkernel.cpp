#include "coxkernel/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace coxkernel::cli;

  CLI::App app{"Class groups, Cox rings and graded spectra of toric fans"};
  std::string command, format = "json";
  JobConfig config;
  app.add_option("command", command, "what to compute")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--input", config.input, "input document (fan, algebra or divisorial spec)")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--theorem", config.theorem, "which characterization verify checks")
      ->check(CLI::IsMember({"A", "B", "C", "D"}));
  app.add_option("--box", config.box, "enumeration box for sections, as x1,y1:x2,y2");
  app.add_flag("--witnesses", config.witnesses, "include witnesses in verify reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  config.command = *parse_command(command);
  config.format = *parse_format(format);

  const RunResult result = run(config);
  std::cout << result.out;
  std::cerr << result.err;
  return result.status;
}
