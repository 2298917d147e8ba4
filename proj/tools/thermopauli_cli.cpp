#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "thermopauli/json_io.hpp"

namespace {

bool read_file(const std::string& path, std::string* out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  *out = ss.str();
  return f.good() || f.eof();
}

bool write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  f << data;
  f.flush();
  return f.good();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermopauli: quasithermodynamic wavefunction reconstruction toolkit"};
  app.require_subcommand(1);

  std::string input_path, output_path, csv_path, command;
  thermopauli::json_io::CliOptions options;

  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"tropical", "solve a truncated derivative-link reconstruction problem"},
      {"subtropical", "solve a deformed two-table reconstruction problem"},
      {"fluctuations", "evaluate Gaussian fluctuation densities and wavefunctions"},
      {"reduce", "relax a composite system to equilibrium under a coordinate change"},
      {"chemical", "solve the A + B <-> 2C equilibrium shift"},
      {"gibbs", "mixing-entropy scenario over the similarity threshold"},
      {"verify", "recompute the residual of a (problem, solution) pair"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--input", input_path, "input JSON path")->required();
    sub->add_option("--output", output_path, "output JSON path (default: stdout)");
    sub->add_option("--csv", csv_path, "CSV output path for plot data");
    sub->add_option("--backend", options.backend, "numeric backend: float | exact");
    sub->add_option("--kB", options.kB, "Boltzmann constant in model units");
    sub->add_option("--tol-degenerate", options.tol_degenerate, "degeneracy threshold override");
    sub->add_option("--tol-w2", options.tol_w2, "order-2 admissibility tolerance override");
    sub->add_option("--clamp-D", options.clamp_d, "small negative discriminant clamp override");
    sub->callback([&command, sub] { command = sub->get_name(); });
  }

  CLI11_PARSE(app, argc, argv);

  // The environment variable wins over the flag.
  if (const char* env = std::getenv("THERMOPAULI_BACKEND"); env != nullptr && *env != '\0')
    options.backend = env;

  std::string input_text;
  if (!read_file(input_path, &input_text)) {
    std::cerr << "error: cannot read input file '" << input_path << "'\n";
    return 1;
  }

  const thermopauli::json_io::CommandResult result =
      thermopauli::json_io::run_command(command, input_text, options);

  if (output_path.empty()) {
    std::cout << result.output_json;
  } else if (!write_file(output_path, result.output_json)) {
    std::cerr << "error: cannot write output file '" << output_path << "'\n";
    return 1;
  }

  if (!result.csv.empty()) {
    std::string target = csv_path;
    if (target.empty() && !output_path.empty()) target = output_path + ".csv";
    if (target.empty()) {
      std::cout << result.csv;
    } else if (!write_file(target, result.csv)) {
      std::cerr << "error: cannot write CSV file '" << target << "'\n";
      return 1;
    }
  }

  if (result.exit_code != 0) std::cerr << result.output_json;
  return result.exit_code;
}
