#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ppprelay/cli/config.hpp"
#include "ppprelay/cli/sweep.hpp"
#include "ppprelay/errors.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int run(const std::vector<std::string>& args) {
  using namespace ppprelay;
  cli::ExperimentConfig config;
  try {
    config = cli::parse_config(args);
  } catch (const cli::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const ConfigurationError& e) {
    std::cerr << "ppprelay: " << e.what() << '\n';
    return kExitValidation;
  }

  cli::SweepResult result;
  try {
    result = cli::run_sweep(config);
  } catch (const NumericalError& e) {
    std::cerr << "ppprelay: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConfigurationError& e) {
    std::cerr << "ppprelay: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "ppprelay: " << e.what() << '\n';
    return kExitValidation;
  }

  if (config.output.empty()) {
    cli::write_csv(std::cout, result.table);
  } else {
    std::ofstream csv(config.output, std::ios::binary);
    std::ofstream meta(config.output + ".meta", std::ios::binary);
    if (!csv || !meta) {
      std::cerr << "ppprelay: cannot write '" << config.output << "'\n";
      return kExitValidation;
    }
    cli::write_csv(csv, result.table);
    meta << cli::render_metadata(config, result);
    if (!csv || !meta) {
      std::cerr << "ppprelay: write to '" << config.output << "' failed\n";
      return kExitValidation;
    }
  }

  if (config.verify) {
    std::cerr << "verify: " << result.verify.agreeing << '/' << result.verify.points
              << " points within 3 sigma of the analytic outage\n";
    if (!result.verify.passed()) {
      std::cerr << "ppprelay: fewer than 95% of points agree\n";
      return kExitNumerical;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc));
}
