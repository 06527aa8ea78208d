#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "matchq/errors.hpp"

namespace {

int jobs_from_env() {
  const char* env = std::getenv("MATCHQ_JOBS");
  if (!env) return 1;
  try {
    const int jobs = std::stoi(env);
    if (jobs >= 1) return jobs;
  } catch (const std::exception&) {
  }
  std::cerr << "ignoring invalid MATCHQ_JOBS value '" << env << "'\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matchmaking queue closed forms, chain oracles and simulation"};
  app.require_subcommand(1);

  matchq::cli::register_analytic(app);
  matchq::cli::register_simulate(app, jobs_from_env());
  matchq::cli::register_figure(app);
  matchq::cli::register_audit(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const matchq::Unstable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const matchq::DegenerateModel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const matchq::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
