#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "ehcr/experiment.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const ehcr::ExperimentPlan plan = ehcr::parse_args(args);
    if (plan.help) {
      std::cout << ehcr::usage();
      return 0;
    }
    ehcr::run_plan(plan, std::cout);
    std::cout << "wrote " << plan.out_path << "\n";
    return 0;
  } catch (const ehcr::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << ehcr::usage();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
