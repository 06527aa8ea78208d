#pragma once

#include <map>
#include <string>

#include "CLI11.hpp"
#include "matchq/rates.hpp"

namespace matchq::cli {

inline const std::map<std::string, ServiceOrder>& order_names() {
  static const std::map<std::string, ServiceOrder> names = {
      {"fifo", ServiceOrder::FIFO},
      {"packing", ServiceOrder::Packing},
      {"lifo", ServiceOrder::LIFO},
      {"twoqueue", ServiceOrder::TwoQueue}};
  return names;
}

void register_analytic(CLI::App& app);
void register_simulate(CLI::App& app, int defaultJobs);
void register_figure(CLI::App& app);
void register_audit(CLI::App& app);

}  // namespace matchq::cli
