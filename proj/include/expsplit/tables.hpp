#ifndef EXPSPLIT_TABLES_HPP
#define EXPSPLIT_TABLES_HPP

#include "expsplit/harness.hpp"

namespace expsplit {

/// Built-in convergence studies 1..8, the experiments shipped with the
/// library. Each preset fixes problem, method, mesh, step-size ladder
/// and horizon; reference errors and orders for them live in the
/// acceptance suite.
struct TablePreset {
  int number = 0;
  std::string caption;
  ExperimentPlan plan;
};

/// The presets. Studies 2 and 4 default to the mesh h = 1e-3, where
/// their order behavior is already clean; full_mesh switches them to
/// the four-times-finer reference mesh h = 2.5e-4 (slower, Krylov
/// backend) on which the reference error magnitudes were produced.
const std::vector<TablePreset>& table_presets(bool full_mesh = false);

const TablePreset& find_table(int number, bool full_mesh = false);

}  // namespace expsplit

#endif
