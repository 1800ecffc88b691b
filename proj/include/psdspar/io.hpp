#pragma once

// Line-oriented ASCII file formats (PSDC, WEIGHTS, GROUP, GENS, GRAPH,
// ACTION). '#' starts a comment anywhere, blank lines are skipped, floats are
// written with 17 significant digits, and every writer is atomic
// (temp file + rename). Parse failures carry path:line context.

#include <string>

#include "psdspar/groups.hpp"
#include "psdspar/instances.hpp"
#include "psdspar/psd_core.hpp"

namespace psdspar::io {

core::PsdCollection read_psdc(const std::string& path);
void write_psdc(const core::PsdCollection& collection, const std::string& path);

core::WeightVector read_weights(const std::string& path);
void write_weights(const core::WeightVector& weights, const std::string& path);

groups::FiniteGroup read_group(const std::string& path);
void write_group(const groups::FiniteGroup& group, const std::string& path);

groups::GeneratorSet read_gens(const std::string& path, const groups::FiniteGroup& group);
void write_gens(const groups::GeneratorSet& gens, const std::string& path);

instances::Graph read_graph(const std::string& path);
void write_graph(const instances::Graph& graph, const std::string& path);

groups::GroupAction read_action(const std::string& path);
void write_action(const groups::GroupAction& action, const std::string& path);

// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

// Write-to-temp-then-rename; used by all emitters and by report files.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace psdspar::io
