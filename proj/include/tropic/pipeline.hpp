#pragma once

#include <string>
#include <vector>

#include "tropic/problem.hpp"
#include "tropic/report.hpp"
#include "tropic/series.hpp"

namespace tropic {

enum class Stage { DualComplex, TropCI, Contraction, Shuffles, Valuation };

// One stage name (dualcomplex | tropci | contraction | shuffles | valuation)
// or "all" for every stage in dependency order. Unknown names error.
std::vector<Stage> parse_stages(const std::string& name);

// Runs the verification batteries of the requested stages. A stage whose
// objects fail to build marks its checks failed and halts dependent stages;
// the report is emitted either way.
VerificationReport run_pipeline(Workspace& ws, const std::vector<Stage>& stages);

// Deterministic exporters.
std::string dual_complex_json(Workspace& ws);
std::string trop_complex_json(Workspace& ws);
// Mesh of the chain subdivision of the boundary complex, f-vector in the
// header comment.
std::string skeleton_off(Workspace& ws);
// Staircase triangulation of a product of simplices with the given factor
// dimensions, one block of coordinates per factor.
std::string product_off(const std::vector<int>& degrees);
std::string series_point_json(const SeriesPoint& p);

}  // namespace tropic
