#pragma once

#include "demo_common.hpp"

namespace setconv::demos {

void run_dist(DemoOptions& opts);
void run_limits(DemoOptions& opts);
void run_epi_dist(DemoOptions& opts);
void run_epi_bounds(DemoOptions& opts);
void run_penalty(DemoOptions& opts);
void run_cubic(DemoOptions& opts);
void run_soften(DemoOptions& opts);
void run_kw_density(DemoOptions& opts);
void run_cp(DemoOptions& opts);
void run_homotopy(DemoOptions& opts);
void run_cones(DemoOptions& opts);

}  // namespace setconv::demos
