#pragma once

#include "tmpcfg/block_library.hpp"
#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/config_search.hpp"
#include "tmpcfg/defect_analysis.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/export_io.hpp"
#include "tmpcfg/geometric_oracle.hpp"
#include "tmpcfg/parallel.hpp"
#include "tmpcfg/shape_match.hpp"
#include "tmpcfg/tessellation_graph.hpp"
