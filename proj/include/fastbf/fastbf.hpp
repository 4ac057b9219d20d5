#pragma once

#include "fastbf/aux_stack.hpp"
#include "fastbf/bilateral.hpp"
#include "fastbf/fast_bilateral.hpp"
#include "fastbf/haar.hpp"
#include "fastbf/image.hpp"
#include "fastbf/kernel.hpp"
#include "fastbf/pgm.hpp"
#include "fastbf/precompute.hpp"
#include "fastbf/quality.hpp"
#include "fastbf/report.hpp"
#include "fastbf/sat.hpp"
#include "fastbf/selection.hpp"
#include "fastbf/spatial_plan.hpp"
#include "fastbf/synthetic.hpp"
#include "fastbf/trig.hpp"
