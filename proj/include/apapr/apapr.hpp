#pragma once

#include "apapr/classify.hpp"
#include "apapr/curvature.hpp"
#include "apapr/family.hpp"
#include "apapr/fundamental.hpp"
#include "apapr/lie_frame.hpp"
#include "apapr/linalg.hpp"
#include "apapr/manifest.hpp"
#include "apapr/pipeline.hpp"
#include "apapr/rational.hpp"
#include "apapr/report.hpp"
#include "apapr/structure.hpp"
#include "apapr/svk.hpp"
#include "apapr/tensor.hpp"
#include "apapr/theorems.hpp"
