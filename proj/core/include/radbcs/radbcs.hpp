#pragma once

#include "radbcs/analysis.hpp"
#include "radbcs/errors.hpp"
#include "radbcs/gap.hpp"
#include "radbcs/grid.hpp"
#include "radbcs/kernel.hpp"
#include "radbcs/potential.hpp"
#include "radbcs/spectral.hpp"
#include "radbcs/version.hpp"
