#pragma once

#include "tropgait/error.hpp"
#include "tropgait/maxplus.hpp"
#include "tropgait/spectral.hpp"
#include "tropgait/gait.hpp"
#include "tropgait/simulation.hpp"
#include "tropgait/dsl.hpp"
#include "tropgait/diagram.hpp"
#include "tropgait/io.hpp"
