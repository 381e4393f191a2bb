#pragma once

#include "seedbs/cusum.hpp"
#include "seedbs/intervals.hpp"
#include "seedbs/io.hpp"
#include "seedbs/model_selection.hpp"
#include "seedbs/noise.hpp"
#include "seedbs/rng.hpp"
#include "seedbs/segmentation.hpp"
#include "seedbs/signals.hpp"
#include "seedbs/simulate.hpp"
#include "seedbs/types.hpp"
