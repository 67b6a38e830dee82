// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header for the state-merging laboratory.

#include "qsm/common.hpp"
#include "qsm/layout.hpp"
#include "qsm/random.hpp"
#include "qsm/states.hpp"
#include "qsm/linalg.hpp"
#include "qsm/uhlmann.hpp"
#include "qsm/entropy.hpp"
#include "qsm/typicality.hpp"
#include "qsm/instrument.hpp"
#include "qsm/merging.hpp"
#include "qsm/regions.hpp"
#include "qsm/presets.hpp"
#include "qsm/serialize.hpp"
#include "qsm/parallel.hpp"
