// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header. report.hpp and verify.hpp pull in nlohmann::json and are
// included only when ISLOCC_WITH_REPORT is defined.

#pragma once

#include "islocc/error.hpp"
#include "islocc/spstate.hpp"
#include "islocc/amplitude.hpp"
#include "islocc/mixedstate.hpp"
#include "islocc/slocc.hpp"
#include "islocc/indist.hpp"
#include "islocc/entangle.hpp"
#include "islocc/noise.hpp"
#include "islocc/sweep.hpp"
#include "islocc/verify.hpp"

#ifdef ISLOCC_WITH_REPORT
#include "islocc/report.hpp"
#endif
