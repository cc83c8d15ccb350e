/*
   Copyright 2026 the mphstar authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

namespace mphstar::tolerances {

// Single source of truth for the consistency battery: the CLI `check`
// subcommand and the acceptance suite both read these.

/// |alpha_abs + atom(0) + alpha(0) (-W(0))^{-1} eta(0) - 1|
inline constexpr double kNormalization = 1e-10;

/// max |joint_lt_from_density - joint_lt_kulkarni| over the check grid
inline constexpr double kLtCrossCheck = 1e-10;

/// relative |joint_moment - joint_moment_oracle|
inline constexpr double kMomentRelative = 1e-9;

/// entrywise |(-T 1) - eta(0)| for the first marginal
inline constexpr double kMarginalExitIdentity = 1e-12;

/// Monte Carlo agreement window in standard errors
inline constexpr double kMcSigma = 4.0;

/// axis of the (s1, s2) cross-check grid
inline constexpr double kLtGridAxis[] = {0.0, 0.1, 1.0, 5.0};

}  // namespace mphstar::tolerances
