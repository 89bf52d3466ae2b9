// Copyright 2026 The tpsa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tpsa/alpha_ideals.hpp"
#include "tpsa/builtin.hpp"
#include "tpsa/cache.hpp"
#include "tpsa/checks.hpp"
#include "tpsa/error.hpp"
#include "tpsa/finite_ring.hpp"
#include "tpsa/fixture.hpp"
#include "tpsa/generator.hpp"
#include "tpsa/goldie.hpp"
#include "tpsa/ideal.hpp"
#include "tpsa/paction.hpp"
#include "tpsa/report.hpp"
#include "tpsa/ring.hpp"
#include "tpsa/search.hpp"
#include "tpsa/skewseries.hpp"
