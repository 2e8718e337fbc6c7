// Copyright 2026 The entroflux Authors
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

#include "entroflux/check.hpp"
#include "entroflux/csv.hpp"
#include "entroflux/density.hpp"
#include "entroflux/dynamics.hpp"
#include "entroflux/error.hpp"
#include "entroflux/maxent.hpp"
#include "entroflux/models/gaussian.hpp"
#include "entroflux/models/maser.hpp"
#include "entroflux/models/qubit.hpp"
#include "entroflux/models/squeezed.hpp"
#include "entroflux/potential.hpp"
#include "entroflux/random.hpp"
#include "entroflux/scenario.hpp"
