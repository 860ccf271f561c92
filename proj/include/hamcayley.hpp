/*
   Copyright 2026 The hamcayley Authors

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

#include "hamcayley/errors.hpp"
#include "hamcayley/modular.hpp"
#include "hamcayley/group.hpp"
#include "hamcayley/subgroup.hpp"
#include "hamcayley/automorphism.hpp"
#include "hamcayley/graph.hpp"
#include "hamcayley/search.hpp"
#include "hamcayley/lift.hpp"
#include "hamcayley/hypotheses.hpp"
#include "hamcayley/f3poly.hpp"
#include "hamcayley/pattern.hpp"
#include "hamcayley/serialize.hpp"
#include "hamcayley/cases.hpp"
#include "hamcayley/sweep.hpp"
#include "hamcayley/cli.hpp"
