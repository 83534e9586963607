// Copyright 2026 The ctxsheaf Authors
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


/// @file ctxsheaf.hpp
/// @brief Umbrella header.
#pragma once

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/scenario.hpp"
#include "ctxsheaf/ring.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/linear_theory.hpp"
#include "ctxsheaf/cohomology.hpp"
#include "ctxsheaf/stabiliser.hpp"
#include "ctxsheaf/paradox.hpp"
#include "ctxsheaf/document.hpp"
#include "ctxsheaf/corpus.hpp"
#include "ctxsheaf/report.hpp"
#include "ctxsheaf/bundle.hpp"
